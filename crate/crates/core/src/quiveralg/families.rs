//! Small named algebras used by the examples and tests.

use std::sync::Arc;

use super::{build_algebra, BoundQuiverAlgebra, Quiver, Relation, DEFAULT_NILPOTENCY_BOUND};

fn path_algebra(vertices: Vec<String>, arrows: Vec<(String, usize, usize)>, relations: &[&[&str]]) -> Arc<BoundQuiverAlgebra> {
    let arrows = arrows
        .into_iter()
        .map(|(name, source, target)| super::Arrow { name, source, target })
        .collect();
    let q = Quiver::new(vertices, arrows).expect("well-formed family quiver");
    let rels = relations
        .iter()
        .map(|p| Relation::monomial(q.path_from_names(p).expect("relation path")))
        .collect();
    Arc::new(build_algebra(q, rels, DEFAULT_NILPOTENCY_BOUND).expect("family algebra is finite-dimensional"))
}

/// The star with `n` arms `a_i : i -> 0`.
pub fn star(n: usize) -> Arc<BoundQuiverAlgebra> {
    let vertices = (0..=n).map(|i| i.to_string()).collect();
    let arrows = (1..=n).map(|i| (format!("a{i}"), i, 0)).collect();
    path_algebra(vertices, arrows, &[])
}

/// Linearly oriented `1 -> 2 -> ... -> n`.
pub fn linear(n: usize) -> Arc<BoundQuiverAlgebra> {
    linear_with_zero_relations(n, &[])
}

/// Linear quiver with monomial relations given by arrow names `b1, b2, ...`
/// (`b_i : i -> i+1`).
pub fn linear_with_zero_relations(n: usize, relations: &[&[&str]]) -> Arc<BoundQuiverAlgebra> {
    let vertices = (1..=n).map(|i| i.to_string()).collect();
    let arrows = (1..n).map(|i| (format!("b{i}"), i - 1, i)).collect();
    path_algebra(vertices, arrows, relations)
}

/// Two arrows `x, y : 1 -> 0`.
pub fn kronecker() -> Arc<BoundQuiverAlgebra> {
    path_algebra(
        vec!["0".into(), "1".into()],
        vec![("x".into(), 1, 0), ("y".into(), 1, 0)],
        &[],
    )
}
