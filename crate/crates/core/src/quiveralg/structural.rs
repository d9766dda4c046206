use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exactla::{Matrix, Rational};
use crate::repcat::{Morphism, Representation};

use super::BoundQuiverAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructuralKind {
    Projective,
    Injective,
    Simple,
}

/// `P(v) = e_v A`, `I(v) = D(A e_v)` or the simple `S(v)`.
pub fn structural_module(a: &Arc<BoundQuiverAlgebra>, v: usize, kind: StructuralKind) -> Representation {
    match kind {
        StructuralKind::Projective => projective(a, v),
        StructuralKind::Injective => injective(a, v),
        StructuralKind::Simple => simple(a, v),
    }
}

fn projective(a: &Arc<BoundQuiverAlgebra>, v: usize) -> Representation {
    let q = a.quiver();
    let dims: Vec<usize> = (0..q.num_vertices()).map(|w| a.dim_between(v, w)).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, ar)| {
            let x = a.path_element(&q.arrow_path(k));
            a.right_mult_matrix(&x, v, ar.source, ar.target)
        })
        .collect();
    Representation::from_parts(a.clone(), dims, maps)
}

fn injective(a: &Arc<BoundQuiverAlgebra>, v: usize) -> Representation {
    let q = a.quiver();
    let dims: Vec<usize> = (0..q.num_vertices()).map(|w| a.dim_between(w, v)).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, ar)| {
            // phi in D(e_s A e_v) maps to (q -> phi(arrow * q)) in D(e_t A e_v).
            let x = a.path_element(&q.arrow_path(k));
            left_mult_matrix(a, &x, ar.source, ar.target, v).transpose()
        })
        .collect();
    Representation::from_parts(a.clone(), dims, maps)
}

fn simple(a: &Arc<BoundQuiverAlgebra>, v: usize) -> Representation {
    let q = a.quiver();
    let dims: Vec<usize> = (0..q.num_vertices()).map(|w| usize::from(w == v)).collect();
    let maps = q.arrows().iter().map(|ar| Matrix::zeros(dims[ar.target], dims[ar.source])).collect();
    Representation::from_parts(a.clone(), dims, maps)
}

/// Matrix of `y -> x * y` from `e_w A e_u` to `e_v A e_u`, for `x` in `e_v A e_w`.
pub fn left_mult_matrix(a: &BoundQuiverAlgebra, x: &[Rational], v: usize, w: usize, u: usize) -> Matrix {
    let src = a.basis_between(w, u);
    let tgt = a.basis_between(v, u);
    let pos: HashMap<usize, usize> = tgt.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut m = Matrix::zeros(tgt.len(), src.len());
    for (col, &j) in src.iter().enumerate() {
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, val) in a.product_of_basis(i, j) {
                if let Some(&row) = pos.get(k) {
                    m[(row, col)] += &(c * val);
                }
            }
        }
    }
    m
}

/// The homomorphism `P(w) -> P(v)` sending `e_w` to `x`, for `x` in `e_v A e_w`.
pub fn projective_map_from_element(a: &BoundQuiverAlgebra, x: &[Rational], v: usize, w: usize) -> Morphism {
    Morphism { blocks: (0..a.num_vertices()).map(|u| left_mult_matrix(a, x, v, w, u)).collect() }
}
