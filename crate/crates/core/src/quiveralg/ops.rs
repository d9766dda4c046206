use std::sync::Arc;

use serde::Serialize;

use crate::artrans::projective_cover;
use crate::exactla::{Matrix, Rational};
use crate::repcat::{is_isomorphic, Morphism, Representation};

use super::present::{present, Generators};
use super::quiver::{enumerate_paths, Arrow, Path, Quiver, Relation};
use super::structural::{structural_module, StructuralKind};
use super::{build_algebra, AlgebraError, BoundQuiverAlgebra, Element, DEFAULT_NILPOTENCY_BOUND};

/// `A^op` together with the basis correspondence (index `i` of `A` maps to
/// index `correspondence[i]` of `A^op`).
pub fn opposite_algebra(a: &Arc<BoundQuiverAlgebra>) -> (Arc<BoundQuiverAlgebra>, Vec<usize>) {
    (a.opposite(), (0..a.dim()).collect())
}

/// Basis (rows, reduced) of the two-sided ideal generated by `gens`.
pub fn ideal_closure(a: &BoundQuiverAlgebra, gens: &[Element]) -> Vec<Element> {
    let n = a.dim();
    let mut basis: Vec<Element> = Vec::new();
    let mut rank = 0;
    let mut queue: Vec<Element> = gens.to_vec();
    while let Some(x) = queue.pop() {
        if x.iter().all(Rational::is_zero) {
            continue;
        }
        let mut trial = basis.clone();
        trial.push(x.clone());
        let r = Matrix::from_rows(trial.clone(), n).rank();
        if r == rank {
            continue;
        }
        basis = trial;
        rank = r;
        for i in 0..n {
            let b = a.basis_element(i);
            queue.push(a.mul(&b, &x));
            queue.push(a.mul(&x, &b));
        }
    }
    let reduced = Matrix::from_rows(basis, n).rref();
    (0..reduced.rank).map(|r| reduced.reduced.row(r).to_vec()).collect()
}

/// How `A` maps onto a quotient `B = A / I`.
#[derive(Clone, Debug)]
pub struct QuotientData {
    /// `surviving[j]` is the vertex of `A` underlying vertex `j` of `B`.
    pub surviving: Vec<usize>,
    /// Vertex of `B` for each vertex of `A`, if it survives.
    pub vertex_map: Vec<Option<usize>>,
    /// `dim B x dim A`: coordinates in `B` of the image of each basis element of `A`.
    pub map: Matrix,
    /// Basis of the ideal `I`.
    pub ideal: Vec<Element>,
    /// For each arrow of `B`, an element of `A` lifting it.
    pub arrow_lifts: Vec<Element>,
}

impl QuotientData {
    pub fn image(&self, x: &[Rational]) -> Element {
        self.map.mul_vec(x)
    }
}

/// `B = A / <ideal_elements>` as a bound quiver algebra on the surviving vertices.
pub fn quotient_algebra(
    a: &Arc<BoundQuiverAlgebra>,
    ideal_elements: &[Element],
) -> Result<(Arc<BoundQuiverAlgebra>, QuotientData), AlgebraError> {
    let ideal = ideal_closure(a, ideal_elements);
    let n = a.dim();
    let nv = a.num_vertices();
    let ideal_cols = Matrix::from_columns(n, &ideal);
    let proj = ideal_cols.cokernel_projection();
    let in_ideal = |x: &Element| proj.mul_vec(x).iter().all(Rational::is_zero);

    let surviving: Vec<usize> = (0..nv).filter(|&v| !in_ideal(&a.vertex_element(v))).collect();
    if surviving.is_empty() {
        return Err(AlgebraError::ImproperIdeal);
    }
    let mut vertex_map = vec![None; nv];
    for (j, &v) in surviving.iter().enumerate() {
        vertex_map[v] = Some(j);
    }
    if ideal.is_empty() {
        let arrow_lifts = (0..a.quiver().num_arrows()).map(|k| a.path_element(&a.quiver().arrow_path(k))).collect();
        return Ok((
            a.clone(),
            QuotientData { surviving, vertex_map, map: Matrix::identity(n), ideal, arrow_lifts },
        ));
    }

    // Arrows of B: images of arrows of A independent modulo rad^2 B.
    let q = a.quiver();
    let rad2 = a.radical_square_indices();
    let mut arrows = Vec::new();
    for &s in &surviving {
        for &t in &surviving {
            let mut span: Vec<Vec<Rational>> = rad2
                .iter()
                .filter(|&&i| a.basis()[i].source == s && a.basis()[i].target == t)
                .map(|&i| proj.mul_vec(&a.basis_element(i)))
                .collect();
            let mut rank = Matrix::from_columns(proj.rows(), &span).rank();
            for (k, ar) in q.arrows().iter().enumerate() {
                if ar.source != s || ar.target != t {
                    continue;
                }
                let x = a.path_element(&q.arrow_path(k));
                span.push(proj.mul_vec(&x));
                let r = Matrix::from_columns(proj.rows(), &span).rank();
                if r > rank {
                    rank = r;
                    arrows.push((ar.name.clone(), vertex_map[s].unwrap(), vertex_map[t].unwrap(), x));
                } else {
                    span.pop();
                }
            }
        }
    }
    let mul = |x: &[Rational], y: &[Rational]| a.mul(x, y);
    let gens = Generators {
        vertex_names: surviving.iter().map(|&v| q.vertices()[v].clone()).collect(),
        idempotents: surviving.iter().map(|&v| a.vertex_element(v)).collect(),
        arrows: arrows.clone(),
        mul: &mul,
        projection: Some(&proj),
        dim: proj.rows(),
    };
    let pres = present(&gens, DEFAULT_NILPOTENCY_BOUND.max(a.loewy_bound()))?;
    let realized = Matrix::from_columns(n, &pres.realization);
    let square = proj.mul(&realized);
    let inv = square
        .inverse()
        .ok_or_else(|| AlgebraError::InternalInconsistency("quotient realization not invertible".into()))?;
    let map = inv.mul(&proj);
    let arrow_lifts = arrows.into_iter().map(|(_, _, _, x)| x).collect();
    let b = Arc::new(pres.algebra);
    Ok((b, QuotientData { surviving, vertex_map, map, ideal, arrow_lifts }))
}

/// Result of a one-point extension `A = [K X; 0 B]`.
pub struct OnePointExtension {
    pub algebra: Arc<BoundQuiverAlgebra>,
    /// Index of the new vertex (the last one).
    pub omega: usize,
    /// `rad P(omega)` viewed over `B`.
    pub radical: Representation,
    /// Isomorphism `rad P(omega) -> X` over `B`.
    pub witness: Morphism,
}

/// Adds a vertex `omega` with new projective `P(omega)` whose radical is `x`.
pub fn one_point_extension(b: &Arc<BoundQuiverAlgebra>, x: &Representation) -> Result<OnePointExtension, AlgebraError> {
    if !x.algebra().same_as(b) {
        return Err(AlgebraError::InternalInconsistency("module is not over the given algebra".into()));
    }
    let qb = b.quiver();
    let nb = qb.num_vertices();
    let na = qb.num_arrows();
    let mut omega_name = "omega".to_string();
    while qb.vertex_index(&omega_name).is_some() {
        omega_name.push('\'');
    }
    let cover = projective_cover(x);
    let mut vertices = qb.vertices().to_vec();
    vertices.push(omega_name);
    let mut arrows: Vec<Arrow> = qb.arrows().to_vec();
    for (k, &v) in cover.vertices.iter().enumerate() {
        let mut name = format!("g{k}");
        while arrows.iter().any(|a| a.name == name) {
            name.push('\'');
        }
        arrows.push(Arrow { name, source: nb, target: v });
    }
    let q = Quiver::new(vertices, arrows)?;
    let mut relations: Vec<Relation> = b.relations().to_vec();

    // Generators of the kernel of the cover give the new relations.
    let (ker, incl) = cover.kernel_with_inclusion();
    let omega_cover = projective_cover(&ker);
    for (g, &w) in omega_cover.generators.iter().zip(&omega_cover.vertices) {
        let gen = incl.blocks[w].mul_vec(g);
        let mut terms = Vec::new();
        let mut off = 0;
        for (k, &v) in cover.vertices.iter().enumerate() {
            let paths = b.basis_between(v, w);
            for (j, &i) in paths.iter().enumerate() {
                let c = &gen[off + j];
                if c.is_zero() {
                    continue;
                }
                let mut arrows = vec![na + k];
                arrows.extend_from_slice(&b.basis()[i].arrows);
                terms.push((c.clone(), Path { source: nb, target: w, arrows }));
            }
            off += paths.len();
        }
        if !terms.is_empty() {
            relations.push(Relation::new(terms));
        }
    }
    let bound = DEFAULT_NILPOTENCY_BOUND.max(b.loewy_bound() + 1);
    let algebra = Arc::new(build_algebra(q, relations, bound)?);

    let p_omega = structural_module(&algebra, nb, StructuralKind::Projective);
    let dims: Vec<usize> = (0..nb).map(|v| p_omega.dim_at(v)).collect();
    let maps: Vec<Matrix> = (0..na).map(|k| p_omega.map(k).clone()).collect();
    let radical = Representation::new(b.clone(), dims, maps)
        .map_err(|e| AlgebraError::InternalInconsistency(format!("radical of P(omega): {e}")))?;
    let witness = is_isomorphic(&radical, x)
        .map_err(|e| AlgebraError::InternalInconsistency(e.to_string()))?
        .ok_or_else(|| AlgebraError::InternalInconsistency("rad P(omega) is not isomorphic to X".into()))?;
    Ok(OnePointExtension { algebra, omega: nb, radical, witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GlobalDimension {
    Value(usize),
    ExceedsBound(usize),
}

impl GlobalDimension {
    pub fn at_most(&self, d: usize) -> bool {
        matches!(self, GlobalDimension::Value(v) if *v <= d)
    }
}

/// Maximum projective dimension of the simples, from iterated syzygies.
pub fn global_dimension_upto(a: &Arc<BoundQuiverAlgebra>, bound: usize) -> GlobalDimension {
    let mut best = 0;
    for v in 0..a.num_vertices() {
        let mut x = structural_module(a, v, StructuralKind::Simple);
        let mut pd = None;
        for k in 0..=bound {
            let omega = projective_cover(&x).kernel();
            if omega.is_zero() {
                pd = Some(k);
                break;
            }
            x = omega;
        }
        match pd {
            Some(k) => best = best.max(k),
            None => return GlobalDimension::ExceedsBound(bound),
        }
    }
    GlobalDimension::Value(best)
}

/// Hereditary test by two routes: global dimension at most one, and
/// "acyclic quiver with zero relation ideal". Disagreement is an error.
pub fn is_hereditary(a: &Arc<BoundQuiverAlgebra>) -> Result<bool, AlgebraError> {
    let by_gldim = global_dimension_upto(a, 1).at_most(1);
    let q = a.quiver();
    let by_shape = q.is_acyclic() && enumerate_paths(q, q.num_vertices()).len() == a.dim();
    if by_gldim != by_shape {
        return Err(AlgebraError::InternalInconsistency(format!(
            "hereditary test disagrees: global dimension says {by_gldim}, quiver shape says {by_shape}"
        )));
    }
    Ok(by_gldim)
}
