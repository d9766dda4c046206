use std::sync::Arc;

use crate::exactla::{Matrix, Rational};
use crate::quiveralg::{structural_module, BoundQuiverAlgebra, StructuralKind};
use crate::repcat::{direct_sum, kernel, Morphism, Representation};

/// `P = P(v_1) + ... + P(v_k)` as a representation.
pub fn free_module(a: &Arc<BoundQuiverAlgebra>, vertices: &[usize]) -> Representation {
    let parts: Vec<Representation> =
        vertices.iter().map(|&v| structural_module(a, v, StructuralKind::Projective)).collect();
    direct_sum(a, &parts).expect("same algebra")
}

/// The homomorphism `P(v_1) + ... + P(v_k) -> N` sending the `k`-th
/// generator `e_{v_k}` to `images[k]` (a vector in `N_{v_k}`).
pub fn map_from_free(vertices: &[usize], images: &[Vec<Rational>], n: &Representation) -> Morphism {
    let a = n.algebra();
    let blocks = (0..a.num_vertices())
        .map(|w| {
            let mut cols: Vec<Vec<Rational>> = Vec::new();
            for (&v, g) in vertices.iter().zip(images) {
                for i in a.basis_between(v, w) {
                    cols.push(n.path_matrix(&a.basis()[i]).mul_vec(g));
                }
            }
            Matrix::from_columns(n.dim_at(w), &cols)
        })
        .collect();
    Morphism { blocks }
}

/// Offset of the generator `e_{v_k}` of summand `k` inside `P_{v_k}`.
pub fn generator_position(a: &BoundQuiverAlgebra, vertices: &[usize], k: usize) -> usize {
    let v = vertices[k];
    let before: usize = vertices[..k].iter().map(|&u| a.dim_between(u, v)).sum();
    let within = a
        .basis_between(v, v)
        .iter()
        .position(|&i| a.basis()[i].is_stationary())
        .expect("stationary path is a basis element");
    before + within
}

/// A projective cover `P0 -> M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// Vertex of each indecomposable summand of `P0`, in order.
    pub vertices: Vec<usize>,
    /// Image of each generator, a vector in `M_v`.
    pub generators: Vec<Vec<Rational>>,
    pub module: Representation,
    pub map: Morphism,
}

impl ProjectiveCover {
    pub fn kernel_with_inclusion(&self) -> (Representation, Morphism) {
        kernel(&self.map, &self.module)
    }

    pub fn kernel(&self) -> Representation {
        self.kernel_with_inclusion().0
    }
}

/// Projective cover from a basis of the top `M / rad M`, vertex by vertex.
pub fn projective_cover(m: &Representation) -> ProjectiveCover {
    let a = m.algebra();
    let q = a.quiver();
    let mut vertices = Vec::new();
    let mut generators = Vec::new();
    for v in 0..q.num_vertices() {
        let d = m.dim_at(v);
        let mut rad = Matrix::zeros(d, 0);
        for k in q.arrows_into(v) {
            rad = rad.hstack(m.map(k));
        }
        let top = rad.column_space().complement_columns();
        for col in top.columns() {
            vertices.push(v);
            generators.push(col);
        }
    }
    let module = free_module(a, &vertices);
    let map = map_from_free(&vertices, &generators, m);
    ProjectiveCover { vertices, generators, module, map }
}

/// `P1 --f--> P0 --cover--> M -> 0`, both covers minimal.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation {
    pub p0_vertices: Vec<usize>,
    pub p1_vertices: Vec<usize>,
    pub p0: Representation,
    pub p1: Representation,
    pub f: Morphism,
    pub cover: Morphism,
}

pub fn minimal_projective_presentation(m: &Representation) -> ProjectivePresentation {
    let c0 = projective_cover(m);
    let (omega, incl) = c0.kernel_with_inclusion();
    let c1 = projective_cover(&omega);
    let f = incl.compose(&c1.map);
    ProjectivePresentation {
        p0_vertices: c0.vertices,
        p1_vertices: c1.vertices,
        p0: c0.module,
        p1: c1.module,
        f,
        cover: c0.map,
    }
}

/// Is `m` projective? (Its projective cover is injective.)
pub fn is_projective(m: &Representation) -> bool {
    projective_cover(m).module.total_dim() == m.total_dim()
}
