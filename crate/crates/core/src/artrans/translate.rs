use crate::exactla::{Matrix, Rational};
use crate::quiveralg::{left_mult_matrix, BoundQuiverAlgebra};
use crate::repcat::{cokernel, Morphism, Representation};

use super::presentation::{free_module, generator_position, minimal_projective_presentation};

/// `D(M)` over the opposite algebra: dual spaces, transposed arrow matrices.
pub fn dual(m: &Representation) -> Representation {
    let op = m.algebra().opposite();
    let maps = m.maps().iter().map(Matrix::transpose).collect();
    Representation::new(op, m.dims().to_vec(), maps).expect("dual of a module is a module")
}

/// Component `x` in `e_v A e_w` of a map between indecomposable projectives
/// `P(w) -> P(v)`, read off at the generator of the source summand.
fn component(a: &BoundQuiverAlgebra, p0_vertices: &[usize], col: &[Rational], i: usize, w: usize) -> Vec<Rational> {
    let mut x = a.zero();
    let off: usize = p0_vertices[..i].iter().map(|&u| a.dim_between(u, w)).sum();
    for (k, idx) in a.basis_between(p0_vertices[i], w).into_iter().enumerate() {
        x[idx] = col[off + k].clone();
    }
    x
}

/// `Tr M = coker Hom(f, A)` over `A^op`, from a minimal projective
/// presentation `P1 -> P0 -> M`.
pub fn transpose(m: &Representation) -> Representation {
    let a = m.algebra();
    let op = a.opposite();
    let pres = minimal_projective_presentation(m);
    let (v0, v1) = (&pres.p0_vertices, &pres.p1_vertices);
    // Hom(P(v), A) is P_op(v); Hom(f, A) has components P_op(v_i) -> P_op(w_j)
    // given by left multiplication in A^op with the component of f.
    let source = free_module(&op, v0);
    let target = free_module(&op, v1);
    let mut comps: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(v1.len());
    for (j, &w) in v1.iter().enumerate() {
        let gen = generator_position(a, v1, j);
        let col = pres.f.blocks[w].column(gen);
        comps.push((0..v0.len()).map(|i| component(a, v0, &col, i, w)).collect());
    }
    let blocks = (0..op.num_vertices())
        .map(|u| {
            let mut mat = Matrix::zeros(target.dim_at(u), source.dim_at(u));
            let mut r0 = 0;
            for (j, &w) in v1.iter().enumerate() {
                let mut c0 = 0;
                for (i, &v) in v0.iter().enumerate() {
                    let blk = left_mult_matrix(&op, &comps[j][i], w, v, u);
                    mat.set_block(r0, c0, &blk);
                    c0 += op.dim_between(v, u);
                }
                r0 += op.dim_between(w, u);
            }
            mat
        })
        .collect();
    let g = Morphism { blocks };
    debug_assert!(g.is_homomorphism(&source, &target));
    cokernel(&g, &target).0
}

/// `tau M = D Tr M`.
pub fn tau(m: &Representation) -> Representation {
    dual(&transpose(m)).with_algebra(m.algebra().clone())
}

/// `tau^- M = Tr D M`.
pub fn tau_minus(m: &Representation) -> Representation {
    transpose(&dual(m)).with_algebra(m.algebra().clone())
}
