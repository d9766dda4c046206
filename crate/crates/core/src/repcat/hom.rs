use std::sync::Arc;

use crate::exactla::{Matrix, Rational};
use crate::quiveralg::BoundQuiverAlgebra;

use super::{Morphism, RepError, Representation};

/// A basis of `Hom(M, N)`: every solution of the intertwining equations is a
/// unique combination of `basis`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    pub basis: Vec<Morphism>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Columns are the stacked entry vectors of the basis morphisms.
    pub fn to_matrix(&self) -> Matrix {
        let len: usize = self.source_dims.iter().zip(&self.target_dims).map(|(a, b)| a * b).sum();
        let cols: Vec<Vec<Rational>> = self.basis.iter().map(Morphism::to_vector).collect();
        Matrix::from_columns(len, &cols)
    }

    /// Coordinates of `f` in the basis, if `f` lies in the span.
    pub fn coordinates(&self, f: &Morphism) -> Option<Vec<Rational>> {
        self.to_matrix().solve(&f.to_vector()).ok()
    }

    pub fn combination(&self, coeffs: &[Rational]) -> Morphism {
        let mut blocks: Vec<Matrix> =
            self.source_dims.iter().zip(&self.target_dims).map(|(&a, &b)| Matrix::zeros(b, a)).collect();
        for (f, c) in self.basis.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (acc, b) in blocks.iter_mut().zip(&f.blocks) {
                *acc = acc.add(&b.scale(c));
            }
        }
        Morphism { blocks }
    }
}

pub(crate) fn check_same_algebra(m: &Representation, n: &Representation) -> Result<(), RepError> {
    if m.algebra().same_as(n.algebra()) {
        Ok(())
    } else {
        Err(RepError::AlgebraMismatch)
    }
}

/// Basis of `Hom(M, N)` from the null space of the stacked intertwining system.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<HomBasis, RepError> {
    check_same_algebra(m, n)?;
    let q = m.algebra().quiver();
    let md = m.dims();
    let nd = n.dims();
    let mut offset = Vec::with_capacity(md.len());
    let mut unknowns = 0;
    for v in 0..md.len() {
        offset.push(unknowns);
        unknowns += nd[v] * md[v];
    }
    let neq: usize = q.arrows().iter().map(|a| nd[a.target] * md[a.source]).sum();
    let mut sys = Matrix::zeros(neq, unknowns);
    let mut row = 0;
    for (k, a) in q.arrows().iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let ma = m.map(k);
        let na = n.map(k);
        // (f_j M_a - N_a f_i)[r, c] = 0
        for r in 0..nd[j] {
            for c in 0..md[i] {
                for kk in 0..md[j] {
                    let x = &ma[(kk, c)];
                    if !x.is_zero() {
                        sys[(row, offset[j] + r * md[j] + kk)] += x;
                    }
                }
                for kk in 0..nd[i] {
                    let x = &na[(r, kk)];
                    if !x.is_zero() {
                        sys[(row, offset[i] + kk * md[i] + c)] -= x;
                    }
                }
                row += 1;
            }
        }
    }
    let ker = sys.kernel_basis();
    let basis = (0..ker.cols())
        .map(|col| {
            let blocks = (0..md.len())
                .map(|v| {
                    let mut b = Matrix::zeros(nd[v], md[v]);
                    for r in 0..nd[v] {
                        for c in 0..md[v] {
                            b[(r, c)] = ker[(offset[v] + r * md[v] + c, col)].clone();
                        }
                    }
                    b
                })
                .collect();
            Morphism { blocks }
        })
        .collect();
    Ok(HomBasis { source_dims: md.to_vec(), target_dims: nd.to_vec(), basis })
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize, RepError> {
    hom_basis(m, n).map(|h| h.dim())
}

/// Direct sum together with the canonical injections and projections.
pub struct DirectSum {
    pub sum: Representation,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

pub fn direct_sum(algebra: &Arc<BoundQuiverAlgebra>, parts: &[Representation]) -> Result<Representation, RepError> {
    direct_sum_with_maps(algebra, parts).map(|d| d.sum)
}

pub fn direct_sum_with_maps(algebra: &Arc<BoundQuiverAlgebra>, parts: &[Representation]) -> Result<DirectSum, RepError> {
    for p in parts {
        if !p.algebra().same_as(algebra) {
            return Err(RepError::AlgebraMismatch);
        }
    }
    let q = algebra.quiver();
    let nv = q.num_vertices();
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dim_at(v)).sum()).collect();
    let maps = (0..q.num_arrows())
        .map(|k| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| p.map(k)).collect();
            Matrix::block_diag(&blocks)
        })
        .collect();
    let sum = Representation::from_parts(algebra.clone(), dims.clone(), maps);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = vec![0usize; nv];
    for p in parts {
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        for v in 0..nv {
            let d = p.dim_at(v);
            let mut i = Matrix::zeros(dims[v], d);
            i.set_block(off[v], 0, &Matrix::identity(d));
            proj.push(i.transpose());
            inj.push(i);
            off[v] += d;
        }
        injections.push(Morphism { blocks: inj });
        projections.push(Morphism { blocks: proj });
    }
    Ok(DirectSum { sum, injections, projections })
}

/// `Hom(M, M)` contains the identity; convenience for tests and witnesses.
pub fn end_basis(m: &Representation) -> HomBasis {
    hom_basis(m, m).expect("same algebra")
}

/// Kernel of a homomorphism with its inclusion.
pub fn kernel(f: &Morphism, m: &Representation) -> (Representation, Morphism) {
    let bases: Vec<Matrix> = f.blocks.iter().map(Matrix::kernel_basis).collect();
    let k = m.subrepresentation(&bases);
    (k, Morphism { blocks: bases })
}

/// Image of a homomorphism as a subrepresentation of the target, with inclusion.
pub fn image(f: &Morphism, n: &Representation) -> (Representation, Morphism) {
    let bases: Vec<Matrix> = f.blocks.iter().map(Matrix::column_space).collect();
    let im = n.subrepresentation(&bases);
    (im, Morphism { blocks: bases })
}

/// Cokernel of a homomorphism with the projection from the target.
pub fn cokernel(f: &Morphism, n: &Representation) -> (Representation, Morphism) {
    let bases: Vec<Matrix> = f.blocks.iter().map(Matrix::column_space).collect();
    let (c, projs) = n.quotient(&bases);
    (c, Morphism { blocks: projs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiveralg::{build_algebra, structural_module, Quiver, StructuralKind};

    fn a2() -> Arc<BoundQuiverAlgebra> {
        let q = Quiver::from_names(&["1", "0"], &[("a", "1", "0")]).unwrap();
        Arc::new(build_algebra(q, vec![], 30).unwrap())
    }

    #[test]
    fn hom_examples_a2() {
        let a = a2();
        let p1 = structural_module(&a, 0, StructuralKind::Projective);
        let s1 = structural_module(&a, 0, StructuralKind::Simple);
        assert_eq!(hom_dim(&p1, &p1).unwrap(), 1);
        assert_eq!(hom_dim(&s1, &p1).unwrap(), 0);
        assert_eq!(hom_dim(&p1, &s1).unwrap(), 1);
        let h = hom_basis(&p1, &p1).unwrap();
        assert!(h.coordinates(&Morphism::identity(&p1)).is_some());
        for f in &h.basis {
            assert!(f.is_homomorphism(&p1, &p1));
        }
    }

    #[test]
    fn kernel_and_cokernel_of_cover() {
        let a = a2();
        let p1 = structural_module(&a, 0, StructuralKind::Projective);
        let s1 = structural_module(&a, 0, StructuralKind::Simple);
        let f = hom_basis(&p1, &s1).unwrap().basis[0].clone();
        let (k, inc) = kernel(&f, &p1);
        assert_eq!(k.dims(), &[0, 1]);
        assert!(inc.is_homomorphism(&k, &p1));
        let (c, proj) = cokernel(&inc, &p1);
        assert_eq!(c.dims(), &[1, 0]);
        assert!(proj.is_homomorphism(&p1, &c));
    }

    #[test]
    fn algebra_mismatch() {
        let a = a2();
        let b = {
            let q = Quiver::from_names(&["x"], &[]).unwrap();
            Arc::new(build_algebra(q, vec![], 30).unwrap())
        };
        let m = structural_module(&a, 0, StructuralKind::Simple);
        let n = structural_module(&b, 0, StructuralKind::Simple);
        assert!(matches!(hom_basis(&m, &n), Err(RepError::AlgebraMismatch)));
    }
}
