use std::sync::Arc;

use crate::exactla::{Matrix, Rational};
use crate::quiveralg::{present, BoundQuiverAlgebra, Element, Generators, DEFAULT_NILPOTENCY_BOUND};

use super::decompose::{decompose_with_maps, radical_basis, Decomposition};
use super::hom::{direct_sum_with_maps, hom_basis, HomBasis};
use super::{Morphism, RepError, Representation};

/// The basic algebra of `End(M)` as a bound quiver algebra.
///
/// Vertex `i` stands for the summand `X_i`; an element of `e_i E e_j` is a
/// map `X_j -> X_i`, and the product `x y` is the composite `x . y`.
#[derive(Clone, Debug)]
pub struct EndomorphismAlgebra {
    pub algebra: Arc<BoundQuiverAlgebra>,
    /// Pairwise non-isomorphic indecomposable summands, one per vertex.
    pub summands: Vec<Representation>,
    pub multiplicities: Vec<usize>,
    /// `X_1 + ... + X_r`, on which the realization acts.
    pub basic: Representation,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
    /// `basic -> M` and `M -> basic` with `retract . embed = id`.
    pub embed: Morphism,
    pub retract: Morphism,
    /// An endomorphism of `basic` for every basis path of `algebra`.
    pub realization: Vec<Morphism>,
}

impl EndomorphismAlgebra {
    pub fn element_morphism(&self, x: &[Rational]) -> Morphism {
        let mut acc = Morphism::zero(&self.basic, &self.basic);
        for (f, c) in self.realization.iter().zip(x) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }

    /// Coordinates of an endomorphism of `basic` in the path basis.
    pub fn morphism_element(&self, f: &Morphism) -> Option<Element> {
        let len = f.to_vector().len();
        let cols: Vec<Vec<Rational>> = self.realization.iter().map(Morphism::to_vector).collect();
        Matrix::from_columns(len, &cols).solve(&f.to_vector()).ok()
    }

    /// The component `X_j -> X_i` of an element.
    pub fn component(&self, x: &[Rational], i: usize, j: usize) -> Morphism {
        self.projections[i].compose(&self.element_morphism(x)).compose(&self.injections[j])
    }
}

/// Linear span bookkeeping for one block `Hom(X_j, X_i)`.
struct Block {
    hom: HomBasis,
    offset: usize,
}

pub fn endomorphism_algebra(m: &Representation) -> Result<EndomorphismAlgebra, RepError> {
    endomorphism_algebra_with(m, &decompose_with_maps(m))
}

/// As [`endomorphism_algebra`], with vertices in the order of a given
/// decomposition of `m` into pairwise non-isomorphic local summands.
pub fn endomorphism_algebra_with(m: &Representation, dec: &Decomposition) -> Result<EndomorphismAlgebra, RepError> {
    if !dec.is_complete() || dec.summands.iter().any(|s| !s.local) {
        return Err(RepError::UndecidedDecomposition);
    }
    let algebra_m = m.algebra().clone();
    let xs: Vec<Representation> = dec.summands.iter().map(|s| s.module.clone()).collect();
    let multiplicities = dec.summands.iter().map(|s| s.multiplicity()).collect();
    let r = xs.len();

    // Ambient space: the blocks Hom(X_j, X_i), concatenated.
    let mut blocks: Vec<Vec<Block>> = Vec::with_capacity(r);
    let mut dim = 0;
    for xi in &xs {
        let mut row = Vec::with_capacity(r);
        for xj in &xs {
            let hom = hom_basis(xj, xi)?;
            let len = hom.dim();
            row.push(Block { hom, offset: dim });
            dim += len;
        }
        blocks.push(row);
    }
    let block_of = |x: &[Rational], i: usize, j: usize| -> Morphism {
        let b = &blocks[i][j];
        b.hom.combination(&x[b.offset..b.offset + b.hom.dim()])
    };
    let embed_block = |f: &Morphism, i: usize, j: usize, out: &mut [Rational]| {
        let b = &blocks[i][j];
        let c = b.hom.coordinates(f).expect("composite lies in the Hom block");
        for (k, v) in c.into_iter().enumerate() {
            out[b.offset + k] += &v;
        }
    };
    let mul = |x: &[Rational], y: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for i in 0..r {
            for j in 0..r {
                let fx = block_of(x, i, j);
                if fx.is_zero() {
                    continue;
                }
                for k in 0..r {
                    let gy = block_of(y, j, k);
                    if gy.is_zero() {
                        continue;
                    }
                    embed_block(&fx.compose(&gy), i, k, &mut out);
                }
            }
        }
        out
    };
    let unit_block = |f: &Morphism, i: usize, j: usize| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        embed_block(f, i, j, &mut out);
        out
    };

    let idempotents: Vec<Vec<Rational>> =
        (0..r).map(|i| unit_block(&Morphism::identity(&xs[i]), i, i)).collect();

    // Radical blocks, then the radical square, then arrows spanning rad/rad^2.
    let rad: Vec<Vec<Vec<Morphism>>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| if i == j { radical_basis(&xs[i]) } else { blocks[i][j].hom.basis.clone() })
                .collect()
        })
        .collect();
    let mut arrows = Vec::new();
    for i in 0..r {
        for j in 0..r {
            let b = &blocks[i][j];
            let coords = |f: &Morphism| b.hom.coordinates(f).expect("in block");
            let mut span: Vec<Vec<Rational>> = Vec::new();
            for k in 0..r {
                for f in &rad[i][k] {
                    for g in &rad[k][j] {
                        span.push(coords(&f.compose(g)));
                    }
                }
            }
            let n = b.hom.dim();
            let mut rank = Matrix::from_columns(n, &span).rank();
            for f in &rad[i][j] {
                span.push(coords(f));
                let next = Matrix::from_columns(n, &span).rank();
                if next > rank {
                    rank = next;
                    let name = format!("b{}", arrows.len());
                    arrows.push((name, i, j, unit_block(f, i, j)));
                } else {
                    span.pop();
                }
            }
        }
    }
    let gens = Generators {
        vertex_names: (0..r).map(|i| i.to_string()).collect(),
        idempotents,
        arrows,
        mul: &mul,
        projection: None,
        dim,
    };
    let pres = present(&gens, DEFAULT_NILPOTENCY_BOUND)?;

    let ds = direct_sum_with_maps(&algebra_m, &xs)?;
    let realization: Vec<Morphism> = pres
        .realization
        .iter()
        .map(|x| {
            let mut acc = Morphism::zero(&ds.sum, &ds.sum);
            for i in 0..r {
                for j in 0..r {
                    let f = block_of(x, i, j);
                    if !f.is_zero() {
                        acc = acc.add(&ds.injections[i].compose(&f).compose(&ds.projections[j]));
                    }
                }
            }
            acc
        })
        .collect();
    let mut embed = Morphism::zero(&ds.sum, m);
    let mut retract = Morphism::zero(m, &ds.sum);
    for (i, s) in dec.summands.iter().enumerate() {
        let (inj, proj) = &s.copies[0];
        embed = embed.add(&inj.compose(&ds.projections[i]));
        retract = retract.add(&ds.injections[i].compose(proj));
    }
    Ok(EndomorphismAlgebra {
        algebra: Arc::new(pres.algebra),
        summands: xs,
        multiplicities,
        basic: ds.sum,
        injections: ds.injections,
        projections: ds.projections,
        embed,
        retract,
        realization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiveralg::{build_algebra, is_hereditary, structural_module, Quiver, StructuralKind};
    use crate::repcat::direct_sum;

    fn alg(vs: &[&str], arrows: &[(&str, &str, &str)]) -> Arc<BoundQuiverAlgebra> {
        Arc::new(build_algebra(Quiver::from_names(vs, arrows).unwrap(), vec![], 30).unwrap())
    }

    #[test]
    fn end_of_simples() {
        let a = alg(&["1", "0"], &[("a", "1", "0")]);
        let s1 = structural_module(&a, 0, StructuralKind::Simple);
        let e = endomorphism_algebra(&s1).unwrap();
        assert_eq!((e.algebra.num_vertices(), e.algebra.dim()), (1, 1));
        let s0 = structural_module(&a, 1, StructuralKind::Simple);
        let e = endomorphism_algebra(&direct_sum(&a, &[s1, s0]).unwrap()).unwrap();
        assert_eq!((e.algebra.num_vertices(), e.algebra.dim()), (2, 2));
        assert_eq!(e.algebra.quiver().num_arrows(), 0);
    }

    #[test]
    fn end_of_regular_module_is_the_algebra() {
        let a = alg(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]);
        let ps: Vec<_> = (0..3).map(|v| structural_module(&a, v, StructuralKind::Projective)).collect();
        let m = direct_sum(&a, &ps).unwrap();
        let e = endomorphism_algebra(&m).unwrap();
        assert_eq!(e.algebra.dim(), 6);
        assert_eq!(e.algebra.quiver().num_arrows(), 2);
        assert!(is_hereditary(&e.algebra).unwrap());
        assert!(e.algebra.check_associative());
        // The realization is multiplicative.
        let n = e.algebra.dim();
        for i in 0..n {
            for j in 0..n {
                let prod = e.algebra.mul(&e.algebra.basis_element(i), &e.algebra.basis_element(j));
                let lhs = e.element_morphism(&prod);
                let rhs = e.realization[i].compose(&e.realization[j]);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn multiplicities_collapse() {
        let a = alg(&["1", "0"], &[("a", "1", "0")]);
        let p = structural_module(&a, 0, StructuralKind::Projective);
        let m = direct_sum(&a, &[p.clone(), p]).unwrap();
        let e = endomorphism_algebra(&m).unwrap();
        assert_eq!(e.multiplicities, vec![2]);
        assert_eq!(e.algebra.dim(), 1);
        assert_eq!(e.retract.compose(&e.embed), Morphism::identity(&e.basic));
    }
}
