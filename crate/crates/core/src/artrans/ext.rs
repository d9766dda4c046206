use crate::exactla::{Matrix, Rational};
use crate::repcat::{cokernel, direct_sum_with_maps, hom_basis, radical_basis, HomBasis, Morphism, Representation};

use super::presentation::{map_from_free, projective_cover, ProjectiveCover};
use super::translate::tau;
use super::ArError;

/// `Ext^1(X, Y) = Hom(Omega X, Y) / (maps extending to P0)`, with the data
/// needed to build extensions.
pub struct Ext1Space {
    pub cover: ProjectiveCover,
    pub omega: Representation,
    /// `Omega X -> P0`.
    pub inclusion: Morphism,
    pub hom: HomBasis,
    /// Projection of `Hom(Omega X, Y)` coordinates onto `Ext^1` coordinates.
    pub quotient: Matrix,
}

impl Ext1Space {
    pub fn new(x: &Representation, y: &Representation) -> Result<Self, ArError> {
        let cover = projective_cover(x);
        let (omega, inclusion) = cover.kernel_with_inclusion();
        let hom = hom_basis(&omega, y)?;
        let from_p0 = hom_basis(&cover.module, y)?;
        let restricted: Vec<Vec<Rational>> = from_p0
            .basis
            .iter()
            .map(|h| hom.coordinates(&h.compose(&inclusion)).expect("restriction lies in Hom(Omega, Y)"))
            .collect();
        let quotient = Matrix::from_columns(hom.dim(), &restricted).cokernel_projection();
        Ok(Ext1Space { cover, omega, inclusion, hom, quotient })
    }

    pub fn dim(&self) -> usize {
        self.quotient.rows()
    }

    /// Class of a cocycle `Omega X -> Y`.
    pub fn class_of(&self, phi: &Morphism) -> Vec<Rational> {
        self.quotient.mul_vec(&self.hom.coordinates(phi).expect("cocycle lies in Hom(Omega, Y)"))
    }

    /// `xi . h` for an endomorphism `h` of `X`: lift `h` to `P0`, restrict
    /// to `Omega X`, precompose.
    pub fn pull_back(&self, phi: &Morphism, h: &Morphism) -> Morphism {
        let p0 = &self.cover.module;
        let images: Vec<Vec<Rational>> = self
            .cover
            .vertices
            .iter()
            .zip(&self.cover.generators)
            .map(|(&v, g)| {
                let target = h.blocks[v].mul_vec(g);
                self.cover.map.blocks[v].solve(&target).expect("cover is surjective")
            })
            .collect();
        let lift = map_from_free(&self.cover.vertices, &images, p0);
        let blocks = lift
            .compose(&self.inclusion)
            .blocks
            .iter()
            .zip(&self.inclusion.blocks)
            .map(|(img, inc)| inc.solve_matrix(img).expect("lift preserves the syzygy"))
            .collect();
        phi.compose(&Morphism { blocks })
    }

    /// The extension `0 -> Y -> E -> X -> 0` of a cocycle `phi: Omega X -> Y`,
    /// as the pushout of `P0 <- Omega X -> Y`. Returns `(E, Y -> E, E -> X)`.
    pub fn extension(
        &self,
        y: &Representation,
        phi: &Morphism,
    ) -> Result<(Representation, Morphism, Morphism), ArError> {
        let a = y.algebra();
        let ds = direct_sum_with_maps(a, &[self.cover.module.clone(), y.clone()])?;
        let psi = ds.injections[0].compose(&self.inclusion).sub(&ds.injections[1].compose(phi));
        let (middle, pi) = cokernel(&psi, &ds.sum);
        let mono = pi.compose(&ds.injections[1]);
        let down = self.cover.map.compose(&ds.projections[0]);
        let blocks = down
            .blocks
            .iter()
            .zip(&pi.blocks)
            .map(|(d, p)| {
                p.transpose()
                    .solve_matrix(&d.transpose())
                    .map(|m| m.transpose())
                    .map_err(|_| ArError::Internal("cover does not factor through the pushout".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((middle, mono, Morphism { blocks }))
    }
}

/// The almost split sequence `0 -> tau X -> E -> X -> 0`.
#[derive(Clone, Debug)]
pub struct AlmostSplitSequence {
    pub left: Representation,
    pub middle: Representation,
    pub right: Representation,
    pub mono: Morphism,
    pub epi: Morphism,
}

/// Builds the almost split sequence ending in an indecomposable
/// non-projective `x` as the pushout along a cocycle spanning the socle of
/// `Ext^1(X, tau X)` over `End(X)`, then checks exactness and non-splitness.
pub fn almost_split_sequence(x: &Representation) -> Result<AlmostSplitSequence, ArError> {
    let tx = tau(x);
    if tx.is_zero() {
        return Err(ArError::IsProjective);
    }
    let ext = Ext1Space::new(x, &tx)?;
    let nonzero = |c: &[Rational]| c.iter().any(|v| !v.is_zero());
    let mut xi = ext
        .hom
        .basis
        .iter()
        .find(|phi| nonzero(&ext.class_of(phi)))
        .cloned()
        .ok_or_else(|| ArError::Internal("Ext^1(X, tau X) vanishes".into()))?;
    let rad = radical_basis(x);
    'socle: loop {
        for r in &rad {
            let next = ext.pull_back(&xi, r);
            if nonzero(&ext.class_of(&next)) {
                xi = next;
                continue 'socle;
            }
        }
        break;
    }

    let (middle, mono, epi) = ext.extension(&tx, &xi)?;
    let seq = AlmostSplitSequence { left: tx, middle, right: x.clone(), mono, epi };
    verify_sequence(&seq)?;
    Ok(seq)
}

fn verify_sequence(s: &AlmostSplitSequence) -> Result<(), ArError> {
    let fail = |m: &str| Err(ArError::Internal(format!("almost split sequence: {m}")));
    if !s.mono.is_homomorphism(&s.left, &s.middle) || !s.epi.is_homomorphism(&s.middle, &s.right) {
        return fail("maps are not homomorphisms");
    }
    if !s.epi.compose(&s.mono).is_zero() {
        return fail("composite is nonzero");
    }
    if s.mono.rank() != s.left.total_dim() || s.epi.rank() != s.right.total_dim() {
        return fail("not short exact");
    }
    if s.middle.total_dim() != s.left.total_dim() + s.right.total_dim() {
        return fail("dimensions do not add up");
    }
    // Split iff some X -> E is a section of the epimorphism.
    let sections = hom_basis(&s.right, &s.middle)?;
    let composites: Vec<Vec<Rational>> =
        sections.basis.iter().map(|f| s.epi.compose(f).to_vector()).collect();
    let id = Morphism::identity(&s.right).to_vector();
    if Matrix::from_columns(id.len(), &composites).solve(&id).is_ok() {
        return fail("sequence splits");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::quiveralg::{build_algebra, structural_module, BoundQuiverAlgebra, Quiver, StructuralKind};
    use crate::repcat::{class_vector, is_isomorphic};

    fn a2() -> Arc<BoundQuiverAlgebra> {
        let q = Quiver::from_names(&["1", "0"], &[("a", "1", "0")]).unwrap();
        Arc::new(build_algebra(q, vec![], 30).unwrap())
    }

    #[test]
    fn a2_sequence() {
        let a = a2();
        let s1 = structural_module(&a, 0, StructuralKind::Simple);
        let s = almost_split_sequence(&s1).unwrap();
        let p1 = structural_module(&a, 0, StructuralKind::Projective);
        assert!(is_isomorphic(&s.middle, &p1).unwrap().is_some());
        assert_eq!(&class_vector(&s.left) + &class_vector(&s.right), class_vector(&s.middle));
        let p0 = structural_module(&a, 1, StructuralKind::Projective);
        assert!(matches!(almost_split_sequence(&p0), Err(ArError::IsProjective)));
    }

    #[test]
    fn ext_of_simples() {
        let a = a2();
        let s1 = structural_module(&a, 0, StructuralKind::Simple);
        let s0 = structural_module(&a, 1, StructuralKind::Simple);
        assert_eq!(Ext1Space::new(&s1, &s0).unwrap().dim(), 1);
        assert_eq!(Ext1Space::new(&s0, &s1).unwrap().dim(), 0);
    }
}
