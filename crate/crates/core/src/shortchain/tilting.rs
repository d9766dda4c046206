use std::fmt;

use serde::Serialize;

use crate::artrans::{tau, Ext1Space};
use crate::exactla::Matrix;
use crate::quiveralg::is_hereditary;
use crate::repcat::{
    decompose_with_maps, endomorphism_algebra, hom_basis, hom_dim, EndomorphismAlgebra, Representation,
};

use super::ShortChainError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ext1Method {
    /// `Hom(Omega X, Y)` modulo maps extending to the projective cover.
    Resolution,
    /// `D Hom(Y, tau X)`, valid over hereditary algebras.
    ARFormula,
}

pub fn ext1_dim(x: &Representation, y: &Representation, method: Ext1Method) -> Result<usize, ShortChainError> {
    match method {
        Ext1Method::Resolution => Ok(Ext1Space::new(x, y)?.dim()),
        Ext1Method::ARFormula => {
            if !is_hereditary(x.algebra())? {
                return Err(ShortChainError::NotHereditary);
            }
            Ok(hom_dim(y, &tau(x))?)
        }
    }
}

/// Evidence that `T` is tilting over a hereditary algebra.
#[derive(Clone, Debug)]
pub struct TiltingCertificate {
    pub summands: Vec<Representation>,
    pub multiplicities: Vec<usize>,
    /// `hom_tau[i][j] = dim Hom(T_j, tau T_i)`, all zero.
    pub hom_tau: Vec<Vec<usize>>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum TiltingFailure {
    SummandCount { found: usize, rank: usize },
    ExtNonzero { i: usize, j: usize, dim: usize },
}

impl fmt::Display for TiltingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TiltingFailure::SummandCount { found, rank } => {
                write!(f, "tilting: {found} distinct summands for {rank} vertices")
            }
            TiltingFailure::ExtNonzero { i, j, dim } => {
                write!(f, "tilting: Ext^1(T_{i}, T_{j}) has dimension {dim}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum TiltingVerdict {
    Tilting(TiltingCertificate),
    NotTilting(TiltingFailure),
}

impl TiltingVerdict {
    pub fn certificate(self) -> Result<TiltingCertificate, ShortChainError> {
        match self {
            TiltingVerdict::Tilting(c) => Ok(c),
            TiltingVerdict::NotTilting(f) => Err(ShortChainError::NotTilting(f)),
        }
    }
}

/// Checks `Ext^1(T, T) = 0` (by the AR formula, cross-checked against the
/// resolution) and that `T` has as many distinct summands as vertices.
pub fn is_tilting(t: &Representation) -> Result<TiltingVerdict, ShortChainError> {
    if !is_hereditary(t.algebra())? {
        return Err(ShortChainError::NotHereditary);
    }
    let dec = decompose_with_maps(t);
    if !dec.is_complete() {
        return Err(ShortChainError::UndecidedDecomposition);
    }
    let rank = t.algebra().num_vertices();
    if dec.distinct() != rank {
        return Ok(TiltingVerdict::NotTilting(TiltingFailure::SummandCount { found: dec.distinct(), rank }));
    }
    let summands: Vec<Representation> = dec.summands.iter().map(|s| s.module.clone()).collect();
    let mut hom_tau = vec![vec![0; rank]; rank];
    for (i, ti) in summands.iter().enumerate() {
        let tau_i = tau(ti);
        for (j, tj) in summands.iter().enumerate() {
            let d = hom_dim(tj, &tau_i)?;
            let r = ext1_dim(ti, tj, Ext1Method::Resolution)?;
            if d != r {
                return Err(ShortChainError::VerificationFailed(format!(
                    "Ext^1(T_{i}, T_{j}): AR formula gives {d}, resolution gives {r}"
                )));
            }
            if d != 0 {
                return Ok(TiltingVerdict::NotTilting(TiltingFailure::ExtNonzero { i, j, dim: d }));
            }
            hom_tau[i][j] = d;
        }
    }
    let multiplicities = dec.summands.iter().map(|s| s.multiplicity()).collect();
    Ok(TiltingVerdict::Tilting(TiltingCertificate { summands, multiplicities, hom_tau, rank }))
}

/// `End_H(T)` for a tilting module, presented as a bound quiver algebra.
pub fn tilted_algebra(t: &Representation, _certificate: &TiltingCertificate) -> Result<EndomorphismAlgebra, ShortChainError> {
    Ok(endomorphism_algebra(t)?)
}

/// `Hom_H(T, X)` as a right module over the presented `End_H(T)`: the
/// space at vertex `i` is `Hom(T_i, X)`, and an arrow `y : i -> j` acts by
/// `f |-> f . y`.
pub fn hom_functor_image(end: &EndomorphismAlgebra, x: &Representation) -> Result<Representation, ShortChainError> {
    let homs = end.summands.iter().map(|ti| hom_basis(ti, x)).collect::<Result<Vec<_>, _>>()?;
    let dims: Vec<usize> = homs.iter().map(|h| h.dim()).collect();
    let b = &end.algebra;
    let maps = b
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, ar)| {
            let y = b.path_element(&b.quiver().arrow_path(k));
            let c = end.component(&y, ar.source, ar.target);
            let cols: Vec<_> = homs[ar.source]
                .basis
                .iter()
                .map(|f| homs[ar.target].coordinates(&f.compose(&c)).expect("f . y lies in Hom(T_j, X)"))
                .collect();
            Matrix::from_columns(dims[ar.target], &cols)
        })
        .collect();
    Ok(Representation::new(b.clone(), dims, maps)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionClass {
    /// `Ext^1(T, X) = 0`.
    Torsion,
    /// `Hom(T, X) = 0`.
    TorsionFree,
    Neither,
}

pub fn torsion_membership(t: &Representation, x: &Representation) -> Result<TorsionClass, ShortChainError> {
    if ext1_dim(t, x, Ext1Method::Resolution)? == 0 {
        return Ok(TorsionClass::Torsion);
    }
    if hom_dim(t, x)? == 0 {
        return Ok(TorsionClass::TorsionFree);
    }
    Ok(TorsionClass::Neither)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artrans::{knit, KnitLimits};
    use crate::quiveralg::families::linear;
    use crate::quiveralg::{structural_module, StructuralKind};
    use crate::repcat::{direct_sum, is_isomorphic};

    fn structurals(n: usize, kind: StructuralKind) -> Representation {
        let a = linear(n);
        let parts: Vec<_> = (0..n).map(|v| structural_module(&a, v, kind)).collect();
        direct_sum(&a, &parts).unwrap()
    }

    #[test]
    fn ext_of_a2_simples_by_both_methods() {
        let a = linear(2);
        let s1 = structural_module(&a, 0, StructuralKind::Simple);
        let s2 = structural_module(&a, 1, StructuralKind::Simple);
        for m in [Ext1Method::Resolution, Ext1Method::ARFormula] {
            assert_eq!(ext1_dim(&s1, &s2, m).unwrap(), 1);
            assert_eq!(ext1_dim(&s2, &s1, m).unwrap(), 0);
        }
    }

    #[test]
    fn methods_agree_over_a3() {
        let a = linear(3);
        let f = knit(&a, KnitLimits::default()).unwrap();
        for x in &f.vertices {
            for y in &f.vertices {
                assert_eq!(
                    ext1_dim(x, y, Ext1Method::Resolution).unwrap(),
                    ext1_dim(x, y, Ext1Method::ARFormula).unwrap()
                );
            }
        }
    }

    #[test]
    fn regular_and_dual_modules_are_tilting() {
        for kind in [StructuralKind::Projective, StructuralKind::Injective] {
            let t = structurals(3, kind);
            assert!(matches!(is_tilting(&t).unwrap(), TiltingVerdict::Tilting(_)));
        }
        let a = linear(3);
        let p1 = structural_module(&a, 0, StructuralKind::Projective);
        let p2 = structural_module(&a, 1, StructuralKind::Projective);
        let t = direct_sum(&a, &[p1.clone(), p1, p2]).unwrap();
        assert!(matches!(
            is_tilting(&t).unwrap(),
            TiltingVerdict::NotTilting(TiltingFailure::SummandCount { found: 2, rank: 3 })
        ));
    }

    #[test]
    fn hom_functor_of_t_is_regular() {
        let t = structurals(3, StructuralKind::Injective);
        let cert = is_tilting(&t).unwrap().certificate().unwrap();
        let end = tilted_algebra(&t, &cert).unwrap();
        assert!(is_hereditary(&end.algebra).unwrap());
        let image = hom_functor_image(&end, &t).unwrap();
        let b = &end.algebra;
        let regular: Vec<_> = (0..3).map(|v| structural_module(b, v, StructuralKind::Projective)).collect();
        let regular = direct_sum(b, &regular).unwrap();
        assert!(is_isomorphic(&image, &regular).unwrap().is_some());
        for (i, ti) in end.summands.iter().enumerate() {
            assert_eq!(image.dim_at(i), hom_dim(ti, &t).unwrap());
        }
    }

    #[test]
    fn torsion_classes_split() {
        let a = linear(3);
        let t = structurals(3, StructuralKind::Injective);
        for v in 0..3 {
            let i = structural_module(&a, v, StructuralKind::Injective);
            assert_eq!(torsion_membership(&t, &i).unwrap(), TorsionClass::Torsion);
        }
        let f = knit(&a, KnitLimits::default()).unwrap();
        for x in &f.vertices {
            assert_ne!(torsion_membership(&t, x).unwrap(), TorsionClass::Neither);
        }
    }
}
