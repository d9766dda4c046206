use std::ops::ControlFlow;

use serde::Serialize;

use crate::artrans::tau;
use crate::repcat::{
    decompose_with_maps, hom_basis, hom_dim, is_isomorphic, is_local, radical_basis, Morphism, Representation,
};

use super::enumerate::for_each_indecomposable;
use super::{Provenance, Search, ShortChainError};

/// `X -> M -> tau X` with both maps nonzero.
#[derive(Clone, Debug)]
pub struct MiddleWitness {
    pub x: Representation,
    pub tau_x: Representation,
    pub x_to_m: Morphism,
    pub m_to_tau_x: Morphism,
}

impl MiddleWitness {
    /// Re-checks the evidence from scratch.
    pub fn verify(&self, m: &Representation) -> bool {
        is_local(&self.x)
            && !self.x_to_m.is_zero()
            && !self.m_to_tau_x.is_zero()
            && self.x_to_m.is_homomorphism(&self.x, m)
            && self.m_to_tau_x.is_homomorphism(m, &self.tau_x)
            && matches!(is_isomorphic(&tau(&self.x), &self.tau_x), Ok(Some(_)))
    }
}

#[derive(Clone, Debug)]
pub enum ShortChainAnswer {
    Middle(MiddleWitness),
    NotMiddleComplete,
    NotMiddleUpToBound { max_total_dim: usize },
    NotMiddleAmongCandidates { count: usize },
}

#[derive(Clone, Debug)]
pub struct ShortChainVerdict {
    pub answer: ShortChainAnswer,
    pub provenance: Provenance,
}

impl ShortChainVerdict {
    pub fn is_middle(&self) -> bool {
        matches!(self.answer, ShortChainAnswer::Middle(_))
    }

    /// Negative over every indecomposable.
    pub fn is_complete_negative(&self) -> bool {
        matches!(self.answer, ShortChainAnswer::NotMiddleComplete)
    }

    pub fn witness(&self) -> Option<&MiddleWitness> {
        match &self.answer {
            ShortChainAnswer::Middle(w) => Some(w),
            _ => None,
        }
    }
}

/// `Y -> X -> Y` with both maps nonzero non-isomorphisms.
#[derive(Clone, Debug)]
pub struct CycleWitness {
    pub y: Representation,
    pub y_to_x: Morphism,
    pub x_to_y: Morphism,
}

#[derive(Clone, Debug)]
pub enum CycleAnswer {
    OnShortCycle(CycleWitness),
    NoShortCycleComplete,
    NoShortCycleUpToBound { max_total_dim: usize },
    NoShortCycleAmongCandidates { count: usize },
}

#[derive(Clone, Debug)]
pub struct CycleVerdict {
    pub answer: CycleAnswer,
    pub provenance: Provenance,
}

impl CycleVerdict {
    pub fn on_cycle(&self) -> bool {
        matches!(self.answer, CycleAnswer::OnShortCycle(_))
    }
}

enum Coverage {
    Complete,
    UpTo(usize),
    Among(usize),
}

/// Runs `test` on the indecomposables of the search, in order, stopping at
/// the first hit. `test` receives the candidate and, when known, its
/// translate from the fragment.
fn run<W>(
    search: &Search<'_>,
    a: &std::sync::Arc<crate::quiveralg::BoundQuiverAlgebra>,
    test: &mut dyn FnMut(&Representation, Option<Representation>) -> Result<Option<W>, ShortChainError>,
) -> Result<(Option<W>, Coverage, Provenance), ShortChainError> {
    match search {
        Search::Fragment(f) => {
            if !f.algebra.same_as(a) {
                return Err(crate::repcat::RepError::AlgebraMismatch.into());
            }
            let provenance = Provenance::Fragment { status: f.status, vertices: f.len() };
            for (i, x) in f.vertices.iter().enumerate() {
                let tx = match f.tau[i] {
                    Some(t) => Some(f.vertices[t].clone()),
                    None if f.projective[i] => Some(Representation::zero(a.clone())),
                    None => None,
                };
                if let Some(w) = test(x, tx)? {
                    return Ok((Some(w), Coverage::Complete, provenance));
                }
            }
            let coverage = if f.is_complete() { Coverage::Complete } else { Coverage::Among(f.len()) };
            Ok((None, coverage, provenance))
        }
        Search::Candidates(list) => {
            for x in list.iter() {
                if !is_local(x) {
                    return Err(ShortChainError::NotIndecomposable);
                }
                if let Some(w) = test(x, None)? {
                    return Ok((Some(w), Coverage::Among(list.len()), Provenance::Candidates { count: list.len() }));
                }
            }
            Ok((None, Coverage::Among(list.len()), Provenance::Candidates { count: list.len() }))
        }
        Search::Bounded { max_total_dim, budget } => {
            let mut hit = None;
            let mut err = None;
            let e = for_each_indecomposable(a, *max_total_dim, *budget, &mut |x| match test(x, None) {
                Ok(Some(w)) => {
                    hit = Some(w);
                    ControlFlow::Break(())
                }
                Ok(None) => ControlFlow::Continue(()),
                Err(e) => {
                    err = Some(e);
                    ControlFlow::Break(())
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            let provenance = Provenance::Bounded {
                requested_bound: *max_total_dim,
                completed_bound: e.completed_bound,
                candidates_examined: e.candidates_examined,
                budget: *budget,
            };
            Ok((hit, Coverage::UpTo(e.completed_bound), provenance))
        }
    }
}

/// Looks for an indecomposable `X` with `Hom(X, M) != 0` and
/// `Hom(M, tau X) != 0`.
pub fn is_middle_of_short_chain(m: &Representation, search: &Search<'_>) -> Result<ShortChainVerdict, ShortChainError> {
    let mut test = |x: &Representation, tx: Option<Representation>| -> Result<Option<MiddleWitness>, ShortChainError> {
        let into_m = hom_basis(x, m)?;
        if into_m.is_zero() {
            return Ok(None);
        }
        let tau_x = tx.unwrap_or_else(|| tau(x));
        if tau_x.is_zero() {
            return Ok(None);
        }
        let out_of_m = hom_basis(m, &tau_x)?;
        if out_of_m.is_zero() {
            return Ok(None);
        }
        Ok(Some(MiddleWitness {
            x: x.clone(),
            tau_x,
            x_to_m: into_m.basis[0].clone(),
            m_to_tau_x: out_of_m.basis[0].clone(),
        }))
    };
    let (hit, coverage, provenance) = run(search, m.algebra(), &mut test)?;
    let answer = match (hit, coverage) {
        (Some(w), _) => ShortChainAnswer::Middle(w),
        (None, Coverage::Complete) => ShortChainAnswer::NotMiddleComplete,
        (None, Coverage::UpTo(d)) => ShortChainAnswer::NotMiddleUpToBound { max_total_dim: d },
        (None, Coverage::Among(count)) => ShortChainAnswer::NotMiddleAmongCandidates { count },
    };
    Ok(ShortChainVerdict { answer, provenance })
}

/// Looks for `Y -> X -> Y` of nonzero non-isomorphisms between
/// indecomposables. `Y = X` counts when `X` has a nonzero radical
/// endomorphism.
pub fn lies_on_short_cycle(x: &Representation, search: &Search<'_>) -> Result<CycleVerdict, ShortChainError> {
    if !is_local(x) {
        return Err(ShortChainError::NotIndecomposable);
    }
    if let Some(r) = radical_basis(x).into_iter().next() {
        let provenance = match search {
            Search::Fragment(f) => Provenance::Fragment { status: f.status, vertices: f.len() },
            Search::Candidates(list) => Provenance::Candidates { count: list.len() },
            Search::Bounded { max_total_dim, budget } => Provenance::Bounded {
                requested_bound: *max_total_dim,
                completed_bound: 0,
                candidates_examined: 0,
                budget: *budget,
            },
        };
        let w = CycleWitness { y: x.clone(), y_to_x: r.clone(), x_to_y: r };
        return Ok(CycleVerdict { answer: CycleAnswer::OnShortCycle(w), provenance });
    }
    let mut test = |y: &Representation, _: Option<Representation>| -> Result<Option<CycleWitness>, ShortChainError> {
        if y.dims() == x.dims() && is_isomorphic(y, x)?.is_some() {
            return Ok(None);
        }
        let yx = hom_basis(y, x)?;
        if yx.is_zero() {
            return Ok(None);
        }
        let xy = hom_basis(x, y)?;
        if xy.is_zero() {
            return Ok(None);
        }
        Ok(Some(CycleWitness { y: y.clone(), y_to_x: yx.basis[0].clone(), x_to_y: xy.basis[0].clone() }))
    };
    let (hit, coverage, provenance) = run(search, x.algebra(), &mut test)?;
    let answer = match (hit, coverage) {
        (Some(w), _) => CycleAnswer::OnShortCycle(w),
        (None, Coverage::Complete) => CycleAnswer::NoShortCycleComplete,
        (None, Coverage::UpTo(d)) => CycleAnswer::NoShortCycleUpToBound { max_total_dim: d },
        (None, Coverage::Among(count)) => CycleAnswer::NoShortCycleAmongCandidates { count },
    };
    Ok(CycleVerdict { answer, provenance })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryConditions {
    pub hom_m_tau_m_zero: bool,
    pub summand_bound_ok: bool,
    pub hom_m_tau_m_dim: usize,
    pub distinct_summands: usize,
    pub rank: usize,
}

/// The two consequences of being a not-middle module: `Hom(M, tau M) = 0`
/// and at most `rank K_0(A)` distinct indecomposable summands.
pub fn necessary_conditions(m: &Representation) -> Result<NecessaryConditions, ShortChainError> {
    let dec = decompose_with_maps(m);
    if !dec.is_complete() {
        return Err(ShortChainError::UndecidedDecomposition);
    }
    let d = hom_dim(m, &tau(m))?;
    let rank = m.algebra().num_vertices();
    Ok(NecessaryConditions {
        hom_m_tau_m_zero: d == 0,
        summand_bound_ok: dec.distinct() <= rank,
        hom_m_tau_m_dim: d,
        distinct_summands: dec.distinct(),
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artrans::{knit, KnitLimits};
    use crate::quiveralg::families::{linear, star};
    use crate::quiveralg::{structural_module, StructuralKind};
    use crate::repcat::direct_sum;

    #[test]
    fn a2_middles() {
        let a = linear(2);
        let f = knit(&a, KnitLimits::default()).unwrap();
        let s1 = structural_module(&a, 0, StructuralKind::Simple);
        let s0 = structural_module(&a, 1, StructuralKind::Simple);
        let m = direct_sum(&a, &[s1.clone(), s0.clone()]).unwrap();
        let v = is_middle_of_short_chain(&m, &Search::Fragment(&f)).unwrap();
        let w = v.witness().unwrap();
        assert!(is_isomorphic(&w.x, &s1).unwrap().is_some());
        assert!(w.verify(&m));
        for x in &f.vertices {
            let v = is_middle_of_short_chain(x, &Search::Fragment(&f)).unwrap();
            assert!(v.is_complete_negative());
            assert!(!lies_on_short_cycle(x, &Search::Fragment(&f)).unwrap().on_cycle());
        }
        let nc = necessary_conditions(&m).unwrap();
        assert!(!nc.hom_m_tau_m_zero);
        let zero = Representation::zero(a.clone());
        let nc = necessary_conditions(&zero).unwrap();
        assert!(nc.hom_m_tau_m_zero && nc.summand_bound_ok);
    }

    #[test]
    fn star_injectives_are_not_middle() {
        let a = star(3);
        let f = knit(&a, KnitLimits::default()).unwrap();
        let parts: Vec<_> = (1..4).map(|v| structural_module(&a, v, StructuralKind::Injective)).collect();
        let m = direct_sum(&a, &parts).unwrap();
        assert!(is_middle_of_short_chain(&m, &Search::Fragment(&f)).unwrap().is_complete_negative());
        let nc = necessary_conditions(&m).unwrap();
        assert!(nc.hom_m_tau_m_zero && nc.summand_bound_ok);
    }

    #[test]
    fn bounded_search_is_labelled() {
        let a = linear(2);
        let s1 = structural_module(&a, 0, StructuralKind::Simple);
        let v = is_middle_of_short_chain(&s1, &Search::Bounded { max_total_dim: 3, budget: 1000 }).unwrap();
        assert!(matches!(v.answer, ShortChainAnswer::NotMiddleUpToBound { max_total_dim: 3 }));
    }

    #[test]
    fn decomposable_input_is_rejected_for_cycles() {
        let a = linear(2);
        let s1 = structural_module(&a, 0, StructuralKind::Simple);
        let m = direct_sum(&a, &[s1.clone(), s1]).unwrap();
        assert!(matches!(lies_on_short_cycle(&m, &Search::bounded_default()), Err(ShortChainError::NotIndecomposable)));
    }
}
