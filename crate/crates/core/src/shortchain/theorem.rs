use std::sync::Arc;

use crate::artrans::{
    knit, least_section_by_component, validate_section_union, ARQuiverFragment, FragmentStatus, KnitLimits, Section,
};
use crate::exactla::{Matrix, Rational};
use crate::quiveralg::{
    compare_algebras, global_dimension_upto, is_hereditary, pullback_module, quotient_algebra, structural_module,
    AlgebraComparison, AlgebraIso, BoundQuiverAlgebra, GlobalDimension, IsoLevel, QuotientData, StructuralKind,
};
use crate::repcat::{
    annihilator, decompose_with_maps, direct_sum, endomorphism_algebra, endomorphism_algebra_with, hom_dim, is_faithful,
    is_isomorphic, is_local, is_sincere, restrict_to_quotient, Decomposition, DecompositionStatus,
    EndomorphismAlgebra, Morphism, Representation, Summand,
};

use super::chains::{is_middle_of_short_chain, ShortChainVerdict};
use super::tilting::{hom_functor_image, is_tilting, TiltingCertificate, TiltingVerdict};
use super::{Search, ShortChainError};

const COMPARE_BUDGET: usize = 20_000;

/// The data reconstructed from a faithful section.
#[derive(Clone, Debug)]
pub struct SectionCriterion {
    pub section: Section,
    /// `T* = ` the direct sum of the section modules.
    pub t_star: Representation,
    /// `H = End(T*)`, with the section modules as its vertices.
    pub h: EndomorphismAlgebra,
    /// `T = D(T*)` as a right `H`-module.
    pub t: Representation,
    /// `End_H(T)`.
    pub b: EndomorphismAlgebra,
    /// `End_H(T)` against the algebra of the fragment.
    pub comparison: AlgebraComparison,
}

/// `D(T*)` as a right `H`-module: the dual of the total space of `X_i` at
/// vertex `i`, each arrow acting by the transpose of its map.
fn dual_over_end(h: &EndomorphismAlgebra) -> Result<Representation, ShortChainError> {
    let alg = &h.algebra;
    let dims = h.summands.iter().map(Representation::total_dim).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, ar)| {
            let y = alg.path_element(&alg.quiver().arrow_path(k));
            h.component(&y, ar.source, ar.target).total_matrix().transpose()
        })
        .collect();
    Ok(Representation::new(alg.clone(), dims, maps)?)
}

/// Checks that `delta` is a faithful section with `Hom(X, tau Y) = 0` on
/// it, and builds `H = End(T*)`, `T = D(T*)` and `End_H(T)`.
pub fn section_criterion(f: &ARQuiverFragment, delta: &[usize]) -> Result<SectionCriterion, ShortChainError> {
    let section = validate_section_union(f, delta)?;
    let modules: Vec<Representation> = section.vertices.iter().map(|&i| f.vertices[i].clone()).collect();
    let t_star = direct_sum(&f.algebra, &modules)?;
    if !is_faithful(&t_star) {
        return Err(ShortChainError::NotFaithful);
    }
    for &x in &section.vertices {
        for &y in &section.vertices {
            if let Some(ty) = f.tau[y] {
                if hom_dim(&f.vertices[x], &f.vertices[ty])? != 0 {
                    return Err(ShortChainError::HomTauObstruction(x, y));
                }
            }
        }
    }
    let h = endomorphism_algebra(&t_star)?;
    if !is_hereditary(&h.algebra)? {
        return Err(ShortChainError::NotHereditaryEnd);
    }
    let t = dual_over_end(&h)?;
    let b = endomorphism_algebra(&t)?;
    let comparison = compare_algebras(&b.algebra, &f.algebra, COMPARE_BUDGET);
    Ok(SectionCriterion { section, t_star, h, t, b, comparison })
}

#[derive(Clone, Copy, Debug)]
pub struct Theorem1Options {
    pub limits: KnitLimits,
    /// Used for the short-chain test when `A` itself does not knit completely.
    pub max_total_dim: usize,
    pub budget: usize,
}

impl Default for Theorem1Options {
    fn default() -> Self {
        Theorem1Options {
            limits: KnitLimits::default(),
            max_total_dim: Search::DEFAULT_BOUND,
            budget: Search::DEFAULT_BUDGET,
        }
    }
}

/// A hereditary algebra `H`, a tilting `H`-module `T` and an injective
/// `I` with `M = Hom_H(T, I)` over `B = A / ann(M) = End_H(T)`.
#[derive(Clone, Debug)]
pub struct Theorem1Certificate {
    pub verdict: ShortChainVerdict,
    pub quotient: Arc<BoundQuiverAlgebra>,
    pub quotient_data: QuotientData,
    /// `M` as a `B`-module.
    pub module: Representation,
    pub fragment_status: FragmentStatus,
    pub fragment_size: usize,
    pub section: Section,
    /// The section modules, in the vertex order of `H`.
    pub section_modules: Vec<Representation>,
    pub h: Arc<BoundQuiverAlgebra>,
    pub t: Representation,
    pub tilting: TiltingCertificate,
    /// `End_H(T)` with vertex `v` the summand of `T` cut out by `e_v`.
    pub end_t: EndomorphismAlgebra,
    /// `B -> End_H(T)` induced by the action of `B` on `T = D(T*)`.
    pub algebra_iso: AlgebraIso,
    /// Independent search comparing `End_H(T)` with `B`.
    pub quotient_comparison: IsoLevel,
    /// Multiplicity of `I_H(v)` in `I`, per vertex of `H`.
    pub injective_multiplicities: Vec<usize>,
    pub injective: Representation,
    /// `Hom_H(T, I)` over `End_H(T)`.
    pub image: Representation,
    /// `M -> Hom_H(T, I)`, the latter pulled back to `B`.
    pub module_iso: Morphism,
}

impl Theorem1Certificate {
    /// Re-checks every embedded witness from the stored data.
    pub fn verify(&self, m: &Representation) -> Result<(), String> {
        let fail = |s: &str| Err(s.to_string());
        match is_hereditary(&self.h) {
            Ok(true) => {}
            _ => return fail("H is not hereditary"),
        }
        if !matches!(is_tilting(&self.t), Ok(TiltingVerdict::Tilting(_))) {
            return fail("T is not tilting");
        }
        let iso = AlgebraIso::from_arrow_images(
            &self.quotient,
            &self.end_t.algebra,
            self.algebra_iso.vertex_map.clone(),
            self.algebra_iso.arrow_images.clone(),
        )
        .map_err(|e| e.to_string())?;
        let module = restrict_to_quotient(m, &self.quotient, &self.quotient_data).map_err(|e| e.to_string())?;
        if module != self.module {
            return fail("M over the quotient does not match");
        }
        let parts: Vec<Representation> = self
            .injective_multiplicities
            .iter()
            .enumerate()
            .flat_map(|(v, &k)| std::iter::repeat_n(structural_module(&self.h, v, StructuralKind::Injective), k))
            .collect();
        if direct_sum(&self.h, &parts).map_err(|e| e.to_string())? != self.injective {
            return fail("I is not the stated sum of indecomposable injectives");
        }
        let image = hom_functor_image(&self.end_t, &self.injective).map_err(|e| e.to_string())?;
        if image != self.image {
            return fail("Hom_H(T, I) does not match");
        }
        let pulled = pullback_module(&image, &self.quotient, &iso).map_err(|e| e.to_string())?;
        if !self.module_iso.is_homomorphism(&self.module, &pulled) || !self.module_iso.is_isomorphism() {
            return fail("M is not isomorphic to Hom_H(T, I)");
        }
        if !self.verdict.witness().is_none() {
            return fail("verdict is positive");
        }
        Ok(())
    }
}

/// The action of `b` on the total space of `x`.
fn action_matrix(x: &Representation, b: &[Rational]) -> Matrix {
    let off = x.offsets();
    let n = x.algebra().num_vertices();
    let mut out = Matrix::zeros(x.total_dim(), x.total_dim());
    for s in (0..n).filter(|&s| x.dim_at(s) > 0) {
        for t in (0..n).filter(|&t| x.dim_at(t) > 0) {
            out.set_block(off[t], off[s], &x.element_action(b, s, t));
        }
    }
    out
}

/// `B -> End_H(T)` as endomorphisms of `T`: `b` acts on `D(X_i)` by the
/// transpose of its action on `X_i`.
fn phi(crit: &SectionCriterion, b: &[Rational]) -> Morphism {
    Morphism { blocks: crit.h.summands.iter().map(|x| action_matrix(x, b).transpose()).collect() }
}

/// Presents `End_H(T)` over the summands `e_v T`, one per vertex of `B`,
/// and the isomorphism `B -> End_H(T)`.
fn explicit_tilted_iso(
    crit: &SectionCriterion,
    b: &Arc<BoundQuiverAlgebra>,
) -> Result<(EndomorphismAlgebra, AlgebraIso), ShortChainError> {
    let t = &crit.t;
    let nh = t.algebra().num_vertices();
    let mut summands = Vec::new();
    for v in 0..b.num_vertices() {
        let e = phi(crit, &b.vertex_element(v));
        if !e.is_homomorphism(t, t) {
            return Err(ShortChainError::VerificationFailed("B does not act on T by H-maps".into()));
        }
        let bases: Vec<Matrix> = (0..nh)
            .map(|i| {
                let x = &crit.h.summands[i];
                let cols: Vec<usize> = (x.offsets()[v]..x.offsets()[v] + x.dim_at(v)).collect();
                Matrix::identity(x.total_dim()).select_columns(&cols)
            })
            .collect();
        let y = t.subrepresentation(&bases);
        if !is_local(&y) {
            return Err(ShortChainError::VerificationFailed(format!("e_{v} T is not indecomposable")));
        }
        let inj = Morphism { blocks: bases };
        let proj = Morphism { blocks: inj.blocks.iter().map(Matrix::transpose).collect() };
        summands.push(Summand { module: y, copies: vec![(inj, proj)], local: true });
    }
    let dec = Decomposition { summands, status: DecompositionStatus::Complete };
    let end_t = endomorphism_algebra_with(t, &dec)?;
    let images = (0..b.quiver().num_arrows())
        .map(|k| {
            let f = phi(crit, &b.path_element(&b.quiver().arrow_path(k)));
            end_t
                .morphism_element(&end_t.retract.compose(&f).compose(&end_t.embed))
                .ok_or_else(|| ShortChainError::VerificationFailed("arrow image outside End_H(T)".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let iso = AlgebraIso::from_arrow_images(b, &end_t.algebra, (0..b.num_vertices()).collect(), images)
        .map_err(|e| ShortChainError::VerificationFailed(format!("B -> End_H(T): {e}")))?;
    Ok((end_t, iso))
}

/// Reconstructs a not-middle module `M` as `Hom_H(T, I)`.
///
/// The steps: confirm `M` is not a middle; pass to `B = A / ann(M)`, over
/// which `M` is sincere and faithful; knit `B`; take the least section
/// through the summands of `M`; build `H`, `T` from it; identify `B` with
/// `End_H(T)` explicitly; and find `I` summand by summand.
pub fn theorem1_certificate(m: &Representation, opts: &Theorem1Options) -> Result<Theorem1Certificate, ShortChainError> {
    let a = m.algebra();
    let fa = knit(a, opts.limits)?;
    let verdict = if fa.is_complete() {
        is_middle_of_short_chain(m, &Search::Fragment(&fa))?
    } else {
        is_middle_of_short_chain(m, &Search::Bounded { max_total_dim: opts.max_total_dim, budget: opts.budget })?
    };
    if verdict.is_middle() {
        return Err(ShortChainError::NotApplicable(Box::new(verdict)));
    }

    let (b, quotient_data) = quotient_algebra(a, &annihilator(m))?;
    let module = restrict_to_quotient(m, &b, &quotient_data)?;
    if !is_sincere(&module) || !is_faithful(&module) {
        return Err(ShortChainError::VerificationFailed("M is not sincere and faithful over A/ann(M)".into()));
    }

    let fb = knit(&b, opts.limits)?;
    if !fb.is_complete() {
        return Err(ShortChainError::DeskScaleExceeded(fb.status));
    }
    let dec = decompose_with_maps(&module);
    if !dec.is_complete() {
        return Err(ShortChainError::UndecidedDecomposition);
    }
    let mut required = Vec::new();
    for s in &dec.summands {
        let i = fb
            .find(&s.module)
            .ok_or_else(|| ShortChainError::VerificationFailed("summand of M missing from the AR quiver".into()))?;
        required.push(i);
    }
    let section = least_section_by_component(&fb, &required)?.ok_or(ShortChainError::NoSectionFound)?;
    let crit = section_criterion(&fb, &section.vertices)?;

    let (end_t, algebra_iso) = explicit_tilted_iso(&crit, &b)?;
    let tilting = is_tilting(&crit.t)?.certificate()?;
    let quotient_comparison = compare_algebras(&end_t.algebra, &b, COMPARE_BUDGET).level;

    // Match each summand of M with the least injective whose image is it.
    let h = crit.h.algebra.clone();
    let nh = h.num_vertices();
    let mut pulled = Vec::with_capacity(nh);
    for v in 0..nh {
        let image = hom_functor_image(&end_t, &structural_module(&h, v, StructuralKind::Injective))?;
        pulled.push(pullback_module(&image, &b, &algebra_iso)?);
    }
    let mut injective_multiplicities = vec![0; nh];
    for s in &dec.summands {
        let v = (0..nh)
            .find(|&v| pulled[v].dims() == s.module.dims() && matches!(is_isomorphic(&pulled[v], &s.module), Ok(Some(_))))
            .ok_or_else(|| ShortChainError::VerificationFailed("a summand of M is no Hom_H(T, I(v))".into()))?;
        injective_multiplicities[v] += s.multiplicity();
    }
    let parts: Vec<Representation> = injective_multiplicities
        .iter()
        .enumerate()
        .flat_map(|(v, &k)| std::iter::repeat_n(structural_module(&h, v, StructuralKind::Injective), k))
        .collect();
    let injective = direct_sum(&h, &parts)?;
    let image = hom_functor_image(&end_t, &injective)?;
    let back = pullback_module(&image, &b, &algebra_iso)?;
    let module_iso = is_isomorphic(&module, &back)?
        .ok_or_else(|| ShortChainError::VerificationFailed("M is not isomorphic to Hom_H(T, I)".into()))?;

    Ok(Theorem1Certificate {
        verdict,
        quotient: b,
        quotient_data,
        module,
        fragment_status: fb.status,
        fragment_size: fb.len(),
        section: crit.section.clone(),
        section_modules: crit.h.summands.clone(),
        h,
        t: crit.t.clone(),
        tilting,
        end_t,
        algebra_iso,
        quotient_comparison,
        injective_multiplicities,
        injective,
        image,
        module_iso,
    })
}

#[derive(Clone, Debug)]
pub struct Corollary12Report {
    pub verdict: ShortChainVerdict,
    pub end: EndomorphismAlgebra,
    pub hereditary: bool,
    pub global_dimension: GlobalDimension,
}

/// For a not-middle `M`, computes `End(M)` and checks it is hereditary.
pub fn corollary12_check(m: &Representation, search: &Search<'_>) -> Result<Corollary12Report, ShortChainError> {
    let verdict = is_middle_of_short_chain(m, search)?;
    if verdict.is_middle() {
        return Err(ShortChainError::NotApplicable(Box::new(verdict)));
    }
    let end = endomorphism_algebra(m)?;
    let hereditary = is_hereditary(&end.algebra)?;
    let global_dimension = global_dimension_upto(&end.algebra, end.algebra.num_vertices() + 1);
    Ok(Corollary12Report { verdict, end, hereditary, global_dimension })
}
