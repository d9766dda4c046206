use serde::Serialize;

use crate::exactla::{rational_roots, Matrix, Rational};

use super::hom::{check_same_algebra, end_basis, hom_basis, HomBasis};
use super::{Morphism, RepError, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionStatus {
    Complete,
    Undecided,
}

/// Indecomposable pieces with multiplicities.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub pieces: Vec<(Representation, usize)>,
    pub status: DecompositionStatus,
}

/// One isomorphism class of summands, with an embedding and a retraction
/// for every copy (`proj_i . inj_j` is `delta_ij` times the identity).
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Representation,
    pub copies: Vec<(Morphism, Morphism)>,
    /// `End/rad End` is one-dimensional.
    pub local: bool,
}

impl Summand {
    pub fn multiplicity(&self) -> usize {
        self.copies.len()
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    pub status: DecompositionStatus,
}

impl Decomposition {
    pub fn report(&self) -> DecompositionReport {
        DecompositionReport {
            pieces: self.summands.iter().map(|s| (s.module.clone(), s.multiplicity())).collect(),
            status: self.status,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.status == DecompositionStatus::Complete
    }

    /// Number of pairwise non-isomorphic indecomposable summands.
    pub fn distinct(&self) -> usize {
        self.summands.len()
    }
}

/// `tr(f g)` on the total space.
fn trace_of_product(f: &Morphism, g: &Morphism) -> Rational {
    let mut acc = Rational::zero();
    for (a, b) in f.blocks.iter().zip(&g.blocks) {
        for p in 0..a.rows() {
            for q in 0..a.cols() {
                let x = &a[(p, q)];
                if !x.is_zero() {
                    let y = &b[(q, p)];
                    if !y.is_zero() {
                        acc += &(x * y);
                    }
                }
            }
        }
    }
    acc
}

/// Coordinates (columns) spanning `rad End(M)` in the given basis: the null
/// space of the trace form `(f, g) -> tr(fg)`, which over a field of
/// characteristic zero is exactly the Jacobson radical of a faithfully
/// acting algebra.
fn radical_coordinates(end: &HomBasis) -> Matrix {
    let k = end.dim();
    let mut gram = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let t = trace_of_product(&end.basis[i], &end.basis[j]);
            gram[(i, j)] = t.clone();
            gram[(j, i)] = t;
        }
    }
    gram.kernel_basis()
}

/// A basis of `rad End(M)`.
pub fn radical_basis(m: &Representation) -> Vec<Morphism> {
    let end = end_basis(m);
    let coords = radical_coordinates(&end);
    coords.columns().iter().map(|c| end.combination(c)).collect()
}

/// `End(M)` is local, so `M` is indecomposable.
pub fn is_local(m: &Representation) -> bool {
    if m.is_zero() {
        return false;
    }
    let end = end_basis(m);
    end.dim() - radical_coordinates(&end).cols() == 1
}

/// `f - lambda` raised to the `n`-th power, vertexwise.
fn fitting_power(f: &Morphism, lambda: &Rational, n: usize) -> Vec<Matrix> {
    f.blocks
        .iter()
        .map(|b| {
            let mut s = b.clone();
            for i in 0..s.rows() {
                s[(i, i)] -= lambda;
            }
            s.pow(n)
        })
        .collect()
}

/// Deterministic stream of endomorphisms to try as splitting candidates.
fn candidates(end: &HomBasis) -> Vec<Morphism> {
    let b = &end.basis;
    let mut out: Vec<Morphism> = b.clone();
    let two = Rational::from_int(2);
    for i in 0..b.len() {
        for j in (i + 1)..b.len() {
            out.push(b[i].add(&b[j]));
            out.push(b[i].add(&b[j].scale(&two)));
        }
    }
    for i in 0..b.len() {
        for j in 0..b.len() {
            out.push(b[i].compose(&b[j]));
        }
    }
    out
}

/// Finds `M = K + I` with both parts nonzero, as per-vertex bases.
fn find_splitting(m: &Representation) -> Option<(Vec<Matrix>, Vec<Matrix>)> {
    let end = end_basis(m);
    let n = m.dims().iter().copied().max().unwrap_or(0);
    let total = m.total_dim();
    for f in candidates(&end) {
        let roots = rational_roots(&f.total_matrix().charpoly());
        for lambda in roots {
            let g = fitting_power(&f, &lambda, n);
            let rank: usize = g.iter().map(Matrix::rank).sum();
            if rank > 0 && rank < total {
                let ker = g.iter().map(Matrix::kernel_basis).collect();
                let img = g.iter().map(Matrix::column_space).collect();
                return Some((ker, img));
            }
        }
    }
    None
}

struct Piece {
    module: Representation,
    inj: Morphism,
    proj: Morphism,
    local: bool,
}

fn split_into(m: Representation, inj: Morphism, proj: Morphism, out: &mut Vec<Piece>) {
    if m.is_zero() {
        return;
    }
    if is_local(&m) {
        out.push(Piece { module: m, inj, proj, local: true });
        return;
    }
    match find_splitting(&m) {
        None => out.push(Piece { module: m, inj, proj, local: false }),
        Some((ker, img)) => {
            let nv = ker.len();
            let mut pk = Vec::with_capacity(nv);
            let mut pi = Vec::with_capacity(nv);
            for v in 0..nv {
                let k = ker[v].cols();
                let basis = ker[v].hstack(&img[v]);
                let inv = basis.inverse().expect("Fitting decomposition is direct");
                let rows = inv.rows();
                pk.push(inv.select_rows(&(0..k).collect::<Vec<_>>()));
                pi.push(inv.select_rows(&(k..rows).collect::<Vec<_>>()));
            }
            let mk = m.subrepresentation(&ker);
            let mi = m.subrepresentation(&img);
            let (ik, ii) = (Morphism { blocks: ker }, Morphism { blocks: img });
            let (pk, pi) = (Morphism { blocks: pk }, Morphism { blocks: pi });
            split_into(mk, inj.compose(&ik), pk.compose(&proj), out);
            split_into(mi, inj.compose(&ii), pi.compose(&proj), out);
        }
    }
}

/// Isomorphism test between modules with local endomorphism rings: some
/// `g . h` outside the radical of `End(X)` makes `h` an isomorphism.
fn local_isomorphism(x: &Representation, y: &Representation) -> Option<Morphism> {
    if x.dims() != y.dims() {
        return None;
    }
    let hxy = hom_basis(x, y).ok()?;
    if hxy.is_zero() {
        return None;
    }
    let hyx = hom_basis(y, x).ok()?;
    let end = end_basis(x);
    for h in &hxy.basis {
        for g in &hyx.basis {
            let c = g.compose(h);
            if end.basis.iter().any(|b| !trace_of_product(&c, b).is_zero()) {
                debug_assert!(h.is_isomorphism());
                return Some(h.clone());
            }
        }
    }
    None
}

/// Splits `m` into indecomposables by Fitting decompositions and groups the
/// pieces into isomorphism classes.
pub fn decompose_with_maps(m: &Representation) -> Decomposition {
    let mut pieces = Vec::new();
    split_into(m.clone(), Morphism::identity(m), Morphism::identity(m), &mut pieces);
    let mut summands: Vec<Summand> = Vec::new();
    let mut complete = true;
    for p in pieces {
        if !p.local {
            complete = false;
            summands.push(Summand { module: p.module, copies: vec![(p.inj, p.proj)], local: false });
            continue;
        }
        let mut placed = false;
        for s in summands.iter_mut().filter(|s| s.local) {
            if let Some(h) = local_isomorphism(&s.module, &p.module) {
                let hinv = h.inverse().expect("isomorphism");
                s.copies.push((p.inj.compose(&h), hinv.compose(&p.proj)));
                placed = true;
                break;
            }
        }
        if !placed {
            summands.push(Summand { module: p.module, copies: vec![(p.inj, p.proj)], local: true });
        }
    }
    let status = if complete { DecompositionStatus::Complete } else { DecompositionStatus::Undecided };
    Decomposition { summands, status }
}

pub fn decompose(m: &Representation) -> DecompositionReport {
    decompose_with_maps(m).report()
}

/// Deterministic sample coefficients for the generic Hom combination.
fn sample(k: usize, t: usize) -> Vec<Rational> {
    (0..k).map(|i| Rational::from_int(((t + 2) as i64).pow((i % 8) as u32) + i as i64)).collect()
}

fn grid_search(h: &HomBasis, degree: usize) -> Option<Morphism> {
    let k = h.dim();
    let side = degree + 1;
    let mut idx = vec![0usize; k];
    loop {
        let coeffs: Vec<Rational> = idx.iter().map(|&i| Rational::from_int(i as i64)).collect();
        let f = h.combination(&coeffs);
        if f.is_isomorphism() {
            return Some(f);
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < side {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

const GRID_LIMIT: usize = 4096;

/// Decides `M ≅ N` and returns an isomorphism when one exists.
///
/// Sample points of the generic Hom combination are tried first; a miss is
/// settled exactly, by the full evaluation grid when it is small and by
/// comparing decompositions otherwise.
pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<Option<Morphism>, RepError> {
    check_same_algebra(m, n)?;
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(Morphism::zero(m, n)));
    }
    let h = hom_basis(m, n)?;
    if h.is_zero() {
        return Ok(None);
    }
    for f in &h.basis {
        if f.is_isomorphism() {
            return Ok(Some(f.clone()));
        }
    }
    // The determinant has degree at most the total dimension in each variable.
    let degree = m.total_dim();
    for t in 0..=degree.min(6) {
        let f = h.combination(&sample(h.dim(), t));
        if f.is_isomorphism() {
            return Ok(Some(f));
        }
    }
    let side = degree + 1;
    let grid = (0..h.dim()).try_fold(1usize, |acc, _| acc.checked_mul(side).filter(|&x| x <= GRID_LIMIT));
    if grid.is_some() {
        return Ok(grid_search(&h, degree));
    }

    let dm = decompose_with_maps(m);
    let dn = decompose_with_maps(n);
    if !dm.is_complete() || !dn.is_complete() {
        return Err(RepError::UndecidedDecomposition);
    }
    if dm.summands.len() != dn.summands.len() {
        return Ok(None);
    }
    let mut used = vec![false; dn.summands.len()];
    let mut witness = Morphism::zero(m, n);
    for s in &dm.summands {
        let mut found = false;
        for (j, t) in dn.summands.iter().enumerate() {
            if used[j] || s.multiplicity() != t.multiplicity() {
                continue;
            }
            if let Some(iso) = local_isomorphism(&s.module, &t.module) {
                for ((_, pm), (inj, _)) in s.copies.iter().zip(&t.copies) {
                    witness = witness.add(&inj.compose(&iso).compose(pm));
                }
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    debug_assert!(witness.is_isomorphism());
    Ok(Some(witness))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::quiveralg::{build_algebra, structural_module, BoundQuiverAlgebra, Quiver, StructuralKind};
    use crate::repcat::{direct_sum, hom_dim};

    fn a2() -> Arc<BoundQuiverAlgebra> {
        let q = Quiver::from_names(&["1", "0"], &[("a", "1", "0")]).unwrap();
        Arc::new(build_algebra(q, vec![], 30).unwrap())
    }

    fn kronecker() -> Arc<BoundQuiverAlgebra> {
        let q = Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        Arc::new(build_algebra(q, vec![], 30).unwrap())
    }

    #[test]
    fn simples_split() {
        let a = a2();
        let s1 = structural_module(&a, 0, StructuralKind::Simple);
        let s0 = structural_module(&a, 1, StructuralKind::Simple);
        let m = direct_sum(&a, &[s1.clone(), s0.clone()]).unwrap();
        let r = decompose(&m);
        assert_eq!(r.status, DecompositionStatus::Complete);
        assert_eq!(r.pieces.len(), 2);
        assert!(r.pieces.iter().all(|(_, k)| *k == 1));
        let p1 = structural_module(&a, 0, StructuralKind::Projective);
        assert!(is_isomorphic(&p1, &m).unwrap().is_none());
        assert_eq!(decompose(&p1).pieces.len(), 1);
    }

    #[test]
    fn multiplicities_and_maps() {
        let a = a2();
        let p1 = structural_module(&a, 0, StructuralKind::Projective);
        let s0 = structural_module(&a, 1, StructuralKind::Simple);
        let m = direct_sum(&a, &[p1.clone(), s0.clone(), p1.clone()]).unwrap();
        let d = decompose_with_maps(&m);
        assert!(d.is_complete());
        let mut mults: Vec<usize> = d.summands.iter().map(Summand::multiplicity).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 2]);
        let mut id = Morphism::zero(&m, &m);
        for s in &d.summands {
            for (inj, proj) in &s.copies {
                assert!(inj.is_homomorphism(&s.module, &m));
                assert!(proj.is_homomorphism(&m, &s.module));
                assert!(proj.compose(inj).sub(&Morphism::identity(&s.module)).is_zero());
                id = id.add(&inj.compose(proj));
            }
        }
        assert_eq!(id, Morphism::identity(&m));
    }

    #[test]
    fn regular_kronecker_modules() {
        // Point modules (1,1) with (a,b) = (1,t): iso classes depend on t.
        let a = kronecker();
        let r = Rational::from_int;
        let point = |x: i64, y: i64| {
            Representation::new(
                a.clone(),
                vec![1, 1],
                vec![Matrix::from_rows(vec![vec![r(x)]], 1), Matrix::from_rows(vec![vec![r(y)]], 1)],
            )
            .unwrap()
        };
        assert!(is_isomorphic(&point(1, 2), &point(2, 4)).unwrap().is_some());
        assert!(is_isomorphic(&point(1, 2), &point(1, 3)).unwrap().is_none());
        let m = direct_sum(&a, &[point(1, 2), point(1, 3)]).unwrap();
        let n = direct_sum(&a, &[point(1, 3), point(2, 4)]).unwrap();
        let w = is_isomorphic(&m, &n).unwrap().unwrap();
        assert!(w.is_homomorphism(&m, &n) && w.is_isomorphism());
        assert_eq!(decompose(&m).pieces.len(), 2);
        assert_eq!(hom_dim(&point(1, 2), &point(1, 3)).unwrap(), 0);
    }

    #[test]
    fn radical_of_local_and_split_ends() {
        let a = a2();
        let p1 = structural_module(&a, 0, StructuralKind::Projective);
        assert!(radical_basis(&p1).is_empty());
        let s1 = structural_module(&a, 0, StructuralKind::Simple);
        let m = direct_sum(&a, &[p1, s1]).unwrap();
        // End has dimension 3 (two identities and P(1) -> S(1)); radical is 1-dimensional.
        assert_eq!(radical_basis(&m).len(), 1);
    }
}
