use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::quiveralg::{structural_module, BoundQuiverAlgebra, StructuralKind};
use crate::repcat::{decompose_with_maps, is_isomorphic, Morphism, Representation};

use super::ext::almost_split_sequence;
use super::translate::tau_minus;
use super::ArError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KnitLimits {
    pub max_modules: usize,
    pub max_total_dim: usize,
}

impl Default for KnitLimits {
    fn default() -> Self {
        KnitLimits { max_modules: 500, max_total_dim: 64 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FragmentStatus {
    CompleteFiniteType,
    TruncatedAtBound { max_modules: usize, max_total_dim: usize },
}

/// Arrow of the AR quiver with a basis of irreducible maps modulo `rad^2`.
#[derive(Clone, Debug)]
pub struct FragmentArrow {
    pub source: usize,
    pub target: usize,
    pub multiplicity: usize,
    pub maps: Vec<Morphism>,
}

#[derive(Clone, Debug)]
pub struct ARQuiverFragment {
    pub algebra: Arc<BoundQuiverAlgebra>,
    pub vertices: Vec<Representation>,
    pub arrows: Vec<FragmentArrow>,
    /// `tau[i] = Some(j)` when `tau X_i = X_j` is in the fragment.
    pub tau: Vec<Option<usize>>,
    pub projective: Vec<bool>,
    pub injective: Vec<bool>,
    pub status: FragmentStatus,
}

impl ARQuiverFragment {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.status == FragmentStatus::CompleteFiniteType
    }

    /// Index of the vertex isomorphic to `m`.
    pub fn find(&self, m: &Representation) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.dims() == m.dims() && matches!(is_isomorphic(v, m), Ok(Some(_))))
    }

    pub fn arrow(&self, s: usize, t: usize) -> Option<&FragmentArrow> {
        self.arrows.iter().find(|a| a.source == s && a.target == t)
    }

    pub fn predecessors(&self, i: usize) -> Vec<(usize, usize)> {
        self.arrows.iter().filter(|a| a.target == i).map(|a| (a.source, a.multiplicity)).collect()
    }

    pub fn successors(&self, i: usize) -> Vec<(usize, usize)> {
        self.arrows.iter().filter(|a| a.source == i).map(|a| (a.target, a.multiplicity)).collect()
    }

    /// `tau^- X_i`, looked up through the pairing.
    pub fn tau_inverse(&self, i: usize) -> Option<usize> {
        self.tau.iter().position(|&t| t == Some(i))
    }

    /// Orbit id per vertex, orbits numbered by least member.
    pub fn orbit_ids(&self) -> Vec<usize> {
        let n = self.len();
        let mut id: Vec<usize> = (0..n).collect();
        fn root(id: &mut [usize], mut x: usize) -> usize {
            while id[x] != x {
                id[x] = id[id[x]];
                x = id[x];
            }
            x
        }
        for i in 0..n {
            if let Some(j) = self.tau[i] {
                let (a, b) = (root(&mut id, i), root(&mut id, j));
                let (lo, hi) = (a.min(b), a.max(b));
                id[hi] = lo;
            }
        }
        (0..n).map(|i| root(&mut id, i)).collect()
    }

    pub fn orbit_count(&self) -> usize {
        let ids = self.orbit_ids();
        (0..self.len()).filter(|&i| ids[i] == i).count()
    }

    /// Connected components of the underlying graph (arrows and tau-pairs).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![start];
            comp[start] = c;
            let mut k = 0;
            while k < members.len() {
                let v = members[k];
                k += 1;
                let mut nbrs: Vec<usize> = Vec::new();
                for a in &self.arrows {
                    if a.source == v {
                        nbrs.push(a.target);
                    }
                    if a.target == v {
                        nbrs.push(a.source);
                    }
                }
                nbrs.extend(self.tau[v]);
                nbrs.extend(self.tau_inverse(v));
                for u in nbrs {
                    if comp[u] == usize::MAX {
                        comp[u] = c;
                        members.push(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Vertices where predecessors of `X` differ from successors of `tau X`.
    pub fn mesh_violations(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| match self.tau[i] {
                Some(t) => {
                    let p: BTreeMap<usize, usize> = self.predecessors(i).into_iter().collect();
                    let s: BTreeMap<usize, usize> = self.successors(t).into_iter().collect();
                    p != s
                }
                None => false,
            })
            .collect()
    }
}

struct Knitter {
    algebra: Arc<BoundQuiverAlgebra>,
    limits: KnitLimits,
    vertices: Vec<Representation>,
    truncated: bool,
}

impl Knitter {
    /// Index of `m` in the vertex list, adding it when new and within limits,
    /// with an isomorphism from the stored vertex to `m`.
    fn add_with_iso(
        &mut self,
        m: Representation,
        queue: &mut VecDeque<usize>,
    ) -> Result<Option<(usize, Morphism)>, ArError> {
        for (i, v) in self.vertices.iter().enumerate() {
            if v.dims() == m.dims() {
                if let Some(iso) = is_isomorphic(v, &m)? {
                    return Ok(Some((i, iso)));
                }
            }
        }
        if m.total_dim() > self.limits.max_total_dim || self.vertices.len() >= self.limits.max_modules {
            self.truncated = true;
            return Ok(None);
        }
        let id = Morphism::identity(&m);
        self.vertices.push(m);
        queue.push_back(self.vertices.len() - 1);
        Ok(Some((self.vertices.len() - 1, id)))
    }

    fn add(&mut self, m: Representation, queue: &mut VecDeque<usize>) -> Result<Option<usize>, ArError> {
        Ok(self.add_with_iso(m, queue)?.map(|(i, _)| i))
    }

    /// Indecomposable summands of `e` with the components of `f: e -> target`.
    fn split_arrows(
        &mut self,
        e: &Representation,
        f: &Morphism,
        target: usize,
        queue: &mut VecDeque<usize>,
        arrows: &mut Vec<FragmentArrow>,
    ) -> Result<(), ArError> {
        let dec = decompose_with_maps(e);
        if !dec.is_complete() {
            return Err(ArError::Rep(crate::repcat::RepError::UndecidedDecomposition));
        }
        for s in dec.summands {
            if let Some((src, iso)) = self.add_with_iso(s.module, queue)? {
                let maps: Vec<Morphism> = s.copies.iter().map(|(inj, _)| f.compose(inj).compose(&iso)).collect();
                arrows.push(FragmentArrow { source: src, target, multiplicity: maps.len(), maps });
            }
        }
        Ok(())
    }
}

/// Knits the AR quiver from the indecomposable projectives.
///
/// Each new non-projective vertex gets its almost split sequence (which
/// yields `tau X` and the arrows into `X`); each projective gets the
/// summands of its radical; `tau^- X` is added by `Tr D` and checked against
/// the pairing found from the other side.
pub fn knit(a: &Arc<BoundQuiverAlgebra>, limits: KnitLimits) -> Result<ARQuiverFragment, ArError> {
    let mut k = Knitter { algebra: a.clone(), limits, vertices: Vec::new(), truncated: false };
    let mut queue = VecDeque::new();
    let mut arrows: Vec<FragmentArrow> = Vec::new();
    let mut tau: BTreeMap<usize, usize> = BTreeMap::new();
    let mut tau_inv: BTreeMap<usize, usize> = BTreeMap::new();
    let mut inverse_pairs = Vec::new();
    let mut projective = Vec::new();
    for v in 0..a.num_vertices() {
        let p = structural_module(a, v, StructuralKind::Projective);
        let i = k.add(p, &mut queue)?;
        projective.push(i);
    }
    let injectives: Vec<Representation> =
        (0..a.num_vertices()).map(|v| structural_module(a, v, StructuralKind::Injective)).collect();

    while let Some(i) = queue.pop_front() {
        let x = k.vertices[i].clone();
        if projective.contains(&Some(i)) {
            let (rad, incl) = radical_of_projective(&x);
            if !rad.is_zero() {
                k.split_arrows(&rad, &incl, i, &mut queue, &mut arrows)?;
            }
        } else {
            let seq = almost_split_sequence(&x)?;
            match k.add(seq.left.clone(), &mut queue)? {
                Some(t) => {
                    if let Some(&prev) = tau_inv.get(&t) {
                        if prev != i {
                            return Err(ArError::Internal(format!(
                                "tau of vertex {i} coincides with tau of vertex {prev}"
                            )));
                        }
                    }
                    tau.insert(i, t);
                    tau_inv.insert(t, i);
                }
                None => continue,
            }
            k.split_arrows(&seq.middle, &seq.epi, i, &mut queue, &mut arrows)?;
        }
        let is_injective = injectives.iter().any(|inj| inj.dims() == x.dims() && matches!(is_isomorphic(inj, &x), Ok(Some(_))));
        if is_injective {
            let quot = socle_quotient(&x);
            if !quot.is_zero() {
                for s in decompose_with_maps(&quot).summands {
                    k.add(s.module, &mut queue)?;
                }
            }
        } else {
            let y = tau_minus(&x);
            if let Some(j) = k.add(y, &mut queue)? {
                inverse_pairs.push((i, j));
            }
        }
    }
    for &(i, j) in &inverse_pairs {
        if let Some(&t) = tau.get(&j) {
            if t != i {
                return Err(ArError::Internal(format!(
                    "tau^- of vertex {i} is vertex {j}, but tau of {j} is {t}"
                )));
            }
        }
    }

    let n = k.vertices.len();
    let vertices = k.vertices;
    let is_inj: Vec<bool> = vertices
        .iter()
        .map(|x| injectives.iter().any(|inj| inj.dims() == x.dims() && matches!(is_isomorphic(inj, x), Ok(Some(_)))))
        .collect();
    let all_injectives = injectives.iter().all(|inj| {
        vertices.iter().any(|x| inj.dims() == x.dims() && matches!(is_isomorphic(inj, x), Ok(Some(_))))
    });
    let complete = !k.truncated && all_injectives;
    let status = if complete {
        FragmentStatus::CompleteFiniteType
    } else {
        FragmentStatus::TruncatedAtBound { max_modules: limits.max_modules, max_total_dim: limits.max_total_dim }
    };
    let mut is_proj = vec![false; n];
    for i in projective.into_iter().flatten() {
        is_proj[i] = true;
    }
    let mut tau_vec = vec![None; n];
    for (i, t) in tau {
        tau_vec[i] = Some(t);
    }
    arrows.sort_by_key(|a| (a.target, a.source));
    let frag = ARQuiverFragment {
        algebra: k.algebra,
        vertices,
        arrows,
        tau: tau_vec,
        projective: is_proj,
        injective: is_inj,
        status,
    };
    if frag.is_complete() {
        let bad = frag.mesh_violations();
        if !bad.is_empty() {
            return Err(ArError::Internal(format!("mesh condition fails at vertices {bad:?}")));
        }
    }
    Ok(frag)
}

/// `rad P` with its inclusion into `P`, for an indecomposable projective `P`.
fn radical_of_projective(p: &Representation) -> (Representation, Morphism) {
    let q = p.algebra().quiver();
    let bases = (0..q.num_vertices())
        .map(|v| {
            let mut img = crate::exactla::Matrix::zeros(p.dim_at(v), 0);
            for k in q.arrows_into(v) {
                img = img.hstack(p.map(k));
            }
            img.column_space()
        })
        .collect::<Vec<_>>();
    let rad = p.subrepresentation(&bases);
    (rad, Morphism { blocks: bases })
}

/// `M / soc M`.
fn socle_quotient(m: &Representation) -> Representation {
    let q = m.algebra().quiver();
    let bases = (0..q.num_vertices())
        .map(|v| {
            let mut stacked = crate::exactla::Matrix::zeros(0, m.dim_at(v));
            for k in q.arrows_from(v) {
                stacked = stacked.vstack(m.map(k));
            }
            stacked.kernel_basis()
        })
        .collect::<Vec<_>>();
    m.quotient(&bases).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiveralg::families::{kronecker, linear, linear_with_zero_relations, star};

    fn complete(a: &Arc<BoundQuiverAlgebra>) -> ARQuiverFragment {
        let f = knit(a, KnitLimits::default()).unwrap();
        assert!(f.is_complete());
        assert!(f.mesh_violations().is_empty());
        f
    }

    #[test]
    fn dynkin_counts() {
        assert_eq!(complete(&linear(2)).len(), 3);
        assert_eq!(complete(&linear(3)).len(), 6);
        assert_eq!(complete(&linear(4)).len(), 10);
        let d4 = complete(&star(3));
        assert_eq!(d4.len(), 12);
        assert_eq!(d4.orbit_count(), 4);
        assert_eq!(d4.components().len(), 1);
    }

    #[test]
    fn zero_relation_drops_the_long_interval() {
        let a = linear_with_zero_relations(3, &[&["b1", "b2"]]);
        let f = complete(&a);
        assert_eq!(f.len(), 5);
        assert!(f.vertices.iter().all(|x| x.total_dim() <= 2));
    }

    #[test]
    fn projectives_and_injectives_are_flagged() {
        let f = complete(&linear(3));
        assert_eq!(f.projective.iter().filter(|&&p| p).count(), 3);
        assert_eq!(f.injective.iter().filter(|&&p| p).count(), 3);
        for i in 0..f.len() {
            assert_eq!(f.tau[i].is_none(), f.projective[i]);
        }
    }

    #[test]
    fn tame_algebras_truncate() {
        let limits = KnitLimits { max_modules: 40, max_total_dim: 12 };
        let f = knit(&kronecker(), limits).unwrap();
        assert_eq!(f.status, FragmentStatus::TruncatedAtBound { max_modules: 40, max_total_dim: 12 });
        let f = knit(&star(4), limits).unwrap();
        assert!(!f.is_complete());
        assert!(f.vertices.iter().all(|x| x.total_dim() <= 12));
    }

    #[test]
    fn irreducible_maps_are_homomorphisms() {
        let f = complete(&star(3));
        for a in &f.arrows {
            assert_eq!(a.maps.len(), a.multiplicity);
            for m in &a.maps {
                assert!(m.is_homomorphism(&f.vertices[a.source], &f.vertices[a.target]));
                assert!(!m.is_zero());
            }
        }
    }
}
