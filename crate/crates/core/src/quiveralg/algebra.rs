use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::exactla::{Matrix, Rational};

use super::quiver::{enumerate_paths, Path, Quiver, Relation};
use super::AlgebraError;

/// Dense coordinates of an algebra element in the path basis.
pub type Element = Vec<Rational>;

/// Sparse coordinates: `(basis index, coefficient)` pairs, indices increasing.
pub type Sparse = Vec<(usize, Rational)>;

/// A finite-dimensional algebra `KQ/I` with an explicit basis of paths and
/// its multiplication table.
///
/// Multiplication is concatenation: `basis[i] * basis[j]` is the class of
/// "traverse `basis[i]`, then `basis[j]`".
pub struct BoundQuiverAlgebra {
    quiver: Quiver,
    relations: Vec<Relation>,
    basis: Vec<Path>,
    mult: Vec<Vec<Sparse>>,
    /// Every path of length `>= loewy` is zero.
    loewy: usize,
    index: HashMap<Path, usize>,
    fingerprint: u64,
    opposite: OnceLock<Arc<BoundQuiverAlgebra>>,
}

pub const DEFAULT_NILPOTENCY_BOUND: usize = 30;

impl BoundQuiverAlgebra {
    fn assemble(quiver: Quiver, relations: Vec<Relation>, basis: Vec<Path>, mult: Vec<Vec<Sparse>>, loewy: usize) -> Self {
        let index = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut h = DefaultHasher::new();
        quiver.hash(&mut h);
        basis.hash(&mut h);
        for row in &mult {
            for e in row {
                e.hash(&mut h);
            }
        }
        BoundQuiverAlgebra {
            quiver,
            relations,
            basis,
            mult,
            loewy,
            index,
            fingerprint: h.finish(),
            opposite: OnceLock::new(),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn loewy_bound(&self) -> usize {
        self.loewy
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Basis indices of paths from `s` to `t`, in basis order.
    pub fn basis_between(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].source == s && self.basis[i].target == t).collect()
    }

    pub fn dim_between(&self, s: usize, t: usize) -> usize {
        self.basis.iter().filter(|p| p.source == s && p.target == t).count()
    }

    /// `C[s][t] = dim e_s A e_t`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        (0..n).map(|s| (0..n).map(|t| self.dim_between(s, t)).collect()).collect()
    }

    pub fn zero(&self) -> Element {
        vec![Rational::zero(); self.dim()]
    }

    pub fn vertex_element(&self, v: usize) -> Element {
        let mut e = self.zero();
        let i = self.index[&self.quiver.stationary(v)];
        e[i] = Rational::one();
        e
    }

    pub fn identity(&self) -> Element {
        let mut e = self.zero();
        for v in 0..self.num_vertices() {
            e[self.index[&self.quiver.stationary(v)]] = Rational::one();
        }
        e
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = Rational::one();
        e
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.mult[i][j]
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Element {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, v) in &self.mult[i][j] {
                    out[*k] += &(&c * v);
                }
            }
        }
        out
    }

    /// The class of an arbitrary path of the quiver.
    pub fn path_element(&self, p: &Path) -> Element {
        if p.len() >= self.loewy {
            return self.zero();
        }
        if let Some(&i) = self.index.get(p) {
            return self.basis_element(i);
        }
        let mut acc = self.vertex_element(p.source);
        for &a in &p.arrows {
            let ai = self.index[&self.quiver.arrow_path(a)];
            let mut next = self.zero();
            for (i, c) in acc.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, v) in &self.mult[i][ai] {
                    next[*k] += &(c * v);
                }
            }
            acc = next;
        }
        acc
    }

    pub fn relation_element(&self, r: &Relation) -> Element {
        let mut out = self.zero();
        for (c, p) in &r.terms {
            for (o, x) in out.iter_mut().zip(self.path_element(p)) {
                *o += &(c * &x);
            }
        }
        out
    }

    /// Indices of basis paths of length at least two (they span `J^2`).
    pub fn radical_square_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].len() >= 2).collect()
    }

    pub fn same_as(&self, other: &BoundQuiverAlgebra) -> bool {
        std::ptr::eq(self, other) || (self.fingerprint == other.fingerprint && self == other)
    }

    /// The opposite algebra. Basis paths are reversed and the multiplication
    /// table transposed, so basis index `i` of the result corresponds to
    /// basis index `i` of `self`.
    pub fn opposite(self: &Arc<Self>) -> Arc<BoundQuiverAlgebra> {
        self.opposite
            .get_or_init(|| {
                let quiver = self.quiver.opposite();
                let relations = self.relations.iter().map(Relation::reversed).collect();
                let basis = self.basis.iter().map(Path::reversed).collect();
                let n = self.dim();
                let mult = (0..n).map(|i| (0..n).map(|j| self.mult[j][i].clone()).collect()).collect();
                Arc::new(BoundQuiverAlgebra::assemble(quiver, relations, basis, mult, self.loewy))
            })
            .clone()
    }

    pub fn is_opposite_of(&self, other: &BoundQuiverAlgebra) -> bool {
        let n = self.dim();
        n == other.dim()
            && self.quiver == other.quiver.opposite()
            && self.basis.iter().zip(&other.basis).all(|(p, q)| *p == q.reversed())
            && (0..n).all(|i| (0..n).all(|j| self.mult[i][j] == other.mult[j][i]))
    }

    /// Matrix of right multiplication by `a` restricted to `e_u A e_v -> e_u A e_w`
    /// (columns indexed by `basis_between(u, v)`, rows by `basis_between(u, w)`).
    pub fn right_mult_matrix(&self, a: &[Rational], u: usize, v: usize, w: usize) -> Matrix {
        let src = self.basis_between(u, v);
        let tgt = self.basis_between(u, w);
        let pos: HashMap<usize, usize> = tgt.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for (col, &i) in src.iter().enumerate() {
            for (j, c) in a.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, v) in &self.mult[i][j] {
                    let row = *pos.get(k).expect("product lands in e_u A e_w");
                    m[(row, col)] += &(c * v);
                }
            }
        }
        m
    }

    /// Direct product of algebras: disjoint union of quivers.
    pub fn product(&self, other: &BoundQuiverAlgebra) -> BoundQuiverAlgebra {
        let quiver = self.quiver.disjoint_union(&other.quiver);
        let nv = self.num_vertices();
        let na = self.quiver.num_arrows();
        let shift = |p: &Path| Path {
            source: p.source + nv,
            target: p.target + nv,
            arrows: p.arrows.iter().map(|a| a + na).collect(),
        };
        let mut relations = self.relations.clone();
        relations.extend(
            other.relations.iter().map(|r| Relation::new(r.terms.iter().map(|(c, p)| (c.clone(), shift(p))).collect())),
        );
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().map(shift));
        let d1 = self.dim();
        let n = basis.len();
        let mut mult = vec![vec![Vec::new(); n]; n];
        for i in 0..d1 {
            for j in 0..d1 {
                mult[i][j] = self.mult[i][j].clone();
            }
        }
        for i in 0..other.dim() {
            for j in 0..other.dim() {
                mult[d1 + i][d1 + j] = other.mult[i][j].iter().map(|(k, c)| (k + d1, c.clone())).collect();
            }
        }
        BoundQuiverAlgebra::assemble(quiver, relations, basis, mult, self.loewy.max(other.loewy))
    }

    /// Spot check of associativity and unit on all basis triples.
    pub fn check_associative(&self) -> bool {
        let n = self.dim();
        let one = self.identity();
        for i in 0..n {
            let bi = self.basis_element(i);
            if self.mul(&one, &bi) != bi || self.mul(&bi, &one) != bi {
                return false;
            }
            for j in 0..n {
                let ij = self.mul(&bi, &self.basis_element(j));
                for k in 0..n {
                    let bk = self.basis_element(k);
                    let left = self.mul(&ij, &bk);
                    let right = self.mul(&bi, &self.mul(&self.basis_element(j), &bk));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl PartialEq for BoundQuiverAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.basis == other.basis && self.mult == other.mult
    }
}

impl Eq for BoundQuiverAlgebra {}

impl std::fmt::Debug for BoundQuiverAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BoundQuiverAlgebra")
            .field("vertices", &self.quiver.vertices())
            .field("arrows", &self.quiver.arrows().iter().map(|a| &a.name).collect::<Vec<_>>())
            .field("dim", &self.dim())
            .finish()
    }
}

/// Paths of length `<= max_len` grouped by endpoints, each group in
/// ascending path order.
pub(super) struct Graded {
    groups: HashMap<(usize, usize), Vec<Path>>,
    pos: HashMap<Path, usize>,
}

impl Graded {
    pub(super) fn new(q: &Quiver, max_len: usize) -> Self {
        let mut groups: HashMap<(usize, usize), Vec<Path>> = HashMap::new();
        for p in enumerate_paths(q, max_len) {
            groups.entry((p.source, p.target)).or_default().push(p);
        }
        let mut pos = HashMap::new();
        for g in groups.values() {
            for (i, p) in g.iter().enumerate() {
                pos.insert(p.clone(), i);
            }
        }
        Graded { groups, pos }
    }

    /// Generators `p * r * q` of the ideal, truncated to length `<= max_len`,
    /// as dense rows per endpoint pair. Columns are in *descending* path order
    /// so that elimination pivots on the longest paths.
    fn ideal_rows(&self, rels: &[Relation], max_len: usize) -> HashMap<(usize, usize), Vec<Vec<Rational>>> {
        let mut rows: HashMap<(usize, usize), Vec<Vec<Rational>>> = HashMap::new();
        let all: Vec<&Path> = self.groups.values().flatten().collect();
        for r in rels {
            let m = r.min_len();
            if m > max_len {
                continue;
            }
            let left: Vec<&&Path> = all.iter().filter(|p| p.target == r.source() && p.len() + m <= max_len).collect();
            let right: Vec<&&Path> = all.iter().filter(|p| p.source == r.target() && p.len() + m <= max_len).collect();
            for p in &left {
                for s in &right {
                    if p.len() + s.len() + m > max_len {
                        continue;
                    }
                    let key = (p.source, s.target);
                    let group = &self.groups[&key];
                    let n = group.len();
                    let mut v = vec![Rational::zero(); n];
                    let mut any = false;
                    for (c, t) in &r.terms {
                        let full = p.concat(t).and_then(|x| x.concat(s)).expect("composable");
                        if full.len() > max_len {
                            continue;
                        }
                        let col = n - 1 - self.pos[&full];
                        v[col] += c;
                        any = true;
                    }
                    if any && v.iter().any(|x| !x.is_zero()) {
                        rows.entry(key).or_default().push(v);
                    }
                }
            }
        }
        rows
    }

    /// Is `cand` in the ideal generated by `rels`, modulo paths longer than `max_len`?
    pub(super) fn contains(&self, rels: &[Relation], cand: &Relation, max_len: usize) -> bool {
        let key = (cand.source(), cand.target());
        let Some(group) = self.groups.get(&key) else {
            return false;
        };
        let n = group.len();
        let mut v = vec![Rational::zero(); n];
        for (c, p) in &cand.terms {
            if p.len() <= max_len {
                v[n - 1 - self.pos[p]] += c;
            }
        }
        if v.iter().all(Rational::is_zero) {
            return true;
        }
        let gens = self.ideal_rows(rels, max_len).remove(&key).unwrap_or_default();
        let base = Matrix::from_rows(gens.clone(), n).rank();
        let mut ext = gens;
        ext.push(v);
        Matrix::from_rows(ext, n).rank() == base
    }
}

/// Builds `KQ/I` with an explicit path basis.
///
/// Relation consequences are eliminated length by length; the algebra is
/// accepted once every path of some length `L <= nilpotency_bound + 1` lies
/// in the ideal, which under admissibility forces `J^L` into `I`.
pub fn build_algebra(q: Quiver, rels: Vec<Relation>, nilpotency_bound: usize) -> Result<BoundQuiverAlgebra, AlgebraError> {
    for r in &rels {
        r.validate(&q)?;
    }
    for ell in 1..=nilpotency_bound + 1 {
        let graded = Graded::new(&q, ell);
        let has_top = graded.groups.values().flatten().any(|p| p.len() == ell);
        if has_top && !top_degree_in_ideal(&rels, &graded, ell) {
            continue;
        }
        return Ok(assemble_quotient(q, rels, ell));
    }
    Err(AlgebraError::InfiniteDimensional { bound: nilpotency_bound })
}

fn top_degree_in_ideal(rels: &[Relation], graded: &Graded, ell: usize) -> bool {
    let rows = graded.ideal_rows(rels, ell);
    for (key, group) in &graded.groups {
        let n = group.len();
        let tops: Vec<usize> = (0..n).filter(|&i| group[i].len() == ell).collect();
        if tops.is_empty() {
            continue;
        }
        let gens = rows.get(key).cloned().unwrap_or_default();
        let g = Matrix::from_rows(gens.clone(), n);
        let mut ext = gens;
        for &i in &tops {
            let mut v = vec![Rational::zero(); n];
            v[n - 1 - i] = Rational::one();
            ext.push(v);
        }
        if Matrix::from_rows(ext, n).rank() != g.rank() {
            return false;
        }
    }
    true
}

fn assemble_quotient(q: Quiver, rels: Vec<Relation>, loewy: usize) -> BoundQuiverAlgebra {
    let max_len = loewy - 1;
    let graded = Graded::new(&q, max_len);
    let rows = graded.ideal_rows(&rels, max_len);

    // Normal forms of every path of length < loewy, in group-local columns.
    let mut basis_paths: Vec<Path> = Vec::new();
    let mut reductions: HashMap<Path, Vec<(Path, Rational)>> = HashMap::new();
    let mut keys: Vec<_> = graded.groups.keys().copied().collect();
    keys.sort();
    for key in keys {
        let group = &graded.groups[&key];
        let n = group.len();
        let gens = rows.get(&key).cloned().unwrap_or_default();
        let rr = Matrix::from_rows(gens, n).rref();
        let mut is_pivot = vec![false; n];
        for &c in &rr.pivot_columns {
            is_pivot[c] = true;
        }
        for col in 0..n {
            if !is_pivot[col] {
                basis_paths.push(group[n - 1 - col].clone());
            }
        }
        for (row, &c) in rr.pivot_columns.iter().enumerate() {
            let p = group[n - 1 - c].clone();
            let mut nf = Vec::new();
            for f in 0..n {
                if !is_pivot[f] && !rr.reduced[(row, f)].is_zero() {
                    nf.push((group[n - 1 - f].clone(), -&rr.reduced[(row, f)]));
                }
            }
            reductions.insert(p, nf);
        }
    }
    basis_paths.sort_by(|a, b| q.path_cmp(a, b));
    let index: HashMap<Path, usize> = basis_paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let normal_form = |p: &Path| -> Sparse {
        if p.len() >= loewy {
            return Vec::new();
        }
        if let Some(&i) = index.get(p) {
            return vec![(i, Rational::one())];
        }
        let mut out: Vec<(usize, Rational)> =
            reductions[p].iter().map(|(b, c)| (index[b], c.clone())).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    };
    let n = basis_paths.len();
    let mut mult = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if let Some(p) = basis_paths[i].concat(&basis_paths[j]) {
                mult[i][j] = normal_form(&p);
            }
        }
    }
    BoundQuiverAlgebra::assemble(q, rels, basis_paths, mult, loewy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Quiver {
        Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap()
    }

    #[test]
    fn path_algebra_dimension() {
        let alg = build_algebra(a3(), vec![], 30).unwrap();
        assert_eq!(alg.dim(), enumerate_paths(&a3(), 5).len());
        assert!(alg.check_associative());
    }

    #[test]
    fn truncated_loop() {
        let q = Quiver::from_names(&["x"], &[("a", "x", "x")]).unwrap();
        let r = Relation::monomial(q.path_from_names(&["a", "a"]).unwrap());
        let alg = build_algebra(q.clone(), vec![r], 30).unwrap();
        assert_eq!(alg.dim(), 2);
        assert!(alg.check_associative());
        assert!(matches!(build_algebra(q, vec![], 30), Err(AlgebraError::InfiniteDimensional { .. })));
    }

    #[test]
    fn commutative_square() {
        let q = Quiver::from_names(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap();
        let r = Relation::new(vec![
            (Rational::one(), q.path_from_names(&["a", "b"]).unwrap()),
            (Rational::from_int(-1), q.path_from_names(&["c", "d"]).unwrap()),
        ]);
        let alg = build_algebra(q.clone(), vec![r], 30).unwrap();
        assert_eq!(alg.dim(), 9);
        let ab = alg.path_element(&q.path_from_names(&["a", "b"]).unwrap());
        let cd = alg.path_element(&q.path_from_names(&["c", "d"]).unwrap());
        assert_eq!(ab, cd);
        assert!(alg.check_associative());
    }

    #[test]
    fn invalid_relations() {
        let q = a3();
        let short = Relation::monomial(q.arrow_path(0));
        assert!(matches!(build_algebra(q.clone(), vec![short], 30), Err(AlgebraError::InvalidRelation(_))));
        let q2 = Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3"), ("d", "3", "3")])
            .unwrap();
        let bad = Relation::new(vec![
            (Rational::one(), q2.path_from_names(&["a", "b"]).unwrap()),
            (Rational::one(), q2.path_from_names(&["c", "d", "d"]).unwrap()),
            (Rational::one(), q2.path_from_names(&["d", "d"]).unwrap()),
        ]);
        assert!(matches!(build_algebra(q2, vec![bad], 30), Err(AlgebraError::InvalidRelation(_))));
    }

    #[test]
    fn opposite_is_involutive() {
        let alg = Arc::new(build_algebra(a3(), vec![], 30).unwrap());
        let op = alg.opposite();
        assert_eq!(op.dim(), alg.dim());
        assert!(op.is_opposite_of(&alg));
        let opop = op.opposite();
        assert!(opop.same_as(&alg));
        assert!(op.check_associative());
    }
}
