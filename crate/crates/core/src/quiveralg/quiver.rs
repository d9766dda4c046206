use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactla::Rational;

use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertices and arrows are addressed by index; names are
/// unique and only used at the file boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, AlgebraError> {
        let mut seen = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(AlgebraError::InvalidQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        let mut arrow_names = BTreeMap::new();
        for a in &arrows {
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(AlgebraError::InvalidQuiver(format!(
                    "arrow {:?} has an undeclared endpoint",
                    a.name
                )));
            }
            if arrow_names.insert(a.name.clone(), ()).is_some() {
                return Err(AlgebraError::InvalidQuiver(format!("duplicate arrow {:?}", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Convenience constructor from names: arrows are `(name, from, to)`.
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self, AlgebraError> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let idx = |n: &str| {
            vs.iter()
                .position(|v| v == n)
                .ok_or_else(|| AlgebraError::InvalidQuiver(format!("unknown vertex {n:?}")))
        };
        let mut arr = Vec::new();
        for (name, s, t) in arrows {
            arr.push(Arrow { name: name.to_string(), source: idx(s)?, target: idx(t)? });
        }
        Quiver::new(vs, arr)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].target == v)
    }

    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
            .collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm.
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in &self.arrows {
                if a.source == v {
                    indeg[a.target] -= 1;
                    if indeg[a.target] == 0 {
                        stack.push(a.target);
                    }
                }
            }
        }
        seen == n
    }

    /// Number of arrows from `s` to `t`.
    pub fn arrow_count(&self, s: usize, t: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == s && a.target == t).count()
    }

    pub fn stationary(&self, v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let ar = &self.arrows[a];
        Path { source: ar.source, target: ar.target, arrows: vec![a] }
    }

    /// Builds a path from arrow names in traversal order.
    pub fn path_from_names(&self, names: &[&str]) -> Result<Path, AlgebraError> {
        let mut ids = Vec::new();
        for n in names {
            ids.push(
                self.arrow_index(n)
                    .ok_or_else(|| AlgebraError::InvalidRelation(format!("unknown arrow {n:?}")))?,
            );
        }
        self.path_from_arrows(ids)
    }

    pub fn path_from_arrows(&self, arrows: Vec<usize>) -> Result<Path, AlgebraError> {
        let Some(&first) = arrows.first() else {
            return Err(AlgebraError::InvalidRelation("empty arrow sequence".into()));
        };
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(AlgebraError::InvalidRelation(format!(
                    "arrows {:?} and {:?} do not compose",
                    self.arrows[w[0]].name, self.arrows[w[1]].name
                )));
            }
        }
        let last = *arrows.last().unwrap();
        Ok(Path { source: self.arrows[first].source, target: self.arrows[last].target, arrows })
    }

    pub fn path_names(&self, p: &Path) -> Vec<String> {
        p.arrows.iter().map(|&a| self.arrows[a].name.clone()).collect()
    }

    /// Deterministic path order: by length, then lexicographically on arrow
    /// names; stationary paths by vertex index.
    pub fn path_cmp(&self, a: &Path, b: &Path) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            if a.is_stationary() && b.is_stationary() {
                return a.source.cmp(&b.source);
            }
            let an = a.arrows.iter().map(|&i| self.arrows[i].name.as_str());
            let bn = b.arrows.iter().map(|&i| self.arrows[i].name.as_str());
            an.cmp(bn)
        })
    }

    /// Disjoint union; names of the second quiver get `suffix` appended when
    /// they would collide.
    pub fn disjoint_union(&self, other: &Quiver) -> Quiver {
        let n = self.vertices.len();
        let mut vertices = self.vertices.clone();
        for v in &other.vertices {
            let mut name = v.clone();
            while vertices.contains(&name) {
                name.push('\'');
            }
            vertices.push(name);
        }
        let mut arrows = self.arrows.clone();
        for a in &other.arrows {
            let mut name = a.name.clone();
            while arrows.iter().any(|b| b.name == name) {
                name.push('\'');
            }
            arrows.push(Arrow { name, source: a.source + n, target: a.target + n });
        }
        Quiver { vertices, arrows }
    }
}

/// A path in a quiver. `arrows == [a, b]` means "traverse a, then b".
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_stationary(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Concatenation `self` then `other`; `None` if they do not compose.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, target: other.target, arrows })
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { source: self.target, target: self.source, arrows }
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Rational, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Rational, Path)>) -> Self {
        Relation { terms }
    }

    pub fn monomial(p: Path) -> Self {
        Relation { terms: vec![(Rational::one(), p)] }
    }

    pub fn validate(&self, q: &Quiver) -> Result<(), AlgebraError> {
        let Some((_, first)) = self.terms.first() else {
            return Err(AlgebraError::InvalidRelation("empty relation".into()));
        };
        for (_, p) in &self.terms {
            if p.len() < 2 {
                return Err(AlgebraError::InvalidRelation(format!(
                    "path {:?} has length {} < 2",
                    q.path_names(p),
                    p.len()
                )));
            }
            if p.source != first.source || p.target != first.target {
                return Err(AlgebraError::InvalidRelation("relation paths are not parallel".into()));
            }
            q.path_from_arrows(p.arrows.clone())?;
        }
        Ok(())
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn reversed(&self) -> Relation {
        Relation { terms: self.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect() }
    }
}

/// All paths of length at most `max_len`, sorted by [`Quiver::path_cmp`].
pub fn enumerate_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..q.num_vertices()).map(|v| q.stationary(v)).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.arrows_from(p.target) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                next.push(Path { source: p.source, target: q.arrows()[a].target, arrows });
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort_by(|a, b| q.path_cmp(a, b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_counts() {
        let a2 = Quiver::from_names(&["1", "0"], &[("a", "1", "0")]).unwrap();
        assert_eq!(enumerate_paths(&a2, 5).len(), 3);

        let a3 = Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        assert_eq!(enumerate_paths(&a3, 5).len(), 6);

        let lp = Quiver::from_names(&["x"], &[("a", "x", "x")]).unwrap();
        let ps = enumerate_paths(&lp, 2);
        assert_eq!(ps.len(), 3);
        assert_eq!(ps[2].arrows, vec![0, 0]);
    }

    #[test]
    fn brute_force_path_walk_linear_a3() {
        // Independent count: a path in a linear quiver is a pair i <= j.
        let a3 = Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        let pairs = (0..3).flat_map(|i| (i..3).map(move |j| (i, j))).count();
        assert_eq!(enumerate_paths(&a3, 5).len(), pairs);
    }

    #[test]
    fn rejects_bad_quivers() {
        assert!(Quiver::from_names(&["1", "1"], &[]).is_err());
        assert!(Quiver::from_names(&["1"], &[("a", "1", "2")]).is_err());
        assert!(Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("a", "2", "1")]).is_err());
    }

    #[test]
    fn acyclicity() {
        let a3 = Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        assert!(a3.is_acyclic());
        let lp = Quiver::from_names(&["x"], &[("a", "x", "x")]).unwrap();
        assert!(!lp.is_acyclic());
    }
}
