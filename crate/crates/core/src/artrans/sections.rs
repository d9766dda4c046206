use serde::Serialize;

use crate::repcat::Morphism;

use super::knit::ARQuiverFragment;
use super::ArError;

/// A set of fragment vertices forming a section: connected, acyclic, convex
/// and meeting each tau-orbit of its component exactly once.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Section {
    pub vertices: Vec<usize>,
}

impl Section {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

fn check_path(f: &ARQuiverFragment, path: &[usize]) -> Result<(), ArError> {
    if path.iter().any(|&v| v >= f.len()) {
        return Err(ArError::PathNotInFragment);
    }
    for w in path.windows(2) {
        if f.arrow(w[0], w[1]).is_none() {
            return Err(ArError::PathNotInFragment);
        }
    }
    Ok(())
}

/// A path `X_0 -> ... -> X_t` is sectional when `tau X_i != X_{i-2}` throughout.
pub fn is_sectional(f: &ARQuiverFragment, path: &[usize]) -> Result<bool, ArError> {
    check_path(f, path)?;
    Ok((2..path.len()).all(|i| f.tau[path[i]] != Some(path[i - 2])))
}

/// Composite of the first recorded irreducible map along each arrow.
pub fn compose_irreducibles(f: &ARQuiverFragment, path: &[usize]) -> Result<Morphism, ArError> {
    check_path(f, path)?;
    let first = *path.first().ok_or(ArError::PathNotInFragment)?;
    let mut acc = Morphism::identity(&f.vertices[first]);
    for w in path.windows(2) {
        let arrow = f.arrow(w[0], w[1]).ok_or(ArError::PathNotInFragment)?;
        acc = arrow.maps[0].compose(&acc);
    }
    Ok(acc)
}

/// All sectional paths of length `len` (number of arrows).
pub fn sectional_paths(f: &ARQuiverFragment, len: usize) -> Vec<Vec<usize>> {
    let mut paths: Vec<Vec<usize>> = (0..f.len()).map(|v| vec![v]).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &paths {
            let last = *p.last().expect("nonempty");
            for (t, _) in f.successors(last) {
                let k = p.len();
                if k >= 2 && f.tau[t] == Some(p[k - 2]) {
                    continue;
                }
                let mut q = p.clone();
                q.push(t);
                next.push(q);
            }
        }
        paths = next;
    }
    paths
}

/// `reach[x][y]`: a path of positive length from `x` to `y` exists.
fn reachability(f: &ARQuiverFragment) -> Vec<Vec<bool>> {
    let n = f.len();
    let mut reach = vec![vec![false; n]; n];
    for a in &f.arrows {
        reach[a.source][a.target] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach
}

struct SectionCheck<'a> {
    f: &'a ARQuiverFragment,
    reach: Vec<Vec<bool>>,
    orbit: Vec<usize>,
    component: Vec<usize>,
}

impl SectionCheck<'_> {
    fn new(f: &ARQuiverFragment, component: Vec<usize>) -> SectionCheck<'_> {
        SectionCheck { f, reach: reachability(f), orbit: f.orbit_ids(), component }
    }

    fn orbits(&self) -> Vec<Vec<usize>> {
        let mut ids: Vec<usize> = self.component.iter().map(|&v| self.orbit[v]).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.iter().map(|&o| self.component.iter().copied().filter(|&v| self.orbit[v] == o).collect()).collect()
    }

    /// Convexity for the chosen set, ignoring vertices whose orbit is still open.
    fn convex_so_far(&self, chosen: &[usize], open: &dyn Fn(usize) -> bool) -> bool {
        for &x in chosen {
            if self.reach[x][x] {
                return false;
            }
            for &y in chosen {
                if x == y || !self.reach[x][y] {
                    continue;
                }
                for &z in &self.component {
                    if self.reach[x][z] && self.reach[z][y] && !chosen.contains(&z) && !open(z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn connected(&self, set: &[usize]) -> bool {
        let Some(&start) = set.first() else { return true };
        let mut seen = vec![start];
        let mut k = 0;
        while k < seen.len() {
            let v = seen[k];
            k += 1;
            for a in &self.f.arrows {
                let u = if a.source == v {
                    a.target
                } else if a.target == v {
                    a.source
                } else {
                    continue;
                };
                if set.contains(&u) && !seen.contains(&u) {
                    seen.push(u);
                }
            }
        }
        seen.len() == set.len()
    }

    fn validate(&self, set: &[usize]) -> Result<(), String> {
        let orbits = self.orbits();
        for o in &orbits {
            let hits = o.iter().filter(|v| set.contains(v)).count();
            if hits != 1 {
                return Err(format!("meets the tau-orbit of vertex {} {hits} times", o[0]));
            }
        }
        if set.len() != orbits.len() {
            return Err("contains vertices outside the component".into());
        }
        if !self.convex_so_far(set, &|_| false) {
            return Err("not convex or not acyclic".into());
        }
        if !self.connected(set) {
            return Err("not connected".into());
        }
        Ok(())
    }
}

fn component_of(f: &ARQuiverFragment, vertices: &[usize]) -> Result<Vec<usize>, ArError> {
    let comps = f.components();
    match vertices.first() {
        None if comps.len() == 1 => Ok(comps[0].clone()),
        None => Err(ArError::NotOneComponent),
        Some(&v) => {
            let c = comps.into_iter().find(|c| c.contains(&v)).ok_or(ArError::PathNotInFragment)?;
            if vertices.iter().all(|w| c.contains(w)) {
                Ok(c)
            } else {
                Err(ArError::NotOneComponent)
            }
        }
    }
}

/// Checks that `vertices` is a section of their component.
pub fn validate_section(f: &ARQuiverFragment, vertices: &[usize]) -> Result<Section, ArError> {
    if vertices.iter().any(|&v| v >= f.len()) {
        return Err(ArError::PathNotInFragment);
    }
    let mut set = vertices.to_vec();
    set.sort_unstable();
    set.dedup();
    let check = SectionCheck::new(f, component_of(f, &set)?);
    check.validate(&set).map_err(ArError::NotASection)?;
    Ok(Section { vertices: set })
}

/// All sections of the component containing `required`, in increasing order.
pub fn find_sections(f: &ARQuiverFragment, required: &[usize]) -> Result<Vec<Section>, ArError> {
    if required.iter().any(|&v| v >= f.len()) {
        return Err(ArError::PathNotInFragment);
    }
    let check = SectionCheck::new(f, component_of(f, required)?);
    Ok(sections_of(&check, required))
}

fn sections_of(check: &SectionCheck<'_>, required: &[usize]) -> Vec<Section> {
    let orbits = check.orbits();
    let mut options: Vec<Vec<usize>> = Vec::with_capacity(orbits.len());
    for o in &orbits {
        let forced: Vec<usize> = o.iter().copied().filter(|v| required.contains(v)).collect();
        match forced.len() {
            0 => options.push(o.clone()),
            1 => options.push(forced),
            _ => return Vec::new(),
        }
    }

    fn rec(check: &SectionCheck<'_>, options: &[Vec<usize>], chosen: &mut Vec<usize>, out: &mut Vec<Section>) {
        let k = chosen.len();
        if k == options.len() {
            let mut set = chosen.clone();
            set.sort_unstable();
            if check.validate(&set).is_ok() {
                out.push(Section { vertices: set });
            }
            return;
        }
        for &v in &options[k] {
            chosen.push(v);
            let open = |z: usize| options[k + 1..].iter().any(|o| o.contains(&z));
            if check.convex_so_far(chosen, &open) {
                rec(check, options, chosen, out);
            }
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    rec(check, &options, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The union over all components of the least section through the
/// required vertices of that component; `None` if some component has none.
pub fn least_section_by_component(f: &ARQuiverFragment, required: &[usize]) -> Result<Option<Section>, ArError> {
    if required.iter().any(|&v| v >= f.len()) {
        return Err(ArError::PathNotInFragment);
    }
    let mut union = Vec::new();
    for comp in f.components() {
        let req: Vec<usize> = required.iter().copied().filter(|v| comp.contains(v)).collect();
        let check = SectionCheck::new(f, comp);
        match sections_of(&check, &req).into_iter().next() {
            Some(s) => union.extend(s.vertices),
            None => return Ok(None),
        }
    }
    union.sort_unstable();
    Ok(Some(Section { vertices: union }))
}

/// Checks that `vertices` meets every component in a section of it.
pub fn validate_section_union(f: &ARQuiverFragment, vertices: &[usize]) -> Result<Section, ArError> {
    if vertices.iter().any(|&v| v >= f.len()) {
        return Err(ArError::PathNotInFragment);
    }
    let mut set = vertices.to_vec();
    set.sort_unstable();
    set.dedup();
    for comp in f.components() {
        let part: Vec<usize> = set.iter().copied().filter(|v| comp.contains(v)).collect();
        let check = SectionCheck::new(f, comp);
        check.validate(&part).map_err(ArError::NotASection)?;
    }
    Ok(Section { vertices: set })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artrans::{knit, KnitLimits};
    use crate::quiveralg::families::{linear, star};
    use crate::quiveralg::{structural_module, StructuralKind};

    fn d4() -> ARQuiverFragment {
        knit(&star(3), KnitLimits::default()).unwrap()
    }

    fn locate(f: &ARQuiverFragment, v: usize, kind: StructuralKind) -> usize {
        f.find(&structural_module(&f.algebra, v, kind)).unwrap()
    }

    #[test]
    fn injectives_of_the_star_form_a_section() {
        let f = d4();
        let inj: Vec<usize> = (0..4).map(|v| locate(&f, v, StructuralKind::Injective)).collect();
        let sections = find_sections(&f, &[inj[0]]).unwrap();
        let mut want = inj.clone();
        want.sort_unstable();
        assert!(sections.iter().any(|s| s.vertices == want));
        assert!(validate_section(&f, &inj).is_ok());
        assert!(sections.iter().all(|s| s.vertices.len() == 4));
    }

    #[test]
    fn simples_of_the_arms_lie_on_a_section() {
        let f = d4();
        let simples: Vec<usize> = (1..4).map(|v| locate(&f, v, StructuralKind::Simple)).collect();
        assert!(!find_sections(&f, &simples).unwrap().is_empty());
    }

    #[test]
    fn orbit_conditions() {
        let f = d4();
        let x = locate(&f, 1, StructuralKind::Simple);
        let tx = f.tau[x].unwrap();
        assert!(find_sections(&f, &[x, tx]).unwrap().is_empty());
        let inj: Vec<usize> = (0..3).map(|v| locate(&f, v, StructuralKind::Injective)).collect();
        assert!(matches!(validate_section(&f, &inj), Err(ArError::NotASection(_))));
    }

    #[test]
    fn sectional_tests() {
        let f = d4();
        for x in 0..f.len() {
            assert!(is_sectional(&f, &[x]).unwrap());
            for (y, _) in f.successors(x) {
                assert!(is_sectional(&f, &[x, y]).unwrap());
                if let Some(z) = f.tau_inverse(x) {
                    assert!(!is_sectional(&f, &[x, y, z]).unwrap());
                }
            }
        }
        let p = locate(&f, 0, StructuralKind::Projective);
        let i = locate(&f, 0, StructuralKind::Injective);
        assert!(matches!(is_sectional(&f, &[p, i]), Err(ArError::PathNotInFragment)));
    }

    #[test]
    fn sectional_composites_are_nonzero() {
        for a in [star(3), linear(4)] {
            let f = knit(&a, KnitLimits::default()).unwrap();
            for len in 1..f.len() {
                let paths = sectional_paths(&f, len);
                if paths.is_empty() {
                    break;
                }
                for p in paths {
                    assert!(!compose_irreducibles(&f, &p).unwrap().is_zero(), "path {p:?}");
                }
            }
        }
    }
}
