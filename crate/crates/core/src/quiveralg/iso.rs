use std::sync::Arc;

use serde::Serialize;

use crate::exactla::{Matrix, Rational};
use crate::repcat::{RepError, Representation};

use super::quiver::Path;
use super::{AlgebraError, BoundQuiverAlgebra, Element};

/// How strongly two algebras were shown to agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoLevel {
    /// Not even the fingerprint matches.
    Different,
    /// Vertex bijection preserving arrow counts, dimension and Cartan matrix.
    Fingerprint,
    /// An algebra isomorphism was constructed and verified.
    Explicit,
}

/// A unital algebra isomorphism `A -> B` determined by the images of arrows.
#[derive(Clone, Debug)]
pub struct AlgebraIso {
    pub vertex_map: Vec<usize>,
    pub arrow_images: Vec<Element>,
    /// `dim B x dim A`: images of the basis paths of `A`.
    pub matrix: Matrix,
}

impl AlgebraIso {
    /// Checks that the data extends to an isomorphism: idempotents go to
    /// idempotents, each arrow image lies in the right corner, every relation
    /// maps to zero and the induced linear map is bijective.
    pub fn from_arrow_images(
        a: &BoundQuiverAlgebra,
        b: &BoundQuiverAlgebra,
        vertex_map: Vec<usize>,
        arrow_images: Vec<Element>,
    ) -> Result<Self, AlgebraError> {
        let bad = |msg: &str| Err(AlgebraError::InternalInconsistency(msg.to_string()));
        if a.dim() != b.dim() || vertex_map.len() != a.num_vertices() || a.num_vertices() != b.num_vertices() {
            return bad("algebras have different shapes");
        }
        let mut seen = vec![false; b.num_vertices()];
        for &w in &vertex_map {
            if w >= seen.len() || seen[w] {
                return bad("vertex map is not a bijection");
            }
            seen[w] = true;
        }
        let qa = a.quiver();
        for (k, ar) in qa.arrows().iter().enumerate() {
            let x = &arrow_images[k];
            let (s, t) = (vertex_map[ar.source], vertex_map[ar.target]);
            let corner = b.mul(&b.mul(&b.vertex_element(s), x), &b.vertex_element(t));
            if &corner != x {
                return bad("arrow image outside its corner");
            }
        }
        let image_of = |p: &Path| -> Element {
            let mut acc = b.vertex_element(vertex_map[p.source]);
            for &k in &p.arrows {
                acc = b.mul(&acc, &arrow_images[k]);
            }
            acc
        };
        for r in a.relations() {
            let mut acc = b.zero();
            for (c, p) in &r.terms {
                for (x, y) in acc.iter_mut().zip(image_of(p)) {
                    *x += &(c * &y);
                }
            }
            if acc.iter().any(|x| !x.is_zero()) {
                return bad("a relation does not map to zero");
            }
        }
        let cols: Vec<Element> = a.basis().iter().map(image_of).collect();
        let matrix = Matrix::from_columns(b.dim(), &cols);
        if !matrix.is_invertible() {
            return bad("induced map is not bijective");
        }
        Ok(AlgebraIso { vertex_map, arrow_images, matrix })
    }

    pub fn apply(&self, x: &[Rational]) -> Element {
        self.matrix.mul_vec(x)
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraComparison {
    pub level: IsoLevel,
    /// Vertex bijection found at the fingerprint level.
    pub vertex_map: Option<Vec<usize>>,
    pub explicit: Option<AlgebraIso>,
}

fn fingerprint_maps(a: &BoundQuiverAlgebra, b: &BoundQuiverAlgebra, limit: usize) -> Vec<Vec<usize>> {
    let n = a.num_vertices();
    let mut out = Vec::new();
    if n != b.num_vertices() || a.dim() != b.dim() || a.quiver().num_arrows() != b.quiver().num_arrows() {
        return out;
    }
    let (ca, cb) = (a.cartan_matrix(), b.cartan_matrix());
    let (qa, qb) = (a.quiver(), b.quiver());
    let compatible = |map: &[usize], v: usize, w: usize| {
        (0..map.len()).chain(std::iter::once(v)).all(|u| {
            let x = if u == v { w } else { map[u] };
            ca[u][v] == cb[x][w]
                && ca[v][u] == cb[w][x]
                && qa.arrow_count(u, v) == qb.arrow_count(x, w)
                && qa.arrow_count(v, u) == qb.arrow_count(w, x)
        })
    };
    fn rec(
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
        ok: &dyn Fn(&[usize], usize, usize) -> bool,
    ) {
        if out.len() >= limit {
            return;
        }
        let v = map.len();
        if v == used.len() {
            out.push(map.clone());
            return;
        }
        for w in 0..used.len() {
            if !used[w] && ok(map, v, w) {
                used[w] = true;
                map.push(w);
                rec(map, used, out, limit, ok);
                map.pop();
                used[w] = false;
            }
        }
    }
    rec(&mut Vec::new(), &mut vec![false; n], &mut out, limit, &compatible);
    out
}

/// Signed arrow bijections over a fixed vertex map, tried in order.
fn explicit_search(
    a: &BoundQuiverAlgebra,
    b: &BoundQuiverAlgebra,
    vmap: &[usize],
    budget: &mut usize,
) -> Option<AlgebraIso> {
    let qa = a.quiver();
    let qb = b.quiver();
    let options: Vec<Vec<usize>> = qa
        .arrows()
        .iter()
        .map(|ar| {
            (0..qb.num_arrows())
                .filter(|&k| qb.arrows()[k].source == vmap[ar.source] && qb.arrows()[k].target == vmap[ar.target])
                .collect()
        })
        .collect();
    let na = qa.num_arrows();
    let mut choice: Vec<(usize, bool)> = Vec::with_capacity(na);
    let mut used = vec![false; qb.num_arrows()];

    fn rec(
        a: &BoundQuiverAlgebra,
        b: &BoundQuiverAlgebra,
        vmap: &[usize],
        options: &[Vec<usize>],
        choice: &mut Vec<(usize, bool)>,
        used: &mut Vec<bool>,
        budget: &mut usize,
    ) -> Option<AlgebraIso> {
        if *budget == 0 {
            return None;
        }
        let k = choice.len();
        if k == options.len() {
            *budget -= 1;
            let images = choice
                .iter()
                .map(|&(j, neg)| {
                    let e = b.path_element(&b.quiver().arrow_path(j));
                    if neg {
                        e.iter().map(|x| -x.clone()).collect()
                    } else {
                        e
                    }
                })
                .collect();
            return AlgebraIso::from_arrow_images(a, b, vmap.to_vec(), images).ok();
        }
        for &j in &options[k] {
            if used[j] {
                continue;
            }
            for neg in [false, true] {
                used[j] = true;
                choice.push((j, neg));
                let r = rec(a, b, vmap, options, choice, used, budget);
                choice.pop();
                used[j] = false;
                if r.is_some() {
                    return r;
                }
            }
        }
        None
    }
    rec(a, b, vmap, &options, &mut choice, &mut used, budget)
}

/// Compares two algebras, first by fingerprint, then by a budgeted search
/// for an isomorphism sending arrows to signed arrows.
pub fn compare_algebras(a: &BoundQuiverAlgebra, b: &BoundQuiverAlgebra, budget: usize) -> AlgebraComparison {
    let maps = fingerprint_maps(a, b, budget.max(1));
    if maps.is_empty() {
        return AlgebraComparison { level: IsoLevel::Different, vertex_map: None, explicit: None };
    }
    let mut left = budget;
    for vmap in &maps {
        if let Some(iso) = explicit_search(a, b, vmap, &mut left) {
            return AlgebraComparison { level: IsoLevel::Explicit, vertex_map: Some(vmap.clone()), explicit: Some(iso) };
        }
        if left == 0 {
            break;
        }
    }
    AlgebraComparison { level: IsoLevel::Fingerprint, vertex_map: Some(maps[0].clone()), explicit: None }
}

/// Transports a `B`-module along an isomorphism `A -> B` to an `A`-module.
pub fn pullback_module(
    m: &Representation,
    a: &Arc<BoundQuiverAlgebra>,
    iso: &AlgebraIso,
) -> Result<Representation, RepError> {
    let dims: Vec<usize> = iso.vertex_map.iter().map(|&w| m.dim_at(w)).collect();
    let maps = a
        .quiver()
        .arrows()
        .iter()
        .zip(&iso.arrow_images)
        .map(|(ar, x)| m.element_action(x, iso.vertex_map[ar.source], iso.vertex_map[ar.target]))
        .collect();
    Representation::new(a.clone(), dims, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiveralg::{build_algebra, structural_module, Quiver, Relation, StructuralKind};
    use crate::repcat::is_isomorphic;

    fn linear(names: [&str; 3]) -> Arc<BoundQuiverAlgebra> {
        let q = Quiver::from_names(&names, &[("a", names[0], names[1]), ("b", names[1], names[2])]).unwrap();
        Arc::new(build_algebra(q, vec![], 30).unwrap())
    }

    #[test]
    fn relabelled_quivers_are_explicitly_isomorphic() {
        let a = linear(["1", "2", "3"]);
        let b = linear(["z", "y", "x"]);
        let q = Quiver::from_names(&["y", "z", "x"], &[("p", "z", "y"), ("r", "y", "x")]).unwrap();
        let c = Arc::new(build_algebra(q, vec![], 30).unwrap());
        assert_eq!(compare_algebras(&a, &b, 100).level, IsoLevel::Explicit);
        let cmp = compare_algebras(&a, &c, 100);
        assert_eq!(cmp.level, IsoLevel::Explicit);
        let iso = cmp.explicit.unwrap();
        let p = structural_module(&c, iso.vertex_map[0], StructuralKind::Projective);
        let back = pullback_module(&p, &a, &iso).unwrap();
        assert!(is_isomorphic(&back, &structural_module(&a, 0, StructuralKind::Projective)).unwrap().is_some());
    }

    #[test]
    fn orientation_and_relations_are_seen() {
        let a = linear(["1", "2", "3"]);
        let q = Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")]).unwrap();
        let b = Arc::new(build_algebra(q, vec![], 30).unwrap());
        assert_eq!(compare_algebras(&a, &b, 100).level, IsoLevel::Different);
        let q = Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        let r = Relation::monomial(q.path_from_names(&["a", "b"]).unwrap());
        let c = Arc::new(build_algebra(q, vec![r], 30).unwrap());
        assert_eq!(compare_algebras(&a, &c, 100).level, IsoLevel::Different);
    }

    #[test]
    fn commutative_square_needs_signs_to_match() {
        let q = Quiver::from_names(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "1", "3"), ("c", "2", "4"), ("d", "3", "4")],
        )
        .unwrap();
        let comm = Relation::new(vec![
            (Rational::one(), q.path_from_names(&["a", "c"]).unwrap()),
            (-Rational::one(), q.path_from_names(&["b", "d"]).unwrap()),
        ]);
        let anti = Relation::new(vec![
            (Rational::one(), q.path_from_names(&["a", "c"]).unwrap()),
            (Rational::one(), q.path_from_names(&["b", "d"]).unwrap()),
        ]);
        let x = build_algebra(q.clone(), vec![comm], 30).unwrap();
        let y = build_algebra(q, vec![anti], 30).unwrap();
        assert_eq!(compare_algebras(&x, &y, 1000).level, IsoLevel::Explicit);
    }
}
