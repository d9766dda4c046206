//! Bound quiver presentations of concretely given basic algebras.

use std::collections::BTreeMap;

use crate::exactla::{Matrix, Rational};

use super::algebra::Graded;
use super::quiver::{Arrow, Path, Quiver, Relation};
use super::{build_algebra, AlgebraError, BoundQuiverAlgebra};

/// A basic algebra `R` given concretely inside an ambient coordinate space,
/// together with a complete set of primitive orthogonal idempotents and
/// arrow elements spanning `rad R / rad^2 R`.
pub struct Generators<'a> {
    pub vertex_names: Vec<String>,
    pub idempotents: Vec<Vec<Rational>>,
    /// `(name, source, target, element)`; the element lies in `e_source R e_target`.
    pub arrows: Vec<(String, usize, usize, Vec<Rational>)>,
    pub mul: &'a dyn Fn(&[Rational], &[Rational]) -> Vec<Rational>,
    /// Ambient coordinates to coordinates of `R` (kernel = the ideal being
    /// factored out); `None` means the ambient space is `R` itself.
    pub projection: Option<&'a Matrix>,
    pub dim: usize,
}

/// The presented algebra and, for each of its basis paths, an ambient
/// element realizing it.
pub struct Presentation {
    pub algebra: BoundQuiverAlgebra,
    pub realization: Vec<Vec<Rational>>,
}

fn project(g: &Generators<'_>, x: &[Rational]) -> Vec<Rational> {
    match g.projection {
        Some(p) => p.mul_vec(x),
        None => x.to_vec(),
    }
}

pub fn present(g: &Generators<'_>, nilpotency_bound: usize) -> Result<Presentation, AlgebraError> {
    let arrows: Vec<Arrow> =
        g.arrows.iter().map(|(name, s, t, _)| Arrow { name: name.clone(), source: *s, target: *t }).collect();
    let q = Quiver::new(g.vertex_names.clone(), arrows)?;

    // Evaluate all paths level by level until a level vanishes.
    let mut levels: Vec<Vec<(Path, Vec<Rational>)>> = Vec::new();
    levels.push((0..q.num_vertices()).map(|v| (q.stationary(v), g.idempotents[v].clone())).collect());
    loop {
        let last = levels.last().unwrap();
        if levels.len() > 1 && last.iter().all(|(_, x)| project(g, x).iter().all(Rational::is_zero)) {
            break;
        }
        if levels.len() > g.dim + 1 {
            return Err(AlgebraError::InternalInconsistency(
                "arrow elements do not generate a nilpotent radical".into(),
            ));
        }
        let mut next = Vec::new();
        for (p, x) in last {
            for a in q.arrows_from(p.target) {
                let y = (g.mul)(x, &g.arrows[a].3);
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                next.push((Path { source: p.source, target: q.arrows()[a].target, arrows }, y));
            }
        }
        levels.push(next);
    }
    let max_len = levels.len() - 1;

    // Kernel of the evaluation map, per endpoint pair.
    let mut groups: BTreeMap<(usize, usize), Vec<(Path, Vec<Rational>)>> = BTreeMap::new();
    for level in &levels {
        for (p, x) in level {
            groups.entry((p.source, p.target)).or_default().push((p.clone(), project(g, x)));
        }
    }
    let mut candidates: Vec<Relation> = Vec::new();
    for (_, mut items) in groups {
        items.sort_by(|a, b| q.path_cmp(&a.0, &b.0));
        let n = items.len();
        let rows = items.first().map_or(0, |(_, x)| x.len());
        // Descending column order: pivots fall on the longest paths.
        let cols: Vec<Vec<Rational>> = (0..n).rev().map(|i| items[i].1.clone()).collect();
        let eval = Matrix::from_columns(rows, &cols);
        let ker = eval.kernel_basis();
        if ker.cols() == 0 {
            continue;
        }
        let reduced = ker.transpose().rref().reduced;
        for r in 0..reduced.rows() {
            let mut terms = Vec::new();
            for c in 0..n {
                let x = &reduced[(r, c)];
                if !x.is_zero() {
                    terms.push((x.clone(), items[n - 1 - c].0.clone()));
                }
            }
            if terms.is_empty() {
                continue;
            }
            if terms.iter().any(|(_, p)| p.len() < 2) {
                return Err(AlgebraError::InternalInconsistency(
                    "arrow elements are dependent modulo the radical square".into(),
                ));
            }
            terms.sort_by(|a, b| q.path_cmp(&a.1, &b.1));
            candidates.push(Relation::new(terms));
        }
    }
    candidates.sort_by(|a, b| {
        let la = a.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0);
        let lb = b.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0);
        la.cmp(&lb).then_with(|| a.terms.len().cmp(&b.terms.len()))
    });

    // Drop candidates already implied by the accepted ones.
    let graded = Graded::new(&q, max_len);
    let mut accepted: Vec<Relation> = Vec::new();
    for c in &candidates {
        if !graded.contains(&accepted, c, max_len) {
            accepted.push(c.clone());
        }
    }
    let bound = nilpotency_bound.max(max_len);
    let mut algebra = build_algebra(q.clone(), accepted, bound)?;
    if algebra.dim() != g.dim {
        algebra = build_algebra(q.clone(), candidates, bound)?;
    }
    if algebra.dim() != g.dim {
        return Err(AlgebraError::InternalInconsistency(format!(
            "presentation has dimension {}, expected {}",
            algebra.dim(),
            g.dim
        )));
    }

    let lookup: BTreeMap<&Path, &Vec<Rational>> = levels.iter().flatten().map(|(p, x)| (p, x)).collect();
    let realization: Vec<Vec<Rational>> = algebra.basis().iter().map(|p| lookup[p].clone()).collect();
    let projected: Vec<Vec<Rational>> = realization.iter().map(|x| project(g, x)).collect();
    let rows = projected.first().map_or(0, Vec::len);
    if Matrix::from_columns(rows, &projected).rank() != g.dim {
        return Err(AlgebraError::InternalInconsistency("realized basis is dependent".into()));
    }
    Ok(Presentation { algebra, realization })
}
