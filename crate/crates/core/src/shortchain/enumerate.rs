use std::ops::ControlFlow;
use std::sync::Arc;

use crate::exactla::{Matrix, Rational};
use crate::quiveralg::BoundQuiverAlgebra;
use crate::repcat::{decompose_with_maps, is_isomorphic, Representation};

/// Indecomposables found by brute force, in order of total dimension.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub modules: Vec<Representation>,
    /// Every dimension up to this one was searched to the end.
    pub completed_bound: usize,
    pub candidates_examined: usize,
    pub budget_exhausted: bool,
}

/// Dimension vectors of a given total with connected support, in
/// lexicographic order.
fn dimension_vectors(a: &BoundQuiverAlgebra, total: usize) -> Vec<Vec<usize>> {
    let n = a.num_vertices();
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn rec(k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k + 1 == cur.len() {
            cur[k] = left;
            out.push(cur.clone());
            return;
        }
        for d in 0..=left {
            cur[k] = d;
            rec(k + 1, left - d, cur, out);
        }
    }
    if n > 0 {
        rec(0, total, &mut cur, &mut out);
    }
    out.retain(|d| connected_support(a, d));
    out
}

fn connected_support(a: &BoundQuiverAlgebra, dims: &[usize]) -> bool {
    let support: Vec<usize> = (0..dims.len()).filter(|&v| dims[v] > 0).collect();
    let Some(&start) = support.first() else { return false };
    let mut seen = vec![start];
    let mut k = 0;
    while k < seen.len() {
        let v = seen[k];
        k += 1;
        for ar in a.quiver().arrows() {
            let u = if ar.source == v { ar.target } else if ar.target == v { ar.source } else { continue };
            if dims[u] > 0 && !seen.contains(&u) {
                seen.push(u);
            }
        }
    }
    seen.len() == support.len()
}

fn entry(i: usize) -> Rational {
    Rational::from_int([0, 1, -1][i])
}

/// The choices for one group of arrow matrices, decoded lazily by index.
enum Options {
    /// Every `rows x cols` matrix over `{0, 1, -1}`.
    All { rows: usize, cols: usize },
    /// Full-column-rank reduced column echelon forms with free entries in
    /// `{0, 1, -1}`: one representative per column-operation orbit.
    Echelon { rows: usize, cols: usize, shapes: Vec<(Vec<usize>, Vec<(usize, usize)>)> },
}

impl Options {
    fn echelon(rows: usize, cols: usize) -> Options {
        let mut shapes = Vec::new();
        if cols <= rows {
            let mut pivot_sets = Vec::new();
            fn choose(start: usize, rows: usize, cols: usize, pivots: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if pivots.len() == cols {
                    out.push(pivots.clone());
                    return;
                }
                for r in start..rows {
                    pivots.push(r);
                    choose(r + 1, rows, cols, pivots, out);
                    pivots.pop();
                }
            }
            choose(0, rows, cols, &mut Vec::new(), &mut pivot_sets);
            for p in pivot_sets {
                // Free slots: below the pivot of the column, outside pivot rows.
                let free: Vec<(usize, usize)> = (0..cols)
                    .flat_map(|c| ((p[c] + 1)..rows).filter(|r| !p.contains(r)).map(move |r| (r, c)))
                    .collect();
                shapes.push((p, free));
            }
        }
        Options::Echelon { rows, cols, shapes }
    }

    fn count(&self) -> u128 {
        match self {
            Options::All { rows, cols } => 3u128.saturating_pow((rows * cols) as u32),
            Options::Echelon { shapes, .. } => {
                shapes.iter().map(|(_, free)| 3u128.saturating_pow(free.len() as u32)).sum()
            }
        }
    }

    fn get(&self, mut code: u128) -> Matrix {
        match self {
            Options::All { rows, cols } => {
                let data = (0..rows * cols)
                    .map(|_| {
                        let e = entry((code % 3) as usize);
                        code /= 3;
                        e
                    })
                    .collect();
                Matrix::from_vec(*rows, *cols, data)
            }
            Options::Echelon { rows, cols, shapes } => {
                for (p, free) in shapes {
                    let n = 3u128.pow(free.len() as u32);
                    if code >= n {
                        code -= n;
                        continue;
                    }
                    let mut m = Matrix::zeros(*rows, *cols);
                    for (c, &r) in p.iter().enumerate() {
                        m[(r, c)] = Rational::one();
                    }
                    for &(r, c) in free {
                        m[(r, c)] = entry((code % 3) as usize);
                        code /= 3;
                    }
                    return m;
                }
                unreachable!("option index out of range")
            }
        }
    }
}

/// One group of arrow matrices: a single arrow, or all arrows leaving a
/// source vertex, normalized together.
struct Slot {
    arrows: Vec<usize>,
    options: Options,
}

fn slots(a: &BoundQuiverAlgebra, dims: &[usize]) -> Vec<Slot> {
    let q = a.quiver();
    let live = |k: usize| {
        let ar = &q.arrows()[k];
        dims[ar.source] > 0 && dims[ar.target] > 0
    };
    let mut done = vec![false; q.num_arrows()];
    let mut out = Vec::new();
    for v in 0..q.num_vertices() {
        if dims[v] == 0 || q.arrows_into(v).any(live) {
            continue;
        }
        let outs: Vec<usize> = q.arrows_from(v).filter(|&k| live(k)).collect();
        if outs.is_empty() {
            continue;
        }
        let rows: usize = outs.iter().map(|&k| dims[q.arrows()[k].target]).sum();
        for &k in &outs {
            done[k] = true;
        }
        out.push(Slot { arrows: outs, options: Options::echelon(rows, dims[v]) });
    }
    for k in 0..q.num_arrows() {
        if !done[k] && live(k) {
            let ar = &q.arrows()[k];
            out.push(Slot { arrows: vec![k], options: Options::All { rows: dims[ar.target], cols: dims[ar.source] } });
        }
    }
    out
}

fn assemble(
    a: &Arc<BoundQuiverAlgebra>,
    dims: &[usize],
    slots: &[Slot],
    choice: &[u128],
) -> Option<Representation> {
    let q = a.quiver();
    let mut maps: Vec<Matrix> =
        q.arrows().iter().map(|ar| Matrix::zeros(dims[ar.target], dims[ar.source])).collect();
    for (slot, &c) in slots.iter().zip(choice) {
        let m = slot.options.get(c);
        let mut row = 0;
        for &k in &slot.arrows {
            let h = dims[q.arrows()[k].target];
            maps[k] = m.block(row, 0, h, m.cols());
            row += h;
        }
    }
    // At a sink of the support the incoming maps must be jointly onto.
    for w in 0..q.num_vertices() {
        if dims[w] == 0 || q.arrows_from(w).any(|k| dims[q.arrows()[k].target] > 0) {
            continue;
        }
        let ins: Vec<usize> = q.arrows_into(w).filter(|&k| dims[q.arrows()[k].source] > 0).collect();
        if ins.is_empty() {
            continue;
        }
        let mut stacked = Matrix::zeros(dims[w], 0);
        for k in ins {
            stacked = stacked.hstack(&maps[k]);
        }
        if stacked.rank() < dims[w] {
            return None;
        }
    }
    Representation::new(a.clone(), dims.to_vec(), maps).ok()
}

/// Calls `visit` on each new indecomposable (up to isomorphism) of total
/// dimension at most `max_total_dim`, smallest first.
///
/// Representations are searched with arrow matrices over `{0, 1, -1}`, the
/// maps leaving each source vertex normalized to column echelon form. The
/// cost is exponential; `budget` caps the number of candidates examined,
/// and `completed_bound` reports how far the search got.
pub fn for_each_indecomposable(
    a: &Arc<BoundQuiverAlgebra>,
    max_total_dim: usize,
    budget: usize,
    visit: &mut dyn FnMut(&Representation) -> ControlFlow<()>,
) -> Enumeration {
    let mut found: Vec<Representation> = Vec::new();
    let mut examined = 0;
    let mut completed = 0;
    for total in 1..=max_total_dim {
        for dims in dimension_vectors(a, total) {
            let slots = slots(a, &dims);
            if slots.iter().any(|s| s.options.count() == 0) {
                continue;
            }
            let mut choice = vec![0u128; slots.len()];
            loop {
                if examined >= budget {
                    return Enumeration {
                        modules: found,
                        completed_bound: completed,
                        candidates_examined: examined,
                        budget_exhausted: true,
                    };
                }
                examined += 1;
                if let Some(m) = assemble(a, &dims, &slots, &choice) {
                    let dec = decompose_with_maps(&m);
                    let indecomposable =
                        dec.is_complete() && dec.summands.len() == 1 && dec.summands[0].multiplicity() == 1;
                    let fresh = indecomposable
                        && !found
                            .iter()
                            .any(|x| x.dims() == m.dims() && matches!(is_isomorphic(x, &m), Ok(Some(_))));
                    if fresh {
                        let flow = visit(&m);
                        found.push(m);
                        if flow.is_break() {
                            return Enumeration {
                                modules: found,
                                completed_bound: completed,
                                candidates_examined: examined,
                                budget_exhausted: false,
                            };
                        }
                    }
                }
                // Odometer over the slot choices.
                let mut pos = 0;
                while pos < slots.len() {
                    choice[pos] += 1;
                    if choice[pos] < slots[pos].options.count() {
                        break;
                    }
                    choice[pos] = 0;
                    pos += 1;
                }
                if pos == slots.len() {
                    break;
                }
            }
        }
        completed = total;
    }
    Enumeration { modules: found, completed_bound: completed, candidates_examined: examined, budget_exhausted: false }
}

/// All indecomposables found up to `max_total_dim` (see
/// [`for_each_indecomposable`]).
pub fn enumerate_indecomposables(a: &Arc<BoundQuiverAlgebra>, max_total_dim: usize, budget: usize) -> Enumeration {
    for_each_indecomposable(a, max_total_dim, budget, &mut |_| ControlFlow::Continue(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiveralg::families::{kronecker, linear, star};

    #[test]
    fn echelon_form_counts() {
        // Lines in a plane over {0, 1, -1}: (1,0), (1,1), (1,-1), (0,1).
        let lines = Options::echelon(2, 1);
        assert_eq!(lines.count(), 4);
        let got: Vec<Vec<i64>> = (0..4)
            .map(|i| lines.get(i).column(0).iter().map(|x| x.to_string().parse().unwrap()).collect())
            .collect();
        assert_eq!(got, vec![vec![1, 0], vec![1, 1], vec![1, -1], vec![0, 1]]);
        assert_eq!(Options::echelon(2, 2).count(), 1);
        assert_eq!(Options::echelon(1, 2).count(), 0);
        assert_eq!(Options::All { rows: 1, cols: 2 }.count(), 9);
    }

    #[test]
    fn dynkin_counts_match_positive_roots() {
        let e = enumerate_indecomposables(&linear(3), 6, 100_000);
        assert_eq!(e.modules.len(), 6);
        assert_eq!(e.completed_bound, 6);
        let e = enumerate_indecomposables(&star(3), 8, 100_000);
        assert_eq!(e.modules.len(), 12);
    }

    #[test]
    fn kronecker_small_dimensions() {
        // (1,0), (0,1); (1,1) with lines 0, 1, -1 and infinity; (1,2), (2,1).
        let e = enumerate_indecomposables(&kronecker(), 3, 100_000);
        assert_eq!(e.modules.len(), 8);
    }

    #[test]
    fn budget_is_reported() {
        let e = enumerate_indecomposables(&star(4), 8, 50);
        assert!(e.budget_exhausted);
        assert!(e.completed_bound < 8);
    }
}
