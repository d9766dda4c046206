//! Acceptance criteria, one line each. Reference values come from the
//! small oracles at the top of this file, never from the library.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use shortchains::artrans::{
    compose_irreducibles, dual, find_sections, is_projective, knit, sectional_paths, tau, tau_minus, transpose,
    validate_section, ARQuiverFragment, Ext1Space, KnitLimits,
};
use shortchains::exactla::Matrix;
use shortchains::quiveralg::families::{linear, linear_with_zero_relations, star};
use shortchains::quiveralg::{
    build_algebra, compare_algebras, is_hereditary, quotient_algebra, structural_module, BoundQuiverAlgebra,
    IsoLevel, Quiver, Relation, StructuralKind, DEFAULT_NILPOTENCY_BOUND,
};
use shortchains::repcat::{annihilator, decompose_with_maps, direct_sum, hom_dim, is_isomorphic, Representation};
use shortchains::shortchain::{
    corollary12_check, enumerate_indecomposables, ext1_dim, hom_functor_image, is_middle_of_short_chain,
    is_tilting, lies_on_short_cycle, necessary_conditions, theorem1_certificate, tilted_algebra, CycleAnswer,
    Ext1Method, Search, Theorem1Options, TiltingVerdict,
};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

// ---------------------------------------------------------------- oracles

/// Positive roots of the Tits form `q(x) = sum x_v^2 - sum_{s->t} x_s x_t`
/// with entries at most `cap`.
fn positive_roots(n: usize, arrows: &[(usize, usize)], cap: usize) -> usize {
    let mut count = 0;
    let mut x = vec![0usize; n];
    loop {
        let mut k = 0;
        while k < n {
            x[k] += 1;
            if x[k] <= cap {
                break;
            }
            x[k] = 0;
            k += 1;
        }
        if k == n {
            return count;
        }
        let sq: i64 = x.iter().map(|&v| (v * v) as i64).sum();
        let cross: i64 = arrows.iter().map(|&(s, t)| (x[s] * x[t]) as i64).sum();
        if sq - cross == 1 {
            count += 1;
        }
    }
}

/// Interval modules `[i, j]` of `1 -> 2 -> 3`: `Hom([i,j], [k,l]) = 1` iff
/// `k <= i <= l <= j`, and `Ext = Hom - <x, y>` from the Euler form.
fn a3_tilting_count() -> usize {
    let intervals: Vec<(i64, i64)> = (1..=3).flat_map(|i| (i..=3).map(move |j| (i, j))).collect();
    let hom = |(i, j): (i64, i64), (k, l): (i64, i64)| i64::from(k <= i && i <= l && l <= j);
    let vec_of = |(i, j): (i64, i64)| -> [i64; 3] { [1, 2, 3].map(|v| i64::from(i <= v && v <= j)) };
    let euler = |x: [i64; 3], y: [i64; 3]| -> i64 {
        (0..3).map(|v| x[v] * y[v]).sum::<i64>() - x[0] * y[1] - x[1] * y[2]
    };
    let ext = |p, q| hom(p, q) - euler(vec_of(p), vec_of(q));
    let mut count = 0;
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                let t = [intervals[a], intervals[b], intervals[c]];
                if t.iter().all(|&p| t.iter().all(|&q| ext(p, q) == 0)) {
                    count += 1;
                }
            }
        }
    }
    count
}

// ---------------------------------------------------------------- corpus

fn algebra(vertices: &[&str], arrows: &[(&str, &str, &str)], zero: &[&[&str]]) -> Arc<BoundQuiverAlgebra> {
    let q = Quiver::from_names(vertices, arrows).unwrap();
    let rels = zero.iter().map(|p| Relation::monomial(q.path_from_names(p).unwrap())).collect();
    Arc::new(build_algebra(q, rels, DEFAULT_NILPOTENCY_BOUND).unwrap())
}

fn a3_orientations() -> Vec<Arc<BoundQuiverAlgebra>> {
    vec![
        linear(3),
        algebra(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")], &[]),
        algebra(&["1", "2", "3"], &[("a", "2", "1"), ("b", "2", "3")], &[]),
    ]
}

/// Two vertices, arrows both ways, all paths of length two zero.
fn nakayama() -> Arc<BoundQuiverAlgebra> {
    algebra(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &[&["a", "b"], &["b", "a"]])
}

fn sum_of(a: &Arc<BoundQuiverAlgebra>, kind: StructuralKind, vs: impl IntoIterator<Item = usize>) -> Representation {
    let parts: Vec<_> = vs.into_iter().map(|v| structural_module(a, v, kind)).collect();
    direct_sum(a, &parts).unwrap()
}

fn full(a: &Arc<BoundQuiverAlgebra>) -> ARQuiverFragment {
    let f = knit(a, KnitLimits::default()).unwrap();
    assert!(f.is_complete(), "corpus algebra knits completely");
    f
}

/// Not-middle pairs: slice sums and sincere indecomposables over Dynkin
/// path algebras, plus the semisimple module of the star.
fn theorem_corpus() -> Vec<(String, Representation)> {
    use StructuralKind::{Injective, Projective};
    let mut out = Vec::new();
    for n in [2, 3, 4] {
        let a = linear(n);
        out.push((format!("A{n} regular"), sum_of(&a, Projective, 0..n)));
        out.push((format!("A{n} D(A)"), sum_of(&a, Injective, 0..n)));
        if n > 2 {
            out.push((format!("A{n} P(1)"), structural_module(&a, 0, Projective)));
        }
    }
    let d4 = star(3);
    out.push(("D4 regular".into(), sum_of(&d4, Projective, 0..4)));
    out.push(("D4 D(A)".into(), sum_of(&d4, Injective, 0..4)));
    out.push(("D4 I(0)".into(), structural_module(&d4, 0, Injective)));
    let top = Representation::new(
        d4.clone(),
        vec![2, 1, 1, 1],
        vec![Matrix::from_i64(2, 1, &[1, 0]), Matrix::from_i64(2, 1, &[0, 1]), Matrix::from_i64(2, 1, &[1, 1])],
    )
    .unwrap();
    out.push(("D4 (2;1,1,1)".into(), top));
    out.push(("D4 I(1)+I(2)+I(3)".into(), sum_of(&d4, Injective, 1..4)));
    out
}

fn complete_fragments() -> Vec<(String, ARQuiverFragment)> {
    let mut out = vec![("A2".to_string(), full(&linear(2)))];
    for (k, a) in a3_orientations().iter().enumerate() {
        out.push((format!("A3 orientation {k}"), full(a)));
    }
    out.push(("A4".into(), full(&linear(4))));
    out.push(("A4 with a zero relation".into(), full(&linear_with_zero_relations(4, &[&["b1", "b2"]]))));
    out.push(("D4".into(), full(&star(3))));
    out.push(("Nakayama".into(), full(&nakayama())));
    out
}

// ---------------------------------------------------------------- criteria

fn criterion_1() -> Outcome {
    let a = star(3);
    let f = knit(&a, KnitLimits::default()).map_err(|e| e.to_string())?;
    let roots = positive_roots(4, &[(1, 0), (2, 0), (3, 0)], 3);
    check(roots == 12, format!("root oracle gave {roots}"))?;
    let brute = enumerate_indecomposables(&a, 6, 100_000);
    check(brute.modules.len() == roots, format!("enumeration oracle found {}", brute.modules.len()))?;
    check(f.is_complete() && f.len() == roots, format!("knit gave {} modules, {:?}", f.len(), f.status))?;

    let m = sum_of(&a, StructuralKind::Injective, 1..4);
    let v = is_middle_of_short_chain(&m, &Search::Fragment(&f)).map_err(|e| e.to_string())?;
    check(v.is_complete_negative(), "M is not reported NotMiddleComplete")?;

    let (b, _) = quotient_algebra(&a, &annihilator(&m)).map_err(|e| e.to_string())?;
    let k3 = algebra(&["1", "2", "3"], &[], &[]);
    let level = compare_algebras(&b, &k3, 1000).level;
    check(level == IsoLevel::Explicit, format!("A/ann(M) vs K x K x K: {level:?}"))?;

    let injectives: Vec<usize> =
        (0..4).map(|v| f.find(&structural_module(&a, v, StructuralKind::Injective)).unwrap()).collect();
    validate_section(&f, &injectives).map_err(|e| e.to_string())?;
    let mut sorted = injectives.clone();
    sorted.sort();
    let sections = find_sections(&f, &injectives).map_err(|e| e.to_string())?;
    check(sections.iter().any(|s| s.vertices == sorted), "the injectives are not found as a section")?;
    Ok(format!("{} indecomposables, complete; M not a middle; A/ann(M) = K^3; injectives form a section", f.len()))
}

fn criterion_2() -> Outcome {
    let corpus = theorem_corpus();
    for (name, m) in &corpus {
        let a = m.algebra();
        let f = full(a);
        let v = is_middle_of_short_chain(m, &Search::Fragment(&f)).map_err(|e| e.to_string())?;
        check(v.is_complete_negative(), format!("{name}: verdict is not NotMiddleComplete"))?;
        let cert = theorem1_certificate(m, &Theorem1Options::default()).map_err(|e| format!("{name}: {e}"))?;
        cert.verify(m).map_err(|e| format!("{name}: {e}"))?;
        let (q, _) = quotient_algebra(a, &annihilator(m)).map_err(|e| e.to_string())?;
        let level = compare_algebras(&cert.end_t.algebra, &q, 20_000).level;
        check(level >= IsoLevel::Fingerprint, format!("{name}: End_H(T) vs A/ann(M) is {level:?}"))?;
        check(is_hereditary(&cert.h).unwrap_or(false), format!("{name}: H not hereditary"))?;
        let injective_sum = cert
            .injective_multiplicities
            .iter()
            .enumerate()
            .flat_map(|(v, &k)| std::iter::repeat_n(v, k))
            .map(|v| structural_module(&cert.h, v, StructuralKind::Injective))
            .collect::<Vec<_>>();
        let i = direct_sum(&cert.h, &injective_sum).unwrap();
        check(is_isomorphic(&i, &cert.injective).unwrap().is_some(), format!("{name}: I is not a sum of injectives"))?;
    }
    Ok(format!("{} certificates built and re-verified", corpus.len()))
}

fn negative_corpus() -> Vec<(String, Representation, ARQuiverFragment)> {
    let mut out = Vec::new();
    for (name, m) in theorem_corpus() {
        let f = full(m.algebra());
        out.push((name, m, f));
    }
    for (name, f) in complete_fragments() {
        for (i, x) in f.vertices.iter().enumerate() {
            out.push((format!("{name} #{i}"), x.clone(), f.clone()));
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for (name, m, f) in negative_corpus() {
        let r = match corollary12_check(&m, &Search::Fragment(&f)) {
            Ok(r) => r,
            Err(shortchains::shortchain::ShortChainError::NotApplicable(_)) => continue,
            Err(e) => return Err(format!("{name}: {e}")),
        };
        check(r.verdict.is_complete_negative(), format!("{name}: not a complete negative"))?;
        check(r.hereditary && r.global_dimension.at_most(1), format!("{name}: End(M) not hereditary"))?;
        checked += 1;
    }
    Ok(format!("{checked} not-middle modules, all with hereditary End"))
}

fn criterion_4() -> Outcome {
    let h = linear(3);
    let f = full(&h);
    let oracle = a3_tilting_count();
    let n = f.len();
    let mut found = 0;
    let mut images = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t = direct_sum(&h, &[f.vertices[i].clone(), f.vertices[j].clone(), f.vertices[k].clone()]).unwrap();
                let TiltingVerdict::Tilting(cert) = is_tilting(&t).map_err(|e| e.to_string())? else { continue };
                found += 1;
                let end = tilted_algebra(&t, &cert).map_err(|e| e.to_string())?;
                let fb = full(&end.algebra);
                for v in 0..3 {
                    let image = hom_functor_image(&end, &structural_module(&h, v, StructuralKind::Injective))
                        .map_err(|e| e.to_string())?;
                    let verdict = is_middle_of_short_chain(&image, &Search::Fragment(&fb)).map_err(|e| e.to_string())?;
                    check(verdict.is_complete_negative(), format!("T = #{i}+#{j}+#{k}, I({v}): not NotMiddleComplete"))?;
                    images += 1;
                }
            }
        }
    }
    check(found == oracle, format!("{found} tilting modules, oracle says {oracle}"))?;
    Ok(format!("{found} tilting modules (oracle {oracle}), {images} images Hom(T, I) not middles"))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    let mut middles = 0;
    for (name, f) in complete_fragments() {
        if name.contains("zero relation") {
            continue;
        }
        for (i, x) in f.vertices.iter().enumerate() {
            let chain = is_middle_of_short_chain(x, &Search::Fragment(&f)).map_err(|e| e.to_string())?;
            let cycle = lies_on_short_cycle(x, &Search::Fragment(&f)).map_err(|e| e.to_string())?;
            check(chain.is_middle() == cycle.on_cycle(), format!("{name} #{i}: chain and cycle verdicts differ"))?;
            middles += usize::from(chain.is_middle());
            count += 1;
        }
    }
    Ok(format!("{count} indecomposables agree ({middles} on short cycles)"))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for (name, m, f) in negative_corpus() {
        let v = is_middle_of_short_chain(&m, &Search::Fragment(&f)).map_err(|e| e.to_string())?;
        if v.is_middle() {
            continue;
        }
        let nc = necessary_conditions(&m).map_err(|e| e.to_string())?;
        check(nc.hom_m_tau_m_zero && nc.summand_bound_ok, format!("{name}: necessary conditions fail"))?;
        checked += 1;
    }
    let a = linear(2);
    let m = sum_of(&a, StructuralKind::Simple, 0..2);
    let nc = necessary_conditions(&m).map_err(|e| e.to_string())?;
    check(!nc.hom_m_tau_m_zero, "S(1)+S(0) over A2 passes Hom(M, tau M) = 0")?;
    Ok(format!("{checked} negatives satisfy both conditions; S(1)+S(0) fails Hom(M, tau M) = 0"))
}

fn iso(x: &Representation, y: &Representation) -> bool {
    matches!(is_isomorphic(x, y), Ok(Some(_)))
}

fn criterion_7() -> Outcome {
    let mut checks = 0;
    for (name, f) in complete_fragments() {
        check(f.mesh_violations().is_empty(), format!("{name}: mesh violations"))?;
        let hereditary = is_hereditary(&f.algebra).unwrap_or(false);
        for (i, x) in f.vertices.iter().enumerate() {
            check(iso_over(&dual(&dual(x)), x), format!("{name} #{i}: DD X not X"))?;
            if !is_projective(x) {
                check(iso(&tau_minus(&tau(x)), x), format!("{name} #{i}: tau^- tau X not X"))?;
                check(iso_over(&transpose(&transpose(x)), x), format!("{name} #{i}: Tr Tr X not X"))?;
                checks += 2;
            }
            if !f.injective[i] {
                check(iso(&tau(&tau_minus(x)), x), format!("{name} #{i}: tau tau^- X not X"))?;
                checks += 1;
            }
            if hereditary {
                for y in &f.vertices {
                    let r = ext1_dim(x, y, Ext1Method::Resolution).map_err(|e| e.to_string())?;
                    let s = ext1_dim(x, y, Ext1Method::ARFormula).map_err(|e| e.to_string())?;
                    check(r == s, format!("{name}: Ext methods disagree"))?;
                    checks += 1;
                }
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} identities checked, meshes consistent"))
}

/// `DD X` and `Tr Tr X` live over `(A^op)^op`; compare with `X` through the data.
fn iso_over(y: &Representation, x: &Representation) -> bool {
    match Representation::new(x.algebra().clone(), y.dims().to_vec(), y.maps().to_vec()) {
        Ok(y) => iso(&y, x),
        Err(_) => false,
    }
}

fn criterion_8() -> Outcome {
    let mut paths = 0;
    for a in [star(3), linear(4)] {
        let f = full(&a);
        for len in 1..f.len() {
            let ps = sectional_paths(&f, len);
            if ps.is_empty() {
                break;
            }
            for p in ps {
                let g = compose_irreducibles(&f, &p).map_err(|e| e.to_string())?;
                check(!g.is_zero(), format!("sectional composite along {p:?} vanishes"))?;
                paths += 1;
            }
        }
    }
    Ok(format!("{paths} sectional composites, all nonzero"))
}

/// The homogeneous quasi-simple of the four-subspace quiver: four lines in
/// a plane.
fn four_lines(a: &Arc<BoundQuiverAlgebra>) -> Representation {
    let lines: [[i64; 2]; 4] = [[1, 0], [0, 1], [1, 1], [1, -1]];
    Representation::new(a.clone(), vec![2, 1, 1, 1, 1], lines.iter().map(|l| Matrix::from_i64(2, 1, l)).collect())
        .unwrap()
}

fn criterion_9(bin: &Path, scratch: &Path) -> Outcome {
    let a = star(4);
    let x = four_lines(&a);
    check(decompose_with_maps(&x).summands.len() == 1, "X is decomposable")?;

    // Oracle: the least total dimension of a witness among brute-forced
    // indecomposables.
    let bound = 6;
    let e = enumerate_indecomposables(&a, bound, 2_000_000);
    check(e.completed_bound == bound, format!("oracle enumeration stopped at {}", e.completed_bound))?;
    let tx = tau(&x);
    let least = e
        .modules
        .iter()
        .filter(|y| hom_dim(y, &x).unwrap() > 0 && hom_dim(&x, &tau(y)).unwrap() > 0)
        .map(Representation::total_dim)
        .min()
        .ok_or("oracle found no witness")?;
    check(iso(&tx, &x), "tau X is not X")?;

    let v = is_middle_of_short_chain(&x, &Search::Bounded { max_total_dim: bound, budget: 2_000_000 })
        .map_err(|e| e.to_string())?;
    let w = v.witness().ok_or("X gets no Middle verdict")?;
    check(w.verify(&x), "middle witness does not re-verify")?;
    check(w.x.total_dim() <= least, format!("witness of dimension {} above the oracle bound {least}", w.x.total_dim()))?;

    // Short cycle through the self-extension X[2] of dimension 12.
    let ext = Ext1Space::new(&x, &x).map_err(|e| e.to_string())?;
    let phi = ext.hom.basis.iter().find(|p| ext.class_of(p).iter().any(|c| !c.is_zero())).ok_or("Ext^1(X, X) = 0")?;
    let (x2, _, _) = ext.extension(&x, phi).map_err(|e| e.to_string())?;
    check(x2.total_dim() == 12 && decompose_with_maps(&x2).summands.len() == 1, "X[2] is not indecomposable of dim 12")?;
    let c = lies_on_short_cycle(&x, &Search::Candidates(std::slice::from_ref(&x2))).map_err(|e| e.to_string())?;
    let CycleAnswer::OnShortCycle(cw) = &c.answer else { return Err("X[2] is not a short-cycle witness".into()) };
    check(cw.y.total_dim() <= 12, "cycle witness too large")?;
    let small = lies_on_short_cycle(&x, &Search::Bounded { max_total_dim: bound, budget: 2_000_000 })
        .map_err(|e| e.to_string())?;
    check(!small.on_cycle(), "unexpected short-cycle witness below dimension 12")?;

    // The sincere injective I(0) through the command line: bounded negative.
    let i0 = structural_module(&a, 0, StructuralKind::Injective);
    check(i0.dims().iter().all(|&d| d == 1), "I(0) is not (1;1,1,1,1)")?;
    let dir = scratch.join("c9");
    std::fs::create_dir_all(&dir).unwrap();
    let st = Command::new(bin).args(["examples", "5.1", "--n", "4", "--out-dir"]).arg(&dir).output().unwrap().status;
    check(st.success(), "examples command failed")?;
    std::fs::write(
        dir.join("i0.json"),
        r#"{"format":1,"dims":{"0":1,"1":1,"2":1,"3":1,"4":1},"maps":{"a1":[["1"]],"a2":[["1"]],"a3":[["1"]],"a4":[["1"]]}}"#,
    )
    .unwrap();
    let out = Command::new(bin)
        .args(["short-chain"])
        .arg(dir.join("algebra.json"))
        .arg(dir.join("i0.json"))
        .args(["--max-modules", "40", "--max-total-dim", "12", "--budget", "5000", "-o"])
        .arg(dir.join("i0_verdict.json"))
        .output()
        .unwrap();
    check(out.status.code() == Some(3), format!("I(0) exit code {:?}", out.status.code()))?;
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.join("i0_verdict.json")).unwrap()).unwrap();
    check(doc["result"]["answer"]["kind"] == "not_middle_up_to_bound", "I(0) answer is not a bounded negative")?;
    Ok(format!(
        "X middle with witness of dimension {} (oracle bound {least}); short cycle via X[2] (dim 12), none up to {bound}; I(0) exits 3",
        w.x.total_dim()
    ))
}

fn cli_suite(bin: &Path, dir: &Path) -> Vec<(String, Vec<u8>)> {
    std::fs::create_dir_all(dir).unwrap();
    let run = |args: &[&str]| {
        let st = Command::new(bin).current_dir(dir).args(args).output().unwrap();
        assert!(st.status.code().is_some());
    };
    run(&["examples", "5.1", "--n", "3", "--out-dir", "ex51"]);
    run(&["examples", "5.2", "--n", "2", "--out-dir", "ex52"]);
    run(&["knit", "ex51/algebra.json", "-o", "knit51.json"]);
    run(&["short-chain", "ex51/algebra.json", "ex51/module.json", "-o", "chain51.json"]);
    run(&["theorem1", "ex51/algebra.json", "ex51/module.json", "-o", "thm51.json"]);
    run(&["corollary12", "ex51/algebra.json", "ex51/module.json", "-o", "cor51.json"]);
    run(&["knit", "ex52/algebra.json", "-o", "knit52.json"]);
    run(&["theorem1", "ex52/algebra.json", "ex52/module.json", "-o", "thm52.json"]);
    let files = [
        "ex51/algebra.json",
        "ex51/module.json",
        "ex52/algebra.json",
        "ex52/module.json",
        "knit51.json",
        "chain51.json",
        "thm51.json",
        "cor51.json",
        "knit52.json",
        "thm52.json",
    ];
    files.iter().map(|f| (f.to_string(), std::fs::read(dir.join(f)).unwrap_or_default())).collect()
}

fn criterion_10(bin: &Path, scratch: &Path) -> Outcome {
    let first = cli_suite(bin, &scratch.join("run1"));
    let second = cli_suite(bin, &scratch.join("run2"));
    for ((name, a), (_, b)) in first.iter().zip(&second) {
        check(!a.is_empty(), format!("{name} was not produced"))?;
        check(a == b, format!("{name} differs between runs"))?;
    }
    Ok(format!("{} artifacts byte-identical across two runs", first.len()))
}

fn main() {
    let bin = Path::new(env!("CARGO_BIN_EXE_shortchains"));
    let scratch = tempfile::tempdir().expect("scratch directory");
    let s = scratch.path();
    let criteria: Vec<(usize, &str, f64, Box<dyn Fn() -> Outcome>)> = vec![
        (1, "three-arm star, sum of injectives", 10.0, Box::new(criterion_1)),
        (2, "certificate roundtrip", 60.0, Box::new(criterion_2)),
        (3, "hereditary endomorphism algebras", 30.0, Box::new(criterion_3)),
        (4, "tilting image sweep", 120.0, Box::new(criterion_4)),
        (5, "short chain / short cycle equivalence", 60.0, Box::new(criterion_5)),
        (6, "necessary conditions", 5.0, Box::new(criterion_6)),
        (7, "AR machinery invariants", 60.0, Box::new(criterion_7)),
        (8, "sectional composites", 30.0, Box::new(criterion_8)),
        (9, "bounded tube probe", 120.0, Box::new(move || criterion_9(bin, s))),
        (10, "determinism", 120.0, Box::new(move || criterion_10(bin, s))),
    ];
    let mut failed = 0;
    for (n, title, limit, f) in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| f())).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        let result = match result {
            Ok(_) if secs > *limit => Err(format!("took {secs:.1} s, limit {limit} s")),
            r => r,
        };
        match result {
            Ok(detail) => println!("criterion {n:>2} PASS  {title}: {detail} ({secs:.1} s, limit {limit} s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {title}: {why} ({secs:.1} s, limit {limit} s)");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
