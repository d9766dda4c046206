//! Command implementations behind the `shortchains` binary, the file
//! formats they read and write, and the generator for the worked examples.

pub mod format;
pub mod report;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::artrans::{knit, ARQuiverFragment, KnitLimits};
use crate::quiveralg::families::star;
use crate::quiveralg::{
    build_algebra, one_point_extension, structural_module, BoundQuiverAlgebra, IsoLevel, Quiver, StructuralKind,
    DEFAULT_NILPOTENCY_BOUND,
};
use crate::repcat::{direct_sum, Representation};
use crate::shortchain::{
    corollary12_check, is_middle_of_short_chain, theorem1_certificate, Search, ShortChainAnswer, ShortChainError,
    ShortChainVerdict, Theorem1Options,
};

use format::{
    algebra_from_file, algebra_to_file, module_from_file, module_to_file, read_json, to_pretty_json, write_atomic,
    AlgebraFile, ModuleFile, FORMAT_VERSION,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("i/o error: {0}")]
    Io(String),
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exit {
    Definitive = 0,
    VerificationFailure = 1,
    InputError = 2,
    BoundedNegative = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_modules: usize,
    pub max_total_dim: usize,
    pub nilpotency_bound: usize,
    /// Total dimension bound for brute-force search when knitting is incomplete.
    pub search_bound: usize,
    pub budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        let k = KnitLimits::default();
        Limits {
            max_modules: k.max_modules,
            max_total_dim: k.max_total_dim,
            nilpotency_bound: DEFAULT_NILPOTENCY_BOUND,
            search_bound: Search::DEFAULT_BOUND,
            budget: Search::DEFAULT_BUDGET,
        }
    }
}

impl Limits {
    pub fn validate(&self) -> Result<(), CliError> {
        let all = [self.max_modules, self.max_total_dim, self.nilpotency_bound, self.search_bound, self.budget];
        if all.contains(&0) {
            return Err(CliError::Input("limits must be positive".into()));
        }
        Ok(())
    }

    fn knit(&self) -> KnitLimits {
        KnitLimits { max_modules: self.max_modules, max_total_dim: self.max_total_dim }
    }
}

/// What a command produced: a JSON document (if any), a one-line summary
/// and the exit status.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub document: Option<Value>,
    pub summary: String,
    pub exit: Exit,
}

impl Outcome {
    /// Writes the document to `out` (atomically) or standard output; the
    /// summary goes to standard error when the document takes stdout.
    pub fn emit(&self, out: Option<&Path>) -> Result<(), CliError> {
        match (&self.document, out) {
            (Some(doc), Some(path)) => {
                write_atomic(path, &to_pretty_json(doc))?;
                println!("{}", self.summary);
            }
            (Some(doc), None) => {
                print!("{}", to_pretty_json(doc));
                eprintln!("{}", self.summary);
            }
            (None, _) => println!("{}", self.summary),
        }
        Ok(())
    }
}

fn document(command: &str, limits: &Limits, summary: &str, exit: Exit, result: Value) -> Value {
    json!({
        "format": FORMAT_VERSION,
        "command": command,
        "limits": limits,
        "summary": summary,
        "exit": exit,
        "result": result,
    })
}

fn load(algebra: &Path, module: Option<&Path>, limits: &Limits) -> Result<(Arc<BoundQuiverAlgebra>, Option<Representation>), CliError> {
    limits.validate()?;
    let af: AlgebraFile = read_json(algebra)?;
    let a = algebra_from_file(&af, limits.nilpotency_bound)?;
    let m = match module {
        Some(p) => Some(module_from_file(&read_json::<ModuleFile>(p)?, &a)?),
        None => None,
    };
    Ok((a, m))
}

fn load_candidates(paths: &[PathBuf], a: &Arc<BoundQuiverAlgebra>) -> Result<Vec<Representation>, CliError> {
    paths.iter().map(|p| module_from_file(&read_json::<ModuleFile>(p)?, a)).collect()
}

/// Runs `f` with the search: the given candidates, else the knitted
/// fragment when complete, else bounded enumeration.
fn with_search<T>(
    a: &Arc<BoundQuiverAlgebra>,
    candidates: &[Representation],
    limits: &Limits,
    f: impl FnOnce(&Search<'_>) -> T,
) -> Result<T, ShortChainError> {
    if !candidates.is_empty() {
        return Ok(f(&Search::Candidates(candidates)));
    }
    let frag: ARQuiverFragment = knit(a, limits.knit())?;
    if frag.is_complete() {
        Ok(f(&Search::Fragment(&frag)))
    } else {
        Ok(f(&Search::Bounded { max_total_dim: limits.search_bound, budget: limits.budget }))
    }
}

fn error_outcome(command: &str, limits: &Limits, e: &ShortChainError) -> Outcome {
    let exit = match e {
        ShortChainError::DeskScaleExceeded(_) => Exit::BoundedNegative,
        _ => Exit::VerificationFailure,
    };
    let summary = format!("{command} failed: {e}");
    let result = json!({ "error": e.to_string() });
    Outcome { document: Some(document(command, limits, &summary, exit, result)), summary, exit }
}

fn verdict_exit(v: &ShortChainVerdict, m: &Representation) -> Exit {
    match &v.answer {
        ShortChainAnswer::Middle(w) if w.verify(m) => Exit::Definitive,
        ShortChainAnswer::Middle(_) => Exit::VerificationFailure,
        ShortChainAnswer::NotMiddleComplete => Exit::Definitive,
        ShortChainAnswer::NotMiddleUpToBound { .. } | ShortChainAnswer::NotMiddleAmongCandidates { .. } => {
            Exit::BoundedNegative
        }
    }
}

pub fn knit_command(algebra: &Path, limits: &Limits) -> Result<Outcome, CliError> {
    let (a, _) = load(algebra, None, limits)?;
    let f = match knit(&a, limits.knit()) {
        Ok(f) => f,
        Err(e) => return Ok(error_outcome("knit", limits, &e.into())),
    };
    let summary = report::fragment_summary(&f);
    let exit = Exit::Definitive;
    Ok(Outcome { document: Some(document("knit", limits, &summary, exit, report::fragment(&f))), summary, exit })
}

pub fn short_chain_command(
    algebra: &Path,
    module: &Path,
    candidates: &[PathBuf],
    limits: &Limits,
) -> Result<Outcome, CliError> {
    let (a, m) = load(algebra, Some(module), limits)?;
    let m = m.expect("module was loaded");
    let cands = load_candidates(candidates, &a)?;
    let verdict = match with_search(&a, &cands, limits, |s| is_middle_of_short_chain(&m, s)) {
        Ok(Ok(v)) => v,
        Ok(Err(e)) | Err(e) => return Ok(error_outcome("short-chain", limits, &e)),
    };
    let exit = verdict_exit(&verdict, &m);
    let summary = report::answer_phrase(&verdict);
    let doc = document("short-chain", limits, &summary, exit, report::verdict(&verdict, &m));
    Ok(Outcome { document: Some(doc), summary, exit })
}

fn not_applicable(command: &str, limits: &Limits, v: &ShortChainVerdict, m: &Representation) -> Outcome {
    let exit = verdict_exit(v, m);
    let summary = format!("not applicable: {}", report::answer_phrase(v));
    let result = json!({ "not_applicable": report::verdict(v, m) });
    Outcome { document: Some(document(command, limits, &summary, exit, result)), summary, exit }
}

pub fn theorem1_command(algebra: &Path, module: &Path, limits: &Limits) -> Result<Outcome, CliError> {
    let (_, m) = load(algebra, Some(module), limits)?;
    let m = m.expect("module was loaded");
    let opts = Theorem1Options { limits: limits.knit(), max_total_dim: limits.search_bound, budget: limits.budget };
    let cert = match theorem1_certificate(&m, &opts) {
        Ok(c) => c,
        Err(ShortChainError::NotApplicable(v)) => return Ok(not_applicable("theorem1", limits, &v, &m)),
        Err(e) => return Ok(error_outcome("theorem1", limits, &e)),
    };
    let (exit, summary) = match cert.verify(&m) {
        Err(why) => (Exit::VerificationFailure, format!("certificate failed re-verification: {why}")),
        Ok(()) => {
            let bounded = !cert.verdict.is_complete_negative();
            let exit = if bounded { Exit::BoundedNegative } else { Exit::Definitive };
            let summary = format!(
                "certificate: H with {} vertices, I with multiplicities {:?}, B {} A/ann(M){}",
                cert.h.num_vertices(),
                cert.injective_multiplicities,
                match cert.quotient_comparison {
                    IsoLevel::Explicit => "explicitly isomorphic to",
                    IsoLevel::Fingerprint => "fingerprint-isomorphic to",
                    IsoLevel::Different => "differs from",
                },
                if bounded { " (short-chain test bounded)" } else { "" }
            );
            (exit, summary)
        }
    };
    let doc = document("theorem1", limits, &summary, exit, report::certificate(&cert, &m));
    Ok(Outcome { document: Some(doc), summary, exit })
}

pub fn corollary12_command(
    algebra: &Path,
    module: &Path,
    candidates: &[PathBuf],
    limits: &Limits,
) -> Result<Outcome, CliError> {
    let (a, m) = load(algebra, Some(module), limits)?;
    let m = m.expect("module was loaded");
    let cands = load_candidates(candidates, &a)?;
    let r = match with_search(&a, &cands, limits, |s| corollary12_check(&m, s)) {
        Ok(Ok(r)) => r,
        Ok(Err(ShortChainError::NotApplicable(v))) => return Ok(not_applicable("corollary12", limits, &v, &m)),
        Ok(Err(e)) | Err(e) => return Ok(error_outcome("corollary12", limits, &e)),
    };
    let complete = r.verdict.is_complete_negative();
    let exit = match (complete, r.hereditary) {
        (true, true) => Exit::Definitive,
        (true, false) => Exit::VerificationFailure,
        (false, _) => Exit::BoundedNegative,
    };
    let summary = format!(
        "End(M) has {} vertices and is {}hereditary{}",
        r.end.algebra.num_vertices(),
        if r.hereditary { "" } else { "not " },
        if complete { "" } else { " (short-chain test bounded)" }
    );
    let doc = document("corollary12", limits, &summary, exit, report::corollary(&r, &m));
    Ok(Outcome { document: Some(doc), summary, exit })
}

/// Algebra and module reproducing a worked example.
pub fn example_inputs(id: &str, n: usize) -> Result<(Arc<BoundQuiverAlgebra>, Representation), CliError> {
    if n == 0 {
        return Err(CliError::Input("n must be at least 1".into()));
    }
    match id {
        // The star with n arms and M = I(1) + ... + I(n).
        "5.1" => {
            let a = star(n);
            let parts: Vec<_> = (1..=n).map(|v| structural_module(&a, v, StructuralKind::Injective)).collect();
            let m = direct_sum(&a, &parts).map_err(|e| CliError::Input(e.to_string()))?;
            Ok((a, m))
        }
        // B = K^n (each factor hereditary of type A1 with T = K), S the sum
        // of the simples, A the one-point extension by S, M = S.
        "5.2" => {
            let q = Quiver::new((1..=n).map(|i| i.to_string()).collect(), vec![])
                .map_err(|e| CliError::Input(e.to_string()))?;
            let b = Arc::new(build_algebra(q, vec![], DEFAULT_NILPOTENCY_BOUND).map_err(|e| CliError::Input(e.to_string()))?);
            let simples: Vec<_> = (0..n).map(|v| structural_module(&b, v, StructuralKind::Simple)).collect();
            let s = direct_sum(&b, &simples).map_err(|e| CliError::Input(e.to_string()))?;
            let ext = one_point_extension(&b, &s).map_err(|e| CliError::Input(e.to_string()))?;
            let a = ext.algebra;
            let parts: Vec<_> = (0..n).map(|v| structural_module(&a, v, StructuralKind::Simple)).collect();
            let m = direct_sum(&a, &parts).map_err(|e| CliError::Input(e.to_string()))?;
            Ok((a, m))
        }
        other => Err(CliError::Input(format!("unsupported example {other:?}, expected 5.1 or 5.2"))),
    }
}

pub fn examples_command(id: &str, n: usize, out_dir: &Path) -> Result<Outcome, CliError> {
    let (a, m) = example_inputs(id, n)?;
    let af = to_pretty_json(&algebra_to_file(&a));
    let mf = to_pretty_json(&module_to_file(&m));
    write_atomic(&out_dir.join("algebra.json"), &af)?;
    write_atomic(&out_dir.join("module.json"), &mf)?;
    let summary = format!(
        "example {id} (n = {n}): {} vertices, {} arrows, module of dimension vector {:?} written to {}",
        a.num_vertices(),
        a.quiver().num_arrows(),
        m.dims(),
        out_dir.display()
    );
    Ok(Outcome { document: None, summary, exit: Exit::Definitive })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_example(id: &str, n: usize) -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        examples_command(id, n, dir.path()).unwrap();
        dir
    }

    #[test]
    fn knit_summaries() {
        let dir = write_example("5.1", 3);
        let o = knit_command(&dir.path().join("algebra.json"), &Limits::default()).unwrap();
        assert!(o.summary.starts_with("12 indecomposables, complete"));
        let dir = write_example("5.1", 1);
        let o = knit_command(&dir.path().join("algebra.json"), &Limits::default()).unwrap();
        assert!(o.summary.starts_with("3 indecomposables, complete"));
    }

    #[test]
    fn example_5_1_is_not_a_middle() {
        let dir = write_example("5.1", 3);
        let (alg, module) = (dir.path().join("algebra.json"), dir.path().join("module.json"));
        let o = short_chain_command(&alg, &module, &[], &Limits::default()).unwrap();
        assert_eq!(o.exit, Exit::Definitive);
        assert_eq!(o.document.unwrap()["result"]["answer"]["kind"], "not_middle_complete");
        let o = theorem1_command(&alg, &module, &Limits::default()).unwrap();
        assert_eq!(o.exit, Exit::Definitive, "{}", o.summary);
    }

    #[test]
    fn example_5_2_minimal() {
        let (a, m) = example_inputs("5.2", 2).unwrap();
        assert_eq!(a.num_vertices(), 3);
        assert_eq!(a.quiver().num_arrows(), 2);
        assert_eq!(m.dims(), &[1, 1, 0]);
        let dir = write_example("5.2", 2);
        let (alg, module) = (dir.path().join("algebra.json"), dir.path().join("module.json"));
        let o = theorem1_command(&alg, &module, &Limits::default()).unwrap();
        assert_eq!(o.exit, Exit::Definitive, "{}", o.summary);
    }

    #[test]
    fn unsupported_inputs() {
        assert!(matches!(example_inputs("5.3", 2), Err(CliError::Input(_))));
        assert!(matches!(example_inputs("5.1", 0), Err(CliError::Input(_))));
        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("bad.json");
        std::fs::write(&bad, "{\"format\": 1, \"vertices\": [\"0\"], \"arrows\": [{\"name\": \"a\", \"from\": \"0\", \"to\": \"9\"}]}").unwrap();
        assert!(matches!(knit_command(&bad, &Limits::default()), Err(CliError::Input(_))));
        let zero = Limits { budget: 0, ..Limits::default() };
        let ok = write_example("5.1", 1);
        assert!(matches!(knit_command(&ok.path().join("algebra.json"), &zero), Err(CliError::Input(_))));
    }
}
