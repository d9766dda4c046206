use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exactla::{Matrix, Rational};
use crate::quiveralg::{build_algebra, Arrow, BoundQuiverAlgebra, Quiver, Relation};
use crate::repcat::{Morphism, Representation};

use super::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowEntry {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    pub coeff: Rational,
    /// Arrow names in traversal order.
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowEntry>,
    #[serde(default)]
    pub relations: Vec<Vec<TermEntry>>,
}

/// Dimensions and row-major matrices (`dim target x dim source`), keyed by
/// vertex and arrow names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub format: u32,
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<Rational>>>,
}

fn check_format(found: u32) -> Result<(), CliError> {
    if found != FORMAT_VERSION {
        return Err(CliError::Input(format!("unsupported format {found}, expected {FORMAT_VERSION}")));
    }
    Ok(())
}

pub fn algebra_to_file(a: &BoundQuiverAlgebra) -> AlgebraFile {
    let q = a.quiver();
    let names = q.vertices();
    AlgebraFile {
        format: FORMAT_VERSION,
        vertices: names.to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|ar| ArrowEntry { name: ar.name.clone(), from: names[ar.source].clone(), to: names[ar.target].clone() })
            .collect(),
        relations: a
            .relations()
            .iter()
            .map(|r| r.terms.iter().map(|(c, p)| TermEntry { coeff: c.clone(), path: q.path_names(p) }).collect())
            .collect(),
    }
}

pub fn algebra_from_file(f: &AlgebraFile, nilpotency_bound: usize) -> Result<Arc<BoundQuiverAlgebra>, CliError> {
    check_format(f.format)?;
    let index = |v: &str| {
        f.vertices.iter().position(|x| x == v).ok_or_else(|| CliError::Input(format!("unknown vertex {v:?}")))
    };
    let arrows = f
        .arrows
        .iter()
        .map(|e| Ok(Arrow { name: e.name.clone(), source: index(&e.from)?, target: index(&e.to)? }))
        .collect::<Result<Vec<_>, CliError>>()?;
    let q = Quiver::new(f.vertices.clone(), arrows).map_err(|e| CliError::Input(e.to_string()))?;
    let mut rels = Vec::with_capacity(f.relations.len());
    for r in &f.relations {
        let mut terms = Vec::with_capacity(r.len());
        for t in r {
            let names: Vec<&str> = t.path.iter().map(String::as_str).collect();
            let p = q.path_from_names(&names).map_err(|e| CliError::Input(e.to_string()))?;
            terms.push((t.coeff.clone(), p));
        }
        rels.push(Relation::new(terms));
    }
    let a = build_algebra(q, rels, nilpotency_bound).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(Arc::new(a))
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<Rational>> {
    m.to_rows()
}

pub fn module_to_file(m: &Representation) -> ModuleFile {
    let q = m.algebra().quiver();
    ModuleFile {
        format: FORMAT_VERSION,
        dims: q.vertices().iter().cloned().zip(m.dims().iter().copied()).collect(),
        maps: q.arrows().iter().zip(m.maps()).map(|(ar, x)| (ar.name.clone(), matrix_rows(x))).collect(),
    }
}

/// Missing vertices have dimension zero and missing arrows act by zero.
pub fn module_from_file(f: &ModuleFile, a: &Arc<BoundQuiverAlgebra>) -> Result<Representation, CliError> {
    check_format(f.format)?;
    let q = a.quiver();
    let mut dims = vec![0; q.num_vertices()];
    for (name, &d) in &f.dims {
        let v = q.vertex_index(name).ok_or_else(|| CliError::Input(format!("unknown vertex {name:?}")))?;
        dims[v] = d;
    }
    let mut maps: Vec<Matrix> = q.arrows().iter().map(|ar| Matrix::zeros(dims[ar.target], dims[ar.source])).collect();
    for (name, rows) in &f.maps {
        let k = q.arrow_index(name).ok_or_else(|| CliError::Input(format!("unknown arrow {name:?}")))?;
        let (r, c) = maps[k].shape();
        let shaped = rows.len() == r && rows.iter().all(|row| row.len() == c);
        if !shaped {
            return Err(CliError::Input(format!("matrix of arrow {name:?} must be {r} x {c}")));
        }
        maps[k] = Matrix::from_rows(rows.clone(), c);
    }
    Representation::new(a.clone(), dims, maps).map_err(|e| CliError::Input(e.to_string()))
}

/// Per-vertex matrices keyed by vertex name.
pub fn morphism_to_map(f: &Morphism, a: &BoundQuiverAlgebra) -> BTreeMap<String, Vec<Vec<Rational>>> {
    a.quiver().vertices().iter().cloned().zip(f.blocks.iter().map(matrix_rows)).collect()
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Writes through a sibling temporary file and a rename, so readers never
/// see a partial document.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

pub fn to_pretty_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("report values serialize");
    s.push('\n');
    s
}
