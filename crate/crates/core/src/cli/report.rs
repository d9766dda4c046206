//! JSON renderings of library results. Every module and algebra inside a
//! report uses the input file schemas, so it can be fed back to the tool.

use serde_json::{json, Value};

use crate::artrans::{ARQuiverFragment, FragmentStatus};
use crate::quiveralg::BoundQuiverAlgebra;
use crate::repcat::{Morphism, Representation};
use crate::shortchain::{
    Corollary12Report, CycleAnswer, CycleVerdict, ShortChainAnswer, ShortChainVerdict, Theorem1Certificate,
};

use super::format::{algebra_to_file, module_to_file, morphism_to_map};

fn algebra(a: &BoundQuiverAlgebra) -> Value {
    json!(algebra_to_file(a))
}

fn module(m: &Representation) -> Value {
    json!(module_to_file(m))
}

fn morphism(f: &Morphism, m: &Representation) -> Value {
    json!(morphism_to_map(f, m.algebra()))
}

pub fn status_phrase(s: &FragmentStatus) -> String {
    match s {
        FragmentStatus::CompleteFiniteType => "complete".into(),
        FragmentStatus::TruncatedAtBound { max_modules, max_total_dim } => {
            format!("truncated at {max_modules} modules or total dimension {max_total_dim}")
        }
    }
}

pub fn fragment_summary(f: &ARQuiverFragment) -> String {
    format!("{} indecomposables, {}; {} tau-orbits", f.len(), status_phrase(&f.status), f.orbit_count())
}

pub fn fragment(f: &ARQuiverFragment) -> Value {
    let orbit = f.orbit_ids();
    let vertices: Vec<Value> = f
        .vertices
        .iter()
        .enumerate()
        .map(|(i, m)| {
            json!({
                "index": i,
                "dims": m.dims(),
                "projective": f.projective[i],
                "injective": f.injective[i],
                "tau": f.tau[i],
                "orbit": orbit[i],
                "module": module(m),
            })
        })
        .collect();
    let arrows: Vec<Value> = f
        .arrows
        .iter()
        .map(|a| json!({ "source": a.source, "target": a.target, "multiplicity": a.multiplicity }))
        .collect();
    json!({
        "algebra": algebra(&f.algebra),
        "status": f.status,
        "vertices": vertices,
        "arrows": arrows,
        "orbits": f.orbit_count(),
        "components": f.components(),
    })
}

pub fn answer_phrase(v: &ShortChainVerdict) -> String {
    match &v.answer {
        ShortChainAnswer::Middle(w) => format!("middle of a short chain through X with dims {:?}", w.x.dims()),
        ShortChainAnswer::NotMiddleComplete => "not the middle of a short chain (exhaustive)".into(),
        ShortChainAnswer::NotMiddleUpToBound { max_total_dim } => {
            format!("no short chain through indecomposables of total dimension <= {max_total_dim} (bounded)")
        }
        ShortChainAnswer::NotMiddleAmongCandidates { count } => {
            format!("no short chain through the {count} given candidates (bounded)")
        }
    }
}

pub fn verdict(v: &ShortChainVerdict, m: &Representation) -> Value {
    let answer = match &v.answer {
        ShortChainAnswer::Middle(w) => json!({
            "kind": "middle",
            "witness": {
                "x": module(&w.x),
                "tau_x": module(&w.tau_x),
                "x_to_m": morphism(&w.x_to_m, &w.x),
                "m_to_tau_x": morphism(&w.m_to_tau_x, m),
                "verified": w.verify(m),
            },
        }),
        ShortChainAnswer::NotMiddleComplete => json!({ "kind": "not_middle_complete" }),
        ShortChainAnswer::NotMiddleUpToBound { max_total_dim } => {
            json!({ "kind": "not_middle_up_to_bound", "max_total_dim": max_total_dim })
        }
        ShortChainAnswer::NotMiddleAmongCandidates { count } => {
            json!({ "kind": "not_middle_among_candidates", "count": count })
        }
    };
    json!({ "answer": answer, "provenance": v.provenance })
}

pub fn cycle_verdict(v: &CycleVerdict, x: &Representation) -> Value {
    let answer = match &v.answer {
        CycleAnswer::OnShortCycle(w) => json!({
            "kind": "on_short_cycle",
            "witness": {
                "y": module(&w.y),
                "y_to_x": morphism(&w.y_to_x, &w.y),
                "x_to_y": morphism(&w.x_to_y, x),
            },
        }),
        CycleAnswer::NoShortCycleComplete => json!({ "kind": "no_short_cycle_complete" }),
        CycleAnswer::NoShortCycleUpToBound { max_total_dim } => {
            json!({ "kind": "no_short_cycle_up_to_bound", "max_total_dim": max_total_dim })
        }
        CycleAnswer::NoShortCycleAmongCandidates { count } => {
            json!({ "kind": "no_short_cycle_among_candidates", "count": count })
        }
    };
    json!({ "answer": answer, "provenance": v.provenance })
}

pub fn certificate(c: &Theorem1Certificate, m: &Representation) -> Value {
    let b = &c.quotient;
    let h = &c.h;
    let names = |a: &BoundQuiverAlgebra, vs: &[usize]| -> Vec<String> {
        vs.iter().map(|&v| a.quiver().vertices()[v].clone()).collect()
    };
    let injective: serde_json::Map<String, Value> = h
        .quiver()
        .vertices()
        .iter()
        .zip(&c.injective_multiplicities)
        .map(|(v, &k)| (v.clone(), json!(k)))
        .collect();
    json!({
        "verdict": verdict(&c.verdict, m),
        "quotient": {
            "algebra": algebra(b),
            "surviving_vertices": names(m.algebra(), &c.quotient_data.surviving),
            "ideal_dim": c.quotient_data.ideal.len(),
        },
        "module": module(&c.module),
        "fragment": { "status": c.fragment_status, "vertices": c.fragment_size },
        "section": c.section.vertices,
        "section_modules": c.section_modules.iter().map(module).collect::<Vec<_>>(),
        "h": algebra(h),
        "t": module(&c.t),
        "tilting": {
            "summands": c.tilting.summands.iter().map(module).collect::<Vec<_>>(),
            "multiplicities": c.tilting.multiplicities,
            "hom_tau": c.tilting.hom_tau,
            "rank": c.tilting.rank,
        },
        "end_t": algebra(&c.end_t.algebra),
        "algebra_iso": {
            "vertex_map": c.algebra_iso.vertex_map,
            "arrow_images": c.algebra_iso.arrow_images,
        },
        "quotient_comparison": c.quotient_comparison,
        "injective": { "multiplicities": injective, "module": module(&c.injective) },
        "image": module(&c.image),
        "module_iso": morphism(&c.module_iso, &c.module),
    })
}

pub fn corollary(r: &Corollary12Report, m: &Representation) -> Value {
    json!({
        "verdict": verdict(&r.verdict, m),
        "end": algebra(&r.end.algebra),
        "multiplicities": r.end.multiplicities,
        "summands": r.end.summands.iter().map(module).collect::<Vec<_>>(),
        "hereditary": r.hereditary,
        "global_dimension": r.global_dimension,
    })
}
