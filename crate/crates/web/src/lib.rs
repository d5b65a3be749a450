//! Browser bindings: parse a Gauss code, evaluate the invariants and run a
//! short certification walk. Results are JSON strings so the page needs no
//! glue beyond `JSON.parse`.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use gaussloop::invariants::{phi_fr, phi_general, phi_ijk, symmetry_report};
use gaussloop::verify::{certify, Invariant, WalkPlan};
use gaussloop::weights::weights;
use gaussloop::GaussDiagram;

#[derive(Serialize)]
struct Analysis {
    code: String,
    arrows: usize,
    weights: Vec<i64>,
    writhe: i64,
    phi_fr: String,
    reflected: String,
    detects_symmetry: bool,
    phi_terms: Vec<String>,
}

fn parse(code: &str) -> Result<GaussDiagram, String> {
    code.trim().parse().map_err(|e: gaussloop::Error| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Weights, writhe, Φ^fr with its reflection, and the nonzero terms of φ.
#[wasm_bindgen]
pub fn analyze(code: &str) -> Result<String, String> {
    let d = parse(code)?;
    let err = |e: gaussloop::Error| e.to_string();
    let sym = symmetry_report(&d).map_err(err)?;
    let phi_terms = phi_general(&d)
        .map_err(err)?
        .terms()
        .iter()
        .map(|(g, c)| format!("{c:+} PAR({},{},{})", g.labels[0], g.labels[1], g.labels[2]))
        .collect();
    to_json(&Analysis {
        code: d.to_string(),
        arrows: d.n(),
        weights: weights(&d).map_err(err)?,
        writhe: d.writhe().map_err(err)?,
        phi_fr: phi_fr(&d).map_err(err)?.to_string(),
        reflected: sym.reflected.to_string(),
        detects_symmetry: sym.detects_noninvertible,
        phi_terms,
    })
}

/// φ_{i,j,k} of a diagram.
#[wasm_bindgen]
pub fn phi(code: &str, i: u32, j: u32, k: u32) -> Result<i32, String> {
    let d = parse(code)?;
    let v = phi_ijk(&d, i.into(), j.into(), k.into()).map_err(|e| e.to_string())?;
    i32::try_from(v).map_err(|e| e.to_string())
}

/// Walks `steps` random moves from the diagram and reports whether φ and
/// (parity-corrected) Φ^fr stayed put.
#[wasm_bindgen]
pub fn certify_walk(code: &str, steps: u32, seed: u32) -> Result<String, String> {
    let d = parse(code)?;
    let plan = WalkPlan {
        parity_aware: true,
        ..WalkPlan::new(steps as usize, seed.into())
    };
    let out = certify(&d, &[Invariant::PhiGeneral, Invariant::PhiFr], &plan).map_err(|e| e.to_string())?;
    to_json(&out)
}
