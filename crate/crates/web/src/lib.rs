//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each operation takes a BPA document as JSON text and returns JSON text.
//! The plain functions are usable (and tested) natively; the `#[wasm_bindgen]`
//! wrappers turn their errors into JavaScript exceptions.

use au_core::au::au;
use au_core::credal::is_consistent;
use au_core::document::{emit_bpa, parse_bpa};
use au_core::evidence::{shannon_entropy, transfer};
use au_core::{Frame, MassFunction, ProbabilityVector, SubsetMask};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest frame the demo accepts; the exact algorithm stays interactive.
pub const DEMO_FRAME_LIMIT: usize = 12;

fn load(bpa_json: &str) -> Result<MassFunction, String> {
    let m = parse_bpa(bpa_json).map_err(|e| format!("{} ({})", e, e.code()))?;
    if m.frame().len() > DEMO_FRAME_LIMIT {
        return Err(format!(
            "the demo handles at most {DEMO_FRAME_LIMIT} elements, this frame has {}",
            m.frame().len()
        ));
    }
    Ok(m)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn parse_set(frame: &Frame, text: &str) -> Result<SubsetMask, String> {
    let labels = text.split(',').map(str::trim).filter(|l| !l.is_empty());
    let set = frame.subset(labels).map_err(|e| e.to_string())?;
    if set.is_empty() {
        return Err("a set needs at least one label".into());
    }
    Ok(set)
}

#[derive(Serialize)]
struct Step {
    set: Vec<String>,
    ratio: f64,
}

#[derive(Serialize)]
struct ComputeView {
    value: f64,
    frame: Vec<String>,
    argmax: Vec<f64>,
    steps: Vec<Step>,
    canonical: String,
}

pub fn compute_au_json(bpa_json: &str) -> Result<String, String> {
    let m = load(bpa_json)?;
    let r = au(&m);
    let frame = m.frame();
    Ok(to_json(&ComputeView {
        value: r.value,
        frame: frame.labels().to_vec(),
        argmax: r.argmax.values().to_vec(),
        steps: r
            .steps
            .iter()
            .map(|s| Step {
                set: frame
                    .subset_labels(s.set)
                    .into_iter()
                    .map(String::from)
                    .collect(),
                ratio: s.ratio,
            })
            .collect(),
        canonical: emit_bpa(&m),
    }))
}

#[derive(Serialize)]
struct RegionPoint {
    p: Vec<f64>,
    feasible: bool,
    entropy: f64,
}

#[derive(Serialize)]
struct RegionView {
    frame: Vec<String>,
    resolution: usize,
    points: Vec<RegionPoint>,
    argmax: Vec<f64>,
    value: f64,
}

/// Samples the probability simplex of a two- or three-element frame on a
/// lattice with `resolution` steps per edge and marks which points dominate
/// the belief function.
pub fn credal_region_json(bpa_json: &str, resolution: usize) -> Result<String, String> {
    let m = load(bpa_json)?;
    let frame = m.frame();
    let n = frame.len();
    if !(2..=3).contains(&n) {
        return Err(format!("the simplex view needs 2 or 3 elements, not {n}"));
    }
    let k = resolution.clamp(1, 200);
    let bel = m.belief();
    let mut points = Vec::new();
    let mut push = |coords: Vec<f64>| -> Result<(), String> {
        let p = ProbabilityVector::new(frame, coords).map_err(|e| e.to_string())?;
        let feasible = is_consistent(&p, &bel)
            .map_err(|e| e.to_string())?
            .consistent;
        points.push(RegionPoint {
            entropy: shannon_entropy(&p),
            p: p.values().to_vec(),
            feasible,
        });
        Ok(())
    };
    for i in 0..=k {
        if n == 2 {
            let a = i as f64 / k as f64;
            push(vec![a, 1.0 - a])?;
            continue;
        }
        for j in 0..=(k - i) {
            let (a, b) = (i as f64 / k as f64, j as f64 / k as f64);
            push(vec![a, b, (1.0 - a - b).max(0.0)])?;
        }
    }
    let r = au(&m);
    Ok(to_json(&RegionView {
        frame: frame.labels().to_vec(),
        resolution: k,
        points,
        argmax: r.argmax.values().to_vec(),
        value: r.value,
    }))
}

#[derive(Serialize)]
struct CurveView {
    alpha: Vec<f64>,
    au: Vec<f64>,
}

/// AU after moving the fraction `1 - α` of `m(from)` onto `to`, for `α`
/// from 1 (nothing moved) down to 0 (everything moved).
pub fn transfer_curve_json(
    bpa_json: &str,
    from: &str,
    to: &str,
    steps: usize,
) -> Result<String, String> {
    let m = load(bpa_json)?;
    let from = parse_set(m.frame(), from)?;
    let to = parse_set(m.frame(), to)?;
    let steps = steps.clamp(1, 1000);
    let mut view = CurveView {
        alpha: Vec::with_capacity(steps + 1),
        au: Vec::with_capacity(steps + 1),
    };
    for i in 0..=steps {
        let alpha = 1.0 - i as f64 / steps as f64;
        let moved = transfer(&m, from, to, alpha).map_err(|e| e.to_string())?;
        view.alpha.push(alpha);
        view.au.push(au(&moved).value);
    }
    Ok(to_json(&view))
}

#[wasm_bindgen]
pub fn compute_au(bpa_json: &str) -> Result<String, JsError> {
    compute_au_json(bpa_json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn credal_region(bpa_json: &str, resolution: usize) -> Result<String, JsError> {
    credal_region_json(bpa_json, resolution).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn transfer_curve(
    bpa_json: &str,
    from: &str,
    to: &str,
    steps: usize,
) -> Result<String, JsError> {
    transfer_curve_json(bpa_json, from, to, steps).map_err(|e| JsError::new(&e))
}
