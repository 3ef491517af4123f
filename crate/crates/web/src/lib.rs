//! Browser bindings. Every export takes plain strings and returns a JSON
//! string with an `ok` field; failures carry an `error` message.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use cellball::certify::{certify_ball, Certificate};
use cellball::hcalc::boundary_h;
use cellball::realizer::{build_omega, realize};
use cellball::{check_ball, check_sphere, HVector};

/// Evaluates the ball conditions, or the sphere conditions when `sphere`.
#[wasm_bindgen]
pub fn check_h(h: &str, sphere: bool) -> String {
    respond(check_value(h, sphere))
}

/// Builds and certifies a ball with h-vector `h`.
#[wasm_bindgen]
pub fn realize_h(h: &str) -> String {
    respond(realize_value(h))
}

/// The shellable complex used by the two-window construction for `(n, h)`.
#[wasm_bindgen]
pub fn omega(n: usize, h: &str) -> String {
    respond(omega_value(n, h))
}

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(mut v) => {
            v["ok"] = json!(true);
            v.to_string()
        }
        Err(e) => json!({ "ok": false, "error": e }).to_string(),
    }
}

fn parse(h: &str) -> Result<HVector, String> {
    h.parse().map_err(|e| format!("invalid h-vector: {e}"))
}

fn check_value(h: &str, sphere: bool) -> Result<Value, String> {
    let h = parse(h)?;
    let report = if sphere {
        check_sphere(&h)
    } else {
        check_ball(&h)
    };
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| {
            let witness: Vec<String> = f.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
            json!({ "condition": f.condition, "witness": witness.join(", ") })
        })
        .collect();
    Ok(json!({
        "h": h.entries(),
        "target": report.target.to_string(),
        "admissible": report.is_admissible(),
        "failures": failures,
        "boundary_h": boundary_h(&h).iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    }))
}

fn realize_value(h: &str) -> Result<Value, String> {
    let h = parse(h)?;
    let r = realize(&h).map_err(|e| e.to_string())?;
    let facets = r.poset.facet_count();
    let elements = r.poset.len();
    let f: Vec<String> = r.poset.f_vector().iter().map(|x| x.to_string()).collect();
    let case = r.case.to_string();
    let case3 = r.case3.as_ref().map(|c| {
        json!({
            "n": c.n,
            "m": c.m,
            "s": c.s,
            "gamma": c.gamma.entries(),
            "delta_bar": c.delta_bar.entries(),
            "h_prime": c.h_prime.entries(),
            "h_double_prime": c.h_double_prime.entries(),
        })
    });
    let trace = r.trace.to_text();
    let cert = Certificate {
        poset: r.poset,
        trace: r.trace,
        h,
    };
    let report = certify_ball(&cert);
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name.to_string(),
                "title": c.title,
                "passed": c.passed,
                "witness": c.witness,
            })
        })
        .collect();
    Ok(json!({
        "case": case,
        "case3": case3,
        "facets": facets,
        "elements": elements,
        "f": f,
        "certified": report.passed(),
        "checks": checks,
        "trace": trace,
    }))
}

fn omega_value(n: usize, h: &str) -> Result<Value, String> {
    let h = parse(h)?;
    let o = build_omega(n, &h).map_err(|e| e.to_string())?;
    let facets: Vec<String> = o
        .order
        .iter()
        .map(|&id| o.complex.label(id).to_string())
        .collect();
    let pairs: Vec<[usize; 2]> = o.pairs.iter().map(|&(p, q)| [p, q]).collect();
    Ok(json!({
        "pairs": pairs,
        "facets": facets,
        "shelling_numbers": o.shelling_numbers,
        "h": o.h.entries(),
    }))
}
