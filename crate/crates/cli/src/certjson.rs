//! Certificate documents.

use serde_json::{json, Value};

use invertcert_core::certify::Certificate;
use invertcert_core::Norm;

/// JSON has no infinities or NaN; those become `null`.
fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

pub fn norm_name(n: Norm) -> &'static str {
    match n {
        Norm::LInf => "linf",
        Norm::L1 => "l1",
    }
}

pub fn certificate(c: &Certificate) -> Value {
    json!({
        "kind": c.kind.as_str(),
        "center": c.center,
        "radius": num(c.radius),
        "at_cap": c.at_cap,
        "norm": norm_name(c.norm),
        "eps_r": c.eps_r,
        "eps_inv": c.eps_inv,
        "witness": c.witness.as_ref().map(|w| json!({"x": w.x, "y": w.y, "gap": num(w.gap)})),
        "probes": c.probes.iter().map(|p| json!({
            "r": num(p.r),
            "p_star": num(p.p_star),
            "status": p.status.as_str(),
        })).collect::<Vec<_>>(),
    })
}
