//! Models in the LP text format read by most MILP solvers.

use std::fmt::Write;

use invertcert_core::milp::{Relation, Sense, VarKind};
use invertcert_core::MilpModel;

/// 17 significant digits.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn terms(out: &mut String, model: &MilpModel, terms: &[(usize, f64)]) {
    if terms.is_empty() {
        if let Some(v) = model.variables.first() {
            let _ = write!(out, " 0 {}", v.name);
        }
    }
    for (k, &(j, a)) in terms.iter().enumerate() {
        let sign = if a < 0.0 { " -" } else if k == 0 { "" } else { " +" };
        let _ = write!(out, "{sign} {} {}", num(a.abs()), model.variables[j].name);
    }
}

pub fn dump(model: &MilpModel, comment: &str) -> String {
    let mut out = String::new();
    for line in comment.lines() {
        let _ = writeln!(out, "\\ {line}");
    }
    out.push_str(match model.sense {
        Sense::Maximize => "Maximize\n",
        Sense::Minimize => "Minimize\n",
    });
    out.push_str(" obj:");
    terms(&mut out, model, &model.objective);
    out.push_str("\nSubject To\n");
    for (i, c) in model.constraints.iter().enumerate() {
        let name = if c.name.is_empty() { format!("c{i}") } else { c.name.clone() };
        let _ = write!(out, " {name}:");
        terms(&mut out, model, &c.terms);
        let rel = match c.relation {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        };
        let _ = writeln!(out, " {rel} {}", num(c.rhs));
    }
    out.push_str("Bounds\n");
    for v in model.variables.iter().filter(|v| v.kind == VarKind::Continuous) {
        match (v.lower.is_finite(), v.upper.is_finite()) {
            (true, true) => writeln!(out, " {} <= {} <= {}", num(v.lower), v.name, num(v.upper)),
            (true, false) => writeln!(out, " {} >= {}", v.name, num(v.lower)),
            (false, true) => writeln!(out, " -inf <= {} <= {}", v.name, num(v.upper)),
            (false, false) => writeln!(out, " {} free", v.name),
        }
        .expect("writing to a String");
    }
    let bins: Vec<&str> = model
        .variables
        .iter()
        .filter(|v| v.kind == VarKind::Binary)
        .map(|v| v.name.as_str())
        .collect();
    if !bins.is_empty() {
        out.push_str("Binaries\n");
        for b in bins {
            let _ = writeln!(out, " {b}");
        }
    }
    out.push_str("End\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_model() {
        let mut m = MilpModel::new(Sense::Maximize);
        let x = m.add_continuous("x", -1.0, 2.0);
        let t = m.add_binary("t");
        m.add_constraint("c", vec![(x, 1.0), (t, -0.5)], Relation::Le, 0.25);
        m.set_objective(Sense::Maximize, vec![(x, 1.0)]);
        let s = dump(&m, "demo");
        assert!(s.starts_with("\\ demo\nMaximize\n"));
        assert!(s.contains(" c: 1.0000000000000000e0 x - 5.0000000000000000e-1 t <= 2.5000000000000000e-1\n"));
        assert!(s.contains(" -1.0000000000000000e0 <= x <= 2.0000000000000000e0\n"));
        assert!(s.contains("Binaries\n t\nEnd\n"));
    }
}
