//! MILP optimum against the brute-force oracles on named instances.

use serde::Serialize;

use crate::error::{CliError, Result};
use invertcert_core::encoder::{encode_problem1, encode_problem2, encode_problem3};
use invertcert_core::milp::milp_solve_with_clock;
use invertcert_core::network::{identity_pair, random_network, single_relu};
use invertcert_core::oracle::{grid_collision_search, pattern_enumeration_optimum, scan_pseudo_gap, Instance};
use invertcert_core::{EncodeOptions, EncodedProblem, InputBox, MilpStatus, SolveOptions};

pub const INSTANCES: [&str; 5] = ["single-relu", "relu-141", "pseudo-141", "map-262", "identity"];

/// Enumeration and MILP must agree to this.
pub const EXACT_TOL: f64 = 1e-6;
const GRID_RES: usize = 4000;

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub instance: String,
    pub seed: u64,
    pub milp: f64,
    pub milp_status: String,
    pub enumeration: f64,
    /// Grid or scan estimate, for one-dimensional instances.
    pub grid: Option<f64>,
    pub grid_tol: Option<f64>,
    pub agree: bool,
}

fn solve(p: &EncodedProblem, opts: &SolveOptions, clock: &dyn invertcert_core::milp::Clock) -> (f64, MilpStatus) {
    let s = milp_solve_with_clock(&p.model, opts, clock);
    (s.objective, s.status)
}

pub fn check(name: &str, seed: u64, opts: &SolveOptions, clock: &dyn invertcert_core::milp::Clock) -> Result<CheckReport> {
    let enc = EncodeOptions::default();
    let (milp, status, enumeration, grid, grid_tol) = match name {
        "single-relu" | "relu-141" | "identity" => {
            let (net, b) = match name {
                "single-relu" => (single_relu(), InputBox::linf(vec![0.0], 1.0)?),
                "relu-141" => (random_network(&[1, 4, 1], None, seed)?, InputBox::linf(vec![0.0], 1.0)?),
                _ => (identity_pair(1), InputBox::linf(vec![0.0], 1.0)?),
            };
            let (m, st) = solve(&encode_problem1(&net, &b, &enc)?, opts, clock);
            let e = pattern_enumeration_optimum(Instance::Invertibility(&net), &b)?.optimum;
            let g = grid_collision_search(&net, &b, GRID_RES, 1e-9)?.gap;
            // two grid pitches: one per input copy
            (m, st, e, Some(g), Some(2.0 * 2.0 * b.radius / GRID_RES as f64))
        }
        "pseudo-141" => {
            let net = random_network(&[1, 4, 1], None, seed)?;
            let b = InputBox::linf(vec![0.1], 1.0)?;
            let (m, st) = solve(&encode_problem2(&net, &b)?, opts, clock);
            let e = pattern_enumeration_optimum(Instance::PseudoInvertibility(&net), &b)?.optimum;
            let g = scan_pseudo_gap(&net, &b, GRID_RES, 1e-9)?.gap;
            (m, st, e, Some(g), Some(2.0 * b.radius / GRID_RES as f64))
        }
        "map-262" => {
            let a = random_network(&[2, 6, 2], None, seed)?;
            let bn = random_network(&[2, 6, 2], None, seed.wrapping_add(1))?;
            let b = InputBox::linf(vec![0.0, 0.1], 0.15)?;
            let (m, st) = solve(&encode_problem3(&a, &bn, &b)?, opts, clock);
            let e = pattern_enumeration_optimum(Instance::Mappability(&a, &bn), &b)?.optimum;
            (m, st, e, None, None)
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown instance {other:?}; expected one of {}",
                INSTANCES.join(", ")
            )))
        }
    };
    let exact = status == MilpStatus::Optimal && (milp - enumeration).abs() <= EXACT_TOL;
    let near = match (grid, grid_tol) {
        (Some(g), Some(t)) => (g - enumeration).abs() <= t,
        _ => true,
    };
    Ok(CheckReport {
        instance: name.to_string(),
        seed,
        milp,
        milp_status: status.as_str().to_string(),
        enumeration,
        grid,
        grid_tol,
        agree: exact && near,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use invertcert_core::milp::NoClock;

    #[test]
    fn named_instances_agree() {
        for name in INSTANCES {
            let r = check(name, 3, &SolveOptions::default(), &NoClock).unwrap();
            assert!(r.agree, "{r:?}");
        }
        assert!(matches!(check("nope", 0, &SolveOptions::default(), &NoClock), Err(CliError::Usage(_))));
    }

    #[test]
    fn known_optima() {
        let r = check("single-relu", 0, &SolveOptions::default(), &NoClock).unwrap();
        assert!((r.milp - 1.0).abs() < 1e-9);
        let r = check("identity", 0, &SolveOptions::default(), &NoClock).unwrap();
        assert!(r.milp.abs() < 1e-9);
    }
}
