//! Runtime sweep of the invertibility MILP on single-block i-ResNets.
//!
//! For one replicate seed every instance is cut out of the same master
//! weights (first `n₁` hidden units, first `n₀` coordinates), so a larger
//! instance contains every unit of a smaller one.

use serde::Serialize;

use crate::clock::WallClock;
use crate::error::Result;
use invertcert_core::encoder::encode_problem1;
use invertcert_core::milp::milp_solve_with_clock;
use invertcert_core::network::{flatten_residual, random_network};
use invertcert_core::{Affine, EncodeOptions, InputBox, ReluMlp, ResidualNet, SolveOptions};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub n0: Vec<usize>,
    pub n1: Vec<usize>,
    pub radii: Vec<f64>,
    pub repeats: usize,
    pub time_limit: f64,
    pub seed: u64,
    /// Lipschitz target of each residual block.
    pub contraction: f64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            n0: vec![1, 2],
            n1: vec![2, 4, 8],
            radii: vec![0.5, 1.0],
            repeats: 3,
            time_limit: 10.0,
            seed: 0,
            contraction: 0.5,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub n0: usize,
    pub n1: usize,
    pub r: f64,
    pub median_seconds: f64,
    pub seconds: Vec<f64>,
    pub statuses: Vec<String>,
    pub variables: Vec<usize>,
    pub constraints: Vec<usize>,
    pub binaries: Vec<usize>,
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

/// Single-block residual net `x + V relu(Wx + b) + c` sliced from master weights.
pub fn instance(master: &ReluMlp, n0: usize, n1: usize, contraction: f64) -> Result<ReluMlp> {
    let (inner, outer) = (&master.layers()[0], &master.layers()[1]);
    let w: Vec<f64> = (0..n1).flat_map(|i| (0..n0).map(move |j| (i, j))).map(|(i, j)| inner.get(i, j)).collect();
    let b = inner.bias()[..n1].to_vec();
    let v: Vec<f64> = (0..n0).flat_map(|i| (0..n1).map(move |j| (i, j))).map(|(i, j)| outer.get(i, j)).collect();
    let c = outer.bias()[..n0].to_vec();
    let fro = |m: &[f64]| m.iter().map(|x| x * x).sum::<f64>().sqrt();
    let lip = fro(&w) * fro(&v);
    let s = if lip > 0.0 { contraction / lip } else { 1.0 };
    let v = v.iter().map(|x| x * s).collect();
    let c = c.iter().map(|x| x * s).collect();
    let block = ReluMlp::new(vec![Affine::new(n1, n0, w, b)?, Affine::new(n0, n1, v, c)?])?;
    Ok(flatten_residual(&ResidualNet::new(vec![block])?))
}

pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let n0_max = cfg.n0.iter().copied().max().unwrap_or(1);
    let n1_max = cfg.n1.iter().copied().max().unwrap_or(1);
    let masters = (0..cfg.repeats)
        .map(|k| random_network(&[n0_max, n1_max, n0_max], None, cfg.seed.wrapping_add(k as u64)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let opts = SolveOptions { time_limit: Some(cfg.time_limit), ..SolveOptions::default() };
    let mut rows = Vec::new();
    for &n0 in &cfg.n0 {
        for &n1 in &cfg.n1 {
            for &r in &cfg.radii {
                let mut row = BenchRow {
                    n0,
                    n1,
                    r,
                    median_seconds: 0.0,
                    seconds: Vec::new(),
                    statuses: Vec::new(),
                    variables: Vec::new(),
                    constraints: Vec::new(),
                    binaries: Vec::new(),
                };
                for master in &masters {
                    let net = instance(master, n0, n1, cfg.contraction)?;
                    let b = InputBox::linf(vec![0.0; n0], r)?;
                    let p = encode_problem1(&net, &b, &EncodeOptions::default())?;
                    let clock = WallClock::new();
                    let s = milp_solve_with_clock(&p.model, &opts, &clock);
                    row.seconds.push(s.stats.wall_time);
                    row.statuses.push(s.status.as_str().to_string());
                    row.variables.push(p.model.num_vars());
                    row.constraints.push(p.model.num_constraints());
                    row.binaries.push(p.binary_count());
                }
                row.median_seconds = median(&row.seconds);
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

/// Pairs of rows (same radius and replicate) where the larger network got a
/// smaller model. Empty when sizes grow monotonically.
pub fn size_regressions(rows: &[BenchRow]) -> Vec<String> {
    let mut out = Vec::new();
    for a in rows {
        for b in rows {
            if a.r != b.r || (a.n0, a.n1) == (b.n0, b.n1) || a.n0 > b.n0 || a.n1 > b.n1 {
                continue;
            }
            for k in 0..a.variables.len().min(b.variables.len()) {
                if b.variables[k] < a.variables[k] || b.constraints[k] < a.constraints[k] || b.binaries[k] < a.binaries[k] {
                    out.push(format!(
                        "r = {}, replicate {k}: ({}, {}) has a larger model than ({}, {})",
                        a.r, a.n0, a.n1, b.n0, b.n1
                    ));
                }
            }
        }
    }
    out
}
