//! Two-phase tableau simplex with Bland's rule.
//!
//! Deliberately plain: variables are shifted to be nonnegative, every row
//! gets its own slack/surplus and artificial column, and pivoting always
//! takes the lowest eligible index. Used to cross-check the production LP
//! solver, never by it.

use alloc::vec;
use alloc::vec::Vec;

use crate::milp::{LpSolution, LpStatus, MilpModel, Relation, Sense};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

/// `max c·x` subject to dense rows and variable bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseLp {
    pub c: Vec<f64>,
    pub rows: Vec<(Vec<f64>, Rel, f64)>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub status: Status,
    pub objective: f64,
    pub x: Vec<f64>,
}

const EPS: f64 = 1e-10;

impl DenseLp {
    pub fn new(n: usize) -> Self {
        Self {
            c: vec![0.0; n],
            rows: Vec::new(),
            lower: vec![0.0; n],
            upper: vec![f64::INFINITY; n],
        }
    }

    pub fn row(&mut self, a: Vec<f64>, rel: Rel, b: f64) {
        self.rows.push((a, rel, b));
    }
}

pub fn solve(lp: &DenseLp) -> Solution {
    let n = lp.c.len();
    // x_j = off_j + Σ sign · z_col
    let mut off = vec![0.0; n];
    let mut map: Vec<Vec<(usize, f64)>> = Vec::with_capacity(n);
    let mut nz = 0;
    let mut extra: Vec<(usize, f64)> = Vec::new();
    for j in 0..n {
        let (l, u) = (lp.lower[j], lp.upper[j]);
        if l.is_finite() {
            off[j] = l;
            map.push(vec![(nz, 1.0)]);
            if u.is_finite() {
                extra.push((nz, u - l));
            }
            nz += 1;
        } else if u.is_finite() {
            off[j] = u;
            map.push(vec![(nz, -1.0)]);
            nz += 1;
        } else {
            map.push(vec![(nz, 1.0), (nz + 1, -1.0)]);
            nz += 2;
        }
    }
    let mut rows: Vec<(Vec<f64>, Rel, f64)> = Vec::new();
    for (a, rel, b) in &lp.rows {
        let mut r = vec![0.0; nz];
        let mut rhs = *b;
        for j in 0..n {
            rhs -= a[j] * off[j];
            for &(k, s) in &map[j] {
                r[k] += a[j] * s;
            }
        }
        rows.push((r, *rel, rhs));
    }
    for (k, cap) in extra {
        let mut r = vec![0.0; nz];
        r[k] = 1.0;
        rows.push((r, Rel::Le, cap));
    }
    let mut cz = vec![0.0; nz];
    let mut c0 = 0.0;
    for j in 0..n {
        c0 += lp.c[j] * off[j];
        for &(k, s) in &map[j] {
            cz[k] += lp.c[j] * s;
        }
    }
    let (status, z) = standard_form(&cz, &rows);
    let mut x = off.clone();
    if status == Status::Optimal {
        for j in 0..n {
            for &(k, s) in &map[j] {
                x[j] += s * z[k];
            }
        }
    }
    let objective = match status {
        Status::Optimal => lp.c.iter().zip(&x).map(|(c, v)| c * v).sum::<f64>(),
        Status::Unbounded => f64::INFINITY,
        Status::Infeasible => f64::NAN,
    };
    let _ = c0;
    Solution { status, objective, x }
}

/// `max c·z`, `z ≥ 0`, rows as given.
fn standard_form(c: &[f64], rows: &[(Vec<f64>, Rel, f64)]) -> (Status, Vec<f64>) {
    let nz = c.len();
    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.1 != Rel::Eq).count();
    let n_art = m;
    let width = nz + n_slack + n_art + 1;
    let rhs_col = width - 1;
    let art0 = nz + n_slack;
    let mut t = vec![vec![0.0; width]; m];
    let mut basis = vec![0usize; m];
    let mut slack = nz;
    for (i, (a, rel, b)) in rows.iter().enumerate() {
        let flip = *b < 0.0;
        let s = if flip { -1.0 } else { 1.0 };
        for k in 0..nz {
            t[i][k] = s * a[k];
        }
        match rel {
            Rel::Le => {
                t[i][slack] = s;
                slack += 1;
            }
            Rel::Ge => {
                t[i][slack] = -s;
                slack += 1;
            }
            Rel::Eq => {}
        }
        t[i][art0 + i] = 1.0;
        t[i][rhs_col] = s * b;
        basis[i] = art0 + i;
    }
    // phase 1
    let mut cost1 = vec![0.0; width - 1];
    for i in 0..n_art {
        cost1[art0 + i] = -1.0;
    }
    if run(&mut t, &mut basis, &cost1, width - 1) == Status::Unbounded {
        return (Status::Infeasible, Vec::new());
    }
    let infeas: f64 = (0..m)
        .filter(|&i| basis[i] >= art0)
        .map(|i| t[i][rhs_col])
        .sum();
    let scale = 1.0 + rows.iter().map(|r| r.2.abs()).fold(0.0, f64::max);
    if infeas > 1e-9 * scale {
        return (Status::Infeasible, Vec::new());
    }
    // drive zero artificials out where possible
    for i in 0..m {
        if basis[i] >= art0 {
            if let Some(k) = (0..art0).find(|&k| t[i][k].abs() > 1e-9) {
                pivot(&mut t, &mut basis, i, k);
            }
        }
    }
    // phase 2 over non-artificial columns
    let mut cost2 = vec![0.0; width - 1];
    cost2[..nz].copy_from_slice(c);
    let st = run(&mut t, &mut basis, &cost2, art0);
    if st == Status::Unbounded {
        return (Status::Unbounded, Vec::new());
    }
    let mut z = vec![0.0; nz];
    for i in 0..m {
        if basis[i] < nz {
            z[basis[i]] = t[i][rhs_col];
        }
    }
    (Status::Optimal, z)
}

fn pivot(t: &mut [Vec<f64>], basis: &mut [usize], r: usize, k: usize) {
    let p = t[r][k];
    for v in t[r].iter_mut() {
        *v /= p;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r {
            let f = row[k];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= f * pv;
                }
            }
        }
    }
    basis[r] = k;
}

/// Maximizes `cost · z` entering only columns below `limit`.
fn run(t: &mut [Vec<f64>], basis: &mut [usize], cost: &[f64], limit: usize) -> Status {
    let m = t.len();
    let rhs = cost.len();
    loop {
        let mut enter = None;
        for k in 0..limit {
            if basis.contains(&k) {
                continue;
            }
            let d = cost[k] - (0..m).map(|i| cost[basis[i]] * t[i][k]).sum::<f64>();
            if d > EPS {
                enter = Some(k);
                break;
            }
        }
        let Some(k) = enter else {
            return Status::Optimal;
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            if t[i][k] > EPS {
                let ratio = t[i][rhs] / t[i][k];
                let better = match leave {
                    None => true,
                    Some((li, lr)) => ratio < lr - EPS || (ratio <= lr + EPS && basis[i] < basis[li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            return Status::Unbounded;
        };
        pivot(t, basis, r, k);
    }
}

/// Solves the LP relaxation of `model`.
pub fn solve_model(model: &MilpModel) -> LpSolution {
    let n = model.num_vars();
    let mut lp = DenseLp::new(n);
    let sign = match model.sense {
        Sense::Maximize => 1.0,
        Sense::Minimize => -1.0,
    };
    for &(j, a) in &model.objective {
        lp.c[j] += sign * a;
    }
    for (j, v) in model.variables.iter().enumerate() {
        lp.lower[j] = v.lower;
        lp.upper[j] = v.upper;
    }
    for con in &model.constraints {
        let mut a = vec![0.0; n];
        for &(j, v) in &con.terms {
            a[j] += v;
        }
        let rel = match con.relation {
            Relation::Le => Rel::Le,
            Relation::Ge => Rel::Ge,
            Relation::Eq => Rel::Eq,
        };
        lp.row(a, rel, con.rhs);
    }
    let s = solve(&lp);
    let status = match s.status {
        Status::Optimal => LpStatus::Optimal,
        Status::Infeasible => LpStatus::Infeasible,
        Status::Unbounded => LpStatus::Unbounded,
    };
    LpSolution {
        status,
        objective: sign * s.objective,
        values: s.x,
        iterations: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_lp() {
        let mut lp = DenseLp::new(2);
        lp.c = vec![1.0, 1.0];
        lp.upper = vec![1.0, 1.0];
        let s = solve(&lp);
        assert_eq!(s.status, Status::Optimal);
        assert!((s.objective - 2.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = DenseLp::new(1);
        lp.c = vec![1.0];
        lp.row(vec![1.0], Rel::Le, 1.0);
        lp.row(vec![1.0], Rel::Ge, 2.0);
        assert_eq!(solve(&lp).status, Status::Infeasible);
        let mut lp = DenseLp::new(1);
        lp.c = vec![1.0];
        assert_eq!(solve(&lp).status, Status::Unbounded);
    }

    #[test]
    fn free_and_negative_bounds() {
        // max −x − y, x free, y ∈ [−3, −1], x + y ≥ −2
        let mut lp = DenseLp::new(2);
        lp.c = vec![-1.0, -1.0];
        lp.lower = vec![f64::NEG_INFINITY, -3.0];
        lp.upper = vec![f64::INFINITY, -1.0];
        lp.row(vec![1.0, 1.0], Rel::Ge, -2.0);
        let s = solve(&lp);
        assert!((s.objective - 2.0).abs() < 1e-12);
        assert!((s.x[0] + s.x[1] + 2.0).abs() < 1e-12);
    }
}
