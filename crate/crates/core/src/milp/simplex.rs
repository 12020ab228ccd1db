//! Dense bounded-variable simplex.
//!
//! Rows are brought to the form `A x + s = b` with one slack per row whose
//! bounds encode the relation (`≤`: `s ≥ 0`, `≥`: `s ≤ 0`, `=`: `s = 0`).
//! Nonbasic columns sit at one of their bounds (or at zero when free), so
//! variable bounds never become rows. A cold start uses artificial columns
//! and a phase-one objective; warm starts after bound changes use the dual
//! simplex. The tableau is kept explicitly (`m × ncols`, row-major) and its
//! slack block doubles as `B⁻¹` for recomputing primal values.

use alloc::vec;
use alloc::vec::Vec;

use super::{LpSolution, LpStatus, MilpModel, Relation, Sense, VarKind, FEASIBILITY_TOL};

const PIVOT_TOL: f64 = 1e-9;
const OPT_TOL: f64 = 1e-9;
const DUAL_FEAS_TOL: f64 = 1e-7;
const DEGENERATE_STREAK: usize = 50;

/// LP in internal (maximization) form.
#[derive(Debug, Clone)]
pub(crate) struct LpData {
    pub m: usize,
    pub n: usize,
    /// Structural columns as `(row, coefficient)`.
    pub cols: Vec<Vec<(usize, f64)>>,
    pub rhs: Vec<f64>,
    pub slack_lo: Vec<f64>,
    pub slack_hi: Vec<f64>,
    /// Objective coefficients, already negated for minimization.
    pub cost: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub is_binary: Vec<bool>,
    pub sign: f64,
}

impl LpData {
    pub fn from_model(model: &MilpModel) -> Self {
        let n = model.variables.len();
        let m = model.constraints.len();
        let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let mut rhs = Vec::with_capacity(m);
        let mut slack_lo = Vec::with_capacity(m);
        let mut slack_hi = Vec::with_capacity(m);
        let mut acc = vec![0.0; n];
        let mut seen = vec![false; n];
        let mut touched = Vec::new();
        for (i, c) in model.constraints.iter().enumerate() {
            for &(j, a) in &c.terms {
                if !seen[j] {
                    seen[j] = true;
                    touched.push(j);
                }
                acc[j] += a;
            }
            touched.sort_unstable();
            for &j in &touched {
                if acc[j] != 0.0 {
                    cols[j].push((i, acc[j]));
                }
                acc[j] = 0.0;
                seen[j] = false;
            }
            touched.clear();
            rhs.push(c.rhs);
            let (lo, hi) = match c.relation {
                Relation::Le => (0.0, f64::INFINITY),
                Relation::Ge => (f64::NEG_INFINITY, 0.0),
                Relation::Eq => (0.0, 0.0),
            };
            slack_lo.push(lo);
            slack_hi.push(hi);
        }
        let sign = match model.sense {
            Sense::Maximize => 1.0,
            Sense::Minimize => -1.0,
        };
        let mut cost = vec![0.0; n];
        for &(j, a) in &model.objective {
            cost[j] += sign * a;
        }
        Self {
            m,
            n,
            cols,
            rhs,
            slack_lo,
            slack_hi,
            cost,
            lower: model.variables.iter().map(|v| v.lower).collect(),
            upper: model.variables.iter().map(|v| v.upper).collect(),
            is_binary: model
                .variables
                .iter()
                .map(|v| v.kind == VarKind::Binary)
                .collect(),
            sign,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColStatus {
    Basic,
    Lower,
    Upper,
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    Optimal,
    Infeasible,
    Unbounded,
    Failed,
}

#[derive(Debug, Clone)]
pub(crate) struct Tableau {
    m: usize,
    n: usize,
    ncols: usize,
    t: Vec<f64>,
    x: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    cost: Vec<f64>,
    d: Vec<f64>,
    status: Vec<ColStatus>,
    basis: Vec<usize>,
    /// Row and sign of each artificial column.
    art: Vec<(usize, f64)>,
    pub iterations: usize,
    pub outcome: Outcome,
    scratch: Vec<f64>,
    nz: Vec<usize>,
}

/// Result of a cold or warm solve, in internal (maximize) sense.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "textbook-lp", allow(dead_code))]
pub(crate) struct LpResult {
    pub outcome: Outcome,
    pub objective: f64,
    pub values: Vec<f64>,
    pub iterations: usize,
}

impl LpResult {
    #[cfg_attr(feature = "textbook-lp", allow(dead_code))]
    pub fn into_solution(self, model: &MilpModel, data: &LpData) -> LpSolution {
        let status = match self.outcome {
            Outcome::Optimal => LpStatus::Optimal,
            Outcome::Infeasible => LpStatus::Infeasible,
            Outcome::Unbounded => LpStatus::Unbounded,
            Outcome::Failed => LpStatus::NumericalFailure,
        };
        let mut status = status;
        if status == LpStatus::Optimal {
            // never hand out an "optimal" point that violates the model
            let mut relaxed = model.clone();
            for v in relaxed.variables.iter_mut() {
                v.kind = VarKind::Continuous;
            }
            if relaxed.max_violation(&self.values) > 1e-6 {
                status = LpStatus::NumericalFailure;
            }
        }
        LpSolution {
            status,
            objective: data.sign * self.objective,
            values: self.values,
            iterations: self.iterations,
        }
    }
}

#[cfg_attr(feature = "textbook-lp", allow(dead_code))]
pub(crate) fn solve_cold(data: &LpData, lower: &[f64], upper: &[f64]) -> LpResult {
    let mut tab = Tableau::cold(data, lower, upper);
    tab.run_cold(data);
    tab.result()
}

impl Tableau {
    fn cold(data: &LpData, lower: &[f64], upper: &[f64]) -> Self {
        let (m, n) = (data.m, data.n);
        // place structurals at a bound
        let mut xs = vec![0.0; n];
        let mut status = Vec::with_capacity(n + m);
        for j in 0..n {
            let (l, u) = (lower[j], upper[j]);
            if l.is_finite() {
                xs[j] = l;
                status.push(ColStatus::Lower);
            } else if u.is_finite() {
                xs[j] = u;
                status.push(ColStatus::Upper);
            } else {
                status.push(ColStatus::Free);
            }
        }
        let mut residual = data.rhs.clone();
        for j in 0..n {
            if xs[j] != 0.0 {
                for &(i, a) in &data.cols[j] {
                    residual[i] -= a * xs[j];
                }
            }
        }
        let mut art = Vec::new();
        let mut slack_val = vec![0.0; m];
        for i in 0..m {
            let (sl, sh) = (data.slack_lo[i], data.slack_hi[i]);
            let r = residual[i];
            if r >= sl && r <= sh {
                slack_val[i] = r;
            } else {
                let s = if r > sh { sh } else { sl };
                slack_val[i] = s;
                let sigma = if r - s >= 0.0 { 1.0 } else { -1.0 };
                art.push((i, sigma));
            }
        }
        let na = art.len();
        let ncols = n + m + na;
        let mut t = vec![0.0; m * ncols];
        for j in 0..n {
            for &(i, a) in &data.cols[j] {
                t[i * ncols + j] = a;
            }
        }
        for i in 0..m {
            t[i * ncols + n + i] = 1.0;
        }
        let mut basis: Vec<usize> = (0..m).map(|i| n + i).collect();
        let mut x = vec![0.0; ncols];
        x[..n].copy_from_slice(&xs);
        let mut lo = Vec::with_capacity(ncols);
        let mut hi = Vec::with_capacity(ncols);
        lo.extend_from_slice(lower);
        hi.extend_from_slice(upper);
        lo.extend_from_slice(&data.slack_lo);
        hi.extend_from_slice(&data.slack_hi);
        for i in 0..m {
            x[n + i] = slack_val[i];
            status.push(ColStatus::Basic);
        }
        for (k, &(i, sigma)) in art.iter().enumerate() {
            let col = n + m + k;
            t[i * ncols + col] = sigma;
            // the slack leaves the basis at the bound it violated
            let s = slack_val[i];
            status[n + i] = if s == data.slack_lo[i] {
                ColStatus::Lower
            } else {
                ColStatus::Upper
            };
            basis[i] = col;
            x[col] = (residual[i] - s) * sigma;
            lo.push(0.0);
            hi.push(f64::INFINITY);
            status.push(ColStatus::Basic);
            // B⁻¹ for this row is σ: scale the row
            if sigma < 0.0 {
                for v in &mut t[i * ncols..(i + 1) * ncols] {
                    *v = -*v;
                }
            }
        }
        let mut cost = vec![0.0; ncols];
        cost[..n].copy_from_slice(&data.cost);
        Self {
            m,
            n,
            ncols,
            t,
            x,
            lo,
            hi,
            cost,
            d: vec![0.0; ncols],
            status,
            basis,
            art,
            iterations: 0,
            outcome: Outcome::Failed,
            scratch: vec![0.0; ncols],
            nz: Vec::with_capacity(ncols),
        }
    }

    fn iteration_cap(&self) -> usize {
        20 * (self.m + self.ncols) + 1000
    }

    fn run_cold(&mut self, data: &LpData) {
        if !self.art.is_empty() {
            let mut phase1 = vec![0.0; self.ncols];
            for k in 0..self.art.len() {
                phase1[self.n + self.m + k] = -1.0;
            }
            self.compute_duals(&phase1);
            match self.primal(&phase1) {
                Outcome::Optimal => {}
                Outcome::Unbounded | Outcome::Failed | Outcome::Infeasible => {
                    self.outcome = Outcome::Failed;
                    return;
                }
            }
            for k in 0..self.art.len() {
                let col = self.n + self.m + k;
                let (row, _) = self.art[k];
                if self.x[col] > FEASIBILITY_TOL * (1.0 + data.rhs[row].abs()) {
                    self.outcome = Outcome::Infeasible;
                    return;
                }
            }
            for k in 0..self.art.len() {
                let col = self.n + self.m + k;
                self.hi[col] = 0.0;
                if self.status[col] != ColStatus::Basic {
                    self.x[col] = 0.0;
                    self.status[col] = ColStatus::Lower;
                }
            }
        }
        let cost = self.cost.clone();
        self.compute_duals(&cost);
        self.outcome = self.primal(&cost);
        if self.outcome == Outcome::Optimal {
            self.polish(data);
        }
    }

    /// Warm re-solve after bound changes: dual simplex to regain primal
    /// feasibility, then primal simplex to clean up.
    pub fn reoptimize(&mut self, data: &LpData) -> Outcome {
        self.outcome = match self.dual() {
            Outcome::Optimal => {
                let cost = self.cost.clone();
                match self.primal(&cost) {
                    Outcome::Optimal => {
                        self.polish(data);
                        self.outcome
                    }
                    o => o,
                }
            }
            o => o,
        };
        self.outcome
    }

    /// Recompute primal values and reduced costs from `B⁻¹` and fix any
    /// drift with a couple of extra simplex passes.
    fn polish(&mut self, data: &LpData) {
        for _ in 0..3 {
            self.refresh_primal(data);
            self.refresh_duals(data);
            if self.primal_infeasibility() <= FEASIBILITY_TOL && self.dual_infeasibility() <= OPT_TOL
            {
                self.outcome = Outcome::Optimal;
                return;
            }
            let o = self.dual();
            if o == Outcome::Infeasible {
                self.outcome = Outcome::Infeasible;
                return;
            }
            let cost = self.cost.clone();
            let o = self.primal(&cost);
            if o != Outcome::Optimal {
                self.outcome = o;
                return;
            }
        }
        self.refresh_primal(data);
        self.outcome = if self.primal_infeasibility() <= 10.0 * FEASIBILITY_TOL {
            Outcome::Optimal
        } else {
            Outcome::Failed
        };
    }

    #[cfg_attr(feature = "textbook-lp", allow(dead_code))]
    pub fn result(&self) -> LpResult {
        let values = self.x[..self.n].to_vec();
        let objective = self.cost[..self.n]
            .iter()
            .zip(&values)
            .map(|(c, v)| c * v)
            .sum();
        LpResult {
            outcome: self.outcome,
            objective,
            values,
            iterations: self.iterations,
        }
    }

    pub fn objective(&self) -> f64 {
        self.cost[..self.n]
            .iter()
            .zip(&self.x[..self.n])
            .map(|(c, v)| c * v)
            .sum()
    }

    pub fn values(&self) -> &[f64] {
        &self.x[..self.n]
    }

    pub fn table_len(&self) -> usize {
        self.t.len()
    }

    /// Changes the bounds of a structural column, keeping the basis.
    pub fn set_bounds(&mut self, j: usize, lo: f64, hi: f64) {
        self.lo[j] = lo;
        self.hi[j] = hi;
        let target = match self.status[j] {
            ColStatus::Basic => return,
            ColStatus::Lower | ColStatus::Free if lo.is_finite() => {
                self.status[j] = ColStatus::Lower;
                lo
            }
            ColStatus::Upper if hi.is_finite() => hi,
            _ if lo.is_finite() => {
                self.status[j] = ColStatus::Lower;
                lo
            }
            _ if hi.is_finite() => {
                self.status[j] = ColStatus::Upper;
                hi
            }
            _ => {
                self.status[j] = ColStatus::Free;
                0.0
            }
        };
        let delta = target - self.x[j];
        if delta != 0.0 {
            self.x[j] = target;
            let nc = self.ncols;
            for r in 0..self.m {
                let a = self.t[r * nc + j];
                if a != 0.0 {
                    self.x[self.basis[r]] -= a * delta;
                }
            }
        }
    }

    fn compute_duals(&mut self, cost: &[f64]) {
        let nc = self.ncols;
        self.d.copy_from_slice(cost);
        for r in 0..self.m {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                let row = &self.t[r * nc..(r + 1) * nc];
                for (dj, a) in self.d.iter_mut().zip(row) {
                    *dj -= cb * a;
                }
            }
        }
        for r in 0..self.m {
            self.d[self.basis[r]] = 0.0;
        }
    }

    fn refresh_primal(&mut self, data: &LpData) {
        let (m, n, nc) = (self.m, self.n, self.ncols);
        let mut res = data.rhs.clone();
        for j in 0..n {
            if self.status[j] != ColStatus::Basic && self.x[j] != 0.0 {
                for &(i, a) in &data.cols[j] {
                    res[i] -= a * self.x[j];
                }
            }
        }
        for i in 0..m {
            let col = n + i;
            if self.status[col] != ColStatus::Basic {
                res[i] -= self.x[col];
            }
        }
        for (k, &(i, sigma)) in self.art.iter().enumerate() {
            let col = n + m + k;
            if self.status[col] != ColStatus::Basic {
                res[i] -= sigma * self.x[col];
            }
        }
        for r in 0..m {
            let row = &self.t[r * nc + n..r * nc + n + m];
            let v: f64 = row.iter().zip(&res).map(|(a, b)| a * b).sum();
            self.x[self.basis[r]] = v;
        }
    }

    fn refresh_duals(&mut self, data: &LpData) {
        let (m, n, nc) = (self.m, self.n, self.ncols);
        let mut y = vec![0.0; m];
        for r in 0..m {
            let cb = self.cost[self.basis[r]];
            if cb != 0.0 {
                let row = &self.t[r * nc + n..r * nc + n + m];
                for (yi, a) in y.iter_mut().zip(row) {
                    *yi += cb * a;
                }
            }
        }
        for j in 0..n {
            let s: f64 = data.cols[j].iter().map(|&(i, a)| y[i] * a).sum();
            self.d[j] = self.cost[j] - s;
        }
        for i in 0..m {
            self.d[n + i] = -y[i];
        }
        for (k, &(i, sigma)) in self.art.iter().enumerate() {
            self.d[n + m + k] = -sigma * y[i];
        }
        for r in 0..m {
            self.d[self.basis[r]] = 0.0;
        }
    }

    fn primal_infeasibility(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for &b in &self.basis {
            let v = self.x[b];
            worst = worst.max((self.lo[b] - v) / (1.0 + self.lo[b].abs()));
            worst = worst.max((v - self.hi[b]) / (1.0 + self.hi[b].abs()));
        }
        worst
    }

    fn dual_infeasibility(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.ncols {
            if self.lo[j] == self.hi[j] {
                continue;
            }
            let dj = self.d[j];
            worst = worst.max(match self.status[j] {
                ColStatus::Basic => 0.0,
                ColStatus::Lower => dj,
                ColStatus::Upper => -dj,
                ColStatus::Free => dj.abs(),
            });
        }
        worst
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let nc = self.ncols;
        let p = self.t[r * nc + q];
        let inv = 1.0 / p;
        self.nz.clear();
        for j in 0..nc {
            let v = self.t[r * nc + j];
            if v != 0.0 {
                let s = v * inv;
                self.t[r * nc + j] = s;
                self.scratch[j] = s;
                self.nz.push(j);
            }
        }
        self.t[r * nc + q] = 1.0;
        self.scratch[q] = 1.0;
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let f = self.t[i * nc + q];
            if f == 0.0 {
                continue;
            }
            let row = &mut self.t[i * nc..(i + 1) * nc];
            for &j in &self.nz {
                row[j] -= f * self.scratch[j];
            }
            row[q] = 0.0;
        }
        let f = self.d[q];
        if f != 0.0 {
            for &j in &self.nz {
                self.d[j] -= f * self.scratch[j];
            }
            self.d[q] = 0.0;
        }
        for &j in &self.nz {
            self.scratch[j] = 0.0;
        }
        let leaving = self.basis[r];
        self.basis[r] = q;
        self.status[q] = ColStatus::Basic;
        // caller sets the leaving status; default to lower
        if self.status[leaving] == ColStatus::Basic {
            self.status[leaving] = ColStatus::Lower;
        }
        self.iterations += 1;
    }

    fn primal(&mut self, cost: &[f64]) -> Outcome {
        let nc = self.ncols;
        let cap = self.iterations + self.iteration_cap();
        let mut degenerate = 0usize;
        loop {
            if self.iterations > cap {
                return Outcome::Failed;
            }
            let bland = degenerate > DEGENERATE_STREAK;
            // pricing
            let mut enter: Option<(usize, f64)> = None;
            let mut best = 0.0;
            for j in 0..nc {
                if self.lo[j] == self.hi[j] {
                    continue;
                }
                let dj = self.d[j];
                let dir = match self.status[j] {
                    ColStatus::Basic => continue,
                    ColStatus::Lower if dj > OPT_TOL => 1.0,
                    ColStatus::Upper if dj < -OPT_TOL => -1.0,
                    ColStatus::Free if dj.abs() > OPT_TOL => dj.signum(),
                    _ => continue,
                };
                if bland {
                    enter = Some((j, dir));
                    break;
                }
                if dj.abs() > best {
                    best = dj.abs();
                    enter = Some((j, dir));
                }
            }
            let Some((q, dir)) = enter else {
                return Outcome::Optimal;
            };
            // ratio test (Harris two-pass unless cycling)
            let mut theta_max = f64::INFINITY;
            if !bland {
                for r in 0..self.m {
                    let a = self.t[r * nc + q] * dir;
                    let b = self.basis[r];
                    if a > PIVOT_TOL && self.lo[b].is_finite() {
                        let tol = FEASIBILITY_TOL * (1.0 + self.lo[b].abs());
                        theta_max = theta_max.min((self.x[b] - self.lo[b] + tol) / a);
                    } else if a < -PIVOT_TOL && self.hi[b].is_finite() {
                        let tol = FEASIBILITY_TOL * (1.0 + self.hi[b].abs());
                        theta_max = theta_max.min((self.hi[b] - self.x[b] + tol) / -a);
                    }
                }
            }
            let mut leave: Option<(usize, f64, bool)> = None;
            let mut best_ratio = f64::INFINITY;
            let mut best_piv = 0.0;
            for r in 0..self.m {
                let a = self.t[r * nc + q] * dir;
                let b = self.basis[r];
                let (ratio, to_lower) = if a > PIVOT_TOL && self.lo[b].is_finite() {
                    (((self.x[b] - self.lo[b]) / a).max(0.0), true)
                } else if a < -PIVOT_TOL && self.hi[b].is_finite() {
                    (((self.hi[b] - self.x[b]) / -a).max(0.0), false)
                } else {
                    continue;
                };
                let take = if bland {
                    ratio < best_ratio
                        || (ratio == best_ratio && leave.is_some_and(|(lr, _, _)| b < self.basis[lr]))
                } else {
                    ratio <= theta_max && a.abs() > best_piv
                };
                if take {
                    best_ratio = ratio;
                    best_piv = a.abs();
                    leave = Some((r, ratio, to_lower));
                }
            }
            let range = self.hi[q] - self.lo[q];
            let flip = range.is_finite() && leave.is_none_or(|(_, th, _)| range <= th);
            if flip {
                let delta = dir * range;
                self.shift_entering(q, delta);
                if dir > 0.0 {
                    self.x[q] = self.hi[q];
                    self.status[q] = ColStatus::Upper;
                } else {
                    self.x[q] = self.lo[q];
                    self.status[q] = ColStatus::Lower;
                }
                self.iterations += 1;
                degenerate = 0;
                continue;
            }
            let Some((r, theta, to_lower)) = leave else {
                return Outcome::Unbounded;
            };
            if theta <= 1e-12 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.shift_entering(q, dir * theta);
            let b = self.basis[r];
            self.pivot(r, q);
            if to_lower {
                self.x[b] = self.lo[b];
                self.status[b] = ColStatus::Lower;
            } else {
                self.x[b] = self.hi[b];
                self.status[b] = ColStatus::Upper;
            }
            let _ = cost;
        }
    }

    fn shift_entering(&mut self, q: usize, delta: f64) {
        let nc = self.ncols;
        self.x[q] += delta;
        for r in 0..self.m {
            let a = self.t[r * nc + q];
            if a != 0.0 {
                let b = self.basis[r];
                self.x[b] -= a * delta;
            }
        }
    }

    fn dual(&mut self) -> Outcome {
        if self.dual_infeasibility() > DUAL_FEAS_TOL {
            return Outcome::Failed;
        }
        let nc = self.ncols;
        let cap = self.iterations + self.iteration_cap();
        loop {
            if self.iterations > cap {
                return Outcome::Failed;
            }
            // leaving row: largest scaled bound violation
            let mut leave: Option<(usize, f64, bool)> = None;
            let mut worst = 0.0;
            for r in 0..self.m {
                let b = self.basis[r];
                let v = self.x[b];
                let below = self.lo[b] - v;
                let above = v - self.hi[b];
                if below > FEASIBILITY_TOL * (1.0 + self.lo[b].abs()) {
                    let s = below / (1.0 + self.lo[b].abs());
                    if s > worst {
                        worst = s;
                        leave = Some((r, self.lo[b], true));
                    }
                } else if above > FEASIBILITY_TOL * (1.0 + self.hi[b].abs()) {
                    let s = above / (1.0 + self.hi[b].abs());
                    if s > worst {
                        worst = s;
                        leave = Some((r, self.hi[b], false));
                    }
                }
            }
            let Some((r, target, below)) = leave else {
                return Outcome::Optimal;
            };
            // entering column: keep reduced costs dual feasible
            let mut enter: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            let mut best_piv = 0.0;
            for pass in 0..2 {
                for j in 0..nc {
                    if self.lo[j] == self.hi[j] {
                        continue;
                    }
                    let a = self.t[r * nc + j];
                    if a.abs() <= PIVOT_TOL {
                        continue;
                    }
                    let st = self.status[j];
                    let can_up = matches!(st, ColStatus::Lower | ColStatus::Free);
                    let can_down = matches!(st, ColStatus::Upper | ColStatus::Free);
                    // x_b moves by -a per unit increase of x_j
                    let ok = if below {
                        (can_up && a < 0.0) || (can_down && a > 0.0)
                    } else {
                        (can_up && a > 0.0) || (can_down && a < 0.0)
                    };
                    if !ok {
                        continue;
                    }
                    let ratio = self.d[j].abs() / a.abs();
                    if pass == 0 {
                        best_ratio = best_ratio.min((self.d[j].abs() + DUAL_FEAS_TOL) / a.abs());
                    } else if ratio <= best_ratio && a.abs() > best_piv {
                        best_piv = a.abs();
                        enter = Some(j);
                    }
                }
            }
            let Some(q) = enter else {
                return Outcome::Infeasible;
            };
            let b = self.basis[r];
            let a = self.t[r * nc + q];
            let delta = (self.x[b] - target) / a;
            self.shift_entering(q, delta);
            self.pivot(r, q);
            self.x[b] = target;
            self.status[b] = if below {
                ColStatus::Lower
            } else {
                ColStatus::Upper
            };
        }
    }
}

/// Cold-start tableau builder exposed to branch and bound.
pub(crate) fn cold_tableau(data: &LpData, lower: &[f64], upper: &[f64]) -> Tableau {
    let mut tab = Tableau::cold(data, lower, upper);
    tab.run_cold(data);
    tab
}
