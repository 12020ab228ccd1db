//! Completing partially observed Brusselator steps.
//!
//! The step relates five quantities `(x_n, y_n, x_{n+1}, y_{n+1}, τ)` through
//! two equations. Any three determine the other two up to finitely many
//! choices; the ten cases follow the order of the given triples below.

use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::euler::BrusselatorEuler;
use super::poly::{is_real, poly_roots};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    Xn,
    Yn,
    Xn1,
    Yn1,
    Tau,
}

impl Var {
    pub fn as_str(self) -> &'static str {
        match self {
            Var::Xn => "x_n",
            Var::Yn => "y_n",
            Var::Xn1 => "x_n1",
            Var::Yn1 => "y_n1",
            Var::Tau => "tau",
        }
    }
}

/// Given and unknown quantities of each case, in case order 1–10.
pub const CASES: [([Var; 3], [Var; 2]); 10] = [
    ([Var::Xn, Var::Yn, Var::Tau], [Var::Xn1, Var::Yn1]),
    ([Var::Xn1, Var::Yn1, Var::Tau], [Var::Xn, Var::Yn]),
    ([Var::Xn, Var::Xn1, Var::Tau], [Var::Yn, Var::Yn1]),
    ([Var::Yn, Var::Yn1, Var::Tau], [Var::Xn, Var::Xn1]),
    ([Var::Xn, Var::Yn1, Var::Tau], [Var::Yn, Var::Xn1]),
    ([Var::Yn, Var::Xn1, Var::Tau], [Var::Xn, Var::Yn1]),
    ([Var::Xn, Var::Yn, Var::Xn1], [Var::Tau, Var::Yn1]),
    ([Var::Xn, Var::Yn, Var::Yn1], [Var::Tau, Var::Xn1]),
    ([Var::Yn, Var::Xn1, Var::Yn1], [Var::Tau, Var::Xn]),
    ([Var::Xn, Var::Xn1, Var::Yn1], [Var::Tau, Var::Yn]),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistoryQuery {
    /// Case number, 1 to 10.
    pub case: u8,
    /// Given values in the order listed in [`CASES`].
    pub given: [f64; 3],
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepState {
    pub xn: f64,
    pub yn: f64,
    pub xn1: f64,
    pub yn1: f64,
    pub tau: f64,
}

impl StepState {
    pub fn get(&self, v: Var) -> f64 {
        match v {
            Var::Xn => self.xn,
            Var::Yn => self.yn,
            Var::Xn1 => self.xn1,
            Var::Yn1 => self.yn1,
            Var::Tau => self.tau,
        }
    }

    /// Largest step-equation residual, relative to the magnitudes involved.
    pub fn residual(&self, a: f64, b: f64) -> f64 {
        let (u, v) = BrusselatorEuler::new(a, b, self.tau).step(self.xn, self.yn);
        let ex = (u - self.xn1).abs() / (1.0 + self.xn1.abs());
        let ey = (v - self.yn1).abs() / (1.0 + self.yn1.abs());
        ex.max(ey)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Completion {
    Real(StepState),
    /// No real completion for this root; the complex values of the two
    /// unknowns are kept for diagnostics.
    Complex { unknowns: [Var; 2], values: [Complex64; 2] },
}

fn c(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn degenerate(case: u8, what: &str) -> Error {
    Error::Degenerate(format!("history case {case}: {what}"))
}

/// All completions of the query. Real completions reproduce the given
/// values through the step equations; conjugate pairs appear as two
/// [`Completion::Complex`] entries.
pub fn history_complete(q: &HistoryQuery) -> Result<Vec<Completion>> {
    let (a, b) = (q.a, q.b);
    let [g0, g1, g2] = q.given;
    if q.given.iter().any(|v| !v.is_finite()) || !a.is_finite() || !b.is_finite() {
        return Err(Error::NonFinite(format!("history case {} input", q.case)));
    }
    let case = q.case;
    // candidate values of the two unknowns, in CASES order
    let mut cands: Vec<[Complex64; 2]> = Vec::new();
    match case {
        1 => {
            let (u, v) = BrusselatorEuler::new(a, b, g2).step(g0, g1);
            cands.push([c(u), c(v)]);
        }
        2 => {
            let (xn1, yn1, t) = (g0, g1, g2);
            let m = BrusselatorEuler::new(a, b, t);
            if t == 0.0 || t == 1.0 {
                return Err(degenerate(case, "tau must not be 0 or 1"));
            }
            for x in poly_roots(&m.preimage_cubic(xn1, yn1)) {
                let den = 1.0 - t * x * x;
                let alt = t * x * x;
                let y = if den.norm() >= alt.norm() {
                    (yn1 - t * b * x) / den
                } else {
                    (xn1 - x + t * (b + 1.0) * x - t * a) / alt
                };
                cands.push([x, y]);
            }
        }
        3 => {
            let (xn, xn1, t) = (g0, g1, g2);
            let den = t * xn * xn;
            if den == 0.0 {
                return Err(degenerate(case, "tau * x_n^2 vanishes"));
            }
            let yn = (xn1 - xn + t * (b + 1.0) * xn - t * a) / den;
            let yn1 = yn + t * (b * xn - xn * xn * yn);
            cands.push([c(yn), c(yn1)]);
        }
        4 => {
            let (yn, yn1, t) = (g0, g1, g2);
            if t == 0.0 || yn == 0.0 {
                return Err(degenerate(case, "tau and y_n must be nonzero"));
            }
            for x in poly_roots(&[t * yn, -t * b, yn1 - yn]) {
                let xn1 = x + t * (a + x * x * yn - (b + 1.0) * x);
                cands.push([x, xn1]);
            }
        }
        5 => {
            let (xn, yn1, t) = (g0, g1, g2);
            let den = 1.0 - t * xn * xn;
            if den == 0.0 {
                return Err(degenerate(case, "1 - tau * x_n^2 vanishes"));
            }
            let yn = (yn1 - t * b * xn) / den;
            let xn1 = xn + t * (a + xn * xn * yn - (b + 1.0) * xn);
            cands.push([c(yn), c(xn1)]);
        }
        6 => {
            let (yn, xn1, t) = (g0, g1, g2);
            if t == 0.0 || yn == 0.0 {
                return Err(degenerate(case, "tau and y_n must be nonzero"));
            }
            for x in poly_roots(&[t * yn, 1.0 - t - t * b, t * a - xn1]) {
                let yn1 = yn + t * (b * x - x * x * yn);
                cands.push([x, yn1]);
            }
        }
        7 => {
            let (xn, yn, xn1) = (g0, g1, g2);
            let den = a + xn * xn * yn - (b + 1.0) * xn;
            if den == 0.0 {
                return Err(degenerate(case, "x-rate vanishes"));
            }
            let t = (xn1 - xn) / den;
            let yn1 = yn + t * (b * xn - xn * xn * yn);
            cands.push([c(t), c(yn1)]);
        }
        8 => {
            let (xn, yn, yn1) = (g0, g1, g2);
            let den = b * xn - xn * xn * yn;
            if den == 0.0 {
                return Err(degenerate(case, "y-rate vanishes"));
            }
            let t = (yn1 - yn) / den;
            let xn1 = xn + t * (a + xn * xn * yn - (b + 1.0) * xn);
            cands.push([c(t), c(xn1)]);
        }
        9 => {
            let (yn, xn1, yn1) = (g0, g1, g2);
            if yn == 0.0 {
                return Err(degenerate(case, "y_n must be nonzero"));
            }
            let coeffs = [
                yn,
                (yn - yn1) * yn - b - xn1 * yn,
                b * xn1 + (b + 1.0) * (yn1 - yn),
                a * (yn - yn1),
            ];
            for x in poly_roots(&coeffs) {
                let den = a + x * x * yn - (b + 1.0) * x;
                if den.norm() == 0.0 {
                    continue;
                }
                cands.push([(xn1 - x) / den, x]);
            }
        }
        10 => {
            let (xn, xn1, yn1) = (g0, g1, g2);
            if xn == 0.0 || xn == a {
                return Err(degenerate(case, "x_n must differ from 0 and a"));
            }
            let coeffs = [
                xn * xn * (a - xn),
                xn * xn * xn - (xn1 + yn1) * xn * xn + (b + 1.0) * xn - a,
                xn1 - xn,
            ];
            for t in poly_roots(&coeffs) {
                let den = t * xn * xn;
                if den.norm() == 0.0 {
                    continue;
                }
                let yn = (xn1 - xn + t * (b + 1.0) * xn - t * a) / den;
                cands.push([t, yn]);
            }
        }
        _ => {
            return Err(Error::InvalidArgument(format!("history case must be 1..=10, got {case}")));
        }
    }
    let (given_vars, unknown_vars) = CASES[case as usize - 1];
    let mut out = Vec::with_capacity(cands.len());
    for [u, v] in cands {
        if !(is_real(u) && is_real(v)) {
            out.push(Completion::Complex {
                unknowns: unknown_vars,
                values: [u, v],
            });
            continue;
        }
        let mut s = StepState {
            xn: 0.0,
            yn: 0.0,
            xn1: 0.0,
            yn1: 0.0,
            tau: 0.0,
        };
        for (var, val) in given_vars.iter().zip(q.given).chain(unknown_vars.iter().zip([u.re, v.re])) {
            match var {
                Var::Xn => s.xn = val,
                Var::Yn => s.yn = val,
                Var::Xn1 => s.xn1 = val,
                Var::Yn1 => s.yn1 = val,
                Var::Tau => s.tau = val,
            }
        }
        // spurious roots of ill-conditioned polynomials are dropped
        if s.residual(a, b) <= 1e-7 {
            out.push(Completion::Real(s));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(v: &[Completion]) -> Vec<StepState> {
        v.iter()
            .filter_map(|c| match c {
                Completion::Real(s) => Some(*s),
                _ => None,
            })
            .collect()
    }

    /// Every case recovers a known state from its three given values.
    #[test]
    fn all_cases_recover_state() {
        let (a, b) = (1.0, 2.0);
        let (xn, yn, tau) = (1.3, 0.7, 0.2);
        let (xn1, yn1) = BrusselatorEuler::new(a, b, tau).step(xn, yn);
        let truth = StepState { xn, yn, xn1, yn1, tau };
        for (i, (given, _)) in CASES.iter().enumerate() {
            let q = HistoryQuery {
                case: i as u8 + 1,
                given: [truth.get(given[0]), truth.get(given[1]), truth.get(given[2])],
                a,
                b,
            };
            let got = real(&history_complete(&q).unwrap());
            assert!(!got.is_empty(), "case {}", i + 1);
            for s in &got {
                assert!(s.residual(a, b) < 1e-9, "case {} residual {}", i + 1, s.residual(a, b));
            }
            let hit = got.iter().any(|s| {
                [Var::Xn, Var::Yn, Var::Xn1, Var::Yn1, Var::Tau]
                    .iter()
                    .all(|v| (s.get(*v) - truth.get(*v)).abs() < 1e-8)
            });
            assert!(hit, "case {} misses the source state: {got:?}", i + 1);
        }
    }

    #[test]
    fn forward_case_is_unique() {
        let q = HistoryQuery {
            case: 1,
            given: [1.0, 1.0, 0.15],
            a: 1.0,
            b: 2.0,
        };
        let got = history_complete(&q).unwrap();
        assert_eq!(got.len(), 1);
        let s = real(&got)[0];
        assert!((s.xn1 - 0.85).abs() < 1e-15 && (s.yn1 - 1.15).abs() < 1e-15);
    }

    #[test]
    fn degenerate_and_invalid() {
        let q = |case, given| HistoryQuery {
            case,
            given,
            a: 1.0,
            b: 2.0,
        };
        assert!(history_complete(&q(10, [1.0, 2.0, 3.0])).is_err());
        assert!(history_complete(&q(10, [0.0, 2.0, 3.0])).is_err());
        assert!(history_complete(&q(3, [0.0, 2.0, 0.1])).is_err());
        assert!(history_complete(&q(11, [1.0, 2.0, 3.0])).is_err());
    }
}
