//! Dense 1D scans for the two certified radii.
//!
//! A scalar piecewise-linear map is injective on an interval iff it is
//! strictly monotone there, so the invertibility radius is the distance from
//! the center to the nearest point where the slope stops having the sign it
//! has at the center. The pseudo radius is the distance to the nearest other
//! preimage of `f(c)`. Both are located on a uniform scan and then refined
//! by bisection.

use alloc::format;

use crate::network::ReluMlp;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRadius {
    pub radius: f64,
    pub at_cap: bool,
}

fn check(net: &ReluMlp, r_max: f64, steps: usize) -> Result<()> {
    if net.input_dim() != 1 || net.output_dim() != 1 {
        return Err(Error::InvalidArgument(format!(
            "1D scan needs a scalar map, got {} -> {}",
            net.input_dim(),
            net.output_dim()
        )));
    }
    if !(r_max > 0.0) || steps == 0 {
        return Err(Error::InvalidArgument("scan needs r_max > 0 and steps > 0".into()));
    }
    Ok(())
}

fn slope(net: &ReluMlp, x: f64) -> f64 {
    net.jacobian(&[x]).expect("dimension checked")[0]
}

/// Distance to the first point in direction `dir` where `bad` holds, if any
/// within `r_max`.
fn first_hit(c: f64, dir: f64, r_max: f64, steps: usize, bad: &dyn Fn(f64) -> bool) -> Option<f64> {
    let h = r_max / steps as f64;
    let mut prev = 0.0;
    for k in 1..=steps {
        let d = if k == steps { r_max } else { k as f64 * h };
        if bad(c + dir * d) {
            let (mut lo, mut hi) = (prev, d);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if bad(c + dir * mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Some(hi);
        }
        prev = d;
    }
    None
}

fn combine(left: Option<f64>, right: Option<f64>, r_max: f64) -> ScanRadius {
    match (left, right) {
        (None, None) => ScanRadius { radius: r_max, at_cap: true },
        (l, r) => ScanRadius {
            radius: l.unwrap_or(f64::INFINITY).min(r.unwrap_or(f64::INFINITY)),
            at_cap: false,
        },
    }
}

/// Largest `r ≤ r_max` with `f` injective on `[c − r, c + r]`.
pub fn scan_invertible_radius(net: &ReluMlp, c: f64, r_max: f64, steps: usize) -> Result<ScanRadius> {
    check(net, r_max, steps)?;
    let s0 = slope(net, c);
    if s0 == 0.0 {
        return Ok(ScanRadius { radius: 0.0, at_cap: false });
    }
    let bad = |x: f64| slope(net, x) * s0 <= 0.0;
    let right = first_hit(c, 1.0, r_max, steps, &bad);
    let left = first_hit(c, -1.0, r_max, steps, &bad);
    Ok(combine(left, right, r_max))
}

/// Largest `R ≤ r_max` such that no other point within `R` of `c` maps to
/// `f(c)`.
pub fn scan_pseudo_radius(net: &ReluMlp, c: f64, r_max: f64, steps: usize) -> Result<ScanRadius> {
    check(net, r_max, steps)?;
    let s0 = slope(net, c);
    if s0 == 0.0 {
        return Ok(ScanRadius { radius: 0.0, at_cap: false });
    }
    let v = net.forward(&[c])?[0];
    let f = |x: f64| net.forward(&[x]).expect("dimension checked")[0];
    // moving right the image first moves along s0; a return to v or beyond is a preimage
    let right = first_hit(c, 1.0, r_max, steps, &|x| (f(x) - v) * s0 <= 0.0);
    let left = first_hit(c, -1.0, r_max, steps, &|x| (f(x) - v) * s0 >= 0.0);
    Ok(combine(left, right, r_max))
}
