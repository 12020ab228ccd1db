//! Van der Pol flow, dataset sampling and Lipschitz estimates.

use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

pub fn vdp_field(x: [f64; 2], mu: f64) -> [f64; 2] {
    [x[1], mu * (1.0 - x[0] * x[0]) * x[1] - x[0]]
}

/// Classical Runge–Kutta integration of the Van der Pol field over `[0, t]`.
pub fn vdp_flow(x0: [f64; 2], mu: f64, t: f64, steps: usize) -> Result<[f64; 2]> {
    if steps == 0 {
        return Err(Error::InvalidArgument(alloc::string::String::from("steps must be positive")));
    }
    let h = t / steps as f64;
    let mut x = x0;
    let add = |a: [f64; 2], s: f64, b: [f64; 2]| [a[0] + s * b[0], a[1] + s * b[1]];
    for _ in 0..steps {
        let k1 = vdp_field(x, mu);
        let k2 = vdp_field(add(x, 0.5 * h, k1), mu);
        let k3 = vdp_field(add(x, 0.5 * h, k2), mu);
        let k4 = vdp_field(add(x, h, k3), mu);
        for i in 0..2 {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    Ok(x)
}

/// Axis-aligned box in any dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Region {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l <= u) || !l.is_finite() || !u.is_finite()) {
            return Err(Error::InvalidArgument(alloc::string::String::from(
                "region bounds must be finite with lower <= upper",
            )));
        }
        Ok(Self { lower, upper })
    }

    /// `[lo, hi]` in every one of `dim` coordinates.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(alloc::vec![lo; dim], alloc::vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| l <= v && v <= u)
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&l, &u)| if l == u { l } else { rng.random_range(l..=u) })
            .collect()
    }
}

/// `count` uniform samples of `region` paired with their images.
pub fn generate_dataset(
    map: &dyn Fn(&[f64]) -> Vec<f64>,
    region: &Region,
    count: usize,
    seed: u64,
) -> Vec<(Vec<f64>, Vec<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let x = region.sample(&mut rng);
            let y = map(&x);
            (x, y)
        })
        .collect()
}

fn l2(a: &[f64], b: &[f64]) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// Largest and smallest observed `‖F(x₁) − F(x₂)‖₂ / ‖x₁ − x₂‖₂` over
/// `samples` random pairs. A sample-based estimate: the first value bounds
/// the Lipschitz constant from below and the second bounds the lower
/// constant from above.
pub fn bilipschitz_estimate(
    map: &dyn Fn(&[f64]) -> Vec<f64>,
    region: &Region,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if samples < 2 {
        return Err(Error::InvalidArgument(alloc::string::String::from("need at least 2 samples")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut hi, mut lo) = (0.0f64, f64::INFINITY);
    let mut seen = false;
    for _ in 0..samples {
        let p = region.sample(&mut rng);
        let q = region.sample(&mut rng);
        let d = l2(&p, &q);
        if d == 0.0 {
            continue;
        }
        let ratio = l2(&map(&p), &map(&q)) / d;
        hi = hi.max(ratio);
        lo = lo.min(ratio);
        seen = true;
    }
    if !seen {
        return Err(Error::Degenerate(alloc::string::String::from("no distinct sample pairs")));
    }
    Ok((hi, lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn equilibrium_is_fixed() {
        assert_eq!(vdp_flow([0.0, 0.0], 1.0, 0.2, 200).unwrap(), [0.0, 0.0]);
        assert!(vdp_flow([0.0, 0.0], 1.0, 0.2, 0).is_err());
    }

    #[test]
    fn step_halving() {
        let a = vdp_flow([1.5, -0.7], 1.0, 0.2, 200).unwrap();
        let b = vdp_flow([1.5, -0.7], 1.0, 0.2, 400).unwrap();
        assert!((a[0] - b[0]).abs() <= 1e-8 && (a[1] - b[1]).abs() <= 1e-8);
    }

    #[test]
    fn fourth_order_convergence() {
        let x0 = [2.0, 0.5];
        let exact = vdp_flow(x0, 1.0, 1.0, 4096).unwrap();
        let e1 = (vdp_flow(x0, 1.0, 1.0, 20).unwrap()[0] - exact[0]).abs();
        let e2 = (vdp_flow(x0, 1.0, 1.0, 40).unwrap()[0] - exact[0]).abs();
        let order = libm::log2(e1 / e2);
        assert!(order > 3.6 && order < 4.4, "order {order}");
    }

    #[test]
    fn limit_cycle_stays_bounded() {
        let mut x = [0.1, 0.0];
        for k in 0..500 {
            x = vdp_flow(x, 1.0, 0.2, 20).unwrap();
            if k > 100 {
                assert!(x[0].abs() <= 3.0 && x[1].abs() <= 3.0, "{x:?}");
            }
        }
    }

    #[test]
    fn dataset_is_reproducible() {
        let region = Region::cube(2, -3.0, 3.0).unwrap();
        let f = |x: &[f64]| vdp_flow([x[0], x[1]], 1.0, 0.2, 200).unwrap().to_vec();
        let a = generate_dataset(&f, &region, 50, 7);
        assert_eq!(a, generate_dataset(&f, &region, 50, 7));
        assert!(a.iter().all(|(x, _)| region.contains(x)));
    }

    #[test]
    fn lipschitz_of_linear_maps() {
        let region = Region::cube(2, -1.0, 1.0).unwrap();
        let id = |x: &[f64]| x.to_vec();
        let (hi, lo) = bilipschitz_estimate(&id, &region, 100, 1).unwrap();
        assert!((hi - 1.0).abs() < 1e-12 && (lo - 1.0).abs() < 1e-12);
        let diag = |x: &[f64]| vec![2.0 * x[0], 0.5 * x[1]];
        let (hi, lo) = bilipschitz_estimate(&diag, &region, 20_000, 2).unwrap();
        assert!(hi <= 2.0 + 1e-12 && hi > 1.99);
        assert!((0.5 - 1e-12..0.51).contains(&lo));
    }

    #[test]
    fn flat_relu_branch() {
        let region = Region::cube(1, -1.0, 1.0).unwrap();
        let f = |x: &[f64]| vec![x[0].max(0.0)];
        let (_, lo) = bilipschitz_estimate(&f, &region, 200, 3).unwrap();
        assert_eq!(lo, 0.0);
    }
}
