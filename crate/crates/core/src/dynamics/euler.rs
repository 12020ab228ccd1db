//! Forward-Euler maps: the Brusselator step and the scalar quadratic step.

use alloc::string::String;
use alloc::vec::Vec;

use super::poly::{quadratic, real_roots};
use crate::{Error, Result};

/// Forward-Euler step of the Brusselator,
/// `x' = x + τ(a + x²y − (b+1)x)`, `y' = y + τ(bx − x²y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrusselatorEuler {
    pub a: f64,
    pub b: f64,
    pub tau: f64,
}

impl BrusselatorEuler {
    pub fn new(a: f64, b: f64, tau: f64) -> Self {
        Self { a, b, tau }
    }

    pub fn step(&self, x: f64, y: f64) -> (f64, f64) {
        let (a, b, t) = (self.a, self.b, self.tau);
        let x2y = x * x * y;
        (x + t * (a + x2y - (b + 1.0) * x), y + t * (b * x - x2y))
    }

    pub fn jacobian(&self, x: f64, y: f64) -> [[f64; 2]; 2] {
        let (b, t) = (self.b, self.tau);
        [
            [1.0 + t * (2.0 * x * y - (b + 1.0)), t * x * x],
            [t * (b - 2.0 * x * y), 1.0 - t * x * x],
        ]
    }

    /// Coefficients (highest first) of the cubic satisfied by `x_n`.
    pub fn preimage_cubic(&self, xn1: f64, yn1: f64) -> [f64; 4] {
        let (a, b, t) = (self.a, self.b, self.tau);
        [
            t * (1.0 - t),
            t * (t * a - xn1 - yn1),
            t * b + t - 1.0,
            xn1 - t * a,
        ]
    }

    /// All real preimages of `(xn1, yn1)`, ordered by `x`.
    pub fn preimages(&self, xn1: f64, yn1: f64) -> Result<Vec<(f64, f64)>> {
        let t = self.tau;
        if t == 0.0 || t == 1.0 {
            return Err(Error::Degenerate(String::from("preimage cubic needs tau not in {0, 1}")));
        }
        let roots = real_roots(&self.preimage_cubic(xn1, yn1));
        let mut out = Vec::with_capacity(roots.len());
        for x in roots {
            if let Some(y) = self.complete_y(x, xn1, yn1) {
                out.push((x, y));
            }
        }
        Ok(out)
    }

    /// `y_n` from `x_n`, through whichever of the two step equations has
    /// the larger denominator (`1 − τx²` or `τx²`).
    fn complete_y(&self, x: f64, xn1: f64, yn1: f64) -> Option<f64> {
        let (a, b, t) = (self.a, self.b, self.tau);
        let den = 1.0 - t * x * x;
        let alt = t * x * x;
        if den.abs() >= alt.abs() {
            (den != 0.0).then(|| (yn1 - t * b * x) / den)
        } else {
            Some((xn1 - x + t * (b + 1.0) * x - t * a) / alt)
        }
    }
}

/// Forward-Euler step of `dX/dt = X² + bX + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarQuadraticEuler {
    pub b: f64,
    pub c: f64,
    pub tau: f64,
}

impl ScalarQuadraticEuler {
    pub fn new(b: f64, c: f64, tau: f64) -> Self {
        Self { b, c, tau }
    }

    pub fn step(&self, x: f64) -> f64 {
        x + self.tau * (x * x + self.b * x + self.c)
    }

    /// Discriminant of `τX² + (τb + 1)X + (τc − x') = 0`.
    pub fn discriminant(&self, xn1: f64) -> f64 {
        let (b, c, t) = (self.b, self.c, self.tau);
        let p = t * b + 1.0;
        p * p - 4.0 * t * (t * c - xn1)
    }

    /// Real preimages: none, the double root once, or two ascending roots,
    /// following the sign of the discriminant.
    pub fn preimages(&self, xn1: f64) -> Vec<f64> {
        let (b, c, t) = (self.b, self.c, self.tau);
        let disc = self.discriminant(xn1);
        let p = t * b + 1.0;
        if disc < 0.0 {
            Vec::new()
        } else if disc == 0.0 {
            alloc::vec![-p / (2.0 * t)]
        } else {
            quadratic(t, p, t * c - xn1).into_iter().map(|z| z.re).collect()
        }
    }
}
