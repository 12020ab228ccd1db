//! Planar maps, their Jacobian determinants and the J₀ grid.

use alloc::vec::Vec;

use super::euler::BrusselatorEuler;
use crate::network::ReluMlp;
use crate::{Error, Result};

/// A map `ℝ² → ℝ²` with a Jacobian.
pub trait PlanarMap {
    fn eval(&self, p: [f64; 2]) -> [f64; 2];
    fn jacobian(&self, p: [f64; 2]) -> [[f64; 2]; 2];

    fn det(&self, p: [f64; 2]) -> f64 {
        let j = self.jacobian(p);
        j[0][0] * j[1][1] - j[0][1] * j[1][0]
    }
}

impl PlanarMap for BrusselatorEuler {
    fn eval(&self, p: [f64; 2]) -> [f64; 2] {
        let (x, y) = self.step(p[0], p[1]);
        [x, y]
    }

    fn jacobian(&self, p: [f64; 2]) -> [[f64; 2]; 2] {
        BrusselatorEuler::jacobian(self, p[0], p[1])
    }
}

/// Linear map `p ↦ M p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearMap(pub [[f64; 2]; 2]);

impl LinearMap {
    pub fn identity() -> Self {
        Self([[1.0, 0.0], [0.0, 1.0]])
    }
}

impl PlanarMap for LinearMap {
    fn eval(&self, p: [f64; 2]) -> [f64; 2] {
        let m = self.0;
        [m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1]]
    }

    fn jacobian(&self, _: [f64; 2]) -> [[f64; 2]; 2] {
        self.0
    }
}

/// A 2→2 ReLU network seen as a planar map. At a kink the Jacobian of the
/// inactive side is used.
#[derive(Debug, Clone, Copy)]
pub struct NetMap<'a>(&'a ReluMlp);

impl<'a> NetMap<'a> {
    pub fn new(net: &'a ReluMlp) -> Result<Self> {
        if net.input_dim() != 2 || net.output_dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: if net.input_dim() != 2 {
                    net.input_dim()
                } else {
                    net.output_dim()
                },
            });
        }
        Ok(Self(net))
    }
}

impl PlanarMap for NetMap<'_> {
    fn eval(&self, p: [f64; 2]) -> [f64; 2] {
        let y = self.0.forward(&p).expect("checked dimensions");
        [y[0], y[1]]
    }

    fn jacobian(&self, p: [f64; 2]) -> [[f64; 2]; 2] {
        let j = self.0.jacobian(&p).expect("checked dimensions");
        [[j[0], j[1]], [j[2], j[3]]]
    }
}

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Self { x0, x1, y0, y1 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct J0Grid {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// `det[j * xs.len() + i]` at node `(xs[i], ys[j])`.
    pub det: Vec<f64>,
    /// Cells `(i, j)` spanning `[xs[i], xs[i+1]] × [ys[j], ys[j+1]]` whose
    /// corner determinants take both signs (or touch zero).
    pub flagged: Vec<(usize, usize)>,
}

impl J0Grid {
    pub fn det_at(&self, i: usize, j: usize) -> f64 {
        self.det[j * self.xs.len() + i]
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 })
        .collect()
}

/// Jacobian determinants on an `nx × ny` node grid and the cells where the
/// determinant changes sign.
pub fn j0_grid(map: &dyn PlanarMap, region: Rect, nx: usize, ny: usize) -> Result<J0Grid> {
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidArgument(alloc::format!(
            "grid needs at least 2 nodes per axis, got {nx} x {ny}"
        )));
    }
    let xs = linspace(region.x0, region.x1, nx);
    let ys = linspace(region.y0, region.y1, ny);
    let mut det = Vec::with_capacity(nx * ny);
    for &y in &ys {
        for &x in &xs {
            det.push(map.det([x, y]));
        }
    }
    let mut flagged = Vec::new();
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let corners = [
                det[j * nx + i],
                det[j * nx + i + 1],
                det[(j + 1) * nx + i],
                det[(j + 1) * nx + i + 1],
            ];
            let lo = corners.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = corners.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            // some pair has product ≤ 0
            if lo <= 0.0 && hi >= 0.0 {
                flagged.push((i, j));
            }
        }
    }
    Ok(J0Grid { xs, ys, det, flagged })
}
