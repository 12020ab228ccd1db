//! Independent brute-force verifiers.
//!
//! None of this shares code with the encoder or the production simplex: the
//! pattern oracle solves its LPs with [`textbook`], and the grid and scan
//! oracles only evaluate the network.

mod enumerate;
mod grid;
mod scan;
pub mod textbook;

use alloc::vec::Vec;

pub use enumerate::{pattern_enumeration_optimum, Enumeration, Instance, ENUMERATION_CAP};
pub use grid::{grid_collision_search, grid_mappability_search, scan_pseudo_gap, GridPair};
pub use scan::{scan_invertible_radius, scan_pseudo_radius, ScanRadius};

/// Central-difference Jacobian of `map` at `x`, row-major `m × n`.
pub fn fd_jacobian(map: &dyn Fn(&[f64]) -> Vec<f64>, x: &[f64], h: f64) -> Vec<f64> {
    let n = x.len();
    let mut cols = Vec::with_capacity(n);
    let mut p = x.to_vec();
    for j in 0..n {
        p[j] = x[j] + h;
        let fp = map(&p);
        p[j] = x[j] - h;
        let fm = map(&p);
        p[j] = x[j];
        cols.push(fp.iter().zip(&fm).map(|(a, b)| (a - b) / (2.0 * h)).collect::<Vec<f64>>());
    }
    let m = cols.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(m * n);
    for i in 0..m {
        for col in &cols {
            out.push(col[i]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::BrusselatorEuler;

    #[test]
    fn linear_map_is_exact() {
        let j = fd_jacobian(&|x| alloc::vec![2.0 * x[0] - x[1], 0.5 * x[1]], &[0.3, 0.7], 1e-5);
        for (a, b) in j.iter().zip([2.0, -1.0, 0.0, 0.5]) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn brusselator_jacobian() {
        let m = BrusselatorEuler::new(1.0, 2.0, 0.15);
        let fd = fd_jacobian(
            &|p| {
                let (u, v) = m.step(p[0], p[1]);
                alloc::vec![u, v]
            },
            &[1.0, 1.0],
            1e-5,
        );
        let an = m.jacobian(1.0, 1.0);
        for (k, v) in fd.iter().enumerate() {
            assert!((v - an[k / 2][k % 2]).abs() < 1e-6);
        }
    }
}
