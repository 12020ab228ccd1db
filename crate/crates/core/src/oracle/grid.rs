//! Brute-force collision searches over grids.
//!
//! For scalar maps of one variable the search is continuous in the second
//! point: each grid node `x_i` is matched against every grid segment whose
//! image straddles `f(x_i)`, and the crossing is located by bisection. A
//! pure node-to-node match would only ever see flat branches. Nodes and
//! segments are swept in image order so only the extreme straddling
//! segments are examined. Higher-dimensional inputs fall back to matching
//! grid nodes against each other.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::bounds::{distance, InputBox};
use crate::network::ReluMlp;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GridPair {
    pub gap: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl GridPair {
    fn trivial(c: &[f64]) -> Self {
        Self { gap: 0.0, x: c.to_vec(), y: c.to_vec() }
    }
}

fn scalar(net: &ReluMlp, x: f64) -> f64 {
    net.forward(&[x]).expect("dimension checked")[0]
}

fn nodes_1d(input: &InputBox, resolution: usize) -> Vec<f64> {
    let (c, r) = (input.center[0], input.radius);
    (0..=resolution)
        .map(|k| if k == resolution { c + r } else { c - r + 2.0 * r * k as f64 / resolution as f64 })
        .collect()
}

fn scaled_tol(tol: f64, values: impl Iterator<Item = f64>) -> f64 {
    tol * (1.0 + values.fold(0.0_f64, |m, v| m.max(v.abs())))
}

/// A point of `[a, b]` where `g` is within `tol` of `v`, preferring the
/// endpoint farther from `from` when both endpoints match.
fn locate(g: &dyn Fn(f64) -> f64, a: f64, b: f64, ga: f64, gb: f64, v: f64, tol: f64, from: f64) -> Option<f64> {
    let (ma, mb) = ((ga - v).abs() <= tol, (gb - v).abs() <= tol);
    match (ma, mb) {
        (true, true) => Some(if (a - from).abs() >= (b - from).abs() { a } else { b }),
        (true, false) => Some(a),
        (false, true) => Some(b),
        _ if (ga - v) * (gb - v) < 0.0 => {
            let (mut lo, mut hi) = (a, b);
            let rising = gb > ga;
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if (g(mid) < v) == rising {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Some(0.5 * (lo + hi))
        }
        _ => None,
    }
}

/// Largest `‖x − y‖` with `f(x) ≈ f(y)` over the grid.
pub fn grid_collision_search(net: &ReluMlp, input: &InputBox, resolution: usize, match_tol: f64) -> Result<GridPair> {
    let n = net.input_dim();
    if input.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: input.dim() });
    }
    if n > 2 {
        return Err(Error::InvalidArgument(format!("grid search needs input dim ≤ 2, got {n}")));
    }
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    if n == 1 && net.output_dim() == 1 {
        Ok(sweep_1d(net, input, resolution, match_tol))
    } else {
        Ok(node_pairs(net, input, resolution, match_tol))
    }
}

fn sweep_1d(net: &ReluMlp, input: &InputBox, resolution: usize, match_tol: f64) -> GridPair {
    let xs = nodes_1d(input, resolution);
    let fs: Vec<f64> = xs.iter().map(|&x| scalar(net, x)).collect();
    let tol = scaled_tol(match_tol, fs.iter().copied());
    // (image, order, index): insert segment < query node < remove segment
    let mut events: Vec<(f64, u8, usize)> = Vec::with_capacity(3 * xs.len());
    for k in 0..resolution {
        let (a, b) = (fs[k], fs[k + 1]);
        events.push((a.min(b) - tol, 0, k));
        events.push((a.max(b) + tol, 2, k));
    }
    for (i, &f) in fs.iter().enumerate() {
        events.push((f, 1, i));
    }
    events.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)));
    let g = |x: f64| scalar(net, x);
    let mut active = BTreeSet::new();
    let mut best = GridPair::trivial(&input.center);
    for (_, kind, idx) in events {
        match kind {
            0 => {
                active.insert(idx);
            }
            2 => {
                active.remove(&idx);
            }
            _ => {
                let (xi, fi) = (xs[idx], fs[idx]);
                for &k in [active.first(), active.last()].into_iter().flatten() {
                    if let Some(y) = locate(&g, xs[k], xs[k + 1], fs[k], fs[k + 1], fi, tol, xi) {
                        let gap = (xi - y).abs();
                        if gap > best.gap {
                            best = GridPair { gap, x: alloc::vec![xi], y: alloc::vec![y] };
                        }
                    }
                }
            }
        }
    }
    best
}

fn node_pairs(net: &ReluMlp, input: &InputBox, resolution: usize, match_tol: f64) -> GridPair {
    let n = input.dim();
    let axis = nodes_1d(&InputBox { center: alloc::vec![0.0], ..input.clone() }, resolution);
    let mut pts: Vec<Vec<f64>> = Vec::new();
    let total = (resolution + 1).pow(n as u32);
    for idx in 0..total {
        let mut rem = idx;
        let p: Vec<f64> = (0..n)
            .map(|j| {
                let k = rem % (resolution + 1);
                rem /= resolution + 1;
                input.center[j] + axis[k]
            })
            .collect();
        if input.contains(&p, 1e-12 * (1.0 + input.radius)) {
            pts.push(p);
        }
    }
    let imgs: Vec<Vec<f64>> = pts.iter().map(|p| net.forward(p).expect("dimension checked")).collect();
    let tol = scaled_tol(match_tol, imgs.iter().flatten().copied());
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| imgs[a][0].total_cmp(&imgs[b][0]));
    let mut best = GridPair::trivial(&input.center);
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if imgs[j][0] - imgs[i][0] > tol {
                break;
            }
            if imgs[i].iter().zip(&imgs[j]).all(|(a, b)| (a - b).abs() <= tol) {
                let gap = distance(input.norm, &pts[i], &pts[j]);
                if gap > best.gap {
                    best = GridPair { gap, x: pts[i].clone(), y: pts[j].clone() };
                }
            }
        }
    }
    best
}

fn require_scalar(net: &ReluMlp) -> Result<()> {
    if net.input_dim() != 1 || net.output_dim() != 1 {
        return Err(Error::InvalidArgument(format!(
            "1D scan needs a scalar map, got {} -> {}",
            net.input_dim(),
            net.output_dim()
        )));
    }
    Ok(())
}

/// Farthest point of the interval with the same image as its center.
pub fn scan_pseudo_gap(net: &ReluMlp, input: &InputBox, resolution: usize, match_tol: f64) -> Result<GridPair> {
    require_scalar(net)?;
    let c = input.center[0];
    let xs = nodes_1d(input, resolution);
    let fs: Vec<f64> = xs.iter().map(|&x| scalar(net, x)).collect();
    let tol = scaled_tol(match_tol, fs.iter().copied());
    let v = scalar(net, c);
    let g = |x: f64| scalar(net, x);
    let mut best = GridPair::trivial(&input.center);
    for k in 0..resolution {
        if let Some(y) = locate(&g, xs[k], xs[k + 1], fs[k], fs[k + 1], v, tol, c) {
            if (y - c).abs() > best.gap {
                best = GridPair { gap: (y - c).abs(), x: alloc::vec![y], y: alloc::vec![c] };
            }
        }
    }
    Ok(best)
}

/// Largest `‖B(x) − B(y)‖∞` with `A(x) ≈ A(y)`; `A` must be scalar on a
/// one-dimensional input.
pub fn grid_mappability_search(
    a: &ReluMlp,
    b: &ReluMlp,
    input: &InputBox,
    resolution: usize,
    match_tol: f64,
) -> Result<GridPair> {
    require_scalar(a)?;
    if b.input_dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: b.input_dim() });
    }
    let xs = nodes_1d(input, resolution);
    let fa: Vec<f64> = xs.iter().map(|&x| scalar(a, x)).collect();
    let tol = scaled_tol(match_tol, fa.iter().copied());
    let g = |x: f64| scalar(a, x);
    let mut best = GridPair::trivial(&input.center);
    for (i, &xi) in xs.iter().enumerate() {
        let bi = b.forward(&[xi])?;
        for k in 0..resolution {
            let (lo, hi) = (fa[k].min(fa[k + 1]) - tol, fa[k].max(fa[k + 1]) + tol);
            if fa[i] < lo || fa[i] > hi {
                continue;
            }
            if let Some(y) = locate(&g, xs[k], xs[k + 1], fa[k], fa[k + 1], fa[i], tol, xi) {
                let by = b.forward(&[y])?;
                let gap = bi.iter().zip(&by).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
                if gap > best.gap {
                    best = GridPair { gap, x: alloc::vec![xi], y: alloc::vec![y] };
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{identity_pair, single_relu};

    #[test]
    fn identity_has_no_collision() {
        let b = InputBox::linf(alloc::vec![0.0], 1.0).unwrap();
        let p = grid_collision_search(&identity_pair(1), &b, 500, 1e-9).unwrap();
        assert_eq!(p.gap, 0.0);
        let b = InputBox::linf(alloc::vec![0.0, 0.0], 1.0).unwrap();
        let p = grid_collision_search(&identity_pair(2), &b, 40, 1e-9).unwrap();
        assert_eq!(p.gap, 0.0);
    }

    #[test]
    fn flat_branch_pair() {
        let b = InputBox::linf(alloc::vec![0.0], 1.0).unwrap();
        let p = grid_collision_search(&single_relu(), &b, 2000, 1e-9).unwrap();
        assert!((p.gap - 1.0).abs() < 1e-12);
        assert_eq!((p.x[0].min(p.y[0]), p.x[0].max(p.y[0])), (-1.0, 0.0));
    }

    #[test]
    fn rejects_three_inputs() {
        let b = InputBox::linf(alloc::vec![0.0; 3], 1.0).unwrap();
        assert!(grid_collision_search(&identity_pair(3), &b, 4, 1e-9).is_err());
    }

    #[test]
    fn tent_map_fold() {
        // f(x) = −|x|, so f(x) = f(−x)
        let l0 = crate::Affine::new(2, 1, alloc::vec![1.0, -1.0], alloc::vec![0.0, 0.0]).unwrap();
        let l1 = crate::Affine::new(1, 2, alloc::vec![-1.0, -1.0], alloc::vec![0.0]).unwrap();
        let net = ReluMlp::new(alloc::vec![l0, l1]).unwrap();
        let b = InputBox::linf(alloc::vec![0.1], 0.5).unwrap();
        let p = grid_collision_search(&net, &b, 997, 1e-9).unwrap();
        // largest pair is (0.6, −0.6) clipped to the interval [−0.4, 0.6]: (−0.4, 0.4)
        assert!((p.gap - 0.8).abs() < 2.0 / 997.0, "{p:?}");
        let q = scan_pseudo_gap(&net, &b, 997, 1e-9).unwrap();
        assert!((q.gap - 0.2).abs() < 1e-9, "{q:?}");
    }
}
