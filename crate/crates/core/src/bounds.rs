//! Interval bound propagation.
//!
//! Bounds are carried in center/radius form: an affine layer maps
//! `(c, ρ)` to `(W c + b, |W| ρ)` and a ReLU clamps the endpoints. With a
//! zero radius the centers follow exactly the arithmetic of
//! [`ReluMlp::forward`], so degenerate boxes give `l = u` equal to the traced
//! pre-activations.

use alloc::vec::Vec;

use crate::network::ReluMlp;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Norm {
    LInf,
    L1,
}

/// Ball `{x : ‖x − center‖ ≤ radius}` in the given norm.
#[derive(Debug, Clone, PartialEq)]
pub struct InputBox {
    pub center: Vec<f64>,
    pub radius: f64,
    pub norm: Norm,
}

impl InputBox {
    pub fn new(center: Vec<f64>, radius: f64, norm: Norm) -> Result<Self> {
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::InvalidArgument(alloc::format!(
                "radius must be finite and nonnegative, got {radius}"
            )));
        }
        if center.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite(alloc::string::String::from("box center")));
        }
        Ok(Self {
            center,
            radius,
            norm,
        })
    }

    pub fn linf(center: Vec<f64>, radius: f64) -> Result<Self> {
        Self::new(center, radius, Norm::LInf)
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Whether `x` lies in the ball up to `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.center.len() {
            return false;
        }
        let dist = distance(self.norm, x, &self.center);
        dist <= self.radius + tol
    }
}

pub fn distance(norm: Norm, a: &[f64], b: &[f64]) -> f64 {
    let it = a.iter().zip(b).map(|(x, y)| (x - y).abs());
    match norm {
        Norm::LInf => it.fold(0.0, f64::max),
        Norm::L1 => it.sum(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayerBounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl LayerBounds {
    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn contains(&self, v: &[f64]) -> bool {
        v.len() == self.len()
            && v.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(x, (l, u))| *l <= *x && *x <= *u)
    }

    pub fn max_width(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| u - l)
            .fold(0.0, f64::max)
    }
}

/// Pre-activation bounds for every hidden layer plus the output interval.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalBounds {
    pub hidden: Vec<LayerBounds>,
    pub output: LayerBounds,
}

pub fn propagate_interval(net: &ReluMlp, input: &InputBox) -> Result<IntervalBounds> {
    if input.dim() != net.input_dim() {
        return Err(Error::DimensionMismatch {
            expected: net.input_dim(),
            got: input.dim(),
        });
    }
    // an L1 ball sits inside the L∞ ball of the same radius
    let mut center = input.center.clone();
    let mut radius: Vec<f64> = alloc::vec![input.radius; input.dim()];
    let (last, hidden) = net.layers().split_last().expect("non-empty");
    let mut out = Vec::with_capacity(hidden.len());
    for layer in hidden {
        let (lower, upper) = affine_interval(layer, &center, &radius);
        center.clear();
        radius.clear();
        for (l, u) in lower.iter().zip(&upper) {
            let (lc, uc) = (l.max(0.0), u.max(0.0));
            center.push(0.5 * (lc + uc));
            radius.push(0.5 * (uc - lc));
        }
        out.push(LayerBounds { lower, upper });
    }
    let (lower, upper) = affine_interval(last, &center, &radius);
    Ok(IntervalBounds {
        hidden: out,
        output: LayerBounds { lower, upper },
    })
}

pub fn output_bounds(net: &ReluMlp, input: &InputBox) -> Result<LayerBounds> {
    Ok(propagate_interval(net, input)?.output)
}

fn affine_interval(
    layer: &crate::network::Affine,
    center: &[f64],
    radius: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let mid = layer.apply(center);
    let mut lower = Vec::with_capacity(mid.len());
    let mut upper = Vec::with_capacity(mid.len());
    for (i, m) in mid.iter().enumerate() {
        let rad: f64 = layer
            .row(i)
            .iter()
            .zip(radius)
            .map(|(w, r)| w.abs() * r)
            .sum();
        lower.push(m - rad);
        upper.push(m + rad);
    }
    (lower, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{identity_pair, random_network, Affine};
    use alloc::vec;

    #[test]
    fn single_layer_interval() {
        let l0 = Affine::new(1, 2, vec![1.0, -1.0], vec![0.0]).unwrap();
        let l1 = Affine::new(1, 1, vec![1.0], vec![0.0]).unwrap();
        let net = ReluMlp::new(vec![l0, l1]).unwrap();
        let b = propagate_interval(&net, &InputBox::linf(vec![0.5, 0.5], 0.5).unwrap()).unwrap();
        assert_eq!(b.hidden[0].lower, vec![-1.0]);
        assert_eq!(b.hidden[0].upper, vec![1.0]);
        assert_eq!(b.output.lower, vec![0.0]);
        assert_eq!(b.output.upper, vec![1.0]);
    }

    #[test]
    fn zero_radius_is_exact() {
        let net = random_network(&[2, 8, 8, 2], None, 5).unwrap();
        let x = vec![0.3, -0.1];
        let b = propagate_interval(&net, &InputBox::linf(x.clone(), 0.0).unwrap()).unwrap();
        let t = net.forward_trace(&x).unwrap();
        for (lb, pre) in b.hidden.iter().zip(&t.pre_activations) {
            assert_eq!(&lb.lower, pre);
            assert_eq!(&lb.upper, pre);
        }
        assert_eq!(b.output.lower, t.output);
        assert_eq!(b.output.upper, t.output);
    }

    #[test]
    fn identity_output_width() {
        let net = identity_pair(3);
        let r = 0.4;
        let ob = output_bounds(&net, &InputBox::linf(vec![1.0, -2.0, 0.1], r).unwrap()).unwrap();
        for (l, u) in ob.lower.iter().zip(&ob.upper) {
            assert!(u - l <= 2.0 * r + 1e-12);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let net = identity_pair(2);
        assert!(propagate_interval(&net, &InputBox::linf(vec![0.0], 1.0).unwrap()).is_err());
        assert!(InputBox::linf(vec![0.0], -1.0).is_err());
    }
}
