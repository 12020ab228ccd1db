//! Fully-connected ReLU networks and residual variants.
//!
//! A [`ReluMlp`] with layers `L0 .. Lℓ` computes
//! `x(k+1) = max(W(k) x(k) + b(k), 0)` for the hidden layers and an affine
//! read-out `W(ℓ) x(ℓ) + b(ℓ)` with no activation.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Dense affine map `x ↦ W x + b`, weights stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Affine {
    rows: usize,
    cols: usize,
    weight: Vec<f64>,
    bias: Vec<f64>,
}

impl Affine {
    pub fn new(rows: usize, cols: usize, weight: Vec<f64>, bias: Vec<f64>) -> Result<Self> {
        if weight.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: weight.len(),
            });
        }
        if bias.len() != rows {
            return Err(Error::DimensionMismatch {
                expected: rows,
                got: bias.len(),
            });
        }
        if weight.iter().chain(bias.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("affine layer".to_string()));
        }
        Ok(Self {
            rows,
            cols,
            weight,
            bias,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            weight: vec![0.0; rows * cols],
            bias: vec![0.0; rows],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn weight(&self) -> &[f64] {
        &self.weight
    }

    pub fn bias(&self) -> &[f64] {
        &self.bias
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.weight[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.weight[i * self.cols..(i + 1) * self.cols]
    }

    pub(crate) fn weight_mut(&mut self) -> &mut [f64] {
        &mut self.weight
    }

    /// `W x + b`. Every evaluator in the crate funnels through this so that
    /// degenerate interval propagation reproduces forward values bit for bit.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = 0.0;
                for (w, v) in self.row(i).iter().zip(x) {
                    acc += w * v;
                }
                acc + self.bias[i]
            })
            .collect()
    }

    /// `self ∘ inner`, i.e. `x ↦ W_s (W_i x + b_i) + b_s`.
    pub fn compose(&self, inner: &Affine) -> Result<Affine> {
        if self.cols != inner.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: inner.rows,
            });
        }
        let mut weight = vec![0.0; self.rows * inner.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..inner.cols {
                    weight[i * inner.cols + j] += a * inner.get(k, j);
                }
            }
        }
        let bias = self.apply(&inner.bias);
        Affine::new(self.rows, inner.cols, weight, bias)
    }
}

/// Per hidden layer on/off indicators; `true` means the unit is active.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ActivationPattern(pub Vec<Vec<bool>>);

impl ActivationPattern {
    pub fn layers(&self) -> &[Vec<bool>] {
        &self.0
    }

    pub fn active_count(&self) -> usize {
        self.0.iter().flatten().filter(|a| **a).count()
    }
}

/// Output of [`ReluMlp::forward_trace`].
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub output: Vec<f64>,
    /// `W(k) x(k) + b(k)` for every hidden layer, before clamping.
    pub pre_activations: Vec<Vec<f64>>,
    pub pattern: ActivationPattern,
}

/// ℓ-hidden-layer fully-connected ReLU network. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct ReluMlp {
    layers: Vec<Affine>,
}

impl ReluMlp {
    pub fn new(layers: Vec<Affine>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::EmptyNetwork);
        }
        for k in 1..layers.len() {
            if layers[k].cols != layers[k - 1].rows {
                return Err(Error::ShapeChain {
                    layer: k,
                    cols: layers[k].cols,
                    prev_rows: layers[k - 1].rows,
                });
            }
        }
        Ok(Self { layers })
    }

    pub fn layers(&self) -> &[Affine] {
        &self.layers
    }

    pub fn into_layers(self) -> Vec<Affine> {
        self.layers
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].cols
    }

    pub fn output_dim(&self) -> usize {
        self.layers[self.layers.len() - 1].rows
    }

    /// Number of hidden (ReLU) layers ℓ.
    pub fn hidden_layers(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn hidden_widths(&self) -> Vec<usize> {
        self.layers[..self.layers.len() - 1]
            .iter()
            .map(|l| l.rows)
            .collect()
    }

    /// Total number of hidden neurons n.
    pub fn neuron_count(&self) -> usize {
        self.hidden_widths().iter().sum()
    }

    pub fn weight_count(&self) -> usize {
        self.layers.iter().map(|l| l.weight.len()).sum()
    }

    fn check_input(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                got: x.len(),
            });
        }
        Ok(())
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_input(x)?;
        let (last, hidden) = self.layers.split_last().expect("non-empty");
        let mut h = x.to_vec();
        for layer in hidden {
            h = layer.apply(&h);
            for v in h.iter_mut() {
                *v = relu(*v);
            }
        }
        Ok(last.apply(&h))
    }

    pub fn forward_trace(&self, x: &[f64]) -> Result<Trace> {
        self.check_input(x)?;
        let (last, hidden) = self.layers.split_last().expect("non-empty");
        let mut h = x.to_vec();
        let mut pre_activations = Vec::with_capacity(hidden.len());
        let mut pattern = Vec::with_capacity(hidden.len());
        for layer in hidden {
            let pre = layer.apply(&h);
            // a pre-activation of exactly zero counts as inactive
            pattern.push(pre.iter().map(|v| *v > 0.0).collect());
            h = pre.iter().map(|v| relu(*v)).collect();
            pre_activations.push(pre);
        }
        Ok(Trace {
            output: last.apply(&h),
            pre_activations,
            pattern: ActivationPattern(pattern),
        })
    }

    /// Jacobian of the affine piece selected by `pattern`, row-major
    /// `output_dim × input_dim`.
    pub fn pattern_jacobian(&self, pattern: &ActivationPattern) -> Result<Vec<f64>> {
        if pattern.0.len() != self.hidden_layers() {
            return Err(Error::DimensionMismatch {
                expected: self.hidden_layers(),
                got: pattern.0.len(),
            });
        }
        let n0 = self.input_dim();
        // running product, rows = current width
        let mut jac: Vec<f64> = Vec::new();
        let mut rows = n0;
        for i in 0..n0 {
            for j in 0..n0 {
                jac.push(if i == j { 1.0 } else { 0.0 });
            }
        }
        for (k, layer) in self.layers.iter().enumerate() {
            let mut next = vec![0.0; layer.rows * n0];
            for i in 0..layer.rows {
                if k < self.hidden_layers() {
                    if pattern.0[k].len() != layer.rows {
                        return Err(Error::DimensionMismatch {
                            expected: layer.rows,
                            got: pattern.0[k].len(),
                        });
                    }
                    if !pattern.0[k][i] {
                        continue;
                    }
                }
                for m in 0..rows {
                    let w = layer.get(i, m);
                    if w == 0.0 {
                        continue;
                    }
                    for j in 0..n0 {
                        next[i * n0 + j] += w * jac[m * n0 + j];
                    }
                }
            }
            jac = next;
            rows = layer.rows;
        }
        Ok(jac)
    }

    /// Jacobian at `x`, taken from the activation pattern of `x` (a unit
    /// sitting exactly on its kink contributes its inactive side).
    pub fn jacobian(&self, x: &[f64]) -> Result<Vec<f64>> {
        let trace = self.forward_trace(x)?;
        self.pattern_jacobian(&trace.pattern)
    }
}

#[inline]
pub(crate) fn relu(v: f64) -> f64 {
    if v > 0.0 {
        v
    } else {
        0.0
    }
}

/// Residual network: every block is a `ReluMlp` from ℝᵐ to ℝᵐ and
/// acts as `x ↦ x + block(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualNet {
    blocks: Vec<ReluMlp>,
}

impl ResidualNet {
    pub fn new(blocks: Vec<ReluMlp>) -> Result<Self> {
        let first = blocks.first().ok_or(Error::EmptyNetwork)?;
        let m = first.input_dim();
        for b in &blocks {
            if b.input_dim() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: b.input_dim(),
                });
            }
            if b.output_dim() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: b.output_dim(),
                });
            }
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[ReluMlp] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks[0].input_dim()
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut h = x.to_vec();
        for block in &self.blocks {
            let delta = block.forward(&h)?;
            for (a, d) in h.iter_mut().zip(delta) {
                *a += d;
            }
        }
        Ok(h)
    }
}

/// Rewrites a residual network as a plain ReLU MLP. Each hidden layer of a
/// block gains `2m` units carrying `g(x)` and `g(-x)`, and the read-out
/// recombines them as `g(x) - g(-x) = x`. Consecutive blocks are joined by
/// composing the read-out of one with the input layer of the next.
pub fn flatten_residual(rnet: &ResidualNet) -> ReluMlp {
    let m = rnet.dim();
    let mut out: Vec<Affine> = Vec::new();
    for block in &rnet.blocks {
        let flat = flatten_block(block, m);
        match out.pop() {
            None => out.extend(flat),
            Some(prev_readout) => {
                let mut flat = flat.into_iter();
                let first = flat.next().expect("block has a layer");
                out.push(first.compose(&prev_readout).expect("shapes chain"));
                out.extend(flat);
            }
        }
    }
    ReluMlp::new(out).expect("flattened layers chain")
}

fn flatten_block(block: &ReluMlp, m: usize) -> Vec<Affine> {
    let layers = block.layers();
    if layers.len() == 1 {
        // affine block: (I + W) x + b
        let mut a = layers[0].clone();
        for i in 0..m {
            a.weight[i * m + i] += 1.0;
        }
        return vec![a];
    }
    let last = layers.len() - 1;
    let mut out = Vec::with_capacity(layers.len());
    for (k, layer) in layers.iter().enumerate() {
        if k == 0 {
            // [W0; I; -I], [b0; 0; 0]
            let rows = layer.rows + 2 * m;
            let mut a = Affine::zeros(rows, m);
            a.weight[..layer.weight.len()].copy_from_slice(&layer.weight);
            a.bias[..layer.rows].copy_from_slice(&layer.bias);
            for i in 0..m {
                a.weight[(layer.rows + i) * m + i] = 1.0;
                a.weight[(layer.rows + m + i) * m + i] = -1.0;
            }
            out.push(a);
        } else if k < last {
            // blockdiag(Wk, I, I): both identity channels pass through g again
            let rows = layer.rows + 2 * m;
            let cols = layer.cols + 2 * m;
            let mut a = Affine::zeros(rows, cols);
            for i in 0..layer.rows {
                a.weight[i * cols..i * cols + layer.cols].copy_from_slice(layer.row(i));
            }
            a.bias[..layer.rows].copy_from_slice(&layer.bias);
            for i in 0..2 * m {
                a.weight[(layer.rows + i) * cols + layer.cols + i] = 1.0;
            }
            out.push(a);
        } else {
            // (Wℓ, I, -I), bℓ
            let cols = layer.cols + 2 * m;
            let mut a = Affine::zeros(m, cols);
            for i in 0..m {
                a.weight[i * cols..i * cols + layer.cols].copy_from_slice(layer.row(i));
                a.weight[i * cols + layer.cols + i] = 1.0;
                a.weight[i * cols + layer.cols + m + i] = -1.0;
            }
            a.bias.copy_from_slice(&layer.bias);
            out.push(a);
        }
    }
    out
}

/// Fixes the last input coordinate to `p` by folding its weight column into
/// the first-layer bias.
pub fn embed_parameter(net: &ReluMlp, p: f64) -> Result<ReluMlp> {
    let first = &net.layers[0];
    if first.cols < 2 {
        return Err(Error::InvalidArgument(format!(
            "embedding needs at least 2 inputs, network has {}",
            first.cols
        )));
    }
    if !p.is_finite() {
        return Err(Error::NonFinite("parameter".to_string()));
    }
    let d = first.cols - 1;
    let mut weight = Vec::with_capacity(first.rows * d);
    let mut bias = Vec::with_capacity(first.rows);
    for i in 0..first.rows {
        let row = first.row(i);
        weight.extend_from_slice(&row[..d]);
        bias.push(first.bias[i] + p * row[d]);
    }
    let mut layers = net.layers.clone();
    layers[0] = Affine::new(first.rows, d, weight, bias)?;
    ReluMlp::new(layers)
}

/// Zeroes the globally smallest-magnitude fraction `sparsity` of weight
/// entries (biases untouched). Ties are broken by a seeded random key so
/// that, for a fixed seed, the pruned sets are nested in `sparsity`.
pub fn prune_magnitude(net: &ReluMlp, sparsity: f64, seed: u64) -> Result<ReluMlp> {
    if !(0.0..=1.0).contains(&sparsity) {
        return Err(Error::InvalidArgument(format!(
            "sparsity {sparsity} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries: Vec<(f64, u64, usize, usize)> = Vec::with_capacity(net.weight_count());
    for (k, layer) in net.layers.iter().enumerate() {
        for (idx, w) in layer.weight.iter().enumerate() {
            entries.push((w.abs(), rng.random::<u64>(), k, idx));
        }
    }
    let total = entries.len();
    let count = libm::floor(sparsity * total as f64) as usize;
    entries.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut layers = net.layers.clone();
    for &(_, _, k, idx) in entries.iter().take(count.min(total)) {
        layers[k].weight_mut()[idx] = 0.0;
    }
    ReluMlp::new(layers)
}

/// Multiplies every nonzero weight by `1 + scale·u`, `u ~ U[-1, 1]`.
/// Zeros stay zero, so sparsity is preserved. Used to derive distinct
/// variants of a pruned network.
pub fn jitter_weights(net: &ReluMlp, scale: f64, seed: u64) -> Result<ReluMlp> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut layers = net.layers.clone();
    for layer in layers.iter_mut() {
        for w in layer.weight_mut() {
            let u: f64 = rng.random_range(-1.0..=1.0);
            if *w != 0.0 {
                *w *= 1.0 + scale * u;
            }
        }
    }
    ReluMlp::new(layers)
}

/// Random network with entries i.i.d. uniform in `[-s, s]`; `s` defaults to
/// `1/sqrt(fan_in)` per layer.
pub fn random_network(dims: &[usize], scale: Option<f64>, seed: u64) -> Result<ReluMlp> {
    if dims.len() < 2 {
        return Err(Error::InvalidArgument(
            "need at least input and output widths".to_string(),
        ));
    }
    if dims.contains(&0) {
        return Err(Error::InvalidArgument("zero-width layer".to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut layers = Vec::with_capacity(dims.len() - 1);
    for w in dims.windows(2) {
        let (cols, rows) = (w[0], w[1]);
        let s = scale.unwrap_or_else(|| 1.0 / libm::sqrt(cols as f64));
        let weight = (0..rows * cols).map(|_| rng.random_range(-s..=s)).collect();
        let bias = (0..rows).map(|_| rng.random_range(-s..=s)).collect();
        layers.push(Affine::new(rows, cols, weight, bias)?);
    }
    ReluMlp::new(layers)
}

/// `x = g(x) - g(-x)` as a one-hidden-layer network on ℝᵐ.
pub fn identity_pair(m: usize) -> ReluMlp {
    let mut first = Affine::zeros(2 * m, m);
    let mut last = Affine::zeros(m, 2 * m);
    for i in 0..m {
        first.weight[i * m + i] = 1.0;
        first.weight[(m + i) * m + i] = -1.0;
        last.weight[i * 2 * m + i] = 1.0;
        last.weight[i * 2 * m + m + i] = -1.0;
    }
    ReluMlp::new(vec![first, last]).expect("shapes chain")
}

/// Scalar `x ↦ max(0, x)`.
pub fn single_relu() -> ReluMlp {
    let first = Affine::new(1, 1, vec![1.0], vec![0.0]).expect("valid");
    let last = Affine::new(1, 1, vec![1.0], vec![0.0]).expect("valid");
    ReluMlp::new(vec![first, last]).expect("valid")
}

/// Prepends an invertible linear map `a` to the read-out: `x ↦ a f(x)`.
pub fn compose_output(a: &Affine, net: &ReluMlp) -> Result<ReluMlp> {
    let mut layers = net.layers.clone();
    let last = layers.pop().expect("non-empty");
    layers.push(a.compose(&last)?);
    ReluMlp::new(layers)
}

/// Scales every block's read-out so that the product of layer spectral-norm
/// bounds is at most `target`, making `x + block(x)` bi-Lipschitz.
pub fn contractive_residual(
    m: usize,
    hidden: &[usize],
    blocks: usize,
    target: f64,
    seed: u64,
) -> Result<ResidualNet> {
    let mut out = Vec::with_capacity(blocks);
    for b in 0..blocks {
        let mut dims = Vec::with_capacity(hidden.len() + 2);
        dims.push(m);
        dims.extend_from_slice(hidden);
        dims.push(m);
        let net = random_network(&dims, None, seed.wrapping_add(b as u64))?;
        let lip: f64 = net.layers.iter().map(frobenius).product();
        let mut layers = net.into_layers();
        if lip > 0.0 {
            let last = layers.last_mut().expect("non-empty");
            let s = target / lip;
            for w in last.weight_mut() {
                *w *= s;
            }
            for v in last.bias.iter_mut() {
                *v *= s;
            }
        }
        out.push(ReluMlp::new(layers)?);
    }
    ResidualNet::new(out)
}

/// Frobenius norm, an upper bound on the spectral norm.
fn frobenius(a: &Affine) -> f64 {
    libm::sqrt(a.weight.iter().map(|w| w * w).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair_net() -> ReluMlp {
        identity_pair(1)
    }

    #[test]
    fn zero_weights_return_last_bias() {
        let l0 = Affine::zeros(3, 2);
        let l1 = Affine::new(2, 3, vec![0.0; 6], vec![0.25, -1.5]).unwrap();
        let net = ReluMlp::new(vec![l0, l1]).unwrap();
        assert_eq!(net.forward(&[3.0, -7.0]).unwrap(), vec![0.25, -1.5]);
    }

    #[test]
    fn identity_pair_is_identity() {
        let net = pair_net();
        assert_eq!(net.forward(&[0.7]).unwrap(), vec![0.7]);
        assert_eq!(net.forward(&[-2.5]).unwrap(), vec![-2.5]);
    }

    #[test]
    fn trace_patterns() {
        let net = pair_net();
        let t = net.forward_trace(&[0.7]).unwrap();
        assert_eq!(t.pattern.0, vec![vec![true, false]]);
        let t = net.forward_trace(&[0.0]).unwrap();
        assert_eq!(t.pattern.0, vec![vec![false, false]]);
    }

    #[test]
    fn dimension_errors() {
        let net = pair_net();
        assert!(matches!(
            net.forward(&[1.0, 2.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(net.forward_trace(&[]).is_err());
    }

    #[test]
    fn shape_chain_rejected() {
        let l0 = Affine::zeros(3, 2);
        let l1 = Affine::zeros(1, 4);
        assert!(matches!(
            ReluMlp::new(vec![l0, l1]),
            Err(Error::ShapeChain { layer: 1, .. })
        ));
        assert_eq!(ReluMlp::new(vec![]), Err(Error::EmptyNetwork));
        assert!(Affine::new(1, 1, vec![f64::NAN], vec![0.0]).is_err());
    }

    #[test]
    fn flatten_widths_and_zero_block() {
        let block = ReluMlp::new(vec![Affine::zeros(3, 2), Affine::zeros(2, 3)]).unwrap();
        let rnet = ResidualNet::new(vec![block]).unwrap();
        let flat = flatten_residual(&rnet);
        assert_eq!(flat.hidden_widths(), vec![7]);
        for x in [[0.3, -1.2], [5.0, 4.0], [-3.0, 0.0]] {
            assert_eq!(flat.forward(&x).unwrap(), x.to_vec());
        }
    }

    #[test]
    fn flatten_deep_and_multi_block() {
        let b0 = random_network(&[2, 4, 3, 2], None, 3).unwrap();
        let b1 = random_network(&[2, 5, 2], None, 4).unwrap();
        let b2 = random_network(&[2, 2], None, 5).unwrap();
        let rnet = ResidualNet::new(vec![b0, b1, b2]).unwrap();
        let flat = flatten_residual(&rnet);
        assert_eq!(flat.hidden_widths(), vec![8, 7, 9]);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let x = [rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)];
            let a = rnet.forward(&x).unwrap();
            let b = flat.forward(&x).unwrap();
            for (u, v) in a.iter().zip(&b) {
                assert!((u - v).abs() <= 1e-9, "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn embed_zero_parameter_drops_column() {
        let net = random_network(&[3, 4, 2], None, 1).unwrap();
        let e = embed_parameter(&net, 0.0).unwrap();
        assert_eq!(e.input_dim(), 2);
        assert_eq!(e.layers()[0].bias(), net.layers()[0].bias());
        assert!(embed_parameter(&identity_pair(1), 1.0).is_err());
    }

    #[test]
    fn prune_extremes() {
        let net = random_network(&[2, 8, 2], None, 7).unwrap();
        assert_eq!(prune_magnitude(&net, 0.0, 1).unwrap(), net);
        let all = prune_magnitude(&net, 1.0, 1).unwrap();
        for (a, b) in all.layers().iter().zip(net.layers()) {
            assert!(a.weight().iter().all(|w| *w == 0.0));
            assert_eq!(a.bias(), b.bias());
        }
        assert!(prune_magnitude(&net, 1.5, 1).is_err());
        assert!(prune_magnitude(&net, f64::NAN, 1).is_err());
    }

    #[test]
    fn prune_half_of_vdp_architecture() {
        let net = random_network(&[2, 32, 32, 2], None, 11).unwrap();
        let pruned = prune_magnitude(&net, 0.5, 3).unwrap();
        let zeros = pruned
            .layers()
            .iter()
            .flat_map(|l| l.weight())
            .filter(|w| **w == 0.0)
            .count();
        assert_eq!(zeros, (2 * 32 + 32 * 32 + 32 * 2) / 2);
    }

    #[test]
    fn random_network_shapes_and_determinism() {
        let a = random_network(&[1, 10, 10, 1], None, 42).unwrap();
        assert_eq!(a.hidden_layers(), 2);
        assert_eq!(a.neuron_count(), 20);
        assert_eq!(a, random_network(&[1, 10, 10, 1], None, 42).unwrap());
        assert_ne!(a, random_network(&[1, 10, 10, 1], None, 43).unwrap());
        assert!(random_network(&[3], None, 0).is_err());
        let s = 1.0 / libm::sqrt(10.0);
        assert!(a.layers()[1].weight().iter().all(|w| w.abs() <= s));
    }

    #[test]
    fn pattern_jacobian_of_identity_pair() {
        let net = identity_pair(2);
        assert_eq!(net.jacobian(&[0.5, -0.5]).unwrap(), vec![1.0, 0.0, 0.0, 1.0]);
        // on the kink both units of the first coordinate are off
        assert_eq!(net.jacobian(&[0.0, 1.0]).unwrap(), vec![0.0, 0.0, 0.0, 1.0]);
    }
}
