use invertcert_core::network::{
    embed_parameter, flatten_residual, identity_pair, prune_magnitude, random_network, Affine, ReluMlp,
    ResidualNet,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Plain nested-loop evaluation straight from the stored weights.
#[allow(clippy::needless_range_loop)]
fn reference_forward(net: &ReluMlp, x: &[f64]) -> Vec<f64> {
    let mut cur = x.to_vec();
    let n = net.layers().len();
    for (k, layer) in net.layers().iter().enumerate() {
        let mut next = vec![0.0; layer.rows()];
        for i in 0..layer.rows() {
            let mut s = layer.bias()[i];
            for j in 0..layer.cols() {
                s += layer.weight()[i * layer.cols() + j] * cur[j];
            }
            next[i] = if k + 1 < n && s < 0.0 { 0.0 } else { s };
        }
        cur = next;
    }
    cur
}

fn sample(rng: &mut ChaCha8Rng, dim: usize, half: f64) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(-half..=half)).collect()
}

#[test]
fn zero_weights_give_last_bias() {
    let l0 = Affine::new(3, 2, vec![0.0; 6], vec![0.5, -1.0, 2.0]).unwrap();
    let l1 = Affine::new(2, 3, vec![0.0; 6], vec![0.25, -4.0]).unwrap();
    let net = ReluMlp::new(vec![l0, l1]).unwrap();
    assert_eq!(net.forward(&[3.0, -7.0]).unwrap(), vec![0.25, -4.0]);
}

#[test]
fn identity_pair_patterns() {
    let net = identity_pair(1);
    let t = net.forward_trace(&[0.7]).unwrap();
    assert_eq!(t.output, vec![0.7]);
    assert_eq!(t.pattern.layers()[0], vec![true, false]);
    let t = net.forward_trace(&[0.0]).unwrap();
    assert_eq!(t.pattern.layers()[0], vec![false, false]);
}

#[test]
fn seeded_forward_matches_reference() {
    let net = random_network(&[2, 8, 2], None, 42).unwrap();
    let x = [0.3, -0.1];
    let got = net.forward(&x).unwrap();
    let want = reference_forward(&net, &x);
    for (a, b) in got.iter().zip(&want) {
        assert!((a - b).abs() <= 1e-14 * (1.0 + b.abs()));
    }
    let t = net.forward_trace(&x).unwrap();
    for (pre, pat) in t.pre_activations.iter().zip(t.pattern.layers()) {
        for (p, on) in pre.iter().zip(pat) {
            assert_eq!(*on, *p > 0.0);
        }
    }
}

#[test]
fn random_network_shape_and_determinism() {
    let net = random_network(&[1, 10, 10, 1], None, 3).unwrap();
    assert_eq!(net.hidden_layers(), 2);
    assert_eq!(net.neuron_count(), 20);
    assert_eq!(net, random_network(&[1, 10, 10, 1], None, 3).unwrap());
    assert_ne!(net, random_network(&[1, 10, 10, 1], None, 4).unwrap());
    let vdp = random_network(&[2, 32, 32, 2], None, 0).unwrap();
    assert_eq!(vdp.hidden_widths(), vec![32, 32]);
    assert!(random_network(&[], None, 0).is_err());
    assert!(random_network(&[3], None, 0).is_err());
}

#[test]
fn flatten_widths_and_zero_block() {
    let block = random_network(&[2, 3, 2], None, 9).unwrap();
    let flat = flatten_residual(&ResidualNet::new(vec![block]).unwrap());
    assert_eq!(flat.hidden_widths(), vec![3 + 2 * 2]);

    let zero = ReluMlp::new(vec![Affine::zeros(4, 2), Affine::zeros(2, 4)]).unwrap();
    let flat = flatten_residual(&ResidualNet::new(vec![zero]).unwrap());
    for x in [[0.3, -2.0], [-1.5, 4.0], [0.0, 0.0]] {
        assert_eq!(flat.forward(&x).unwrap(), x.to_vec());
    }
}

#[test]
fn flatten_matches_blockwise_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..3 {
        let blocks = (0..3)
            .map(|b| random_network(&[3, 6, 5, 3], None, 100 * seed + b).unwrap())
            .collect();
        let res = ResidualNet::new(blocks).unwrap();
        let flat = flatten_residual(&res);
        assert_eq!(flat.hidden_layers(), 2 * 3);
        let mut worst = 0.0_f64;
        for _ in 0..1000 {
            let x = sample(&mut rng, 3, 5.0);
            let mut cur = x.clone();
            for b in res.blocks() {
                let d = reference_forward(b, &cur);
                cur = cur.iter().zip(&d).map(|(u, v)| u + v).collect();
            }
            let f = flat.forward(&x).unwrap();
            for (a, b) in cur.iter().zip(&f) {
                worst = worst.max((a - b).abs());
            }
        }
        assert!(worst <= 1e-9, "worst {worst}");
    }
}

#[test]
fn embed_parameter_matches_padded_input() {
    let net = random_network(&[3, 7, 4], None, 11).unwrap();
    let p = 2.1;
    let emb = embed_parameter(&net, p).unwrap();
    assert_eq!(emb.input_dim(), 2);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let x = sample(&mut rng, 2, 3.0);
        let a = emb.forward(&x).unwrap();
        let b = net.forward(&[x[0], x[1], p]).unwrap();
        for (u, v) in a.iter().zip(&b) {
            assert!((u - v).abs() <= 1e-12 * (1.0 + v.abs()));
        }
    }
    let zero = embed_parameter(&net, 0.0).unwrap();
    assert_eq!(zero.layers()[0].bias(), net.layers()[0].bias());
    assert_eq!(zero.layers()[1], net.layers()[1]);
    assert!(embed_parameter(&random_network(&[1, 3, 1], None, 0).unwrap(), 1.0).is_err());
}

#[test]
fn embedded_brusselator_net_is_encodable() {
    use invertcert_core::encoder::{encode_problem1, encode_problem2};
    use invertcert_core::{EncodeOptions, InputBox};
    let net = random_network(&[3, 8, 2], None, 17).unwrap();
    let emb = embed_parameter(&net, 2.0).unwrap();
    let b = InputBox::linf(vec![1.0, 2.0], 0.1).unwrap();
    assert!(encode_problem1(&emb, &b, &EncodeOptions::default()).is_ok());
    assert!(encode_problem2(&emb, &b).is_ok());
}

fn zero_set(net: &ReluMlp) -> Vec<bool> {
    net.layers().iter().flat_map(|l| l.weight().iter().map(|w| *w == 0.0)).collect()
}

#[test]
fn pruning_counts() {
    let net = random_network(&[2, 32, 32, 2], None, 1).unwrap();
    let total = 2 * 32 + 32 * 32 + 32 * 2;
    assert_eq!(prune_magnitude(&net, 0.0, 0).unwrap(), net);
    let half = prune_magnitude(&net, 0.5, 0).unwrap();
    assert_eq!(zero_set(&half).iter().filter(|z| **z).count(), total / 2);
    let all = prune_magnitude(&net, 1.0, 0).unwrap();
    assert!(zero_set(&all).iter().all(|z| *z));
    for (a, b) in all.layers().iter().zip(net.layers()) {
        assert_eq!(a.bias(), b.bias());
    }
    assert!(prune_magnitude(&net, 1.5, 0).is_err());
}

#[test]
fn pruning_breaks_ties_by_seed() {
    // every weight has the same magnitude: only the seed decides
    let l0 = Affine::new(4, 1, vec![1.0, -1.0, 1.0, -1.0], vec![0.0; 4]).unwrap();
    let l1 = Affine::new(1, 4, vec![1.0; 4], vec![0.0]).unwrap();
    let net = ReluMlp::new(vec![l0, l1]).unwrap();
    let a = prune_magnitude(&net, 0.5, 7).unwrap();
    assert_eq!(a, prune_magnitude(&net, 0.5, 7).unwrap());
    assert_eq!(zero_set(&a).iter().filter(|z| **z).count(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn prune_is_idempotent_and_nested(seed in 0u64..1000, s1 in 0.0f64..1.0, s2 in 0.0f64..1.0) {
        let (lo, hi) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
        let net = random_network(&[2, 6, 5, 2], None, seed).unwrap();
        let a = prune_magnitude(&net, lo, seed).unwrap();
        let b = prune_magnitude(&net, hi, seed).unwrap();
        prop_assert_eq!(prune_magnitude(&a, lo, seed).unwrap(), a.clone());
        for (za, zb) in zero_set(&a).iter().zip(zero_set(&b)) {
            prop_assert!(!za || zb);
        }
    }

    #[test]
    fn flatten_equivalence(seed in 0u64..10_000, m in 1usize..4, h in 1usize..6, x in proptest::collection::vec(-5.0f64..5.0, 3)) {
        let blocks = (0..2).map(|b| random_network(&[m, h, m], Some(0.8), seed + b).unwrap()).collect();
        let res = ResidualNet::new(blocks).unwrap();
        let flat = flatten_residual(&res);
        let a = res.forward(&x[..m]).unwrap();
        let b = flat.forward(&x[..m]).unwrap();
        for (u, v) in a.iter().zip(&b) {
            prop_assert!((u - v).abs() <= 1e-9);
        }
    }

    #[test]
    fn embed_equivalence(seed in 0u64..10_000, p in -3.0f64..3.0, x in proptest::collection::vec(-3.0f64..3.0, 2)) {
        let net = random_network(&[3, 5, 2], None, seed).unwrap();
        let a = embed_parameter(&net, p).unwrap().forward(&x).unwrap();
        let b = net.forward(&[x[0], x[1], p]).unwrap();
        for (u, v) in a.iter().zip(&b) {
            prop_assert!((u - v).abs() <= 1e-12 * (1.0 + v.abs()));
        }
    }

    /// Piecewise linear and continuous: along a fine segment no step moves
    /// further than the local slope allows.
    #[test]
    fn forward_is_continuous(seed in 0u64..10_000, x0 in -2.0f64..2.0) {
        let net = random_network(&[1, 8, 8, 1], None, seed).unwrap();
        let h = 1e-4;
        let lip: f64 = net.layers().iter().map(|l| {
            (0..l.rows()).map(|i| l.row(i).iter().map(|w| w.abs()).sum::<f64>()).fold(0.0, f64::max)
        }).product();
        let mut prev = net.forward(&[x0]).unwrap()[0];
        for k in 1..200 {
            let v = net.forward(&[x0 + k as f64 * h]).unwrap()[0];
            prop_assert!((v - prev).abs() <= lip * h * (1.0 + 1e-9) + 1e-12);
            prev = v;
        }
    }
}
