use invertcert_core::bounds::{output_bounds, propagate_interval};
use invertcert_core::network::{identity_pair, random_network};
use invertcert_core::{Affine, InputBox, Norm, ReluMlp};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn single_layer_interval() {
    let l0 = Affine::new(1, 2, vec![1.0, -1.0], vec![0.0]).unwrap();
    let l1 = Affine::new(1, 1, vec![1.0], vec![0.0]).unwrap();
    let net = ReluMlp::new(vec![l0, l1]).unwrap();
    let ib = propagate_interval(&net, &InputBox::linf(vec![0.5, 0.5], 0.5).unwrap()).unwrap();
    assert_eq!(ib.hidden[0].lower, vec![-1.0]);
    assert_eq!(ib.hidden[0].upper, vec![1.0]);
}

#[test]
fn zero_radius_is_exact() {
    let net = random_network(&[2, 8, 8, 2], None, 4).unwrap();
    let c = vec![0.4, -1.3];
    let ib = propagate_interval(&net, &InputBox::linf(c.clone(), 0.0).unwrap()).unwrap();
    let t = net.forward_trace(&c).unwrap();
    for (lb, pre) in ib.hidden.iter().zip(&t.pre_activations) {
        assert_eq!(&lb.lower, pre);
        assert_eq!(&lb.upper, pre);
    }
    assert_eq!(ib.output.lower, t.output);
    assert_eq!(ib.output.upper, t.output);
}

#[test]
fn identity_output_width() {
    let net = identity_pair(3);
    let ob = output_bounds(&net, &InputBox::linf(vec![1.0, -2.0, 0.0], 0.75).unwrap()).unwrap();
    for (l, u) in ob.lower.iter().zip(&ob.upper) {
        assert!(u - l <= 1.5 + 1e-12);
    }
}

#[test]
fn dimension_mismatch() {
    let net = identity_pair(2);
    assert!(propagate_interval(&net, &InputBox::linf(vec![0.0], 1.0).unwrap()).is_err());
}

fn sample_ball(rng: &mut ChaCha8Rng, b: &InputBox) -> Vec<f64> {
    let r = b.radius;
    match b.norm {
        Norm::LInf => b.center.iter().map(|c| c + rng.random_range(-r..=r)).collect(),
        Norm::L1 => {
            // shrink a cube sample into the cross-polytope
            let v: Vec<f64> = b.center.iter().map(|_| rng.random_range(-1.0..=1.0)).collect();
            let s: f64 = v.iter().map(|x: &f64| x.abs()).sum::<f64>().max(1.0);
            b.center.iter().zip(&v).map(|(c, x)| c + r * x / s).collect()
        }
    }
}

#[test]
fn monte_carlo_soundness() {
    let net = random_network(&[2, 8, 8, 2], None, 12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for norm in [Norm::LInf, Norm::L1] {
        let b = InputBox::new(vec![0.2, -0.4], 0.3, norm).unwrap();
        let ib = propagate_interval(&net, &b).unwrap();
        let mut violations = 0;
        for _ in 0..100_000 {
            let x = sample_ball(&mut rng, &b);
            let t = net.forward_trace(&x).unwrap();
            for (lb, pre) in ib.hidden.iter().zip(&t.pre_activations) {
                violations += usize::from(!lb.contains(pre));
            }
            violations += usize::from(!ib.output.contains(&t.output));
        }
        assert_eq!(violations, 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bounds_nest_in_radius(seed in 0u64..10_000, r1 in 0.0f64..2.0, dr in 0.0f64..2.0, cx in -1.0f64..1.0) {
        let net = random_network(&[2, 5, 4, 2], None, seed).unwrap();
        let a = propagate_interval(&net, &InputBox::linf(vec![cx, 0.5], r1).unwrap()).unwrap();
        let b = propagate_interval(&net, &InputBox::linf(vec![cx, 0.5], r1 + dr).unwrap()).unwrap();
        for (la, lb) in a.hidden.iter().chain([&a.output]).zip(b.hidden.iter().chain([&b.output])) {
            for i in 0..la.len() {
                prop_assert!(lb.lower[i] <= la.lower[i] + 1e-12);
                prop_assert!(la.upper[i] <= lb.upper[i] + 1e-12);
                prop_assert!(la.lower[i] <= la.upper[i]);
            }
        }
    }

    #[test]
    fn sampled_points_inside(seed in 0u64..10_000, r in 0.0f64..3.0, x in proptest::collection::vec(-1.0f64..1.0, 3)) {
        let net = random_network(&[3, 6, 3], None, seed).unwrap();
        let b = InputBox::linf(vec![0.0; 3], r).unwrap();
        let p: Vec<f64> = x.iter().map(|v| v * r).collect();
        let ib = propagate_interval(&net, &b).unwrap();
        let t = net.forward_trace(&p).unwrap();
        prop_assert!(ib.hidden[0].contains(&t.pre_activations[0]));
        prop_assert!(ib.output.contains(&t.output));
    }
}
