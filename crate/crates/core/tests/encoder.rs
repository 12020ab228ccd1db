use invertcert_core::bounds::propagate_interval;
use invertcert_core::encoder::{encode_problem1, encode_problem2, encode_problem3, encode_relu_layer, Handle};
use invertcert_core::milp::{milp_solve, Sense};
use invertcert_core::network::{compose_output, random_network};
use invertcert_core::oracle::{grid_collision_search, grid_mappability_search, scan_pseudo_gap};
use invertcert_core::{Affine, EncodeOptions, EncodedProblem, InputBox, MilpModel, MilpStatus, Norm, SolveOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn optimum(p: &EncodedProblem) -> (f64, Vec<f64>) {
    let s = milp_solve(&p.model, &SolveOptions::default());
    assert_eq!(s.status, MilpStatus::Optimal);
    (s.objective, s.assignment)
}

#[test]
fn relu_layer_admits_every_true_triple() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let net = random_network(&[3, 6, 1], None, 21).unwrap();
    let b = InputBox::linf(vec![0.1, -0.2, 0.3], 1.5).unwrap();
    let ib = propagate_interval(&net, &b).unwrap();
    let layer = &net.layers()[0];
    let mut m = MilpModel::new(Sense::Maximize);
    let xs: Vec<usize> = (0..3).map(|j| m.add_continuous(format!("x{j}"), b.center[j] - 1.5, b.center[j] + 1.5)).collect();
    let ys: Vec<usize> = (0..6)
        .map(|i| m.add_continuous(format!("y{i}"), 0.0, ib.hidden[0].upper[i].max(0.0)))
        .collect();
    let bins = encode_relu_layer(&mut m, &xs, &ys, layer, &ib.hidden[0].lower, &ib.hidden[0].upper).unwrap();
    for _ in 0..1000 {
        let x: Vec<f64> = b.center.iter().map(|c| c + rng.random_range(-1.5..=1.5)).collect();
        let pre = layer.apply(&x);
        let mut assign = vec![0.0; m.num_vars()];
        for (j, &v) in xs.iter().enumerate() {
            assign[v] = x[j];
        }
        for i in 0..6 {
            assign[ys[i]] = pre[i].max(0.0);
            if let Some(t) = bins[i] {
                assign[t] = if pre[i] > 0.0 { 1.0 } else { 0.0 };
            }
        }
        assert!(m.max_violation(&assign) <= 1e-9);
    }
}

#[test]
fn problem1_matches_grid_oracle() {
    for seed in [1, 2, 3, 4] {
        let net = random_network(&[1, 4, 1], None, seed).unwrap();
        let b = InputBox::linf(vec![0.0], 1.0).unwrap();
        let p = encode_problem1(&net, &b, &EncodeOptions::default()).unwrap();
        let (p_star, assignment) = optimum(&p);
        let grid = grid_collision_search(&net, &b, 2000, 1e-9).unwrap();
        assert!((p_star - grid.gap).abs() <= 2e-3, "seed {seed}: {p_star} vs {}", grid.gap);
        // the witness replays
        let d = p.decode(&assignment);
        let fx = net.forward(&d.x).unwrap()[0];
        let fy = net.forward(&d.y).unwrap()[0];
        assert!((fx - fy).abs() <= 1e-5);
        assert!(b.contains(&d.x, 1e-7) && b.contains(&d.y, 1e-7));
    }
}

#[test]
fn problem2_matches_scan_oracle() {
    for seed in [1, 2, 3, 4] {
        let net = random_network(&[1, 4, 1], None, seed).unwrap();
        for c in [-0.5, 0.0, 0.7] {
            let b = InputBox::linf(vec![c], 1.0).unwrap();
            let (p_star, _) = optimum(&encode_problem2(&net, &b).unwrap());
            let scan = scan_pseudo_gap(&net, &b, 20_000, 1e-9).unwrap();
            assert!((p_star - scan.gap).abs() <= 1e-3, "seed {seed} c {c}: {p_star} vs {}", scan.gap);
        }
    }
}

#[test]
fn problem3_matches_paired_grid() {
    for seed in [5, 6, 7] {
        let a = random_network(&[1, 4, 1], None, seed).unwrap();
        let bnet = random_network(&[1, 3, 1], None, seed + 100).unwrap();
        let b = InputBox::linf(vec![0.2], 1.0).unwrap();
        let (p_star, _) = optimum(&encode_problem3(&a, &bnet, &b).unwrap());
        let grid = grid_mappability_search(&a, &bnet, &b, 1000, 1e-9).unwrap();
        assert!((p_star - grid.gap).abs() <= 2e-3, "seed {seed}: {p_star} vs {}", grid.gap);
    }
}

#[test]
fn invertible_affine_composition_is_mappable() {
    let a = random_network(&[2, 5, 2], None, 31).unwrap();
    let mix = Affine::new(2, 2, vec![2.0, 1.0, -1.0, 1.5], vec![0.3, -0.7]).unwrap();
    let bnet = compose_output(&mix, &a).unwrap();
    let b = InputBox::linf(vec![0.1, 0.1], 0.8).unwrap();
    let (ab, _) = optimum(&encode_problem3(&a, &bnet, &b).unwrap());
    let (ba, _) = optimum(&encode_problem3(&bnet, &a, &b).unwrap());
    assert!(ab.abs() <= 1e-6 && ba.abs() <= 1e-6, "{ab} {ba}");
    let (same, _) = optimum(&encode_problem3(&a, &a, &b).unwrap());
    assert!(same.abs() <= 1e-6);
}

#[test]
fn swapping_copies_preserves_feasibility_and_value() {
    for seed in [3, 9, 14] {
        let net = random_network(&[2, 5, 2], None, seed).unwrap();
        let b = InputBox::linf(vec![0.0, 0.5], 1.2).unwrap();
        let p = encode_problem1(&net, &b, &EncodeOptions::default()).unwrap();
        let (p_star, a) = optimum(&p);
        let index: std::collections::HashMap<Handle, usize> =
            p.handles.iter().enumerate().map(|(v, h)| (*h, v)).collect();
        let mut swapped = a.clone();
        for (v, h) in p.handles.iter().enumerate() {
            let mirror = match *h {
                Handle::Input { copy, index } => Handle::Input { copy: 1 - copy, index },
                Handle::Hidden { copy, layer, unit } => Handle::Hidden { copy: 1 - copy, layer, unit },
                Handle::Binary { copy, layer, unit } => Handle::Binary { copy: 1 - copy, layer, unit },
                Handle::Indicator { positive, index } => Handle::Indicator { positive: !positive, index },
                other => other,
            };
            swapped[index[&mirror]] = a[v];
        }
        assert!(p.model.max_violation(&swapped) <= 1e-6, "seed {seed}");
        assert!((p.model.objective_value(&swapped) - p_star).abs() <= 1e-9);
    }
}

#[test]
fn optimum_grows_with_radius() {
    for norm in [Norm::LInf, Norm::L1] {
        for seed in [2, 8] {
            let net = random_network(&[2, 4, 2], None, seed).unwrap();
            let mut last = 0.0;
            for r in [0.0, 0.25, 0.5, 1.0, 2.0] {
                let b = InputBox::new(vec![0.3, -0.3], r, norm).unwrap();
                let (v, _) = optimum(&encode_problem1(&net, &b, &EncodeOptions::default()).unwrap());
                assert!(v >= last - 1e-6, "{norm:?} seed {seed} r {r}: {v} < {last}");
                last = v;
                let (w, _) = optimum(&encode_problem2(&net, &b).unwrap());
                assert!(w <= v + 1e-6, "P* never exceeds p*");
            }
        }
    }
}

#[test]
fn shared_binaries_never_exceed_separate() {
    let net = random_network(&[1, 4, 1], None, 2).unwrap();
    let b = InputBox::linf(vec![0.0], 1.0).unwrap();
    let sep = encode_problem1(&net, &b, &EncodeOptions::default()).unwrap();
    let shared = encode_problem1(&net, &b, &EncodeOptions { shared_binaries: true }).unwrap();
    assert!(shared.binary_count() < sep.binary_count());
    let (a, _) = optimum(&sep);
    let (s, _) = optimum(&shared);
    assert!(s <= a + 1e-6);
}
