use invertcert_core::encoder::{encode_problem1, encode_problem2, encode_problem3};
use invertcert_core::milp::milp_solve;
use invertcert_core::network::{identity_pair, random_network};
use invertcert_core::oracle::{fd_jacobian, grid_collision_search, pattern_enumeration_optimum, Instance};
use invertcert_core::{EncodeOptions, EncodedProblem, InputBox, MilpStatus, Norm, SolveOptions};

fn milp(p: &EncodedProblem) -> f64 {
    let s = milp_solve(&p.model, &SolveOptions::default());
    assert_eq!(s.status, MilpStatus::Optimal);
    s.objective
}

#[test]
fn identity_enumerates_to_zero() {
    let net = identity_pair(2);
    let b = InputBox::linf(vec![0.0, 0.0], 1.0).unwrap();
    assert_eq!(pattern_enumeration_optimum(Instance::Invertibility(&net), &b).unwrap().optimum, 0.0);
}

#[test]
fn enumeration_matches_branch_and_bound() {
    for seed in 0..4 {
        let net = random_network(&[1, 4, 1], None, seed).unwrap();
        for norm in [Norm::LInf, Norm::L1] {
            let b = InputBox::new(vec![0.2], 1.0, norm).unwrap();
            let e = pattern_enumeration_optimum(Instance::Invertibility(&net), &b).unwrap();
            let m = milp(&encode_problem1(&net, &b, &EncodeOptions::default()).unwrap());
            assert!((e.optimum - m).abs() <= 1e-6, "P1 seed {seed}: {} vs {m}", e.optimum);
            let e = pattern_enumeration_optimum(Instance::PseudoInvertibility(&net), &b).unwrap();
            let m = milp(&encode_problem2(&net, &b).unwrap());
            assert!((e.optimum - m).abs() <= 1e-6, "P2 seed {seed}: {} vs {m}", e.optimum);
        }
    }
    for seed in 0..3 {
        let a = random_network(&[2, 6, 2], None, 50 + seed).unwrap();
        let bn = random_network(&[2, 6, 2], None, 60 + seed).unwrap();
        let b = InputBox::linf(vec![0.0, 0.1], 0.15).unwrap();
        let e = match pattern_enumeration_optimum(Instance::Mappability(&a, &bn), &b) {
            Ok(e) => e,
            Err(err) => panic!("seed {seed}: {err}"),
        };
        let m = milp(&encode_problem3(&a, &bn, &b).unwrap());
        assert!((e.optimum - m).abs() <= 1e-6, "P3 seed {seed}: {} vs {m}", e.optimum);
    }
}

#[test]
fn grid_tracks_enumeration() {
    for seed in 0..4 {
        let net = random_network(&[1, 4, 1], None, seed).unwrap();
        let b = InputBox::linf(vec![0.0], 1.0).unwrap();
        let e = pattern_enumeration_optimum(Instance::Invertibility(&net), &b).unwrap();
        let g = grid_collision_search(&net, &b, 2000, 1e-9).unwrap();
        assert!((e.optimum - g.gap).abs() <= 2.0 * 2.0 / 2000.0, "seed {seed}: {} vs {}", e.optimum, g.gap);
    }
}

#[test]
fn finer_grids_do_not_lose_collisions() {
    for seed in 0..6 {
        let net = random_network(&[1, 6, 1], None, seed).unwrap();
        let b = InputBox::linf(vec![0.0], 2.0).unwrap();
        let mut last = 0.0;
        let mut pitch = f64::INFINITY;
        for res in [100, 200, 400, 800, 1600] {
            let g = grid_collision_search(&net, &b, res, 1e-9).unwrap();
            // one coarse pitch of slack: the crossing inside a straddling segment may move
            assert!(g.gap >= last - pitch, "seed {seed} res {res}: {} < {last}", g.gap);
            last = g.gap;
            pitch = 4.0 / res as f64;
        }
    }
}

#[test]
fn finite_differences_match_pattern_jacobian() {
    let net = random_network(&[2, 8, 8, 2], None, 23).unwrap();
    let h = 1e-5;
    let mut checked = 0;
    for k in 0..40 {
        let x = [-1.0 + 0.05 * k as f64, 0.7 - 0.03 * k as f64];
        let t = net.forward_trace(&x).unwrap();
        let margin = t.pre_activations.iter().flatten().fold(f64::INFINITY, |m, p| m.min(p.abs()));
        // each pre-activation moves at most (row norm) · h
        if margin < 1e3 * h {
            continue;
        }
        let fd = fd_jacobian(&|p| net.forward(p).unwrap(), &x, h);
        let an = net.jacobian(&x).unwrap();
        for (a, b) in fd.iter().zip(&an) {
            assert!((a - b).abs() <= 1e-6);
        }
        checked += 1;
    }
    assert!(checked > 10);
}
