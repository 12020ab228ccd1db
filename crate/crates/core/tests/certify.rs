use invertcert_core::certify::{largest_invertible_radius, largest_pseudo_radius, mappability_radii};
use invertcert_core::network::{compose_output, identity_pair, random_network, single_relu};
use invertcert_core::oracle::{scan_invertible_radius, scan_pseudo_radius};
use invertcert_core::{Affine, CertifyOptions, Certifier, InputBox};

fn opts(r_max: f64) -> CertifyOptions {
    CertifyOptions { r_max, ..CertifyOptions::default() }
}

#[test]
fn single_relu_boundaries() {
    let net = single_relu();
    let o = opts(5.0);
    let c = largest_invertible_radius(&net, &[1.0], &o).unwrap();
    assert!((c.radius - 1.0).abs() <= o.eps_r + 1e-6, "{}", c.radius);
    assert!(!c.at_cap);
    let w = c.witness.as_ref().unwrap();
    assert!(w.gap > o.eps_inv);
    assert!((w.x[0].max(0.0) - w.y[0].max(0.0)).abs() <= 1e-5);
    // 1 is the only preimage of 1
    assert!(largest_pseudo_radius(&net, &[1.0], &o).unwrap().at_cap);
    // on the flat branch every neighbour shares the image
    let flat = largest_pseudo_radius(&net, &[-0.5], &o).unwrap();
    assert!(flat.radius <= o.eps_r);
}

#[test]
fn identity_is_at_cap() {
    let c = largest_invertible_radius(&identity_pair(2), &[0.3, -0.1], &opts(1e6)).unwrap();
    assert!(c.at_cap && c.radius == 1e6 && c.witness.is_none());
    assert_eq!(c.probes.len(), 1);
}

#[test]
fn radii_match_scan_and_stay_ordered() {
    let o = opts(10.0);
    let cert = Certifier::new(o.clone());
    for seed in [0, 1] {
        let net = random_network(&[1, 10, 10, 1], None, seed).unwrap();
        for c in [-1.0, 0.0, 1.0] {
            let (small, big) = cert.invertibility_pair(&net, &[c]).unwrap();
            let scan = scan_invertible_radius(&net, c, o.r_max, 100_000).unwrap();
            let tol = o.eps_r.max(1e-3) + 1e-9;
            assert_eq!(small.at_cap, scan.at_cap);
            assert!((small.radius - scan.radius).abs() <= tol, "seed {seed} c {c}: {} vs {}", small.radius, scan.radius);
            let pscan = scan_pseudo_radius(&net, c, o.r_max, 100_000).unwrap();
            assert!((big.radius - pscan.radius).abs() <= tol, "seed {seed} c {c}: R {} vs {}", big.radius, pscan.radius);
            assert!(small.radius <= big.radius);
            for w in small.probes.windows(2) {
                assert_ne!(w[0].r, w[1].r);
            }
        }
    }
}

#[test]
fn probe_logs_are_monotone() {
    let net = random_network(&[2, 6, 2], None, 12).unwrap();
    let c = largest_invertible_radius(&net, &[0.1, 0.2], &opts(4.0)).unwrap();
    let mut probes = c.probes.clone();
    probes.sort_by(|a, b| a.r.total_cmp(&b.r));
    for w in probes.windows(2) {
        assert!(w[0].p_star <= w[1].p_star + 1e-5);
        assert!(!w[0].collision || w[1].collision);
    }
    assert_eq!(c.witness.is_some(), c.probes.iter().any(|p| p.collision));
    if let Some(w) = &c.witness {
        let b = InputBox::linf(c.center.clone(), c.probes.iter().find(|p| p.collision).unwrap().r).unwrap();
        assert!(b.contains(&w.x, 1e-6) && b.contains(&w.y, 1e-6));
        let fx = net.forward(&w.x).unwrap();
        let fy = net.forward(&w.y).unwrap();
        assert!(fx.iter().zip(&fy).all(|(a, b)| (a - b).abs() <= 1e-5));
    }
}

#[test]
fn mappability_with_invertible_partner() {
    let a = random_network(&[2, 4, 2], None, 40).unwrap();
    let mix = Affine::new(2, 2, vec![1.0, 2.0, 0.0, -1.0], vec![0.5, 0.0]).unwrap();
    let b = compose_output(&mix, &a).unwrap();
    let (ab, ba) = mappability_radii(&a, &b, &[0.0, 0.0], &opts(3.0)).unwrap();
    assert!(ab.at_cap && ba.at_cap);

    // B invertible everywhere: A is always a function of B
    let inv = compose_output(&mix, &identity_pair(2)).unwrap();
    let (a_of_b, _) = mappability_radii(&inv, &a, &[0.0, 0.0], &opts(3.0)).unwrap();
    assert!(a_of_b.at_cap);
}

#[test]
fn early_stop_keeps_decisions() {
    let net = random_network(&[1, 10, 10, 1], None, 1).unwrap();
    for c in [-1.0, 0.0, 1.0] {
        let full = largest_invertible_radius(&net, &[c], &opts(10.0)).unwrap();
        let quick = largest_invertible_radius(&net, &[c], &CertifyOptions { early_stop: true, ..opts(10.0) }).unwrap();
        assert_eq!(full.radius, quick.radius);
        assert_eq!(full.probes.len(), quick.probes.len());
        for (a, b) in full.probes.iter().zip(&quick.probes) {
            assert_eq!(a.collision, b.collision);
            // lower bound from the first incumbent past eps_inv
            assert!(b.p_star <= a.p_star + 1e-6);
        }
        if let Some(w) = &quick.witness {
            let (fx, fy) = (net.forward(&w.x).unwrap(), net.forward(&w.y).unwrap());
            assert!((fx[0] - fy[0]).abs() <= 1e-5);
        }
    }
}
