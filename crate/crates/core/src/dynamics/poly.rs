//! Polynomial roots.
//!
//! Cubics and higher go through the eigenvalues of the companion matrix
//! (balanced, then shifted QR on the Hessenberg form) followed by one Newton
//! step on the original polynomial. Quadratics use the cancellation-free
//! `q = −(b + sign(b)√Δ)/2` form.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

/// A root is treated as real when `|Im| ≤ REAL_TOL·(1 + |Re|)`.
pub const REAL_TOL: f64 = 1e-9;

pub fn is_real(z: Complex64) -> bool {
    z.im.abs() <= REAL_TOL * (1.0 + z.re.abs())
}

/// Roots of `coeffs[0] xⁿ + … + coeffs[n]`. Leading zeros lower the degree;
/// the zero polynomial and nonzero constants have no roots.
pub fn poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let start = coeffs.iter().position(|c| *c != 0.0);
    let Some(start) = start else {
        return Vec::new();
    };
    let c = &coeffs[start..];
    match c.len() {
        0 | 1 => Vec::new(),
        2 => vec![Complex64::new(-c[1] / c[0], 0.0)],
        3 => quadratic(c[0], c[1], c[2]),
        _ => {
            let mut roots = companion_roots(c);
            for z in roots.iter_mut() {
                *z = newton_polish(c, *z);
            }
            roots
        }
    }
}

/// Real roots in ascending order, repeated roots kept.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let mut r: Vec<f64> = poly_roots(coeffs)
        .into_iter()
        .filter(|z| is_real(*z))
        .map(|z| z.re)
        .collect();
    r.sort_by(f64::total_cmp);
    r
}

/// Both roots of `a x² + b x + c` (`a ≠ 0`). A zero discriminant gives the
/// double root twice.
pub fn quadratic(a: f64, b: f64, c: f64) -> Vec<Complex64> {
    let disc = b * b - 4.0 * a * c;
    if disc >= 0.0 {
        let s = libm::sqrt(disc);
        let q = -0.5 * (b + if b >= 0.0 { s } else { -s });
        if q == 0.0 {
            // b = 0 and c = 0
            return vec![Complex64::new(0.0, 0.0); 2];
        }
        let (r1, r2) = (q / a, c / q);
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        vec![Complex64::new(lo, 0.0), Complex64::new(hi, 0.0)]
    } else {
        let re = -b / (2.0 * a);
        let im = libm::sqrt(-disc) / (2.0 * a).abs();
        vec![Complex64::new(re, -im), Complex64::new(re, im)]
    }
}

fn eval(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn newton_polish(c: &[f64], z: Complex64) -> Complex64 {
    let (p, dp) = eval(c, z);
    if dp.norm() == 0.0 {
        return z;
    }
    let mut next = z - p / dp;
    if is_real(z) {
        next.im = 0.0;
    }
    if eval(c, next).0.norm() <= p.norm() {
        next
    } else {
        z
    }
}

/// Eigenvalues of the companion matrix of `c` (degree ≥ 1, `c[0] ≠ 0`).
fn companion_roots(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    // 1-based storage keeps the QR sweep close to its usual statement
    let w = n + 1;
    let mut a = vec![0.0; w * w];
    for j in 1..=n {
        a[w + j] = -c[j] / c[0];
    }
    for i in 2..=n {
        a[i * w + i - 1] = 1.0;
    }
    balance(&mut a, n);
    hqr(&mut a, n)
}

fn balance(a: &mut [f64], n: usize) {
    const RADIX: f64 = 2.0;
    let w = n + 1;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 1..=n {
            let (mut r, mut c) = (0.0, 0.0);
            for j in 1..=n {
                if j != i {
                    c += a[j * w + i].abs();
                    r += a[i * w + j].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 1..=n {
                    a[i * w + j] *= g;
                }
                for j in 1..=n {
                    a[j * w + i] *= f;
                }
            }
        }
    }
}

/// Eigenvalues of an upper Hessenberg matrix (1-based, row stride `n + 1`).
fn hqr(a: &mut [f64], n: usize) -> Vec<Complex64> {
    let w = n + 1;
    let at = |i: usize, j: usize| i * w + j;
    let sign = |a: f64, b: f64| if b >= 0.0 { a.abs() } else { -a.abs() };
    let mut wr = vec![0.0; w];
    let mut wi = vec![0.0; w];
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += a[at(i, j)].abs();
        }
    }
    let mut nn = n as isize;
    let mut t = 0.0;
    let (mut p, mut q, mut r);
    let (mut x, mut y, mut z, mut s);
    let mut wv;
    while nn >= 1 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            let mut l = nu;
            while l >= 2 {
                s = a[at(l - 1, l - 1)].abs() + a[at(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[at(l, l - 1)].abs() + s == s {
                    a[at(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            x = a[at(nu, nu)];
            if l == nu {
                wr[nu] = x + t;
                wi[nu] = 0.0;
                nn -= 1;
            } else {
                y = a[at(nu - 1, nu - 1)];
                wv = a[at(nu, nu - 1)] * a[at(nu - 1, nu)];
                if l == nu - 1 {
                    p = 0.5 * (y - x);
                    q = p * p + wv;
                    z = libm::sqrt(q.abs());
                    x += t;
                    if q >= 0.0 {
                        z = p + sign(z, p);
                        wr[nu - 1] = x + z;
                        wr[nu] = x + z;
                        if z != 0.0 {
                            wr[nu] = x - wv / z;
                        }
                        wi[nu - 1] = 0.0;
                        wi[nu] = 0.0;
                    } else {
                        wr[nu - 1] = x + p;
                        wr[nu] = x + p;
                        wi[nu - 1] = -z;
                        wi[nu] = z;
                    }
                    nn -= 2;
                } else {
                    if its == 60 {
                        // give up on this block; report the diagonal
                        for i in l..=nu {
                            wr[i] = a[at(i, i)] + t;
                            wi[i] = 0.0;
                        }
                        nn = l as isize - 1;
                        break;
                    }
                    if its == 10 || its == 20 {
                        t += x;
                        for i in 1..=nu {
                            a[at(i, i)] -= x;
                        }
                        s = a[at(nu, nu - 1)].abs() + a[at(nu - 1, nu - 2)].abs();
                        x = 0.75 * s;
                        y = x;
                        wv = -0.4375 * s * s;
                    }
                    its += 1;
                    let mut m = nu - 2;
                    loop {
                        z = a[at(m, m)];
                        r = x - z;
                        s = y - z;
                        p = (r * s - wv) / a[at(m + 1, m)] + a[at(m, m + 1)];
                        q = a[at(m + 1, m + 1)] - z - r - s;
                        r = a[at(m + 2, m + 1)];
                        s = p.abs() + q.abs() + r.abs();
                        p /= s;
                        q /= s;
                        r /= s;
                        if m == l {
                            break;
                        }
                        let u = a[at(m, m - 1)].abs() * (q.abs() + r.abs());
                        let v = p.abs() * (a[at(m - 1, m - 1)].abs() + z.abs() + a[at(m + 1, m + 1)].abs());
                        if u + v == v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in m + 2..=nu {
                        a[at(i, i - 2)] = 0.0;
                        if i != m + 2 {
                            a[at(i, i - 3)] = 0.0;
                        }
                    }
                    let mut k = m;
                    while k < nu {
                        if k != m {
                            p = a[at(k, k - 1)];
                            q = a[at(k + 1, k - 1)];
                            r = 0.0;
                            if k != nu - 1 {
                                r = a[at(k + 2, k - 1)];
                            }
                            x = p.abs() + q.abs() + r.abs();
                            if x != 0.0 {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        s = sign(libm::sqrt(p * p + q * q + r * r), p);
                        if s != 0.0 {
                            if k == m {
                                if l != m {
                                    a[at(k, k - 1)] = -a[at(k, k - 1)];
                                }
                            } else {
                                a[at(k, k - 1)] = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for j in k..=nu {
                                p = a[at(k, j)] + q * a[at(k + 1, j)];
                                if k != nu - 1 {
                                    p += r * a[at(k + 2, j)];
                                    a[at(k + 2, j)] -= p * z;
                                }
                                a[at(k + 1, j)] -= p * y;
                                a[at(k, j)] -= p * x;
                            }
                            let mmin = if nu < k + 3 { nu } else { k + 3 };
                            for i in l..=mmin {
                                p = x * a[at(i, k)] + y * a[at(i, k + 1)];
                                if k != nu - 1 {
                                    p += z * a[at(i, k + 2)];
                                    a[at(i, k + 2)] -= p * r;
                                }
                                a[at(i, k + 1)] -= p * q;
                                a[at(i, k)] -= p;
                            }
                        }
                        k += 1;
                    }
                }
            }
            if nn < 1 || l + 1 >= nn as usize {
                break;
            }
        }
    }
    (1..=n).map(|i| Complex64::new(wr[i], wi[i])).collect()
}
