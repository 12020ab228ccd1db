//! Exact optimum by enumerating activation patterns.
//!
//! Every undetermined unit (per interval bounds) of every network copy is
//! fixed on or off; with a fixed pattern each copy is affine on a polytope
//! and the problem becomes a family of LPs in the raw inputs, one per
//! objective direction. Nothing here touches the MILP encoder.

use alloc::vec;
use alloc::vec::Vec;

use super::textbook::{self, DenseLp, Rel, Status};
use crate::bounds::{propagate_interval, InputBox, Norm};
use crate::network::ReluMlp;
use crate::{Error, Result};

pub const ENUMERATION_CAP: usize = 14;

#[derive(Debug, Clone, Copy)]
pub enum Instance<'a> {
    /// Problem 1: `max ‖x − y‖` s.t. `f(x) = f(y)`.
    Invertibility(&'a ReluMlp),
    /// Problem 2: `max ‖x − c‖` s.t. `f(x) = f(c)`.
    PseudoInvertibility(&'a ReluMlp),
    /// Problem 3: `max ‖B(x) − B(y)‖` s.t. `A(x) = A(y)`.
    Mappability(&'a ReluMlp, &'a ReluMlp),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Enumeration {
    pub optimum: f64,
    /// Maximizing pair; `y` is the center for Problem 2.
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub patterns: usize,
    pub feasible: usize,
}

/// An affine function of the LP variables.
#[derive(Clone)]
struct Aff {
    coef: Vec<f64>,
    constant: f64,
}

/// One network evaluated on a block of LP variables under fixed pattern bits.
struct NetCopy<'a> {
    net: &'a ReluMlp,
    offset: usize,
    /// `Some(active)` for stable units, `None` for undetermined ones.
    fixed: Vec<Vec<Option<bool>>>,
}

impl NetCopy<'_> {
    fn free_units(&self) -> usize {
        self.fixed.iter().flatten().filter(|f| f.is_none()).count()
    }

    /// Output as an affine map, plus sign constraints `(pre, active)`.
    fn unroll(&self, nvars: usize, bits: &mut impl Iterator<Item = bool>) -> (Vec<Aff>, Vec<(Aff, bool)>) {
        let n0 = self.net.input_dim();
        let mut cur: Vec<Aff> = (0..n0)
            .map(|j| {
                let mut coef = vec![0.0; nvars];
                coef[self.offset + j] = 1.0;
                Aff { coef, constant: 0.0 }
            })
            .collect();
        let mut signs = Vec::new();
        let layers = self.net.layers();
        for (k, layer) in layers.iter().enumerate() {
            let mut next = Vec::with_capacity(layer.rows());
            for i in 0..layer.rows() {
                let mut a = Aff { coef: vec![0.0; nvars], constant: layer.bias()[i] };
                for (j, w) in layer.row(i).iter().enumerate() {
                    if *w != 0.0 {
                        for (c, s) in a.coef.iter_mut().zip(&cur[j].coef) {
                            *c += w * s;
                        }
                        a.constant += w * cur[j].constant;
                    }
                }
                next.push(a);
            }
            if k + 1 == layers.len() {
                return (next, signs);
            }
            for (i, a) in next.iter_mut().enumerate() {
                let active = match self.fixed[k][i] {
                    Some(s) => s,
                    None => {
                        let s = bits.next().expect("enough pattern bits");
                        signs.push((a.clone(), s));
                        s
                    }
                };
                if !active {
                    a.coef.iter_mut().for_each(|c| *c = 0.0);
                    a.constant = 0.0;
                }
            }
            cur = next;
        }
        unreachable!("networks have at least one layer")
    }
}

fn stability(net: &ReluMlp, input: &InputBox) -> Result<Vec<Vec<Option<bool>>>> {
    let ib = propagate_interval(net, input)?;
    Ok(ib
        .hidden
        .iter()
        .map(|lb| {
            lb.lower
                .iter()
                .zip(&lb.upper)
                .map(|(&l, &u)| {
                    if u <= 0.0 {
                        Some(false)
                    } else if l >= 0.0 {
                        Some(true)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect())
}

pub fn pattern_enumeration_optimum(inst: Instance<'_>, input: &InputBox) -> Result<Enumeration> {
    let n0 = input.dim();
    let c = &input.center;
    let r = input.radius;
    let (nets, blocks): (Vec<&ReluMlp>, usize) = match inst {
        Instance::Invertibility(f) => (vec![f, f], 2),
        Instance::PseudoInvertibility(f) => (vec![f], 1),
        Instance::Mappability(a, b) => (vec![a, a, b, b], 2),
    };
    for net in &nets {
        if net.input_dim() != n0 {
            return Err(Error::DimensionMismatch { expected: net.input_dim(), got: n0 });
        }
    }
    let l1 = input.norm == Norm::L1;
    // x block, optional y block, optional L1 deviations per block
    let nx = blocks * n0;
    let nvars = if l1 { 2 * nx } else { nx };
    let mut copies = Vec::new();
    for (i, net) in nets.iter().enumerate() {
        copies.push(NetCopy { net, offset: (i % blocks) * n0, fixed: stability(net, input)? });
    }
    let units: usize = copies.iter().map(NetCopy::free_units).sum();
    if units > ENUMERATION_CAP {
        return Err(Error::EnumerationCap { units, cap: ENUMERATION_CAP });
    }

    let mut base = DenseLp::new(nvars);
    for v in 0..nx {
        base.lower[v] = c[v % n0] - r;
        base.upper[v] = c[v % n0] + r;
    }
    if l1 {
        for b in 0..blocks {
            let mut sum = vec![0.0; nvars];
            for j in 0..n0 {
                let (x, d) = (b * n0 + j, nx + b * n0 + j);
                let mut up = vec![0.0; nvars];
                up[d] = 1.0;
                up[x] = -1.0;
                base.row(up.clone(), Rel::Ge, -c[j]);
                up[x] = 1.0;
                base.row(up, Rel::Ge, c[j]);
                sum[d] = 1.0;
            }
            base.row(sum, Rel::Le, r);
        }
    }

    let target = match inst {
        Instance::PseudoInvertibility(f) => Some(f.forward(c)?),
        _ => None,
    };

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut feasible = 0;
    let patterns = 1usize << units;
    for mask in 0..patterns {
        let mut bits = (0..units).map(|b| mask >> b & 1 == 1);
        let mut lp = base.clone();
        let outs: Vec<Vec<Aff>> = copies
            .iter()
            .map(|cp| {
                let (out, signs) = cp.unroll(nvars, &mut bits);
                for (a, active) in signs {
                    let rel = if active { Rel::Ge } else { Rel::Le };
                    lp.row(a.coef, rel, -a.constant);
                }
                out
            })
            .collect();
        // equality of the constrained outputs, and the objective vector
        let objective: Vec<Aff> = match inst {
            Instance::Invertibility(_) => {
                equate(&mut lp, &outs[0], &outs[1]);
                (0..n0).map(|j| diff_var(nvars, j, n0 + j)).collect()
            }
            Instance::PseudoInvertibility(_) => {
                let t = target.as_ref().expect("pseudo target");
                for (a, v) in outs[0].iter().zip(t) {
                    lp.row(a.coef.clone(), Rel::Eq, v - a.constant);
                }
                (0..n0)
                    .map(|j| {
                        let mut coef = vec![0.0; nvars];
                        coef[j] = 1.0;
                        Aff { coef, constant: -c[j] }
                    })
                    .collect()
            }
            Instance::Mappability(..) => {
                equate(&mut lp, &outs[0], &outs[1]);
                outs[2]
                    .iter()
                    .zip(&outs[3])
                    .map(|(p, q)| Aff {
                        coef: p.coef.iter().zip(&q.coef).map(|(a, b)| a - b).collect(),
                        constant: p.constant - q.constant,
                    })
                    .collect()
            }
        };
        let mut any = false;
        for dir in directions(objective.len(), l1) {
            let mut coef = vec![0.0; nvars];
            let mut constant = 0.0;
            for (s, a) in dir.iter().zip(&objective) {
                for (c, v) in coef.iter_mut().zip(&a.coef) {
                    *c += s * v;
                }
                constant += s * a.constant;
            }
            lp.c = coef;
            let sol = textbook::solve(&lp);
            match sol.status {
                Status::Infeasible => break,
                Status::Unbounded => return Err(Error::InvalidModel("unbounded pattern LP".into())),
                Status::Optimal => {
                    any = true;
                    let v = sol.objective + constant;
                    if best.as_ref().is_none_or(|(b, _)| v > *b) {
                        best = Some((v, sol.x));
                    }
                }
            }
        }
        feasible += usize::from(any);
    }
    let Some((optimum, sol)) = best else {
        return Err(Error::InvalidModel("no feasible activation pattern".into()));
    };
    let x = sol[..n0].to_vec();
    let y = if blocks == 2 { sol[n0..2 * n0].to_vec() } else { c.clone() };
    Ok(Enumeration { optimum: optimum.max(0.0), x, y, patterns, feasible })
}

fn equate(lp: &mut DenseLp, p: &[Aff], q: &[Aff]) {
    for (a, b) in p.iter().zip(q) {
        let coef = a.coef.iter().zip(&b.coef).map(|(u, v)| u - v).collect();
        lp.row(coef, Rel::Eq, b.constant - a.constant);
    }
}

fn diff_var(nvars: usize, i: usize, j: usize) -> Aff {
    let mut coef = vec![0.0; nvars];
    coef[i] = 1.0;
    coef[j] = -1.0;
    Aff { coef, constant: 0.0 }
}

/// Sign vectors whose maximum over the LP gives the norm: `±e_j` for L∞,
/// all of `{±1}ᵏ` for L1.
fn directions(k: usize, l1: bool) -> Vec<Vec<f64>> {
    if l1 {
        (0..1usize << k)
            .map(|m| (0..k).map(|j| if m >> j & 1 == 1 { -1.0 } else { 1.0 }).collect())
            .collect()
    } else {
        let mut out = Vec::with_capacity(2 * k);
        for j in 0..k {
            for s in [1.0, -1.0] {
                let mut d = vec![0.0; k];
                d[j] = s;
                out.push(d);
            }
        }
        out
    }
}
