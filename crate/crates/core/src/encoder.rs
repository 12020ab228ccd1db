//! MILP encodings of the three collision problems.
//!
//! Each network copy is unrolled layer by layer. A hidden unit whose
//! pre-activation interval is `[l, u]` becomes
//!
//! ```text
//! y ≥ 0,  y ≥ pre,  y ≤ pre − l(1 − t),  y ≤ u t,   t ∈ {0, 1}
//! ```
//!
//! unless the interval already decides it: `u ≤ 0` pins the unit to zero and
//! `l ≥ 0` passes the affine expression through unchanged, so neither needs a
//! variable or a binary. Expressions are kept as [`LinExpr`] so stable units
//! simply fold into the next layer.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bounds::{output_bounds, propagate_interval, InputBox, IntervalBounds, Norm};
use crate::milp::{MilpModel, Relation, Sense};
use crate::network::{relu, Affine, ReluMlp};
use crate::{Error, Result};

/// Affine expression `Σ a_j v_j + constant` over model variables.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinExpr {
    pub terms: Vec<(usize, f64)>,
    pub constant: f64,
}

impl LinExpr {
    pub fn constant(c: f64) -> Self {
        Self {
            terms: Vec::new(),
            constant: c,
        }
    }

    pub fn var(j: usize) -> Self {
        Self {
            terms: vec![(j, 1.0)],
            constant: 0.0,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|&(j, a)| a * x[j]).sum::<f64>() + self.constant
    }

    /// `self + s · other`, merging repeated variables.
    pub fn add_scaled(&mut self, s: f64, other: &LinExpr) {
        if s == 0.0 {
            return;
        }
        for &(j, a) in &other.terms {
            match self.terms.iter_mut().find(|(k, _)| *k == j) {
                Some((_, b)) => *b += s * a,
                None => self.terms.push((j, s * a)),
            }
        }
        self.constant += s * other.constant;
    }

    fn negated(&self) -> LinExpr {
        LinExpr {
            terms: self.terms.iter().map(|&(j, a)| (j, -a)).collect(),
            constant: -self.constant,
        }
    }

    fn minus(&self, other: &LinExpr) -> LinExpr {
        let mut e = self.clone();
        e.add_scaled(-1.0, other);
        e
    }
}

/// What a model variable stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Handle {
    /// Input coordinate of a network copy.
    Input { copy: usize, index: usize },
    /// Post-activation of an undetermined hidden unit.
    Hidden { copy: usize, layer: usize, unit: usize },
    /// Activation indicator of an undetermined hidden unit.
    Binary { copy: usize, layer: usize, unit: usize },
    /// Norm-objective indicator; `positive` selects `F` over `F′`.
    Indicator { positive: bool, index: usize },
    /// Objective value `w` (L∞) or one coordinate term `e_j` (L1).
    Objective { index: usize },
    /// L1-ball deviation `d_j ≥ |x_j − c_j|` for the given copy.
    Deviation { copy: usize, index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Invertibility,
    PseudoInvertibility,
    Mappability,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EncodeOptions {
    /// Reuse the x-copy binaries in the y-copy. Only meaningful for
    /// comparison; it forces both copies to share one activation pattern.
    pub shared_binaries: bool,
}

#[derive(Debug, Clone)]
pub struct EncodedProblem {
    pub kind: ProblemKind,
    pub model: MilpModel,
    /// One entry per model variable.
    pub handles: Vec<Handle>,
    pub input_box: InputBox,
    /// First input copy.
    pub x: Vec<usize>,
    /// Second input copy; empty for the pseudo-invertibility problem.
    pub y: Vec<usize>,
    /// Interval bounds of the (first) network over the box.
    pub bounds: IntervalBounds,
}

/// Decoded input pair of an assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub objective: f64,
}

impl EncodedProblem {
    pub fn binary_count(&self) -> usize {
        self.model.binary_count()
    }

    pub fn decode(&self, assignment: &[f64]) -> Decoded {
        let x = self.x.iter().map(|&j| assignment[j]).collect();
        let y = if self.y.is_empty() {
            self.input_box.center.clone()
        } else {
            self.y.iter().map(|&j| assignment[j]).collect()
        };
        Decoded {
            x,
            y,
            objective: self.model.objective_value(assignment),
        }
    }
}

/// Outputs and binaries of one unrolled network copy.
#[derive(Debug, Clone)]
pub struct CopyEncoding {
    /// Hidden post-activations per layer.
    pub hidden: Vec<Vec<LinExpr>>,
    /// `W⁽ℓ⁾ x⁽ℓ⁾` without the final bias.
    pub linear_output: Vec<LinExpr>,
    /// Binaries per layer; `None` for bound-fixed units.
    pub binaries: Vec<Vec<Option<usize>>>,
}

struct Builder {
    model: MilpModel,
    handles: Vec<Handle>,
}

impl Builder {
    fn new() -> Self {
        Self {
            model: MilpModel::new(Sense::Maximize),
            handles: Vec::new(),
        }
    }

    fn continuous(&mut self, name: String, lo: f64, hi: f64, h: Handle) -> usize {
        self.handles.push(h);
        self.model.add_continuous(name, lo, hi)
    }

    fn binary(&mut self, name: String, h: Handle) -> usize {
        self.handles.push(h);
        self.model.add_binary(name)
    }

    /// Adds `expr (rel) 0`.
    fn expr_row(&mut self, name: String, expr: &LinExpr, rel: Relation) {
        self.model
            .add_constraint(name, expr.terms.clone(), rel, -expr.constant);
    }
}

/// Unrolls `layer` followed by a ReLU over `inputs`.
///
/// Returns the post-activation expressions and the binary of every
/// undetermined unit. `names` gives the prefixes for the output and binary
/// variables. With `shared` the binaries are taken from it instead of
/// allocated.
fn relu_layer(
    b: &mut Builder,
    inputs: &[LinExpr],
    layer: &Affine,
    lower: &[f64],
    upper: &[f64],
    (copy, k): (usize, usize),
    names: (&str, &str),
    shared: Option<&[Option<usize>]>,
) -> Result<(Vec<LinExpr>, Vec<Option<usize>>)> {
    let mut outs = Vec::with_capacity(layer.rows());
    let mut bins = Vec::with_capacity(layer.rows());
    for j in 0..layer.rows() {
        let (l, u) = (lower[j], upper[j]);
        if !(l <= u) {
            return Err(Error::UnsoundBounds {
                unit: j,
                lower: l,
                upper: u,
            });
        }
        let mut pre = LinExpr::constant(layer.bias()[j]);
        for (w, e) in layer.row(j).iter().zip(inputs) {
            pre.add_scaled(*w, e);
        }
        if u <= 0.0 {
            outs.push(LinExpr::constant(0.0));
            bins.push(None);
            continue;
        }
        if l >= 0.0 {
            outs.push(pre);
            bins.push(None);
            continue;
        }
        let y = b.continuous(
            format!("{}{}_{}", names.0, k + 1, j),
            0.0,
            u,
            Handle::Hidden {
                copy,
                layer: k,
                unit: j,
            },
        );
        let t = match shared.and_then(|s| s[j]) {
            Some(t) => t,
            None => b.binary(
                format!("{}{}_{}", names.1, k + 1, j),
                Handle::Binary {
                    copy,
                    layer: k,
                    unit: j,
                },
            ),
        };
        let ye = LinExpr::var(y);
        // y ≥ pre
        b.expr_row(format!("{}{}_{}_lo", names.0, k + 1, j), &ye.minus(&pre), Relation::Ge);
        // y ≤ pre − l(1 − t)
        let mut e = ye.minus(&pre);
        e.add_scaled(-l, &LinExpr::var(t));
        e.constant += l;
        b.expr_row(format!("{}{}_{}_act", names.0, k + 1, j), &e, Relation::Le);
        // y ≤ u t
        b.model.add_constraint(
            format!("{}{}_{}_off", names.0, k + 1, j),
            vec![(y, 1.0), (t, -u)],
            Relation::Le,
            0.0,
        );
        outs.push(ye);
        bins.push(Some(t));
    }
    Ok((outs, bins))
}

/// Adds the constraints of one ReLU layer for undetermined units to `model`.
///
/// `inputs` are the layer inputs as variable indices; `outputs` receives one
/// variable per unit (used as-is for undetermined units, fixed by equality
/// rows otherwise). Returns the binary of each unit, `None` where the bounds
/// fix the unit.
pub fn encode_relu_layer(
    model: &mut MilpModel,
    inputs: &[usize],
    outputs: &[usize],
    layer: &Affine,
    lower: &[f64],
    upper: &[f64],
) -> Result<Vec<Option<usize>>> {
    if inputs.len() != layer.cols() {
        return Err(Error::DimensionMismatch {
            expected: layer.cols(),
            got: inputs.len(),
        });
    }
    for len in [outputs.len(), lower.len(), upper.len()] {
        if len != layer.rows() {
            return Err(Error::DimensionMismatch {
                expected: layer.rows(),
                got: len,
            });
        }
    }
    let mut bins = Vec::with_capacity(layer.rows());
    for j in 0..layer.rows() {
        let (l, u) = (lower[j], upper[j]);
        if !(l <= u) {
            return Err(Error::UnsoundBounds {
                unit: j,
                lower: l,
                upper: u,
            });
        }
        let y = outputs[j];
        let mut pre: Vec<(usize, f64)> = inputs.iter().zip(layer.row(j)).map(|(&i, &w)| (i, -w)).collect();
        let bias = layer.bias()[j];
        if u <= 0.0 {
            model.add_constraint(format!("h{j}_off"), vec![(y, 1.0)], Relation::Eq, 0.0);
            bins.push(None);
            continue;
        }
        pre.insert(0, (y, 1.0));
        if l >= 0.0 {
            model.add_constraint(format!("h{j}_on"), pre, Relation::Eq, bias);
            bins.push(None);
            continue;
        }
        let t = model.add_binary(format!("t{j}"));
        model.add_constraint(format!("h{j}_nonneg"), vec![(y, 1.0)], Relation::Ge, 0.0);
        model.add_constraint(format!("h{j}_lo"), pre.clone(), Relation::Ge, bias);
        let mut act = pre;
        act.push((t, -l));
        model.add_constraint(format!("h{j}_act"), act, Relation::Le, bias - l);
        model.add_constraint(format!("h{j}_off"), vec![(y, 1.0), (t, -u)], Relation::Le, 0.0);
        bins.push(Some(t));
    }
    Ok(bins)
}

fn encode_copy(
    b: &mut Builder,
    net: &ReluMlp,
    bounds: &IntervalBounds,
    input: &[LinExpr],
    copy: usize,
    names: (&str, &str),
    shared: Option<&CopyEncoding>,
) -> Result<CopyEncoding> {
    let (last, hidden) = net.layers().split_last().expect("non-empty network");
    let mut cur: Vec<LinExpr> = input.to_vec();
    let mut all_hidden = Vec::with_capacity(hidden.len());
    let mut all_bins = Vec::with_capacity(hidden.len());
    for (k, layer) in hidden.iter().enumerate() {
        let lb = &bounds.hidden[k];
        let share = shared.map(|s| s.binaries[k].as_slice());
        let (outs, bins) = relu_layer(
            b,
            &cur,
            layer,
            &lb.lower,
            &lb.upper,
            (copy, k),
            names,
            share,
        )?;
        all_hidden.push(outs.clone());
        all_bins.push(bins);
        cur = outs;
    }
    let linear_output = linear_part(last, &cur);
    Ok(CopyEncoding {
        hidden: all_hidden,
        linear_output,
        binaries: all_bins,
    })
}

fn linear_part(layer: &Affine, inputs: &[LinExpr]) -> Vec<LinExpr> {
    (0..layer.rows())
        .map(|i| {
            let mut e = LinExpr::default();
            for (w, x) in layer.row(i).iter().zip(inputs) {
                e.add_scaled(*w, x);
            }
            e
        })
        .collect()
}

fn check_dims(net: &ReluMlp, input_box: &InputBox) -> Result<()> {
    if net.input_dim() != input_box.dim() {
        return Err(Error::DimensionMismatch {
            expected: net.input_dim(),
            got: input_box.dim(),
        });
    }
    Ok(())
}

/// Input variables of one copy, with the L1 ball rows when needed.
fn input_vars(b: &mut Builder, input_box: &InputBox, copy: usize, name: &str) -> Vec<usize> {
    let r = input_box.radius;
    let vars: Vec<usize> = input_box
        .center
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            b.continuous(
                format!("{name}0_{j}"),
                c - r,
                c + r,
                Handle::Input { copy, index: j },
            )
        })
        .collect();
    if input_box.norm == Norm::L1 {
        let mut sum = Vec::with_capacity(vars.len());
        for (j, (&v, &c)) in vars.iter().zip(&input_box.center).enumerate() {
            let d = b.continuous(
                format!("d{name}_{j}"),
                0.0,
                r,
                Handle::Deviation { copy, index: j },
            );
            b.model
                .add_constraint(format!("d{name}_{j}_p"), vec![(d, 1.0), (v, -1.0)], Relation::Ge, -c);
            b.model
                .add_constraint(format!("d{name}_{j}_m"), vec![(d, 1.0), (v, 1.0)], Relation::Ge, c);
            sum.push((d, 1.0));
        }
        b.model
            .add_constraint(format!("ball_{name}"), sum, Relation::Le, r);
    }
    vars
}

/// Objective `‖diff‖` (maximized), with `|diff_j| ≤ big_m / 2` assumed.
fn norm_objective(b: &mut Builder, diff: &[LinExpr], norm: Norm, big_m: f64) {
    let half = 0.5 * big_m;
    match norm {
        Norm::LInf => {
            let w = b.continuous(String::from("w"), 0.0, half, Handle::Objective { index: 0 });
            let we = LinExpr::var(w);
            let mut pick = Vec::with_capacity(2 * diff.len());
            for (j, d) in diff.iter().enumerate() {
                let f = b.binary(format!("F_{j}"), Handle::Indicator { positive: true, index: j });
                let g = b.binary(format!("Fp_{j}"), Handle::Indicator { positive: false, index: j });
                b.expr_row(format!("w_ge_{j}"), &we.minus(d), Relation::Ge);
                let nd = d.negated();
                b.expr_row(format!("w_ge_neg_{j}"), &we.minus(&nd), Relation::Ge);
                // w ≤ ±d + M(1 − F)
                for (sel, e, tag) in [(f, d, "pos"), (g, &nd, "neg")] {
                    let mut row = we.minus(e);
                    row.add_scaled(big_m, &LinExpr::var(sel));
                    row.constant -= big_m;
                    b.expr_row(format!("w_le_{tag}_{j}"), &row, Relation::Le);
                }
                b.model
                    .add_constraint(format!("F_excl_{j}"), vec![(f, 1.0), (g, 1.0)], Relation::Le, 1.0);
                pick.push((f, 1.0));
                pick.push((g, 1.0));
            }
            b.model
                .add_constraint(String::from("F_pick"), pick, Relation::Eq, 1.0);
            b.model.set_objective(Sense::Maximize, vec![(w, 1.0)]);
        }
        Norm::L1 => {
            let mut obj = Vec::with_capacity(diff.len());
            for (j, d) in diff.iter().enumerate() {
                let e = b.continuous(format!("e_{j}"), 0.0, half, Handle::Objective { index: j });
                let g = b.binary(format!("G_{j}"), Handle::Indicator { positive: true, index: j });
                let ee = LinExpr::var(e);
                // G = 1: e ≤ d ; G = 0: e ≤ −d
                let mut row = ee.minus(d);
                row.add_scaled(big_m, &LinExpr::var(g));
                row.constant -= big_m;
                b.expr_row(format!("e_le_pos_{j}"), &row, Relation::Le);
                let mut row = ee.minus(&d.negated());
                row.add_scaled(-big_m, &LinExpr::var(g));
                b.expr_row(format!("e_le_neg_{j}"), &row, Relation::Le);
                obj.push((e, 1.0));
            }
            b.model.set_objective(Sense::Maximize, obj);
        }
    }
}

fn equal_rows(b: &mut Builder, lhs: &[LinExpr], rhs: &[LinExpr], tag: &str) {
    for (i, (p, q)) in lhs.iter().zip(rhs).enumerate() {
        b.expr_row(format!("{tag}_{i}"), &p.minus(q), Relation::Eq);
    }
}

/// Problem 1: `max ‖x − y‖` subject to `x, y` in the ball and `f(x) = f(y)`.
pub fn encode_problem1(
    net: &ReluMlp,
    input_box: &InputBox,
    opts: &EncodeOptions,
) -> Result<EncodedProblem> {
    check_dims(net, input_box)?;
    let bounds = propagate_interval(net, input_box)?;
    let mut b = Builder::new();
    let x = input_vars(&mut b, input_box, 0, "x");
    let y = input_vars(&mut b, input_box, 1, "y");
    let xe: Vec<LinExpr> = x.iter().map(|&j| LinExpr::var(j)).collect();
    let ye: Vec<LinExpr> = y.iter().map(|&j| LinExpr::var(j)).collect();
    let cx = encode_copy(&mut b, net, &bounds, &xe, 0, ("x", "t"), None)?;
    let y_names = if opts.shared_binaries { ("y", "t") } else { ("y", "s") };
    let shared = opts.shared_binaries.then_some(&cx);
    let cy = encode_copy(&mut b, net, &bounds, &ye, 1, y_names, shared)?;
    equal_rows(&mut b, &cx.linear_output, &cy.linear_output, "out");
    let diff: Vec<LinExpr> = xe.iter().zip(&ye).map(|(p, q)| p.minus(q)).collect();
    norm_objective(&mut b, &diff, input_box.norm, 4.0 * input_box.radius);
    Ok(EncodedProblem {
        kind: ProblemKind::Invertibility,
        model: b.model,
        handles: b.handles,
        input_box: input_box.clone(),
        x,
        y,
        bounds,
    })
}

/// Problem 2: `max ‖x − x_c‖` subject to `x` in the ball and `f(x) = f(x_c)`.
pub fn encode_problem2(net: &ReluMlp, input_box: &InputBox) -> Result<EncodedProblem> {
    check_dims(net, input_box)?;
    let bounds = propagate_interval(net, input_box)?;
    let trace = net.forward_trace(&input_box.center)?;
    let mut b = Builder::new();
    let x = input_vars(&mut b, input_box, 0, "x");
    let xe: Vec<LinExpr> = x.iter().map(|&j| LinExpr::var(j)).collect();
    let cx = encode_copy(&mut b, net, &bounds, &xe, 0, ("x", "t"), None)?;
    let last = net.layers().last().expect("non-empty network");
    let hc: Vec<LinExpr> = match trace.pre_activations.last() {
        Some(pre) => pre.iter().map(|&v| LinExpr::constant(relu(v))).collect(),
        None => input_box
            .center
            .iter()
            .map(|&v| LinExpr::constant(v))
            .collect(),
    };
    let target = linear_part(last, &hc);
    equal_rows(&mut b, &cx.linear_output, &target, "out");
    let diff: Vec<LinExpr> = xe
        .iter()
        .zip(&input_box.center)
        .map(|(p, &c)| {
            let mut d = p.clone();
            d.constant -= c;
            d
        })
        .collect();
    norm_objective(&mut b, &diff, input_box.norm, 2.0 * input_box.radius);
    Ok(EncodedProblem {
        kind: ProblemKind::PseudoInvertibility,
        model: b.model,
        handles: b.handles,
        input_box: input_box.clone(),
        x,
        y: Vec::new(),
        bounds,
    })
}

/// Problem 3: `max ‖f_B(x₁) − f_B(x₂)‖` subject to `x₁, x₂` in the ball and
/// `f_A(x₁) = f_A(x₂)`.
pub fn encode_problem3(
    net_a: &ReluMlp,
    net_b: &ReluMlp,
    input_box: &InputBox,
) -> Result<EncodedProblem> {
    check_dims(net_a, input_box)?;
    check_dims(net_b, input_box)?;
    if net_a.output_dim() != net_b.output_dim() {
        return Err(Error::DimensionMismatch {
            expected: net_a.output_dim(),
            got: net_b.output_dim(),
        });
    }
    let bounds_a = propagate_interval(net_a, input_box)?;
    let bounds_b = propagate_interval(net_b, input_box)?;
    let width = output_bounds(net_b, input_box)?.max_width();
    let mut b = Builder::new();
    let x = input_vars(&mut b, input_box, 0, "x");
    let y = input_vars(&mut b, input_box, 1, "y");
    let xe: Vec<LinExpr> = x.iter().map(|&j| LinExpr::var(j)).collect();
    let ye: Vec<LinExpr> = y.iter().map(|&j| LinExpr::var(j)).collect();
    let a1 = encode_copy(&mut b, net_a, &bounds_a, &xe, 0, ("xa", "ta"), None)?;
    let a2 = encode_copy(&mut b, net_a, &bounds_a, &ye, 1, ("ya", "sa"), None)?;
    equal_rows(&mut b, &a1.linear_output, &a2.linear_output, "out_a");
    let b1 = encode_copy(&mut b, net_b, &bounds_b, &xe, 2, ("xb", "tb"), None)?;
    let b2 = encode_copy(&mut b, net_b, &bounds_b, &ye, 3, ("yb", "sb"), None)?;
    let diff: Vec<LinExpr> = b1
        .linear_output
        .iter()
        .zip(&b2.linear_output)
        .map(|(p, q)| p.minus(q))
        .collect();
    // every |Δ_j| is bounded by the widest output interval
    let big_m = 2.0 * width;
    norm_objective(&mut b, &diff, input_box.norm, big_m);
    Ok(EncodedProblem {
        kind: ProblemKind::Mappability,
        model: b.model,
        handles: b.handles,
        input_box: input_box.clone(),
        x,
        y,
        bounds: bounds_a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milp::{milp_solve, MilpStatus, SolveOptions};
    use crate::network::{identity_pair, random_network, single_relu};

    fn solve(p: &EncodedProblem) -> f64 {
        let s = milp_solve(&p.model, &SolveOptions::default());
        assert_eq!(s.status, MilpStatus::Optimal);
        s.objective
    }

    #[test]
    fn relu_layer_rows_match_big_m_form() {
        let mut m = MilpModel::new(Sense::Maximize);
        let x = m.add_continuous("x", -1.0, 1.0);
        let y = m.add_continuous("y", 0.0, 1.0);
        let layer = Affine::new(1, 1, vec![1.0], vec![0.0]).unwrap();
        let bins = encode_relu_layer(&mut m, &[x], &[y], &layer, &[-1.0], &[1.0]).unwrap();
        let t = bins[0].unwrap();
        // y ≥ 0, y − x ≥ 0, y − x + t ≤ 1, y − t ≤ 0
        let rows: Vec<_> = m
            .constraints
            .iter()
            .map(|c| {
                let mut terms = c.terms.clone();
                terms.sort_by_key(|p| p.0);
                (terms, c.relation, c.rhs)
            })
            .collect();
        assert!(rows.contains(&(vec![(y, 1.0)], Relation::Ge, 0.0)));
        assert!(rows.contains(&(vec![(x, -1.0), (y, 1.0)], Relation::Ge, 0.0)));
        assert!(rows.contains(&(vec![(x, -1.0), (y, 1.0), (t, 1.0)], Relation::Le, 1.0)));
        assert!(rows.contains(&(vec![(y, 1.0), (t, -1.0)], Relation::Le, 0.0)));
    }

    #[test]
    fn stable_inactive_unit_has_no_binary() {
        let mut m = MilpModel::new(Sense::Maximize);
        let x = m.add_continuous("x", -1.0, 1.0);
        let y = m.add_continuous("y", 0.0, 1.0);
        let layer = Affine::new(1, 1, vec![0.1], vec![-0.3]).unwrap();
        let bins = encode_relu_layer(&mut m, &[x], &[y], &layer, &[-0.4], &[-0.2]).unwrap();
        assert_eq!(bins, vec![None]);
        assert_eq!(m.binary_count(), 0);
        assert!(encode_relu_layer(&mut m, &[x], &[y], &layer, &[1.0], &[0.0]).is_err());
    }

    #[test]
    fn binary_count_law() {
        let net = random_network(&[1, 10, 10, 1], None, 3).unwrap();
        // pick a box wide enough to leave every unit undetermined
        let mut r = 1.0;
        loop {
            let p = encode_problem1(&net, &InputBox::linf(vec![0.0], r).unwrap(), &EncodeOptions::default())
                .unwrap();
            let undetermined: usize = p
                .bounds
                .hidden
                .iter()
                .flat_map(|lb| lb.lower.iter().zip(&lb.upper))
                .filter(|(l, u)| **l < 0.0 && **u > 0.0)
                .count();
            assert_eq!(p.binary_count(), 2 * (1 + undetermined));
            if undetermined == 20 {
                assert_eq!(p.binary_count(), 42);
                break;
            }
            r *= 2.0;
            assert!(r < 1e6);
        }
    }

    #[test]
    fn identity_pair_is_invertible() {
        let net = identity_pair(2);
        for r in [0.5, 3.0] {
            let ib = InputBox::linf(vec![0.2, -0.4], r).unwrap();
            let p1 = encode_problem1(&net, &ib, &EncodeOptions::default()).unwrap();
            assert!(solve(&p1).abs() < 1e-6);
            let p2 = encode_problem2(&net, &ib).unwrap();
            assert!(solve(&p2).abs() < 1e-6);
        }
    }

    #[test]
    fn single_relu_flat_branch() {
        let net = single_relu();
        let ib = InputBox::linf(vec![0.0], 1.0).unwrap();
        let p = encode_problem1(&net, &ib, &EncodeOptions::default()).unwrap();
        let s = milp_solve(&p.model, &SolveOptions::default());
        assert!((s.objective - 1.0).abs() < 1e-6);
        let d = p.decode(&s.assignment);
        let (fx, fy) = (net.forward(&d.x).unwrap(), net.forward(&d.y).unwrap());
        assert!((fx[0] - fy[0]).abs() < 1e-6);
        assert!(d.x[0] <= 1e-6 && d.y[0] <= 1e-6);
    }

    #[test]
    fn problem2_zero_radius() {
        let net = random_network(&[2, 6, 2], None, 9).unwrap();
        let p = encode_problem2(&net, &InputBox::linf(vec![0.3, 0.1], 0.0).unwrap()).unwrap();
        assert!(solve(&p).abs() < 1e-9);
    }

    #[test]
    fn problem3_self_is_zero() {
        let net = random_network(&[2, 5, 2], None, 4).unwrap();
        let ib = InputBox::linf(vec![0.0, 0.0], 1.0).unwrap();
        let p = encode_problem3(&net, &net, &ib).unwrap();
        assert!(solve(&p).abs() < 1e-6);
    }

    #[test]
    fn l1_ball_single_relu() {
        let net = single_relu();
        let ib = InputBox::new(vec![-0.5], 1.0, Norm::L1).unwrap();
        let p = encode_problem1(&net, &ib, &EncodeOptions::default()).unwrap();
        // flat part of the ball is [−1.5, 0]
        assert!((solve(&p) - 1.5).abs() < 1e-6);
    }

    #[test]
    fn shared_binaries_force_one_pattern() {
        let net = single_relu();
        let ib = InputBox::linf(vec![0.0], 1.0).unwrap();
        let opts = EncodeOptions {
            shared_binaries: true,
        };
        let p = encode_problem1(&net, &ib, &opts).unwrap();
        assert_eq!(p.binary_count(), 2 + 1);
        // both points on the flat branch still collide
        assert!((solve(&p) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn handle_map_is_total() {
        let net = random_network(&[2, 4, 4, 2], None, 1).unwrap();
        let ib = InputBox::new(vec![0.0, 0.0], 0.7, Norm::L1).unwrap();
        let p = encode_problem1(&net, &ib, &EncodeOptions::default()).unwrap();
        assert_eq!(p.handles.len(), p.model.num_vars());
        let p = encode_problem3(&net, &net, &ib).unwrap();
        assert_eq!(p.handles.len(), p.model.num_vars());
    }
}
