//! Best-bound branch and bound over the binaries of a [`MilpModel`].

use alloc::collections::BinaryHeap;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::simplex::{cold_tableau, LpData, Outcome, Tableau};
use super::{
    Clock, MilpModel, MilpSolution, MilpStatus, NoClock, SolveOptions, SolveStats, FEASIBILITY_TOL,
};

/// Budget for tableaus kept alive for warm starts, in f64 entries.
const WARM_BUDGET: usize = 24_000_000;

struct Node {
    /// Parent LP value in internal (maximize) sense.
    bound: f64,
    id: usize,
    fixes: Vec<(usize, f64)>,
    warm: Option<Rc<Tableau>>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .total_cmp(&other.bound)
            .then_with(|| other.id.cmp(&self.id))
    }
}

pub fn milp_solve(model: &MilpModel, opts: &SolveOptions) -> MilpSolution {
    milp_solve_with_clock(model, opts, &NoClock)
}

pub fn milp_solve_with_clock(
    model: &MilpModel,
    opts: &SolveOptions,
    clock: &dyn Clock,
) -> MilpSolution {
    let start = clock.now();
    if model.validate().is_err() {
        return MilpSolution {
            status: MilpStatus::NumericalFailure,
            objective: f64::NAN,
            best_bound: f64::NAN,
            assignment: Vec::new(),
            stats: SolveStats::default(),
        };
    }
    let data = LpData::from_model(model);
    let mut search = Search {
        model,
        data: &data,
        opts,
        incumbent: f64::NEG_INFINITY,
        assignment: Vec::new(),
        heap: BinaryHeap::new(),
        dive: Vec::new(),
        next_id: 0,
        stored: 0,
        max_stored: 1,
        stats: SolveStats::default(),
        failed: false,
    };
    let status = search.run(clock, start);
    let sign = data.sign;
    let objective = if search.assignment.is_empty() {
        f64::NAN
    } else {
        model.objective_value(&search.assignment)
    };
    let best_bound = match status {
        MilpStatus::Optimal => objective,
        MilpStatus::Infeasible => f64::NAN,
        MilpStatus::Unbounded => sign * f64::INFINITY,
        _ => {
            let open = search.open_bound().max(search.incumbent);
            sign * open
        }
    };
    let mut stats = search.stats;
    stats.wall_time = clock.now() - start;
    MilpSolution {
        status,
        objective,
        best_bound,
        assignment: search.assignment,
        stats,
    }
}

struct Search<'a> {
    model: &'a MilpModel,
    data: &'a LpData,
    opts: &'a SolveOptions,
    incumbent: f64,
    assignment: Vec<f64>,
    heap: BinaryHeap<Node>,
    dive: Vec<Node>,
    next_id: usize,
    stored: usize,
    max_stored: usize,
    stats: SolveStats,
    failed: bool,
}

impl Search<'_> {
    fn open_bound(&self) -> f64 {
        let h = self.heap.peek().map_or(f64::NEG_INFINITY, |n| n.bound);
        self.dive.iter().map(|n| n.bound).fold(h, f64::max)
    }

    fn fresh_id(&mut self) -> usize {
        self.next_id += 1;
        self.next_id
    }

    fn run(&mut self, clock: &dyn Clock, start: f64) -> MilpStatus {
        let root = Node {
            bound: f64::INFINITY,
            id: 0,
            fixes: Vec::new(),
            warm: None,
        };
        self.dive.push(root);
        let mut processed = 0usize;
        loop {
            let (node, diving) = match self.dive.pop() {
                Some(n) => (n, true),
                None => {
                    let Some(n) = self.heap.pop() else { break };
                    (n, self.starts_dive(processed))
                }
            };
            if node.bound <= self.incumbent + self.opts.abs_gap {
                self.release(&node);
                continue;
            }
            if processed >= self.opts.node_limit {
                self.push_back(node);
                return MilpStatus::NodeLimit;
            }
            if let Some(limit) = self.opts.time_limit {
                if clock.now() - start >= limit {
                    self.push_back(node);
                    return MilpStatus::TimeLimit;
                }
            }
            processed += 1;
            self.stats.nodes = processed;
            match self.process(node, diving) {
                Step::Done => {}
                Step::Unbounded => return MilpStatus::Unbounded,
                Step::Failed if processed == 1 => return MilpStatus::NumericalFailure,
                Step::Failed => self.failed = true,
            }
            if let Some(c) = self.opts.cutoff {
                if self.incumbent > self.data.sign * c {
                    return MilpStatus::Cutoff;
                }
            }
        }
        // a subtree lost to numerical trouble voids any optimality claim
        if self.failed {
            MilpStatus::NumericalFailure
        } else if self.assignment.is_empty() {
            MilpStatus::Infeasible
        } else {
            MilpStatus::Optimal
        }
    }

    fn starts_dive(&self, processed: usize) -> bool {
        self.opts.dive_every > 0 && processed.is_multiple_of(self.opts.dive_every)
    }

    fn push_back(&mut self, node: Node) {
        self.heap.push(node);
    }

    fn release(&mut self, node: &Node) {
        if let Some(rc) = &node.warm {
            if Rc::strong_count(rc) == 1 {
                self.stored = self.stored.saturating_sub(1);
            }
        }
    }

    fn bounds_for(&self, fixes: &[(usize, f64)]) -> (Vec<f64>, Vec<f64>) {
        let mut lo = self.data.lower.clone();
        let mut hi = self.data.upper.clone();
        for &(j, v) in fixes {
            lo[j] = v;
            hi[j] = v;
        }
        (lo, hi)
    }

    fn solve_node(&mut self, node: &mut Node) -> Tableau {
        let warm = node.warm.take();
        if let Some(rc) = warm {
            if Rc::strong_count(&rc) == 1 {
                self.stored = self.stored.saturating_sub(1);
            }
            let mut tab = Rc::try_unwrap(rc).unwrap_or_else(|rc| (*rc).clone());
            let before = tab.iterations;
            if let Some(&(j, v)) = node.fixes.last() {
                tab.set_bounds(j, v, v);
            }
            let o = tab.reoptimize(self.data);
            self.stats.lp_iterations += tab.iterations - before;
            if o != Outcome::Failed {
                return tab;
            }
        }
        let (lo, hi) = self.bounds_for(&node.fixes);
        let tab = cold_tableau(self.data, &lo, &hi);
        self.stats.lp_iterations += tab.iterations;
        if self.max_stored == 1 {
            self.max_stored = (WARM_BUDGET / tab.table_len().max(1)).max(2);
        }
        tab
    }

    fn process(&mut self, mut node: Node, diving: bool) -> Step {
        let tab = self.solve_node(&mut node);
        match tab.outcome {
            Outcome::Infeasible => return Step::Done,
            Outcome::Unbounded => return Step::Unbounded,
            Outcome::Failed => return Step::Failed,
            Outcome::Optimal => {}
        }
        let bound = tab.objective();
        if bound <= self.incumbent + self.opts.abs_gap {
            return Step::Done;
        }
        let branch = self.most_fractional(tab.values());
        let Some((j, frac_value)) = branch else {
            if !self.try_incumbent(&tab) {
                // rounding broke feasibility; keep splitting on any nonzero fractionality
                if let Some((j, v)) = self.any_fractional(tab.values()) {
                    self.branch(node, tab, bound, j, v, diving);
                }
            }
            return Step::Done;
        };
        self.branch(node, tab, bound, j, frac_value, diving);
        Step::Done
    }

    fn branch(&mut self, node: Node, tab: Tableau, bound: f64, j: usize, v: f64, diving: bool) {
        let warm = if self.stored < self.max_stored {
            self.stored += 1;
            Some(Rc::new(tab))
        } else {
            None
        };
        let up_first = v >= 0.5;
        let mut kids = [(0.0, node.fixes.clone()), (1.0, node.fixes)];
        for (val, fixes) in kids.iter_mut() {
            fixes.push((j, *val));
        }
        let [(_, down), (_, up)] = kids;
        let (pref, other) = if up_first { (up, down) } else { (down, up) };
        let mk = |s: &mut Self, fixes| Node {
            bound,
            id: s.fresh_id(),
            fixes,
            warm: warm.clone(),
        };
        let other = mk(self, other);
        let pref = mk(self, pref);
        drop(warm);
        // near the storage budget, finish subtrees depth-first so stored
        // tableaus are consumed instead of piling up in the heap
        if 2 * self.stored >= self.max_stored {
            self.dive.push(other);
            self.dive.push(pref);
            return;
        }
        self.heap.push(other);
        if diving {
            self.dive.push(pref);
        } else {
            self.heap.push(pref);
        }
    }

    fn most_fractional(&self, x: &[f64]) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        let mut best_frac = self.opts.int_tol;
        for (j, (&v, &bin)) in x.iter().zip(&self.data.is_binary).enumerate() {
            if !bin {
                continue;
            }
            let f = (v - libm::round(v)).abs();
            if f > best_frac {
                best_frac = f;
                best = Some((j, v));
            }
        }
        best
    }

    fn any_fractional(&self, x: &[f64]) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        let mut best_frac = 0.0;
        for (j, (&v, &bin)) in x.iter().zip(&self.data.is_binary).enumerate() {
            if bin && self.data.lower[j] != self.data.upper[j] {
                let f = (v - libm::round(v)).abs();
                if f > best_frac {
                    best_frac = f;
                    best = Some((j, v));
                }
            }
        }
        best
    }

    /// Fixes the binaries to their rounded values, re-solves the continuous
    /// part and accepts the point if it satisfies the model.
    fn try_incumbent(&mut self, tab: &Tableau) -> bool {
        let mut fixed = tab.clone();
        let before = fixed.iterations;
        let rounded: Vec<(usize, f64)> = tab
            .values()
            .iter()
            .zip(&self.data.is_binary)
            .enumerate()
            .filter(|(_, (_, b))| **b)
            .map(|(j, (v, _))| (j, libm::round(*v).clamp(0.0, 1.0)))
            .collect();
        for &(j, v) in &rounded {
            fixed.set_bounds(j, v, v);
        }
        let o = fixed.reoptimize(self.data);
        self.stats.lp_iterations += fixed.iterations - before;
        let mut candidate = if o == Outcome::Optimal {
            fixed.values().to_vec()
        } else {
            tab.values().to_vec()
        };
        for &(j, v) in &rounded {
            candidate[j] = v;
        }
        if self.model.max_violation(&candidate) > 10.0 * FEASIBILITY_TOL {
            return false;
        }
        let value = self.data.sign * self.model.objective_value(&candidate);
        if value > self.incumbent {
            self.incumbent = value;
            self.assignment = candidate;
        }
        true
    }
}

enum Step {
    Done,
    Unbounded,
    Failed,
}
