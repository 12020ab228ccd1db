//! Mixed-integer linear programming.
//!
//! [`MilpModel`] is a plain container of bounded variables, sparse linear
//! rows and a linear objective. [`lp_solve`] solves the continuous
//! relaxation with a dense bounded-variable simplex; [`milp_solve`] runs
//! best-bound branch and bound over the binary variables, warm-starting each
//! child from its parent's tableau with the dual simplex.

mod bnb;
mod simplex;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub use bnb::{milp_solve, milp_solve_with_clock};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Continuous,
    Binary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MilpModel {
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    pub sense: Sense,
    pub objective: Vec<(usize, f64)>,
}

impl Default for MilpModel {
    fn default() -> Self {
        Self::new(Sense::Maximize)
    }
}

impl MilpModel {
    pub fn new(sense: Sense) -> Self {
        Self {
            variables: Vec::new(),
            constraints: Vec::new(),
            sense,
            objective: Vec::new(),
        }
    }

    pub fn add_continuous(&mut self, name: impl Into<String>, lower: f64, upper: f64) -> usize {
        self.variables.push(Variable {
            name: name.into(),
            kind: VarKind::Continuous,
            lower,
            upper,
        });
        self.variables.len() - 1
    }

    pub fn add_binary(&mut self, name: impl Into<String>) -> usize {
        self.variables.push(Variable {
            name: name.into(),
            kind: VarKind::Binary,
            lower: 0.0,
            upper: 1.0,
        });
        self.variables.len() - 1
    }

    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        terms: Vec<(usize, f64)>,
        relation: Relation,
        rhs: f64,
    ) -> usize {
        self.constraints.push(Constraint {
            name: name.into(),
            terms,
            relation,
            rhs,
        });
        self.constraints.len() - 1
    }

    pub fn set_objective(&mut self, sense: Sense, terms: Vec<(usize, f64)>) {
        self.sense = sense;
        self.objective = terms;
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn binaries(&self) -> impl Iterator<Item = usize> + '_ {
        self.variables
            .iter()
            .enumerate()
            .filter(|(_, v)| v.kind == VarKind::Binary)
            .map(|(i, _)| i)
    }

    pub fn binary_count(&self) -> usize {
        self.binaries().count()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.variables.len();
        for v in &self.variables {
            if v.lower.is_nan() || v.upper.is_nan() || v.lower > v.upper {
                return Err(Error::InvalidModel(format!(
                    "variable {} has bounds [{}, {}]",
                    v.name, v.lower, v.upper
                )));
            }
            if v.kind == VarKind::Binary && (v.lower < 0.0 || v.upper > 1.0) {
                return Err(Error::InvalidModel(format!(
                    "binary {} has bounds [{}, {}]",
                    v.name, v.lower, v.upper
                )));
            }
        }
        let check_terms = |what: &str, terms: &[(usize, f64)]| -> Result<()> {
            for &(j, a) in terms {
                if j >= n {
                    return Err(Error::InvalidModel(format!(
                        "{what} references undeclared variable {j}"
                    )));
                }
                if !a.is_finite() {
                    return Err(Error::InvalidModel(format!("{what} has coefficient {a}")));
                }
            }
            Ok(())
        };
        for c in &self.constraints {
            check_terms(&c.name, &c.terms)?;
            if !c.rhs.is_finite() {
                return Err(Error::InvalidModel(format!("{} has rhs {}", c.name, c.rhs)));
            }
        }
        check_terms("objective", &self.objective)
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().map(|&(j, a)| a * x[j]).sum()
    }

    /// Largest scaled violation over rows and variable bounds:
    /// `violation / (1 + |rhs|)`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for c in &self.constraints {
            let lhs: f64 = c.terms.iter().map(|&(j, a)| a * x[j]).sum();
            let v = match c.relation {
                Relation::Le => lhs - c.rhs,
                Relation::Ge => c.rhs - lhs,
                Relation::Eq => (lhs - c.rhs).abs(),
            };
            worst = worst.max(v / (1.0 + c.rhs.abs()));
        }
        for (v, val) in self.variables.iter().zip(x) {
            worst = worst.max((v.lower - val) / (1.0 + v.lower.abs()));
            worst = worst.max((val - v.upper) / (1.0 + v.upper.abs()));
        }
        worst
    }

    pub fn max_integrality_violation(&self, x: &[f64]) -> f64 {
        self.binaries()
            .map(|j| {
                let v = x[j];
                (v - libm::round(v)).abs()
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    NumericalFailure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective in the model's own sense.
    pub objective: f64,
    pub values: Vec<f64>,
    pub iterations: usize,
}

/// Primal feasibility tolerance of the simplex.
pub const FEASIBILITY_TOL: f64 = 1e-7;

/// Solves the LP relaxation. With `relax == false` the model must not
/// contain binaries.
pub fn lp_solve(model: &MilpModel, relax: bool) -> Result<LpSolution> {
    model.validate()?;
    if !relax && model.binary_count() > 0 {
        return Err(Error::InvalidModel(String::from(
            "model has binary variables; relax them or use milp_solve",
        )));
    }
    #[cfg(feature = "textbook-lp")]
    {
        Ok(crate::oracle::textbook::solve_model(model))
    }
    #[cfg(not(feature = "textbook-lp"))]
    {
        let data = simplex::LpData::from_model(model);
        Ok(simplex::solve_cold(&data, &data.lower, &data.upper).into_solution(model, &data))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub node_limit: usize,
    /// Seconds, measured with the clock passed to [`milp_solve_with_clock`].
    pub time_limit: Option<f64>,
    pub abs_gap: f64,
    pub int_tol: f64,
    /// Run a depth-first dive every this many nodes.
    pub dive_every: usize,
    /// Stop with [`MilpStatus::Cutoff`] as soon as an incumbent is strictly
    /// better than this value (model sense).
    pub cutoff: Option<f64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            node_limit: 200_000,
            time_limit: None,
            abs_gap: 1e-6,
            int_tol: 1e-6,
            dive_every: 16,
            cutoff: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MilpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    NodeLimit,
    TimeLimit,
    /// An incumbent beat [`SolveOptions::cutoff`]; the optimum is at least
    /// as good and `best_bound` brackets it.
    Cutoff,
    NumericalFailure,
}

impl MilpStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            MilpStatus::Optimal => "optimal",
            MilpStatus::Infeasible => "infeasible",
            MilpStatus::Unbounded => "unbounded",
            MilpStatus::NodeLimit => "node_limit",
            MilpStatus::TimeLimit => "time_limit",
            MilpStatus::Cutoff => "cutoff",
            MilpStatus::NumericalFailure => "numerical_failure",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SolveStats {
    pub nodes: usize,
    pub lp_iterations: usize,
    pub wall_time: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MilpSolution {
    pub status: MilpStatus,
    /// Incumbent objective (model sense); NaN when there is no incumbent.
    pub objective: f64,
    /// Best proven bound on the optimum (model sense).
    pub best_bound: f64,
    pub assignment: Vec<f64>,
    pub stats: SolveStats,
}

impl MilpSolution {
    pub fn has_incumbent(&self) -> bool {
        !self.assignment.is_empty()
    }
}

/// Time source for solver limits. `now` is in seconds from any fixed origin.
pub trait Clock {
    fn now(&self) -> f64;
}

/// Clock that never advances; time limits are ignored.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn now(&self) -> f64 {
        0.0
    }
}
