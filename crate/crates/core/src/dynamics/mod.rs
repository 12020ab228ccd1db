//! Dynamical systems with known inverses, used as ground truth.

pub mod euler;
pub mod flows;
pub mod history;
pub mod planar;
pub mod poly;

pub use euler::{BrusselatorEuler, ScalarQuadraticEuler};
pub use flows::{bilipschitz_estimate, generate_dataset, vdp_field, vdp_flow, Region};
pub use history::{history_complete, Completion, HistoryQuery, StepState, Var};
pub use planar::{j0_grid, J0Grid, LinearMap, NetMap, PlanarMap, Rect};
