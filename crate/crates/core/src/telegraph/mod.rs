//! Telegraph problems and the time-discretized residual.
//!
//! With `U3 = û(x)` the unknown at `t3`, and `U2`, `U1` the known snapshots
//! at `t2 = t3 - Δt` and `t1 = t3 - 2Δt`, the residual minimized at every
//! collocation point is
//!
//! ```text
//! Res = (1 + 2αΔt) U3 - 2(1 + αΔt) U2 + U1 - Δt² N(U3)
//! N(U3) = -c U3 + ΔU3 + f(x, t3)
//! ```
//!
//! where `c` is the coefficient of the undifferentiated `u` term. The
//! Laplacian is exact: one forward jet pass per coordinate.

mod objective;
mod problem;
mod residual;

pub use objective::{Objective, PointData};
pub use problem::{example_problem, ProblemSpec, Snapshot, TelegraphProblem};
pub use residual::{
    loss, residual, spatial_operator_n, CollocationSet, ExactSolution, LossReport, NetworkSolution, Solution,
};
