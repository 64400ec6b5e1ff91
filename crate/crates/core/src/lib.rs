//! Physics-informed deep networks with an orthogonal-polynomial first layer
//! for 1D and 2D telegraph equations.
//!
//! The solution at `t3` is learned from two known snapshots at `t1` and `t2`
//! by minimizing a finite-difference-in-time residual at random collocation
//! points plus a Dirichlet boundary mismatch.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod autodiff;
pub mod error;
pub mod experiment;
pub mod expr;
pub mod metrics;
pub mod network;
pub mod optim;
pub mod orthopoly;
pub mod sampler;
pub mod telegraph;

pub use error::{Error, Result};
