//! The JDNN forward model.
//!
//! Inputs are mapped affinely onto `[-1, 1]`, passed through one orthogonal
//! polynomial layer (neuron `k` applies the degree-`k+1` member of the
//! family to its own pre-activation), then `tanh` layers, then an affine
//! output. The simple-DNN comparator swaps the polynomial layer for `tanh`.
//!
//! [`forward_generic`] is the per-point reference evaluator, generic over
//! [`crate::autodiff::Scalar`]. [`BatchNetwork`] is the training path: it
//! pushes whole point sets through value and derivative channels as matrix
//! products and back-propagates through all channels by hand.

mod arch;
mod batch;
mod forward;
mod params;

pub use arch::{Architecture, FirstLayer};
pub use batch::{BatchNetwork, BatchOutput, OutputGrad};
pub use forward::{forward, forward_generic, normalize_input};
pub use params::{init_params, ParamSet};
