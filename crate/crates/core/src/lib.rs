// `!(x > 0.0)` is used on purpose so that NaN lands in the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod distributions;
pub mod error;
pub mod hitting_laws;
pub mod numerics;
pub mod resolvent;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
