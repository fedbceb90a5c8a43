// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod cli;
pub mod error;
pub mod model;
pub mod quadrature;
pub mod radial;
pub mod shooting;
pub mod specfun;
pub mod tunneling;

pub use error::{Error, Result};
