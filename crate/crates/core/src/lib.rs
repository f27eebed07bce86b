#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod error;
pub mod mc;
pub mod metrics;
pub mod numerics;
pub mod par;
pub mod specfun;
pub mod sweep;
pub mod system;
pub mod validation;

pub use error::{Error, Result};
