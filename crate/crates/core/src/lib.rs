#![no_std]
// Negated comparisons deliberately send NaN down the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
extern crate alloc;

pub mod albert;
pub mod cayley;
pub mod compactify;
pub mod domains;
pub mod error;
pub mod jts;
pub mod linear;
pub mod sample;
pub mod tripotents;
pub mod type_v;

pub use error::{Error, Result};
pub use linear::{Tolerances, C64};
