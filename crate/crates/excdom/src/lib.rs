//! IO, file formats and command line for `excdom-core`.

pub mod cli;
pub mod json;
pub mod verify;
