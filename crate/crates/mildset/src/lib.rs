//! Literal parser, randomized generators and the statement-check registry
//! for `mildset-core`, plus the pieces behind the `mildset` binary.

pub mod checks;
pub mod eval;
pub mod family;
pub mod gen;
pub mod parse;
pub mod value;

pub use parse::{evaluate, ExprError};
pub use value::Value;
