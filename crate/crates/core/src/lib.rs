//! Exact combinatorics for actions of the injection monoid on
//! `ω = {1, 2, 3, …}`.
//!
//! Everything here is decided exactly. Subsets of `ω` are ultimately
//! periodic ([`UpSet`]), injections are piecewise arithmetic
//! ([`PapInj`]), and support questions for the built-in families of
//! `ℳ`-sets are answered structurally through a [`SupportProfile`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod boxprod;
pub mod emss;
pub mod group;
pub mod mset;
pub mod operadic;
pub mod pap;
pub mod staralg;
pub mod upset;

pub use boxprod::{BoxOutcome, BoxViolation, BoxWitness};
pub use emss::{Simplex, TruncEmss};
pub use group::FinGroup;
pub use mset::{Classification, MElt, MSetFamily, Support, SupportProfile};
pub use operadic::OperadicClass;
pub use pap::{InjN, PapInj, PapMap};
pub use staralg::ConfigSimplex;
pub use upset::{SetClass, UpSet};
