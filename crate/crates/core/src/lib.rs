//! Strong equivalence tooling for mini-GRINGO programs.
//!
//! The crate is organised bottom-up:
//!
//! * [`precomputed`] – the value universe (numerals, symbolic constants,
//!   `#inf`, `#sup`) and its total order.
//! * [`syntax`] – mini-GRINGO programs: lexer, parser, printer and the
//!   regularity classification of terms and rules.
//! * [`fo`] – two-sorted first-order formulas over the signature with
//!   generic and integer variables, substitution and alpha-equivalence.
//! * [`nu`] – the natural translation of regular rules into sentences.
//! * [`kernel`] – a checker for natural-deduction proofs in
//!   here-and-there with arithmetic.
//! * [`ground`] – finite-domain grounding, here-and-there satisfaction,
//!   stable models and the brute-force strong-equivalence oracle.
//!
//! Everything here is pure and allocation-only; file IO and the command
//! line front end live in the `htequiv` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod fo;
pub mod ground;
pub mod kernel;
mod lexer;
pub mod nu;
pub mod precomputed;
pub mod syntax;

pub use precomputed::{Precomputed, Relation};
