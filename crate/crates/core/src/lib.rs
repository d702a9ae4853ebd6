//! # lucas-core
//!
//! Exact arbitrary-precision arithmetic for generalized Fibonacci and Lucas
//! sequences `U_n^(p,q)`, `V_n^(p,q)` defined by
//!
//! ```text
//! U_0 = 0, U_1 = 1, U_n = p U_{n-1} - q U_{n-2}
//! V_0 = 2, V_1 = p, V_n = p V_{n-1} - q V_{n-2}
//! ```
//!
//! with `p q != 0` and discriminant `delta = p^2 - 4q != 0`, plus everything
//! built on top of them:
//!
//! - [`sequences`] — O(log |n|) doubling evaluation and the O(|n|) iterative
//!   oracle, including negative indices for `q = +/-1`.
//! - [`derived`] — the auxiliary sequences `a, b, c, d, e` (quotients such as
//!   `U_{2n}/U_2`), each computable by closed form and by recurrence.
//! - [`sums`] — `S_n^(r,s)` and `A_n^(r,s)` sums of products evaluated three
//!   ways: naive summation, the direct closed forms, and the forms phrased
//!   through the derived sequences.
//! - [`corrections`] — the `delta`, `theta`, `xi` and `lambda` offsets that
//!   turn product expressions into exact alternating-sum values.
//! - [`identities`] — a compiled-in catalog of bilinear identities among the
//!   sequences, each evaluated exactly on both sides.
//! - [`sweep`] — grid verification of the catalog, producing deterministic
//!   reports with reproducible counterexamples.
//!
//! Everything is integer-exact: there is no floating point and no evaluation
//! through the irrational roots of `x^2 - p x - q`.

pub mod corrections;
pub mod derived;
mod error;
pub mod identities;
mod params;
pub mod sequences;
pub mod sums;
pub mod sweep;

pub use error::{Error, Result};
pub use params::{validate_params, Preset, SequenceParams};
pub use sequences::{eval_naive, eval_pair, eval_pair_counted, SequenceIter, SequencePoint};
