//! Exact-arithmetic toolkit for the quartic equation `aX⁴ − bY² = 1`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact_arith`] — rationals, dense polynomials, binary forms, the ring
//!   `ℤ[ω]` with `ω² = d`, and rigorous dyadic interval arithmetic.
//! * [`pell`] — the odd/even power sequences of `τ = √(t+1) + √t` and the
//!   fundamental solution of `aX² − bY² = 1`.
//! * [`quartic`] — the quartic form `P(x, y)`, its resolvent fourth powers and
//!   root brackets.
//! * [`pade`] — hypergeometric Padé approximants to `(1 − z)^{1/4}` and the
//!   integrality / determinant identities built on them.
//! * [`gap`] — the gap-principle inequality engine.
//! * [`solver`] — enumeration and verification of solutions.

pub mod error;
pub mod exact_arith;
pub mod gap;
pub mod pade;
pub mod pell;
pub mod quartic;
mod ser;
pub mod solver;

pub use error::{Error, Result};
