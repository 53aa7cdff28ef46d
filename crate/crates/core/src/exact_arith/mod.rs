//! Arbitrary-precision kernel shared by every other module.
//!
//! All values here are immutable once built and every operation is a pure
//! function, so they can be shared freely between rayon workers.

mod complex;
mod form;
mod interval;
mod poly;
mod rational;
mod ring;
mod squares;

pub use complex::ComplexInterval;
pub use form::IntForm;
pub use interval::{
    interval_from_sqrt, pi, precision_ladder, Dyadic, Interval, MAX_PRECISION, START_PRECISION,
};
pub use poly::RatPoly;
pub use rational::{binom_int, binom_rat, quarter_root_series, rat, BigRat};
pub use ring::RingElem;
pub use squares::{is_perfect_square, is_perfect_square_u128};
