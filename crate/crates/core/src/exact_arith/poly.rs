use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::BigRat;

/// Dense univariate polynomial with exact rational coefficients.
///
/// `coeffs[i]` is the coefficient of `z^i`. The highest stored coefficient is
/// nonzero, so the zero polynomial has no coefficients and degree `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRat) -> Self {
        RatPoly::new(vec![c])
    }

    /// `c·z^k`
    pub fn monomial(c: BigRat, k: usize) -> Self {
        let mut coeffs = vec![BigRat::zero(); k + 1];
        coeffs[k] = c;
        RatPoly::new(coeffs)
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        RatPoly::new(
            coeffs
                .into_iter()
                .map(|c| BigRat::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        RatPoly::new(coeffs.iter().cloned().map(BigRat::from_integer).collect())
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    /// Coefficient of `z^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn eval(&self, z: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| acc * z + c)
    }

    pub fn scale(&self, k: &BigRat) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, n: u32) -> RatPoly {
        let mut acc = RatPoly::constant(BigRat::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every term of degree `≥ order`.
    pub fn truncate(&self, order: usize) -> RatPoly {
        RatPoly::new(self.coeffs.iter().take(order).cloned().collect())
    }

    /// Product truncated to degree `< order`.
    pub fn mul_trunc(&self, other: &RatPoly, order: usize) -> RatPoly {
        let mut out = vec![BigRat::zero(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order - i) {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    /// Substitutes `1 − z` for `z`.
    pub fn reflect(&self) -> RatPoly {
        let one_minus_z = RatPoly::new(vec![BigRat::one(), -BigRat::one()]);
        self.coeffs.iter().rev().fold(RatPoly::zero(), |acc, c| {
            &(&acc * &one_minus_z) + &RatPoly::constant(c.clone())
        })
    }

    /// Index of the lowest nonzero coefficient, `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `Some((k, c))` when the polynomial is exactly `c·z^k` with `c ≠ 0`.
    pub fn as_monomial(&self) -> Option<(usize, BigRat)> {
        let k = self.valuation()?;
        (k + 1 == self.coeffs.len()).then(|| (k, self.coeffs[k].clone()))
    }

    /// Exact division by `z^k`; `None` if a low coefficient is nonzero.
    pub fn div_z_pow(&self, k: usize) -> Option<RatPoly> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(RatPoly::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Integer coefficients, if all are integral.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.denom().is_one().then(|| c.numer().clone()))
            .collect()
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let order = self.coeffs.len() + rhs.coeffs.len() - 1;
        self.mul_trunc(rhs, order)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigRat::zero();
            let mag = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*z")?,
                _ => write!(f, "{mag}*z^{i}")?,
            }
        }
        Ok(())
    }
}
