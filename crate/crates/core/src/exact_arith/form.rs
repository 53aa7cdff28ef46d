use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::RatPoly;

/// Homogeneous binary form over the integers.
///
/// `coeffs[i]` multiplies `x^{degree−i} y^i`, so the coefficient list always
/// has `degree + 1` entries (zero forms keep their nominal degree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntForm {
    coeffs: Vec<BigInt>,
}

impl IntForm {
    /// Builds a form from coefficients ordered by increasing power of `y`.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a binary form needs at least one coefficient"
        );
        IntForm { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntForm::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `P*(x, y) = x^n P(y/x)` for an integer polynomial `P` of degree `n`.
    ///
    /// Returns `None` if some coefficient of `P` is not an integer.
    pub fn homogenize(p: &RatPoly, n: usize) -> Option<IntForm> {
        let ints = p.to_bigints()?;
        if ints.len() > n + 1 {
            return None;
        }
        let mut coeffs = ints;
        coeffs.resize(n + 1, BigInt::zero());
        Some(IntForm { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let n = self.degree();
        // Horner in y/x, scaled: Σ c_i x^{n−i} y^i
        let mut acc = BigInt::zero();
        let mut ypow = BigInt::one();
        let mut xpows = Vec::with_capacity(n + 1);
        let mut xp = BigInt::one();
        for _ in 0..=n {
            xpows.push(xp.clone());
            xp *= x;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * &xpows[n - i] * &ypow;
            ypow *= y;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some((c, i, j))` when the form is the single monomial `c·x^i·y^j`.
    pub fn as_monomial(&self) -> Option<(BigInt, usize, usize)> {
        let mut nonzero = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (j, c) = nonzero.next()?;
        if nonzero.next().is_some() {
            return None;
        }
        Some((c.clone(), self.degree() - j, j))
    }
}

fn combine(a: &IntForm, b: &IntForm, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> IntForm {
    assert_eq!(
        a.degree(),
        b.degree(),
        "forms of different degree cannot be added"
    );
    IntForm::new(
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| f(x, y))
            .collect(),
    )
}

impl Add for &IntForm {
    type Output = IntForm;
    fn add(self, rhs: &IntForm) -> IntForm {
        combine(self, rhs, |a, b| a + b)
    }
}

impl Sub for &IntForm {
    type Output = IntForm;
    fn sub(self, rhs: &IntForm) -> IntForm {
        combine(self, rhs, |a, b| a - b)
    }
}

impl Mul for &IntForm {
    type Output = IntForm;
    fn mul(self, rhs: &IntForm) -> IntForm {
        let mut out = vec![BigInt::zero(); self.degree() + rhs.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntForm::new(out)
    }
}

impl fmt::Display for IntForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " ")?;
                if c.sign() != num_bigint::Sign::Minus {
                    write!(f, "+")?;
                }
            }
            first = false;
            write!(f, "{c}")?;
            match n - j {
                0 => {}
                1 => write!(f, "*x")?,
                e => write!(f, "*x^{e}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "*y")?,
                e => write!(f, "*y^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogenize_pads_to_nominal_degree() {
        let p = RatPoly::from_ints([8, -5]);
        let f = IntForm::homogenize(&p, 1).unwrap();
        assert_eq!(f, IntForm::from_i64s(&[8, -5]));
        assert_eq!(f.eval(&BigInt::from(1), &BigInt::from(1)), BigInt::from(3));
        let g = IntForm::homogenize(&p, 3).unwrap();
        assert_eq!(g.degree(), 3);
    }

    #[test]
    fn monomial_of_difference() {
        let a = IntForm::from_i64s(&[8, -5]);
        let b = IntForm::from_i64s(&[8, -3]);
        assert_eq!((&a - &b).as_monomial(), Some((BigInt::from(-2), 0, 1)));
        assert_eq!(a.as_monomial(), None);
    }

    #[test]
    fn product_evaluates_as_product() {
        let a = IntForm::from_i64s(&[1, 2, -3]);
        let b = IntForm::from_i64s(&[4, 0, 1, 7]);
        let ab = &a * &b;
        for (x, y) in [(1, 2), (-3, 5), (7, -1)] {
            let (x, y) = (BigInt::from(x), BigInt::from(y));
            assert_eq!(ab.eval(&x, &y), a.eval(&x, &y) * b.eval(&x, &y));
        }
    }
}
