use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ComplexInterval, Interval};

/// Element `a + bω` of `ℤ[ω]` with `ω² = d`.
///
/// Every computation in this crate fixes one `d` (namely `d = −t`); combining
/// elements with different `d` is a contract violation and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    pub a: BigInt,
    pub b: BigInt,
    pub d: BigInt,
}

impl RingElem {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, d: &BigInt) -> Self {
        RingElem {
            a: a.into(),
            b: b.into(),
            d: d.clone(),
        }
    }

    pub fn from_int(a: impl Into<BigInt>, d: &BigInt) -> Self {
        RingElem::new(a, 0, d)
    }

    /// The generator `ω` itself.
    pub fn omega(d: &BigInt) -> Self {
        RingElem::new(0, 1, d)
    }

    pub fn zero(d: &BigInt) -> Self {
        RingElem::new(0, 0, d)
    }

    pub fn one(d: &BigInt) -> Self {
        RingElem::new(1, 0, d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        RingElem {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// `a² − d·b²`, multiplicative.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.d * &self.b * &self.b
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = RingElem::one(&self.d);
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        RingElem {
            a: &self.a * k,
            b: &self.b * k,
            d: self.d.clone(),
        }
    }

    /// Division by a nonzero integer when both components are divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<Self> {
        let (qa, ra) = self.a.div_rem(k);
        let (qb, rb) = self.b.div_rem(k);
        (ra.is_zero() && rb.is_zero()).then(|| RingElem {
            a: qa,
            b: qb,
            d: self.d.clone(),
        })
    }

    /// `gcd(a, b)`; the content of the element.
    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b)
    }

    /// Complex enclosure, valid for `d < 0` (`ω = i√(−d)`).
    pub fn to_complex(&self, prec: u32) -> ComplexInterval {
        assert!(self.d.is_negative(), "complex embedding needs d < 0");
        let root = Interval::from_int(&-&self.d, prec)
            .sqrt()
            .expect("positive");
        ComplexInterval::new(
            Interval::from_int(&self.a, prec),
            &Interval::from_int(&self.b, prec) * &root,
        )
    }

    fn check_same_ring(&self, other: &RingElem) {
        assert_eq!(
            self.d, other.d,
            "mixed-discriminant ring arithmetic ({} vs {})",
            self.d, other.d
        );
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        self.check_same_ring(rhs);
        RingElem {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d: self.d.clone(),
        }
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        self.check_same_ring(rhs);
        RingElem {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d: self.d.clone(),
        }
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        self.check_same_ring(rhs);
        RingElem {
            a: &self.a * &rhs.a + &self.d * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d.clone(),
        }
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{} - {}ω", self.a, -&self.b)
        } else {
            write!(f, "{} + {}ω", self.a, self.b)
        }
    }
}

impl RingElem {
    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn elem(a: i64, b: i64, d: i64) -> RingElem {
        RingElem::new(a, b, &BigInt::from(d))
    }

    #[test]
    fn omega_squares_to_d() {
        let d = BigInt::from(-7);
        let w = RingElem::omega(&d);
        assert_eq!(&w * &w, RingElem::from_int(-7, &d));
        assert_eq!(w.norm(), BigInt::from(7));
    }

    #[test]
    #[should_panic(expected = "mixed-discriminant")]
    fn mixed_discriminants_panic() {
        let _ = &elem(1, 1, -2) * &elem(1, 1, -3);
    }

    #[test]
    fn exact_division() {
        let x = elem(6, -4, -5);
        assert_eq!(x.div_exact(&BigInt::from(2)), Some(elem(3, -2, -5)));
        assert_eq!(x.div_exact(&BigInt::from(4)), None);
        assert_eq!(x.content(), BigInt::from(2));
    }

    #[test]
    fn pow_matches_repeated_product() {
        let x = elem(3, -2, -11);
        let mut acc = RingElem::one(&x.d);
        for n in 0..9 {
            assert_eq!(x.pow(n), acc);
            acc = &acc * &x;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn norm_is_multiplicative(a in -10_000i64..10_000, b in -10_000i64..10_000,
                                  c in -10_000i64..10_000, e in -10_000i64..10_000,
                                  d in -1_000i64..1_000) {
            let x = elem(a, b, d);
            let y = elem(c, e, d);
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn conjugation_is_a_ring_homomorphism(a in -500i64..500, b in -500i64..500,
                                             c in -500i64..500, e in -500i64..500,
                                             d in -300i64..300) {
            let x = elem(a, b, d);
            let y = elem(c, e, d);
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
            prop_assert_eq!((&x * &x.conj()).b, BigInt::zero());
        }
    }
}
