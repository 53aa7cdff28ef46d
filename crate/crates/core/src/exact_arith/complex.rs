use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::Sign;

use super::Interval;

/// Rectangular enclosure of a complex number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    re: Interval,
    im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn from_real(re: Interval) -> Self {
        let prec = re.precision();
        ComplexInterval {
            re,
            im: Interval::from_i64(0, prec),
        }
    }

    pub fn re(&self) -> &Interval {
        &self.re
    }

    pub fn im(&self) -> &Interval {
        &self.im
    }

    pub fn precision(&self) -> u32 {
        self.re.precision().max(self.im.precision())
    }

    pub fn conj(&self) -> Self {
        ComplexInterval {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn abs_sq(&self) -> Interval {
        &self.re.square() + &self.im.square()
    }

    pub fn abs(&self) -> Interval {
        self.abs_sq()
            .sqrt()
            .expect("a sum of squares is never certainly negative")
    }

    pub fn scale(&self, k: &Interval) -> Self {
        ComplexInterval {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.abs_sq().recip()?;
        Some(self.conj().scale(&n))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self * &other.recip()?)
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = ComplexInterval::from_real(Interval::from_i64(1, self.precision()));
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Principal square root. The enclosure alone cannot tell which side of
    /// the branch cut a number near the negative axis sits on, so the caller
    /// supplies the exact sign of the imaginary part.
    pub fn sqrt(&self, im_sign: Sign) -> Option<Self> {
        let s_neg = im_sign == Sign::Minus;
        let r = self.abs();
        let two = Interval::from_i64(2, self.precision());
        if self.re.is_positive() {
            let a = (&r + &self.re).div(&two)?.sqrt()?;
            let b = self.im.div(&(&two * &a))?;
            Some(ComplexInterval::new(a, b))
        } else if self.re.is_negative() {
            let b = (&r - &self.re).div(&two)?.sqrt()?;
            let a = self.im.abs().div(&(&two * &b))?;
            let b = if s_neg { -&b } else { b };
            Some(ComplexInterval::new(a, b))
        } else {
            let a = (&r + &self.re).div(&two)?.sqrt()?;
            let b = (&r - &self.re).div(&two)?.sqrt()?;
            let b = if s_neg { -&b } else { b };
            Some(ComplexInterval::new(a, b))
        }
    }

    /// Principal fourth root, as two principal square roots (the imaginary
    /// sign is preserved by each step).
    pub fn fourth_root(&self, im_sign: Sign) -> Option<Self> {
        self.sqrt(im_sign)?.sqrt(im_sign)
    }
}

impl Add for &ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Neg for &ComplexInterval {
    type Output = ComplexInterval;
    fn neg(self) -> ComplexInterval {
        ComplexInterval::new(-&self.re, -&self.im)
    }
}

impl Mul for &ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl fmt::Display for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·i", self.re, self.im)
    }
}
