use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::BigRat;

/// First rung of the precision ladder, in mantissa bits.
pub const START_PRECISION: u32 = 128;
/// Last rung; a comparison still ambiguous here is reported as undecided.
pub const MAX_PRECISION: u32 = 4096;

/// Runs `f` at 128, 256, … up to [`MAX_PRECISION`] bits until it decides.
pub fn precision_ladder<T>(mut f: impl FnMut(u32) -> Option<T>) -> Option<T> {
    let mut prec = START_PRECISION;
    loop {
        if let Some(v) = f(prec) {
            return Some(v);
        }
        if prec >= MAX_PRECISION {
            return None;
        }
        prec *= 2;
    }
}

/// `mant · 2^exp`, with trailing zero bits stripped from the mantissa.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn shr_floor(m: &BigInt, k: u64) -> BigInt {
    if m.sign() == Sign::Minus {
        let mag: BigInt = -m - 1;
        -(mag >> k) - 1
    } else {
        m >> k
    }
}

fn shr_ceil(m: &BigInt, k: u64) -> BigInt {
    -shr_floor(&-m, k)
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic { mant, exp: 0 };
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            Dyadic {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        } else {
            Dyadic { mant, exp }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(n: &BigInt) -> Self {
        Dyadic::new(n.clone(), 0)
    }

    /// `2^e`, exactly.
    pub fn pow2(e: i64) -> Self {
        Dyadic::new(BigInt::one(), e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn to_rat(&self) -> BigRat {
        if self.exp >= 0 {
            BigRat::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRat::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Nearest-ish `f64`, for display only.
    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits();
        let (m, e) = if bits > 60 {
            let k = bits - 60;
            (shr_floor(&self.mant, k), self.exp + k as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let m = m.to_f64().unwrap_or(0.0);
        if e > 4000 {
            return m * f64::INFINITY;
        }
        if e < -4000 {
            return 0.0;
        }
        // split the scaling to stay inside the finite range
        let half = (e / 2) as i32;
        m * 2f64.powi(half) * 2f64.powi(e as i32 - half)
    }

    /// Rounds to at most `prec` significant bits, downward or upward.
    pub fn round(&self, prec: u32, up: bool) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        let m = if up {
            shr_ceil(&self.mant, k)
        } else {
            shr_floor(&self.mant, k)
        };
        Dyadic::new(m, self.exp + k as i64)
    }

    fn div_round(a: &Dyadic, b: &Dyadic, prec: u32, up: bool) -> Dyadic {
        assert!(!b.is_zero(), "dyadic division by zero");
        if a.is_zero() {
            return Dyadic::zero();
        }
        let s = (prec as i64 + 2 + b.mant.bits() as i64 - a.mant.bits() as i64).max(0);
        let num = &a.mant << s as u64;
        let (q, r) = num.div_mod_floor(&b.mant);
        let q = if up && !r.is_zero() { q + 1 } else { q };
        Dyadic::new(q, a.exp - b.exp - s).round(prec, up)
    }

    /// `n`-th root of a nonnegative dyadic, rounded in the given direction.
    fn root_round(&self, n: u32, prec: u32, up: bool) -> Dyadic {
        assert!(self.sign() != Sign::Minus, "root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let n64 = n as i64;
        let target = n64 * (prec as i64 + 2);
        let mut shift = (target - self.mant.bits() as i64).max(0);
        shift += (self.exp - shift).rem_euclid(n64);
        let m = &self.mant << shift as u64;
        let r = if n == 2 { m.sqrt() } else { m.nth_root(n) };
        let exact = num_traits::pow(r.clone(), n as usize) == m;
        let r = if up && !exact { r + 1 } else { r };
        Dyadic::new(r, (self.exp - shift) / n64).round(prec, up)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.sign(), other.sign());
        if sa != sb {
            return sa.cmp(&sb);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &rhs.mant << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.17e}", self.to_f64())
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints.
///
/// Every operation rounds outward to `prec` significant bits, so the exact
/// result of the corresponding real operation always lies inside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval {
            lo: lo.round(prec, false),
            hi: hi.round(prec, true),
            prec,
        }
    }

    pub fn point(d: &Dyadic, prec: u32) -> Self {
        Interval::new(d.clone(), d.clone(), prec)
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        Interval::point(&Dyadic::from_int(n), prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Interval::from_int(&BigInt::from(n), prec)
    }

    pub fn from_rat(q: &BigRat, prec: u32) -> Self {
        let num = Dyadic::from_int(q.numer());
        let den = Dyadic::from_int(q.denom());
        Interval {
            lo: Dyadic::div_round(&num, &den, prec, false),
            hi: Dyadic::div_round(&num, &den, prec, true),
            prec,
        }
    }

    /// `2^e`, exactly.
    pub fn pow2(e: i64, prec: u32) -> Self {
        Interval::point(&Dyadic::pow2(e), prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() != Sign::Plus && self.hi.sign() != Sign::Minus
    }

    pub fn is_positive(&self) -> bool {
        self.lo.sign() == Sign::Plus
    }

    pub fn is_negative(&self) -> bool {
        self.hi.sign() == Sign::Minus
    }

    pub fn contains_rat(&self, q: &BigRat) -> bool {
        &self.lo.to_rat() <= q && q <= &self.hi.to_rat()
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// `Some(true)` if every point is `< other`, `Some(false)` if every point
    /// is `≥ other`, `None` while the enclosures overlap.
    pub fn lt(&self, other: &Interval) -> Option<bool> {
        if self.hi < other.lo {
            Some(true)
        } else if self.lo >= other.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn gt(&self, other: &Interval) -> Option<bool> {
        other.lt(self)
    }

    pub fn abs(&self) -> Interval {
        if self.lo.sign() != Sign::Minus {
            self.clone()
        } else if self.hi.sign() != Sign::Plus {
            -self
        } else {
            let hi = (-&self.lo).max(self.hi.clone());
            Interval {
                lo: Dyadic::zero(),
                hi,
                prec: self.prec,
            }
        }
    }

    pub fn square(&self) -> Interval {
        let a = self.abs();
        &a * &a
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    /// `1/x`, or `None` if the interval contains zero.
    pub fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        let one = Dyadic::from_int(&BigInt::one());
        Some(Interval {
            lo: Dyadic::div_round(&one, &self.hi, self.prec, false),
            hi: Dyadic::div_round(&one, &self.lo, self.prec, true),
            prec: self.prec,
        })
    }

    pub fn div(&self, other: &Interval) -> Option<Interval> {
        Some(self * &other.recip()?)
    }

    /// Square root; negative parts of the interval are clipped at zero.
    pub fn sqrt(&self) -> Option<Interval> {
        self.nth_root(2)
    }

    pub fn nth_root(&self, n: u32) -> Option<Interval> {
        assert!(n >= 1);
        if self.is_negative() {
            return None;
        }
        let lo = if self.lo.sign() == Sign::Minus {
            Dyadic::zero()
        } else {
            self.lo.clone()
        };
        Some(Interval {
            lo: lo.root_round(n, self.prec, false),
            hi: self.hi.root_round(n, self.prec, true),
            prec: self.prec,
        })
    }

    /// Integer power; negative exponents need an interval free of zero.
    pub fn powi(&self, e: i64) -> Option<Interval> {
        if e < 0 {
            return self.recip()?.powi(-e);
        }
        let mut base = self.clone();
        let mut acc = Interval::from_i64(1, self.prec);
        let mut k = e as u64;
        let odd_power = k % 2 == 1;
        if !odd_power {
            base = base.abs();
        }
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        Some(acc)
    }

    /// `x^{p/q}` for a positive interval.
    pub fn pow_ratio(&self, p: i64, q: u32) -> Option<Interval> {
        if !self.is_positive() {
            return None;
        }
        let g = p.unsigned_abs().gcd(&(q as u64));
        let (p, q) = (p / g as i64, q / g as u32);
        self.nth_root(q)?.powi(p)
    }

    pub fn pow_rat(&self, e: &BigRat) -> Option<Interval> {
        let p = e.numer().to_i64()?;
        let q = e.denom().to_u32()?;
        self.pow_ratio(p, q)
    }

    pub fn with_precision(&self, prec: u32) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo.to_f64() + self.hi.to_f64())
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        let prec = self.prec.max(rhs.prec);
        Interval {
            lo: (&self.lo + &rhs.lo).round(prec, false),
            hi: (&self.hi + &rhs.hi).round(prec, true),
            prec,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        self + &(-rhs)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            prec: self.prec,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let prec = self.prec.max(rhs.prec);
        let (lo, hi) = if self.lo.sign() != Sign::Minus && rhs.lo.sign() != Sign::Minus {
            (&self.lo * &rhs.lo, &self.hi * &rhs.hi)
        } else {
            let products = [
                &self.lo * &rhs.lo,
                &self.lo * &rhs.hi,
                &self.hi * &rhs.lo,
                &self.hi * &rhs.hi,
            ];
            let lo = products.iter().min().cloned().unwrap();
            let hi = products.iter().max().cloned().unwrap();
            (lo, hi)
        };
        Interval {
            lo: lo.round(prec, false),
            hi: hi.round(prec, true),
            prec,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Enclosure of `√n` whose relative width is at most `2^-bits`.
pub fn interval_from_sqrt(n: &BigInt, bits: u32) -> Interval {
    Interval::from_int(n, bits + 2)
        .sqrt()
        .expect("square root of a nonnegative integer")
}

struct PiFixed {
    center: BigInt,
    err: BigInt,
    bits: u64,
}

/// `atan(1/x)·2^bits` by the alternating series; returns the truncated sum and
/// a bound on its error in units of `2^-bits`.
fn atan_inv_fixed(x: u64, bits: u64) -> (BigInt, BigInt) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << bits) / &x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    (sum, BigInt::from(k + 2))
}

fn pi_fixed() -> &'static PiFixed {
    static PI: OnceLock<PiFixed> = OnceLock::new();
    PI.get_or_init(|| {
        let bits = MAX_PRECISION as u64 + 64;
        let (a5, e5) = atan_inv_fixed(5, bits);
        let (a239, e239) = atan_inv_fixed(239, bits);
        PiFixed {
            center: a5 * 16 - a239 * 4,
            err: e5 * 16 + e239 * 4,
            bits,
        }
    })
}

/// Enclosure of π at the requested precision (Machin's formula, cached).
pub fn pi(prec: u32) -> Interval {
    let p = pi_fixed();
    let e = -(p.bits as i64);
    Interval::new(
        Dyadic::new(&p.center - &p.err, e),
        Dyadic::new(&p.center + &p.err, e),
        prec,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;
    use proptest::prelude::*;

    fn newton_sqrt_bounds(n: u64, iterations: usize) -> (BigRat, BigRat) {
        // Newton from above stays above √n; n/x is then below it.
        let n = BigRat::from_integer(BigInt::from(n));
        let mut x = &n + BigRat::one();
        for _ in 0..iterations {
            x = (&x + &n / &x) / BigInt::from(2);
        }
        (&n / &x, x)
    }

    #[test]
    fn negative_shift_rounds_toward_minus_infinity() {
        assert_eq!(shr_floor(&BigInt::from(-5), 1), BigInt::from(-3));
        assert_eq!(shr_ceil(&BigInt::from(-5), 1), BigInt::from(-2));
        assert_eq!(shr_floor(&BigInt::from(5), 1), BigInt::from(2));
        assert_eq!(shr_ceil(&BigInt::from(5), 1), BigInt::from(3));
    }

    #[test]
    fn sqrt_of_perfect_squares_is_exact() {
        let four = interval_from_sqrt(&BigInt::from(4), 7);
        assert_eq!(four.lo(), &Dyadic::from_int(&BigInt::from(2)));
        assert_eq!(four.hi(), &Dyadic::from_int(&BigInt::from(2)));
        let zero = interval_from_sqrt(&BigInt::from(0), 7);
        assert!(zero.lo().is_zero() && zero.hi().is_zero());
    }

    #[test]
    fn sqrt_two_against_newton_oracle() {
        let (below, above) = newton_sqrt_bounds(2, 8);
        let r = interval_from_sqrt(&BigInt::from(2), 30);
        assert!(r.lo().to_rat() <= above && r.hi().to_rat() >= below);
        // width ≤ 2^-30·√2 < 2^-30·(√2 upper bound)
        let bound = above / BigRat::from_integer(BigInt::one() << 30u32);
        assert!(r.width().to_rat() <= bound);
    }

    #[test]
    fn pi_enclosure_is_tight_and_correct() {
        let p = pi(MAX_PRECISION);
        assert!(p.width().to_rat() < BigRat::new(BigInt::one(), BigInt::one() << 4000u32));
        // 355/113 > π > 333/106
        assert!(p.hi().to_rat() < rat(355, 113));
        assert!(p.lo().to_rat() > rat(333, 106));
        assert!((p.mid_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn rational_powers() {
        let x = Interval::from_i64(16, 128);
        let y = x.pow_ratio(5, 4).unwrap(); // 32
        assert!(y.contains(&Dyadic::from_int(&BigInt::from(32))));
        let z = x.pow_ratio(-5, 4).unwrap();
        assert!(z.contains_rat(&rat(1, 32)));
        assert!(Interval::from_i64(-1, 64).pow_ratio(1, 2).is_none());
    }

    #[test]
    fn comparisons_are_three_valued() {
        let a = Interval::from_rat(&rat(1, 3), 64);
        let b = Interval::from_rat(&rat(1, 2), 64);
        assert_eq!(a.lt(&b), Some(true));
        assert_eq!(b.lt(&a), Some(false));
        assert_eq!(a.lt(&a), None);
    }

    #[test]
    fn ladder_escalates_until_decided() {
        let mut seen = Vec::new();
        let r = precision_ladder(|p| {
            seen.push(p);
            (p >= 512).then_some(p)
        });
        assert_eq!(r, Some(512));
        assert_eq!(seen, vec![128, 256, 512]);
        assert_eq!(precision_ladder(|_| None::<()>), None);
    }

    fn arb_rat() -> impl Strategy<Value = BigRat> {
        (-1_000_000i64..1_000_000, 1i64..100_000).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn enclosures_contain_exact_results(p in arb_rat(), q in arb_rat(), prec in 8u32..200) {
            let ip = Interval::from_rat(&p, prec);
            let iq = Interval::from_rat(&q, prec);
            prop_assert!(ip.contains_rat(&p));
            prop_assert!((&ip + &iq).contains_rat(&(&p + &q)));
            prop_assert!((&ip - &iq).contains_rat(&(&p - &q)));
            prop_assert!((&ip * &iq).contains_rat(&(&p * &q)));
            if let Some(d) = ip.div(&iq) {
                prop_assert!(d.contains_rat(&(&p / &q)));
            }
            prop_assert!(ip.powi(3).unwrap().contains_rat(&(&p * &p * &p)));
            let sq = (&p * &p).clone();
            let root = Interval::from_rat(&sq, prec).sqrt().unwrap();
            prop_assert!(root.contains_rat(&num_traits::Signed::abs(&p)));
        }
    }
}
