use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RatPoly;

/// Exact rational with a positive denominator, always in lowest terms.
pub type BigRat = BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

/// Generalised binomial coefficient `α(α−1)…(α−n+1)/n!`.
pub fn binom_rat(alpha: &BigRat, n: u32) -> BigRat {
    let mut acc = BigRat::one();
    let mut factor = alpha.clone();
    for k in 1..=n {
        acc = acc * &factor / BigInt::from(k);
        factor -= BigInt::one();
    }
    acc
}

/// Ordinary binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binom_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Truncated Maclaurin series of `(1 − z)^{1/4}` through `z^order`.
pub fn quarter_root_series(order: usize) -> RatPoly {
    let quarter = rat(1, 4);
    let coeffs = (0..=order)
        .map(|m| {
            let c = binom_rat(&quarter, m as u32);
            if m % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    RatPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_rat_examples() {
        assert_eq!(binom_rat(&rat(5, 4), 1), rat(5, 4));
        assert_eq!(binom_rat(&rat(1, 4), 2), rat(-3, 32));
        assert_eq!(binom_rat(&rat(1, 4), 2) * BigInt::from(64), rat(-6, 1));
        assert_eq!(binom_rat(&rat(7, 3), 0), BigRat::one());
    }

    #[test]
    fn binom_rat_matches_integer_binomial() {
        for n in 0..12u64 {
            for k in 0..=n {
                let q = binom_rat(&BigRat::from_integer(BigInt::from(n)), k as u32);
                assert_eq!(q, BigRat::from_integer(binom_int(n, k)));
            }
        }
        assert!(binom_int(3, 5).is_zero());
    }

    #[test]
    fn quarter_root_series_examples() {
        assert_eq!(quarter_root_series(0), RatPoly::constant(BigRat::one()));
        assert_eq!(
            quarter_root_series(1),
            RatPoly::new(vec![rat(1, 1), rat(-1, 4)])
        );
        assert_eq!(
            quarter_root_series(3),
            RatPoly::new(vec![rat(1, 1), rat(-1, 4), rat(-3, 32), rat(-7, 128)])
        );
    }

    #[test]
    fn eight_power_clears_quarter_binomials() {
        // the denominators of C(a/4, n) divide 8^n
        let eight = BigInt::from(8);
        for a in -40i64..=40 {
            let alpha = rat(a, 4);
            let mut scale = BigInt::one();
            for n in 0..=40u32 {
                assert!((binom_rat(&alpha, n) * &scale).denom().is_one(), "a={a} n={n}");
                scale *= &eight;
            }
        }
    }
}
