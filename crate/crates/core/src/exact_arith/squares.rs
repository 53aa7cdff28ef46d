use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive};

/// Quadratic residue masks: bit `r` set iff `r` is a square modulo `m`.
const fn residue_mask(m: u64) -> u128 {
    let mut mask = 0u128;
    let mut i = 0;
    while i < m {
        mask |= 1 << ((i * i) % m);
        i += 1;
    }
    mask
}

const MASK64: u128 = residue_mask(64);
const MASK63: u128 = residue_mask(63);
const MASK65: u128 = residue_mask(65);
const MASK11: u128 = residue_mask(11);

#[inline]
fn passes_filters(r64: u64, r63: u64, r65: u64, r11: u64) -> bool {
    MASK64 >> r64 & 1 == 1
        && MASK63 >> r63 & 1 == 1
        && MASK65 >> r65 & 1 == 1
        && MASK11 >> r11 & 1 == 1
}

/// Square root of `n` if it is a perfect square.
pub fn is_perfect_square_u128(n: u128) -> Option<u128> {
    if !passes_filters(
        (n % 64) as u64,
        (n % 63) as u64,
        (n % 65) as u64,
        (n % 11) as u64,
    ) {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Nonnegative square root of `n` if it is a perfect square.
pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    if let Some(small) = n.to_u128() {
        return is_perfect_square_u128(small).map(BigInt::from);
    }
    // 64·63·65·11 fits comfortably in a u64
    let m = BigInt::from(64u64 * 63 * 65 * 11);
    let r = (n % m).to_u64().expect("residue is small");
    if !passes_filters(r % 64, r % 63, r % 65, r % 11) {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_range_agrees_with_naive_check() {
        for n in 0u128..20_000 {
            let naive = (0..=n).take_while(|k| k * k <= n).any(|k| k * k == n);
            assert_eq!(is_perfect_square_u128(n).is_some(), naive, "{n}");
        }
    }

    #[test]
    fn roots_are_returned() {
        assert_eq!(
            is_perfect_square(&BigInt::from(57121)),
            Some(BigInt::from(239))
        );
        assert_eq!(is_perfect_square(&BigInt::from(0)), Some(BigInt::from(0)));
        assert_eq!(is_perfect_square(&BigInt::from(2)), None);
    }

    #[test]
    fn negatives_are_not_squares() {
        assert!(is_perfect_square(&BigInt::from(-4)).is_none());
    }

    proptest! {
        #[test]
        fn big_squares_and_neighbours(k in 1u128..u128::MAX >> 65) {
            let big = BigInt::from(k) * BigInt::from(k) * BigInt::from(1u128 << 64);
            prop_assert_eq!(is_perfect_square(&big), Some(BigInt::from(k) << 32u32));
            prop_assert!(is_perfect_square(&(&big + 1)).is_none());
            let sq = k * k;
            prop_assert_eq!(is_perfect_square_u128(sq), Some(k));
            prop_assert!(is_perfect_square_u128(sq + 1).is_none());
        }
    }
}
