//! Powers of `τ = √(t+1) + √t` and the Pell-type equation `aX² − bY² = 1`.
//!
//! Odd powers are written `τ^{2k+1} = V·√(t+1) + W·√t`, even powers
//! `τ^{2k} = T + U·√(t(t+1))`.  Both are generated by multiplying by
//! `τ² = 2t+1 + 2√(t(t+1))`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::exact_arith::{is_perfect_square, is_perfect_square_u128};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellContext {
    t: BigInt,
    two_t: BigInt,
    two_t_plus_one: BigInt,
    two_t_plus_two: BigInt,
    two_t_t1: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddPower {
    pub k: u32,
    /// Coefficient of `√(t+1)` in `τ^{2k+1}`.
    #[serde(serialize_with = "crate::ser::bigint")]
    pub v: BigInt,
    /// Coefficient of `√t` in `τ^{2k+1}`.
    #[serde(serialize_with = "crate::ser::bigint")]
    pub w: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenPower {
    pub k: u32,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub t_k: BigInt,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub u_k: BigInt,
}

impl PellContext {
    pub fn new(t: impl Into<BigInt>) -> Result<Self> {
        let t = t.into();
        if t < BigInt::one() {
            return Err(Error::Precondition(format!("t must be ≥ 1, got {t}")));
        }
        Ok(PellContext {
            two_t: &t * 2,
            two_t_plus_one: &t * 2 + 1,
            two_t_plus_two: &t * 2 + 2,
            two_t_t1: &t * (&t + 1) * 2,
            t,
        })
    }

    pub fn t(&self) -> &BigInt {
        &self.t
    }

    fn step_odd(&self, p: &OddPower) -> OddPower {
        OddPower {
            k: p.k + 1,
            v: &self.two_t_plus_one * &p.v + &self.two_t * &p.w,
            w: &self.two_t_plus_two * &p.v + &self.two_t_plus_one * &p.w,
        }
    }

    fn step_even(&self, p: &EvenPower) -> EvenPower {
        EvenPower {
            k: p.k + 1,
            t_k: &self.two_t_plus_one * &p.t_k + &self.two_t_t1 * &p.u_k,
            u_k: &p.t_k * 2 + &self.two_t_plus_one * &p.u_k,
        }
    }

    /// `τ¹, τ³, τ⁵, …` without end.
    pub fn odd_powers(&self) -> impl Iterator<Item = OddPower> + '_ {
        let first = OddPower {
            k: 0,
            v: BigInt::one(),
            w: BigInt::one(),
        };
        std::iter::successors(Some(first), move |p| Some(self.step_odd(p)))
    }

    /// `τ⁰, τ², τ⁴, …` without end.
    pub fn even_powers(&self) -> impl Iterator<Item = EvenPower> + '_ {
        let first = EvenPower {
            k: 0,
            t_k: BigInt::one(),
            u_k: BigInt::zero(),
        };
        std::iter::successors(Some(first), move |p| Some(self.step_even(p)))
    }

    pub fn odd_power(&self, k: u32) -> OddPower {
        self.odd_powers().nth(k as usize).unwrap()
    }

    pub fn even_power(&self, k: u32) -> EvenPower {
        self.even_powers().nth(k as usize).unwrap()
    }

    /// `(t+1)V² − tW²`, which is 1 for every odd power.
    pub fn odd_norm(&self, p: &OddPower) -> BigInt {
        (&self.t + 1) * &p.v * &p.v - &self.t * &p.w * &p.w
    }

    /// `T² − t(t+1)U²`, which is 1 for every even power.
    pub fn even_norm(&self, p: &EvenPower) -> BigInt {
        &p.t_k * &p.t_k - &self.t * (&self.t + 1) * &p.u_k * &p.u_k
    }
}

pub fn odd_power(ctx: &PellContext, k: u32) -> OddPower {
    ctx.odd_power(k)
}

pub fn even_power(ctx: &PellContext, k: u32) -> EvenPower {
    ctx.even_power(k)
}

/// `V₃ = 1 + 4t`.
pub fn v3_formula(t: &BigInt) -> BigInt {
    t * 4 + 1
}

/// `V₇ = 64t³ + 80t² + 24t + 1`.
pub fn v7_closed(t: u128) -> u128 {
    ((64 * t + 80) * t + 24) * t + 1
}

/// `V₁₁ = x⁵ + 9x⁴ + 28x³ + 35x² + 15x + 1` with `x = 4t`.
pub fn v11_closed(t: u128) -> u128 {
    let x = 4 * t;
    ((((x + 9) * x + 28) * x + 35) * x + 15) * x + 1
}

fn v7_closed_big(t: &BigInt) -> BigInt {
    ((t * 64 + 80) * t + 24) * t + 1
}

fn v11_closed_big(t: &BigInt) -> BigInt {
    let x = t * 4;
    ((((&x + 9) * &x + 28) * &x + 35) * &x + 15) * &x + 1
}

/// Largest `t` for which `V₁₁(t)` fits in a `u128`.
const U128_SCAN_LIMIT: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanHit {
    pub t: u64,
    /// 7 or 11.
    pub index: u32,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub root: BigInt,
}

fn scan_one(t: u64) -> Vec<ScanHit> {
    let mut hits = Vec::new();
    let mut record = |index, root: Option<BigInt>| {
        if let Some(root) = root {
            hits.push(ScanHit { t, index, root });
        }
    };
    if t <= U128_SCAN_LIMIT {
        let t = t as u128;
        record(7, is_perfect_square_u128(v7_closed(t)).map(BigInt::from));
        record(11, is_perfect_square_u128(v11_closed(t)).map(BigInt::from));
    } else {
        let t = BigInt::from(t);
        record(7, is_perfect_square(&v7_closed_big(&t)));
        record(11, is_perfect_square(&v11_closed_big(&t)));
    }
    hits
}

/// Every `t ∈ [t_lo, t_hi]` at which `V₇` or `V₁₁` is a perfect square,
/// ordered by `t` then index.
pub fn v7_v11_square_scan(t_lo: u64, t_hi: u64) -> Result<Vec<ScanHit>> {
    if t_lo < 1 {
        return Err(Error::Precondition("scan needs t_lo ≥ 1".into()));
    }
    if t_hi < t_lo {
        return Ok(Vec::new());
    }
    Ok((t_lo..=t_hi).into_par_iter().flat_map_iter(scan_one).collect())
}

/// Minimal positive solution of `a·v² − b·w² = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PellFundamental {
    #[serde(serialize_with = "crate::ser::bigint")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub b: BigInt,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub v: BigInt,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub w: BigInt,
}

/// Minimal positive `(v, w)` with `a·v² − b·w² = 1`, or `None` if there is
/// no solution.
///
/// Expands `√(b/a) = (0 + √(ab))/a` as a quadratic irrational `(P + √D)/Q`.
/// With convergents `p_k/q_k`, `a·p_{k−1}² − b·q_{k−1}² = (−1)^k·Q_k`, and by
/// Legendre's criterion every solution is a convergent, so it suffices to look
/// for `Q_k = 1` at even `k`.  The `(P, Q)` states are eventually periodic;
/// after the pre-period and two full periods every parity has been seen.
pub fn pell_fundamental(a: &BigInt, b: &BigInt) -> Result<Option<PellFundamental>> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::Precondition("a and b must be positive".into()));
    }
    let d = a * b;
    let root = d.sqrt();
    if &root * &root == d {
        return Err(Error::DegeneratePell {
            a: a.to_string(),
            b: b.to_string(),
        });
    }

    let (mut p, mut q) = (BigInt::zero(), a.clone());
    // convergents p_{k−1}/q_{k−1} and p_{k−2}/q_{k−2}
    let (mut num, mut num_prev) = (BigInt::one(), BigInt::zero());
    let (mut den, mut den_prev) = (BigInt::zero(), BigInt::one());
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut stop_at: Option<usize> = None;

    for k in 0usize.. {
        if k > 0 && k % 2 == 0 && q.is_one() {
            debug_assert_eq!(a * &num * &num - b * &den * &den, BigInt::one());
            return Ok(Some(PellFundamental {
                a: a.clone(),
                b: b.clone(),
                v: num,
                w: den,
            }));
        }
        match stop_at {
            Some(end) if k >= end => return Ok(None),
            Some(_) => {}
            None => {
                if let Some(&j) = seen.get(&(p.clone(), q.clone())) {
                    stop_at = Some(j + 2 * (k - j));
                } else {
                    seen.insert((p.clone(), q.clone()), k);
                }
            }
        }
        let a_k = (&p + &root).div_floor(&q);
        let next_num = &a_k * &num + &num_prev;
        let next_den = &a_k * &den + &den_prev;
        num_prev = std::mem::replace(&mut num, next_num);
        den_prev = std::mem::replace(&mut den, next_den);
        let p_next = &a_k * &q - &p;
        let q_next = (&d - &p_next * &p_next) / &q;
        p = p_next;
        q = q_next;
    }
    unreachable!()
}

/// `V_{4n+3} − (t·U_{n+1}² + V_{2n+1}²)`; zero for every `n`.
pub fn cross_identity_defect(ctx: &PellContext, n: u32) -> BigInt {
    let v4n3 = ctx.odd_power(2 * n + 1).v;
    let v2n1 = ctx.odd_power(n).v;
    let u = ctx.even_power(n + 1).u_k;
    v4n3 - (ctx.t() * &u * &u + &v2n1 * &v2n1)
}

/// `V_{2n+1} − (T_n + t·U_n)`; zero for every `n`.
pub fn odd_even_defect(ctx: &PellContext, n: u32) -> BigInt {
    let e = ctx.even_power(n);
    ctx.odd_power(n).v - (&e.t_k + ctx.t() * &e.u_k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(t: i64) -> PellContext {
        PellContext::new(t).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn odd_power_examples() {
        let p = odd_power(&ctx(7), 0);
        assert_eq!((p.v, p.w), (big(1), big(1)));
        let p = odd_power(&ctx(1), 3);
        assert_eq!((p.v, p.w), (big(169), big(239)));
        let p = odd_power(&ctx(2), 1);
        assert_eq!((p.v, p.w), (big(9), big(11)));
    }

    #[test]
    fn even_power_examples() {
        let p = even_power(&ctx(3), 0);
        assert_eq!((p.t_k, p.u_k), (big(1), big(0)));
        let p = even_power(&ctx(2), 1);
        assert_eq!((p.t_k, p.u_k), (big(5), big(2)));
        let p = even_power(&ctx(2), 2);
        assert_eq!((p.t_k, p.u_k), (big(49), big(20)));
    }

    #[test]
    fn t_must_be_positive() {
        assert!(PellContext::new(0).is_err());
    }

    #[test]
    fn v3_matches_recurrence() {
        assert_eq!(v3_formula(&big(2)), big(9));
        assert_eq!(v3_formula(&big(1)), big(5));
        assert_eq!(v3_formula(&big(0)), big(1));
        for t in 1..200 {
            assert_eq!(v3_formula(&big(t)), ctx(t).odd_power(1).v);
        }
    }

    #[test]
    fn closed_forms_match_recurrence() {
        for t in 1..300i64 {
            let c = ctx(t);
            assert_eq!(BigInt::from(v7_closed(t as u128)), c.odd_power(3).v);
            assert_eq!(BigInt::from(v11_closed(t as u128)), c.odd_power(5).v);
            assert_eq!(v7_closed_big(&big(t)), c.odd_power(3).v);
            assert_eq!(v11_closed_big(&big(t)), c.odd_power(5).v);
        }
    }

    #[test]
    fn norms_hold_for_small_parameters() {
        for t in 1..=500 {
            let c = ctx(t);
            for p in c.odd_powers().take(31) {
                assert!(c.odd_norm(&p).is_one(), "t={t} k={}", p.k);
            }
            for p in c.even_powers().take(31) {
                assert!(c.even_norm(&p).is_one(), "t={t} k={}", p.k);
            }
        }
    }

    #[test]
    fn cross_identities() {
        let c = ctx(2);
        assert_eq!(c.odd_power(3).v, big(881));
        assert_eq!(c.even_power(2).u_k, big(20));
        assert_eq!(c.odd_power(1).v, big(9));
        for t in 1..=100 {
            let c = ctx(t);
            for n in 0..=10 {
                assert!(cross_identity_defect(&c, n).is_zero(), "t={t} n={n}");
                assert!(odd_even_defect(&c, n).is_zero(), "t={t} n={n}");
                let e = c.even_power(n);
                let e1 = c.even_power(n + 1);
                assert_eq!(e1.u_k, &e.t_k * 2 + (c.t() * 2 + 1) * &e.u_k);
                assert!(e.t_k.gcd(&e.u_k).is_one());
            }
        }
    }

    #[test]
    fn scan_finds_the_small_exception() {
        let hits = v7_v11_square_scan(1, 1).unwrap();
        assert_eq!(
            hits,
            vec![ScanHit {
                t: 1,
                index: 7,
                root: big(13)
            }]
        );
        let hits = v7_v11_square_scan(2, 204).unwrap();
        assert!(hits.iter().all(|h| h.index != 7), "{hits:?}");
        assert!(v7_v11_square_scan(0, 3).is_err());
    }

    #[test]
    fn big_path_agrees_with_u128_path() {
        for t in [1u64, 2, 3, 204, 205, 9_999_999] {
            let small = scan_one(t);
            let tb = big(t as i64);
            let big_hits: Vec<u32> = [(7, v7_closed_big(&tb)), (11, v11_closed_big(&tb))]
                .into_iter()
                .filter(|(_, v)| is_perfect_square(v).is_some())
                .map(|(i, _)| i)
                .collect();
            assert_eq!(small.iter().map(|h| h.index).collect::<Vec<_>>(), big_hits);
        }
        assert!(scan_one(U128_SCAN_LIMIT + 1).is_empty());
    }

    #[test]
    fn fundamental_examples() {
        let f = pell_fundamental(&big(3), &big(2)).unwrap().unwrap();
        assert_eq!((f.v, f.w), (big(1), big(1)));
        let f = pell_fundamental(&big(2), &big(7)).unwrap().unwrap();
        assert_eq!((f.v, f.w), (big(2), big(1)));
        assert!(pell_fundamental(&big(2), &big(3)).unwrap().is_none());
        assert!(matches!(
            pell_fundamental(&big(2), &big(8)),
            Err(Error::DegeneratePell { .. })
        ));
        let f = pell_fundamental(&big(1), &big(61)).unwrap().unwrap();
        assert_eq!((f.v, f.w), (big(1766319049), big(226153980)));
    }

    #[test]
    fn fundamental_is_minimal_against_search() {
        for a in 1..=50i64 {
            for b in 1..=50i64 {
                let ab = BigInt::from(a * b);
                if is_perfect_square(&ab).is_some() {
                    continue;
                }
                let brute = (1..=10_000i64).find_map(|w| {
                    let rhs = 1 + b * w * w;
                    if rhs % a != 0 {
                        return None;
                    }
                    let v = is_perfect_square_u128((rhs / a) as u128)?;
                    Some((big(v as i64), big(w)))
                });
                let cf = pell_fundamental(&big(a), &big(b)).unwrap();
                match (cf, brute) {
                    (Some(f), Some((v, w))) => assert_eq!((f.v, f.w), (v, w), "a={a} b={b}"),
                    (Some(f), None) => assert!(f.w > big(10_000), "a={a} b={b}"),
                    (None, found) => assert!(found.is_none(), "a={a} b={b} missed {found:?}"),
                }
            }
        }
    }
}
