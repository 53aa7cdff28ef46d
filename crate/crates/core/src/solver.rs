//! Enumeration and verification of solutions to `aX⁴ − bY² = 1`: brute force,
//! reduction to the family `(t+1)X⁴ − tY² = 1`, square scanning along the
//! odd-power sequence, and the constructive map to the Thue inequality.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::exact_arith::{is_perfect_square, is_perfect_square_u128};
use crate::pell::{pell_fundamental, PellContext};
use crate::quartic::eval_p;
use crate::quartic::QuarticForm;
use crate::{Error, Result};

pub const DEFAULT_K_MAX: u32 = 40;
pub const DEFAULT_X_MAX: u64 = 1_000_000;

/// Beyond this threshold the sequence has no squares at `V₇`, `V₁₁`.
const SMALL_T_LIMIT: i64 = 204;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "k")]
pub enum Source {
    BruteForce,
    /// `X² = V_{2k+1}` in the family sequence.
    SequenceIndex(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionRecord {
    #[serde(rename = "X", serialize_with = "crate::ser::bigint")]
    pub x: BigInt,
    #[serde(rename = "Y", serialize_with = "crate::ser::bigint")]
    pub y: BigInt,
    pub source: Source,
    pub verified: bool,
}

fn satisfies(a: &BigInt, b: &BigInt, x: &BigInt, y: &BigInt) -> bool {
    let x2 = x * x;
    a * &x2 * &x2 - b * y * y == BigInt::one()
}

impl SolutionRecord {
    fn checked(a: &BigInt, b: &BigInt, x: BigInt, y: BigInt, source: Source) -> Self {
        let verified = satisfies(a, b, &x, &y);
        SolutionRecord { x, y, source, verified }
    }
}

fn check_positive(a: &BigInt, b: &BigInt) -> Result<()> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::Precondition(format!("a and b must be positive, got ({a}, {b})")));
    }
    Ok(())
}

/// All `(X, Y)` with `1 ≤ X ≤ x_max`, `Y ≥ 1` and `aX⁴ − bY² = 1`.
pub fn brute_force(a: &BigInt, b: &BigInt, x_max: u64) -> Result<Vec<SolutionRecord>> {
    check_positive(a, b)?;
    let fits = || -> Option<(u128, u128)> {
        let (au, bu) = (a.to_u128()?, b.to_u128()?);
        let x4 = (x_max as u128).checked_pow(4)?;
        au.checked_mul(x4).filter(|&m| m < u128::MAX / 2)?;
        Some((au, bu))
    };
    let found: Vec<(BigInt, BigInt)> = match fits() {
        Some((au, bu)) => (1..=x_max)
            .into_par_iter()
            .filter_map(|x| {
                let x2 = (x as u128) * (x as u128);
                let n = au * x2 * x2 - 1;
                if n == 0 || n % bu != 0 {
                    return None;
                }
                is_perfect_square_u128(n / bu).map(|y| (BigInt::from(x), BigInt::from(y)))
            })
            .collect(),
        None => (1..=x_max)
            .into_par_iter()
            .filter_map(|x| {
                let x = BigInt::from(x);
                let x2 = &x * &x;
                let n: BigInt = a * &x2 * &x2 - 1;
                let (q, rem) = n.div_rem(b);
                if !rem.is_zero() || !q.is_positive() {
                    return None;
                }
                is_perfect_square(&q).map(|y| (x, y))
            })
            .collect(),
    };
    Ok(found
        .into_iter()
        .map(|(x, y)| SolutionRecord::checked(a, b, x, y, Source::BruteForce))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionStatus {
    Family,
    AIsSquare,
    PellInsolvable,
    V1NotSquare,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionOutcome {
    pub status: ReductionStatus,
    /// `t = a·x⁴ − 1` in family status.
    #[serde(serialize_with = "crate::ser::opt_bigint")]
    pub t: Option<BigInt>,
    /// `v₁ = x²` in family status.
    #[serde(serialize_with = "crate::ser::opt_bigint")]
    pub x: Option<BigInt>,
    /// `(v₁, w₁)`, the fundamental solution of `aV² − bW² = 1`, when it exists.
    #[serde(serialize_with = "crate::ser::bigints")]
    pub fundamental: Vec<BigInt>,
}

/// Routes `aX⁴ − bY² = 1` to the family member `(t+1)X⁴ − tY² = 1`, or says
/// why it cannot.
pub fn reduce(a: &BigInt, b: &BigInt) -> Result<ReductionOutcome> {
    check_positive(a, b)?;
    let outcome = |status, t, x, fundamental| ReductionOutcome {
        status,
        t,
        x,
        fundamental,
    };
    if is_perfect_square(a).is_some() {
        return Ok(outcome(ReductionStatus::AIsSquare, None, None, vec![]));
    }
    let fundamental = match pell_fundamental(a, b) {
        Ok(Some(f)) => f,
        // a non-square with ab square: the squarefree parts agree and the
        // equation has no solution.
        Ok(None) | Err(Error::DegeneratePell { .. }) => {
            return Ok(outcome(ReductionStatus::PellInsolvable, None, None, vec![]))
        }
        Err(e) => return Err(e),
    };
    let pair = vec![fundamental.v.clone(), fundamental.w.clone()];
    match is_perfect_square(&fundamental.v) {
        None => Ok(outcome(ReductionStatus::V1NotSquare, None, None, pair)),
        Some(x) => {
            let x2 = &x * &x;
            let t = a * &x2 * &x2 - 1;
            Ok(outcome(ReductionStatus::Family, Some(t), Some(x), pair))
        }
    }
}

fn is_pronic(t: &BigInt) -> bool {
    // t = m² + m ⇔ 4t + 1 is a square
    is_perfect_square(&(t * 4 + 1)).is_some()
}

/// Solutions of `(t+1)X⁴ − tY² = 1`: brute force up to `x_max` merged with
/// the squares among `V_1, V_3, …, V_{2k_max+1}` (where `Y = W_{2k+1}`).
pub fn family_solve(t: &BigInt, k_max: u32, x_max: u64) -> Result<Vec<SolutionRecord>> {
    let ctx = PellContext::new(t.clone())?;
    let (a, b) = (t + 1, t.clone());
    let mut sequence = Vec::new();
    for p in ctx.odd_powers().take(k_max as usize + 1) {
        if let Some(x) = is_perfect_square(&p.v) {
            sequence.push(SolutionRecord::checked(&a, &b, x, p.w.clone(), Source::SequenceIndex(p.k)));
        }
    }
    let square_indices: Vec<u32> = sequence
        .iter()
        .filter_map(|s| match s.source {
            Source::SequenceIndex(k) if k >= 1 => Some(k),
            _ => None,
        })
        .collect();
    if square_indices.contains(&1) {
        if !is_pronic(t) {
            return Err(Error::failed(format!("V_3 is a square at t = {t} but 4t+1 is not")));
        }
        if square_indices.len() > 1 {
            return Err(Error::failed(format!(
                "V_3 is a square at t = {t}, yet so is V_{{2k+1}} for k in {square_indices:?}"
            )));
        }
    } else if is_pronic(t) {
        return Err(Error::failed(format!("t = {t} = m² + m but V_3 is not a square")));
    }
    if t > &BigInt::from(SMALL_T_LIMIT) {
        if let Some(k) = square_indices.iter().find(|&&k| k == 3 || k == 5) {
            return Err(Error::failed(format!("V_{} is a square at t = {t} > 204", 2 * k + 1)));
        }
    }

    let mut merged = sequence;
    for rec in brute_force(&a, &b, x_max)? {
        if !merged.iter().any(|s| s.x == rec.x) {
            merged.push(rec);
        }
    }
    merged.sort_by(|p, q| p.x.cmp(&q.x));
    finish(&format!("({}+1)X^4 - {}Y^2 = 1", t, t), merged)
}

fn finish(equation: &str, records: Vec<SolutionRecord>) -> Result<Vec<SolutionRecord>> {
    if let Some(bad) = records.iter().find(|r| !r.verified) {
        return Err(Error::failed(format!("({}, {}) does not satisfy {equation}", bad.x, bad.y)));
    }
    if records.len() > 2 {
        return Err(Error::ConjectureViolation {
            equation: equation.to_string(),
            count: records.len(),
        });
    }
    Ok(records)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub k_max: u32,
    pub x_max: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            k_max: DEFAULT_K_MAX,
            x_max: DEFAULT_X_MAX,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub solutions: Vec<SolutionRecord>,
    pub reduction: ReductionOutcome,
    /// Brute-force solutions up to `x_max`.
    pub brute_force: Vec<SolutionRecord>,
    /// Solutions obtained through the reduction, mapped back to `(a, b)`.
    pub via_reduction: Vec<SolutionRecord>,
    /// Both paths agree on every solution with `X ≤ x_max`.
    pub paths_agree: bool,
    pub limits: Limits,
    pub note: Option<String>,
}

/// Solves `aX⁴ − bY² = 1` within `limits`.  Family solutions `(X_f, Y_f)`
/// map back as `X = x·X_f`, `Y = w₁·Y_f`, since `v_{2k+1} = x²·V_{2k+1}` and
/// `w_{2k+1} = w₁·W_{2k+1}`.
pub fn solve(a: &BigInt, b: &BigInt, limits: Limits) -> Result<SolveReport> {
    let reduction = reduce(a, b)?;
    let brute = brute_force(a, b, limits.x_max)?;
    let mut via_reduction = Vec::new();
    let mut note = None;
    match reduction.status {
        ReductionStatus::Family => {
            let t = reduction.t.as_ref().expect("family status carries t");
            let x = reduction.x.as_ref().expect("family status carries x");
            let w = &reduction.fundamental[1];
            let xf_max = (limits.x_max / x.to_u64().unwrap_or(u64::MAX)).max(1);
            for rec in family_solve(t, limits.k_max, xf_max)? {
                via_reduction.push(SolutionRecord::checked(a, b, x * &rec.x, w * &rec.y, rec.source));
            }
        }
        ReductionStatus::AIsSquare => {
            note = Some("a is a perfect square: at most one solution is known to exist; brute force only".into());
        }
        ReductionStatus::PellInsolvable => {
            note = Some("aV^2 - bW^2 = 1 has no solution".into());
        }
        ReductionStatus::V1NotSquare => {
            note = Some("v1 is not a square, so no odd power yields a solution".into());
        }
    }
    let x_max = BigInt::from(limits.x_max);
    let within = |v: &[SolutionRecord]| -> Vec<(BigInt, BigInt)> {
        v.iter().filter(|r| r.x <= x_max).map(|r| (r.x.clone(), r.y.clone())).collect()
    };
    let paths_agree = reduction.status != ReductionStatus::Family || within(&brute) == within(&via_reduction);
    let mut solutions = via_reduction.clone();
    for rec in &brute {
        if !solutions.iter().any(|s| s.x == rec.x) {
            solutions.push(rec.clone());
        }
    }
    solutions.sort_by(|p, q| p.x.cmp(&q.x));
    let solutions = finish(&format!("{a}X^4 - {b}Y^2 = 1"), solutions)?;
    if !paths_agree {
        return Err(Error::failed(format!(
            "brute force and reduction disagree for ({a}, {b}) below X = {}",
            limits.x_max
        )));
    }
    Ok(SolveReport {
        solutions,
        reduction,
        brute_force: brute,
        via_reduction,
        paths_agree,
        limits,
        note,
    })
}

/// [`family_solve`] for every `t` in `t_lo..=t_hi`, in parallel, in order.
pub fn family_range(t_lo: u64, t_hi: u64, k_max: u32, x_max: u64) -> Vec<(u64, Result<Vec<SolutionRecord>>)> {
    (t_lo.max(1)..=t_hi)
        .into_par_iter()
        .map(|t| (t, family_solve(&BigInt::from(t), k_max, x_max)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThueWitness {
    pub n: u32,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub z: BigInt,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub t1: BigInt,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub t2: BigInt,
    #[serde(rename = "G", serialize_with = "crate::ser::bigint")]
    pub g: BigInt,
    #[serde(rename = "H", serialize_with = "crate::ser::bigint")]
    pub h: BigInt,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub x: BigInt,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub y: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum WitnessOutcome {
    /// `V_{4n+3}` is not a perfect square.
    NotSquare,
    /// `n = 0`: `V₃` is a square, the `t = m² + m` case handled directly.
    PronicCase {
        #[serde(serialize_with = "crate::ser::bigint")]
        z: BigInt,
    },
    Witness(ThueWitness),
}

fn divisors(t: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    for d in 1..=t.sqrt() {
        if t % d == 0 {
            small.push(d);
            if d != t / d {
                large.push(t / d);
            }
        }
    }
    small.extend(large.into_iter().rev());
    small
}

/// If `V_{4n+3} = z²`, splits `z ∓ (T_n + tU_n)` as `2t₁G²`, `2t₂H²` and
/// returns the coprime pair `(x, y) = (−t₁G, H)` with `P(x, y) = t₁²`.
pub fn thue_witness(t: &BigInt, n: u32) -> Result<WitnessOutcome> {
    let ctx = PellContext::new(t.clone())?;
    let v = ctx.odd_power(2 * n + 1).v;
    let Some(z) = is_perfect_square(&v) else {
        return Ok(WitnessOutcome::NotSquare);
    };
    if n == 0 {
        return Ok(WitnessOutcome::PronicCase { z });
    }
    let tu = t
        .to_u64()
        .ok_or_else(|| Error::Precondition(format!("thue_witness enumerates divisors of t; t = {t} is too large")))?;
    let en = ctx.even_power(n);
    let u_next = ctx.even_power(n + 1).u_k;
    let s = &en.t_k + t * &en.u_k;
    let (d1, d2) = (&z - &s, &z + &s);
    let form = QuarticForm::new(t.clone())?;
    for t1 in divisors(tu) {
        let (t1, t2) = (BigInt::from(t1), BigInt::from(tu / t1));
        let (q1, r1) = d1.div_rem(&(&t1 * 2));
        let (q2, r2) = d2.div_rem(&(&t2 * 2));
        if !r1.is_zero() || !r2.is_zero() {
            continue;
        }
        let (Some(g), Some(h)) = (is_perfect_square(&q1), is_perfect_square(&q2)) else {
            continue;
        };
        if &g * &h * 2 != u_next || g.is_zero() {
            continue;
        }
        let x = -(&t1 * &g);
        let y = h.clone();
        let w = ThueWitness {
            n,
            z: z.clone(),
            t1: t1.clone(),
            t2,
            g,
            h,
            x,
            y,
        };
        verify_witness(t, &ctx, &form, &w)?;
        return Ok(WitnessOutcome::Witness(w));
    }
    Err(Error::failed(format!(
        "V_{} = {z}² at t = {t} but no divisor split of z ∓ (T_n + tU_n) exists",
        4 * n + 3
    )))
}

fn verify_witness(t: &BigInt, ctx: &PellContext, form: &QuarticForm, w: &ThueWitness) -> Result<()> {
    let en = ctx.even_power(w.n);
    let u_next = ctx.even_power(w.n + 1).u_k;
    let s = &en.t_k + t * &en.u_k;
    let v = ctx.odd_power(2 * w.n + 1).v;
    let checks = [
        ("t = t1·t2", &w.t1 * &w.t2 == *t),
        ("z² = V_{4n+3}", &w.z * &w.z == v),
        ("z − s = 2t1G²", &w.z - &s == &w.t1 * &w.g * &w.g * 2),
        ("z + s = 2t2H²", &w.z + &s == &w.t2 * &w.h * &w.h * 2),
        ("U_{n+1} = 2GH", u_next == &w.g * &w.h * 2),
        ("x = −t1G, y = H", w.x == -(&w.t1 * &w.g) && w.y == w.h),
        ("P(x, y) = t1²", eval_p(form, &w.x, &w.y) == &w.t1 * &w.t1),
        ("gcd(x, y) = 1", w.x.gcd(&w.y).is_one()),
        ("t1 ≤ √t", &w.t1 * &w.t1 <= *t),
        (
            "|xy| = t1GH > 64t³ for n ≥ 3",
            (&w.x * &w.y).abs() == &w.t1 * &w.g * &w.h
                && (w.n < 3 || (&w.x * &w.y).abs() > t * t * t * 64),
        ),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(Error::failed(format!("Thue witness at t = {t}, n = {}: {name} fails", w.n))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn pairs(v: &[SolutionRecord]) -> Vec<(i64, i64)> {
        v.iter().map(|r| (r.x.to_i64().unwrap(), r.y.to_i64().unwrap())).collect()
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(pairs(&brute_force(&big(2), &big(1), 20).unwrap()), [(1, 1), (13, 239)]);
        assert_eq!(pairs(&brute_force(&big(3), &big(2), 10).unwrap()), [(1, 1), (3, 11)]);
        // 5X⁴ − 2Y² = 1 forces Y² ≡ 2 (mod 5): no solutions at all
        assert!(brute_force(&big(5), &big(2), 1000).unwrap().is_empty());
        assert!(brute_force(&big(0), &big(1), 5).is_err());
    }

    #[test]
    fn brute_force_big_path_agrees() {
        let a = BigInt::from(u64::MAX) * 1000 + 2;
        let via_big = brute_force(&a, &big(1), 50).unwrap();
        for r in &via_big {
            assert!(r.verified);
        }
        // the fast path and the big path agree where both apply
        let small = brute_force(&big(2), &big(1), 20).unwrap();
        assert_eq!(small.len(), 2);
    }

    #[test]
    fn reduce_examples() {
        let r = reduce(&big(3), &big(2)).unwrap();
        assert_eq!((r.status, r.t, r.x), (ReductionStatus::Family, Some(big(2)), Some(big(1))));
        let r = reduce(&big(2), &big(1)).unwrap();
        assert_eq!((r.status, r.t, r.x), (ReductionStatus::Family, Some(big(1)), Some(big(1))));
        assert_eq!(reduce(&big(4), &big(3)).unwrap().status, ReductionStatus::AIsSquare);
        assert_eq!(reduce(&big(2), &big(8)).unwrap().status, ReductionStatus::PellInsolvable);
    }

    #[test]
    fn family_examples() {
        let s = family_solve(&big(2), 10, 1000).unwrap();
        assert_eq!(pairs(&s), [(1, 1), (3, 11)]);
        assert_eq!(s[1].source, Source::SequenceIndex(1));
        let s = family_solve(&big(1), 10, 1000).unwrap();
        assert_eq!(pairs(&s), [(1, 1), (13, 239)]);
        assert_eq!(s[1].source, Source::SequenceIndex(3));
        assert_eq!(pairs(&family_solve(&big(5), 20, 1000).unwrap()), [(1, 1)]);
    }

    #[test]
    fn pronic_family() {
        for m in 1..=30i64 {
            let s = family_solve(&big(m * m + m), 40, 10_000).unwrap();
            assert_eq!(pairs(&s), [(1, 1), (2 * m + 1, 4 * m * m + 4 * m + 3)]);
            assert_eq!(s[1].source, Source::SequenceIndex(1));
        }
    }

    #[test]
    fn solve_examples() {
        let lim = Limits { k_max: 40, x_max: 1000 };
        let r = solve(&big(3), &big(2), lim).unwrap();
        assert_eq!(pairs(&r.solutions), [(1, 1), (3, 11)]);
        let r = solve(&big(2), &big(1), lim).unwrap();
        assert_eq!(pairs(&r.solutions), [(1, 1), (13, 239)]);
        assert_eq!(pairs(&r.brute_force), pairs(&r.via_reduction));
        let r = solve(&big(7), &big(3), lim).unwrap();
        assert_eq!(r.solutions, r.brute_force);
        let r = solve(&big(4), &big(3), lim).unwrap();
        assert_eq!(r.reduction.status, ReductionStatus::AIsSquare);
        assert!(r.note.is_some());
    }

    #[test]
    fn solve_agrees_with_brute_force_for_small_coefficients() {
        let lim = Limits { k_max: 40, x_max: 1000 };
        for a in 1..=30 {
            for b in 1..=30 {
                let (a, b) = (big(a), big(b));
                let r = solve(&a, &b, lim).unwrap();
                let within: Vec<_> = r.solutions.iter().filter(|s| s.x <= big(1000)).cloned().collect();
                assert_eq!(pairs(&within), pairs(&brute_force(&a, &b, 1000).unwrap()), "({a}, {b})");
            }
        }
    }

    #[test]
    fn witness_examples() {
        let WitnessOutcome::Witness(w) = thue_witness(&big(1), 1).unwrap() else {
            panic!("expected a witness");
        };
        assert_eq!((w.z.clone(), w.t1.clone(), w.t2.clone()), (big(13), big(1), big(1)));
        assert_eq!((w.g.clone(), w.h.clone(), w.x.clone(), w.y.clone()), (big(2), big(3), big(-2), big(3)));
        assert_eq!(thue_witness(&big(2), 1).unwrap(), WitnessOutcome::NotSquare);
        assert_eq!(thue_witness(&big(6), 0).unwrap(), WitnessOutcome::PronicCase { z: big(5) });
    }

    #[test]
    fn witnesses_below_threshold_are_sound() {
        for t in 1..=204i64 {
            for n in 1..=3 {
                if let WitnessOutcome::Witness(w) = thue_witness(&big(t), n).unwrap() {
                    assert!(big(t) % &w.t1 == big(0));
                }
            }
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), [1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), [1]);
        assert_eq!(divisors(49), [1, 7, 49]);
    }
}
