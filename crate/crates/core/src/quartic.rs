//! The quartic form `P(x, y) = x⁴ + 4tx³y − 6tx²y² − 4t²xy³ + t²y⁴`, its
//! resolvent fourth powers in `ℤ[ω]` (`ω² = −t`), and the real roots of
//! `P(x, 1)`.
//!
//! The resolvents are `ξ⁴ = 4(ω+1)(x − ωy)⁴` and `η⁴ = 4(ω−1)(x + ωy)⁴`, with
//! `ξ⁴ − η⁴ = 8P(x, y)`.  The fourth roots themselves only ever appear as
//! interval enclosures.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact_arith::{
    pi, precision_ladder, BigRat, ComplexInterval, IntForm, Interval, RingElem,
};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticForm {
    t: BigInt,
    form: IntForm,
}

impl QuarticForm {
    pub fn new(t: impl Into<BigInt>) -> Result<Self> {
        let t = t.into();
        if !t.is_positive() {
            return Err(Error::Precondition(format!("t must be ≥ 1, got {t}")));
        }
        let t2 = &t * &t;
        let form = IntForm::new(vec![
            BigInt::one(),
            &t * 4,
            &t * -6,
            &t2 * -4,
            t2,
        ]);
        Ok(QuarticForm { t, form })
    }

    pub fn t(&self) -> &BigInt {
        &self.t
    }

    pub fn form(&self) -> &IntForm {
        &self.form
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.form.eval(x, y)
    }
}

pub fn eval_p(form: &QuarticForm, x: &BigInt, y: &BigInt) -> BigInt {
    form.eval(x, y)
}

/// Resolvent data at an integer point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolventPoint {
    pub x: BigInt,
    pub y: BigInt,
    pub p: BigInt,
    pub xi4: RingElem,
    pub eta4: RingElem,
    /// `z = 1 − η⁴/ξ⁴ = z_num / z_den`, kept as an exact quotient.
    pub z_num: RingElem,
    pub z_den: RingElem,
}

fn omega_d(t: &BigInt) -> BigInt {
    -t
}

/// `ξ⁴ = 4(ω+1)(x − ωy)⁴`.
pub fn xi4(t: &BigInt, x: &BigInt, y: &BigInt) -> RingElem {
    let d = omega_d(t);
    let lin = RingElem::new(x.clone(), -y, &d);
    (&RingElem::new(1, 1, &d) * &lin.pow(4)).scale(&BigInt::from(4))
}

/// `η⁴ = 4(ω−1)(x + ωy)⁴`.
pub fn eta4(t: &BigInt, x: &BigInt, y: &BigInt) -> RingElem {
    let d = omega_d(t);
    let lin = RingElem::new(x.clone(), y.clone(), &d);
    (&RingElem::new(-1, 1, &d) * &lin.pow(4)).scale(&BigInt::from(4))
}

pub fn resolvent(t: &BigInt, x: &BigInt, y: &BigInt) -> Result<ResolventPoint> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::Precondition("resolvent needs (x, y) ≠ (0, 0)".into()));
    }
    let form = QuarticForm::new(t.clone())?;
    let p = form.eval(x, y);
    let xi4 = xi4(t, x, y);
    let eta4 = eta4(t, x, y);
    let diff = &xi4 - &eta4;
    if !(diff.b.is_zero() && diff.a == &p * 8) {
        return Err(Error::failed(format!(
            "ξ⁴ − η⁴ = {diff} but 8P({x}, {y}) = {}",
            &p * 8
        )));
    }
    Ok(ResolventPoint {
        x: x.clone(),
        y: y.clone(),
        z_num: diff,
        z_den: xi4.clone(),
        p,
        xi4,
        eta4,
    })
}

/// `|ξ|⁸ = |ξ⁴|² = 16(t+1)(x² + ty²)⁴`.
pub fn xi_abs8(t: &BigInt, x: &BigInt, y: &BigInt) -> BigInt {
    let q = x * x + t * y * y;
    (t + 1) * num_traits::pow(q, 4) * 16
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RaccoonVerdict {
    /// `xy ≤ 64t³`, so the bound is not claimed.
    NotApplicable,
    Holds,
    Fails,
}

/// For `xy > 64t³`, checks `|ξ|⁴ > 2¹⁶t^{15/2}` in the squared integer form
/// `|ξ|⁸ > 2³²t¹⁵`.
pub fn raccoon_check(t: &BigInt, x: &BigInt, y: &BigInt) -> Result<RaccoonVerdict> {
    if !x.is_positive() || !y.is_positive() {
        return Err(Error::Precondition("raccoon_check needs x, y > 0".into()));
    }
    if x * y <= t * t * t * 64 {
        return Ok(RaccoonVerdict::NotApplicable);
    }
    let rhs = (BigInt::one() << 32u32) * num_traits::pow(t.clone(), 15);
    Ok(if xi_abs8(t, x, y) > rhs {
        RaccoonVerdict::Holds
    } else {
        RaccoonVerdict::Fails
    })
}

/// `r + s·√t` with rational `r`, `s`; exact arithmetic in `ℚ(√t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub r: BigRat,
    pub s: BigRat,
    t: BigInt,
}

impl Surd {
    pub fn new(r: BigRat, s: BigRat, t: &BigInt) -> Self {
        Surd { r, s, t: t.clone() }
    }

    fn rational(r: BigRat, t: &BigInt) -> Self {
        Surd::new(r, BigRat::zero(), t)
    }

    fn add(&self, o: &Surd) -> Surd {
        Surd::new(&self.r + &o.r, &self.s + &o.s, &self.t)
    }

    fn sub(&self, o: &Surd) -> Surd {
        Surd::new(&self.r - &o.r, &self.s - &o.s, &self.t)
    }

    fn mul(&self, o: &Surd) -> Surd {
        let t = BigRat::from_integer(self.t.clone());
        Surd::new(
            &self.r * &o.r + &self.s * &o.s * t,
            &self.r * &o.s + &self.s * &o.r,
            &self.t,
        )
    }

    /// Exact sign, comparing `r²` against `s²t` when the parts disagree.
    pub fn signum(&self) -> Ordering {
        let zero = BigRat::zero();
        let (cr, cs) = (self.r.cmp(&zero), self.s.cmp(&zero));
        match (cr, cs) {
            (Ordering::Equal, c) | (c, Ordering::Equal) => c,
            (a, b) if a == b => a,
            (cr, _) => {
                let r2 = &self.r * &self.r;
                let s2t = &self.s * &self.s * BigRat::from_integer(self.t.clone());
                match r2.cmp(&s2t) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => cr,
                    Ordering::Less => cr.reverse(),
                }
            }
        }
    }

    pub fn abs(&self) -> Surd {
        if self.signum() == Ordering::Less {
            Surd::new(-&self.r, -&self.s, &self.t)
        } else {
            self.clone()
        }
    }

    pub fn to_interval(&self, prec: u32) -> Interval {
        let root = Interval::from_int(&self.t, prec).sqrt().expect("t > 0");
        &Interval::from_rat(&self.r, prec) + &(&Interval::from_rat(&self.s, prec) * &root)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_interval(64).mid_f64()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})·√{}", self.r, self.s, self.t)
    }
}

/// `P(e, 1)` evaluated exactly in `ℚ(√t)`.
fn p_at(t: &BigInt, e: &Surd) -> Surd {
    let tq = BigRat::from_integer(t.clone());
    let c = |q: BigRat| Surd::rational(q, t);
    let mut acc = e.add(&c(&tq * BigRat::from_integer(4.into())));
    acc = acc.mul(e).sub(&c(&tq * BigRat::from_integer(6.into())));
    acc = acc.mul(e).sub(&c(&tq * &tq * BigRat::from_integer(4.into())));
    acc = acc.mul(e).add(&c(&tq * &tq));
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBracket {
    /// 1..=4, matching `β₁..β₄`.
    pub index: u8,
    pub lo: Surd,
    pub hi: Surd,
    /// `hi − lo`, always rational.
    pub width: BigRat,
    pub sign_lo: Ordering,
    pub sign_hi: Ordering,
}

impl RootBracket {
    pub fn sign_changes(&self) -> bool {
        let (a, b) = (self.sign_lo, self.sign_hi);
        a != Ordering::Equal && b != Ordering::Equal && a != b
    }

    pub fn interval(&self, prec: u32) -> Interval {
        self.lo.to_interval(prec).hull(&self.hi.to_interval(prec))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBounds {
    pub t: BigInt,
    pub brackets: Vec<RootBracket>,
}

fn q(n: i64, d: &BigInt) -> BigRat {
    BigRat::new(BigInt::from(n), d.clone())
}

/// The four displayed brackets for the real roots of `P(x, 1)`, with the sign
/// of `P` at each endpoint computed exactly.  No validity check is applied.
pub fn root_brackets(t: &BigInt) -> Vec<RootBracket> {
    let t8 = t * 8;
    let t64 = t * 64;
    let t512 = t * t * 512;
    let half = q(1, &BigInt::from(2));
    // 1/(8√t) = (1/(8t))·√t
    let inv8sqrt = q(1, &t8);
    let s = |r: BigRat, c: BigRat| Surd::new(r, c, t);

    let raw = [
        (
            s(&half - q(2, &t8), BigRat::one() + &inv8sqrt),
            s(&half - q(1, &t8), BigRat::one() + &inv8sqrt),
        ),
        (
            s(&half - q(1, &t8), -BigRat::one() - &inv8sqrt),
            s(half.clone(), -BigRat::one() - &inv8sqrt),
        ),
        (
            s(q(1, &BigInt::from(4)) - q(5, &t64) + q(22, &t512), BigRat::zero()),
            s(q(1, &BigInt::from(4)) - q(5, &t64) + q(23, &t512), BigRat::zero()),
        ),
        (
            s(
                BigRat::from_integer(t * BigInt::from(-4)) - q(5, &BigInt::from(4)) + q(21, &t64) - q(87, &t512),
                BigRat::zero(),
            ),
            s(
                BigRat::from_integer(t * BigInt::from(-4)) - q(5, &BigInt::from(4)) + q(21, &t64) - q(84, &t512),
                BigRat::zero(),
            ),
        ),
    ];
    raw.into_iter()
        .enumerate()
        .map(|(i, (lo, hi))| {
            let width = hi.sub(&lo);
            debug_assert!(width.s.is_zero());
            RootBracket {
                index: i as u8 + 1,
                sign_lo: p_at(t, &lo).signum(),
                sign_hi: p_at(t, &hi).signum(),
                width: width.r,
                lo,
                hi,
            }
        })
        .collect()
}

/// The brackets, certified: `P(·, 1)` changes sign across each one and the
/// four are pairwise disjoint.
pub fn root_bounds(t: &BigInt) -> Result<RootBounds> {
    if t < &BigInt::from(18) {
        return Err(Error::Precondition(format!(
            "root brackets are claimed for t ≥ 18, got {t}"
        )));
    }
    let brackets = root_brackets(t);
    for b in &brackets {
        if !b.sign_changes() {
            return Err(Error::failed(format!(
                "P(·, 1) does not change sign on the β{} bracket at t = {t}",
                b.index
            )));
        }
    }
    let mut order: Vec<&RootBracket> = brackets.iter().collect();
    order.sort_by(|a, b| a.lo.sub(&b.lo).signum());
    for w in order.windows(2) {
        if w[0].hi.sub(&w[1].lo).signum() != Ordering::Less {
            return Err(Error::failed(format!(
                "brackets β{} and β{} overlap at t = {t}",
                w[0].index, w[1].index
            )));
        }
    }
    Ok(RootBounds {
        t: t.clone(),
        brackets,
    })
}

fn im_sign(e: &RingElem) -> Sign {
    // Im(a + bω) = b·√t with ω = i√t
    e.b.sign()
}

fn unit_power(j: u8, prec: u32) -> ComplexInterval {
    let (re, im) = match j % 4 {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    };
    ComplexInterval::new(Interval::from_i64(re, prec), Interval::from_i64(im, prec))
}

/// Which fourth root of unity `η/ξ` is nearest, and whether the pair is
/// related to it.
#[derive(Clone, Debug)]
pub struct Relation {
    /// `η/ξ` is nearest to `i^j`.
    pub j: u8,
    pub ratio: ComplexInterval,
    /// `|i^j − η/ξ|`.
    pub distance: Interval,
    /// `|z| = 8|P|/|ξ|⁴`.
    pub z_abs: Interval,
    /// `|i^j − η/ξ| − (π/12)|z|`; negative means related.
    pub margin: Interval,
    pub related: bool,
    pub precision: u32,
}

/// Classifies `(x, y)` by the fourth root of unity nearest to `η/ξ`, using
/// principal fourth roots of `ξ⁴` and `η⁴`.
pub fn classify_related(t: &BigInt, x: &BigInt, y: &BigInt) -> Result<Relation> {
    let point = resolvent(t, x, y)?;
    if point.p.is_zero() {
        return Err(Error::Precondition("classify_related needs P(x, y) ≠ 0".into()));
    }
    let abs8 = xi_abs8(t, x, y);
    let eight_p = Interval::from_int(&(point.p.abs() * 8), 64);
    precision_ladder(|prec| {
        let xi = point.xi4.to_complex(prec).fourth_root(im_sign(&point.xi4))?;
        let eta = point.eta4.to_complex(prec).fourth_root(im_sign(&point.eta4))?;
        let ratio = eta.div(&xi)?;
        let dists: Vec<Interval> = (0..4)
            .map(|j| (&unit_power(j, prec) - &ratio).abs())
            .collect();
        let j = (0..4).find(|&j| {
            (0..4).all(|k| k == j || dists[j].lt(&dists[k]) == Some(true))
        })?;
        let xi_abs4 = Interval::from_int(&abs8, prec).sqrt()?;
        let z_abs = eight_p.with_precision(prec).div(&xi_abs4)?;
        let bound = &(&pi(prec) * &z_abs).div(&Interval::from_i64(12, prec))?;
        let margin = &dists[j] - bound;
        let related = if margin.is_negative() {
            true
        } else if margin.is_positive() {
            false
        } else {
            return None;
        };
        Some(Relation {
            j: j as u8,
            ratio,
            distance: dists[j].clone(),
            z_abs,
            margin,
            related,
            precision: prec,
        })
    })
    .ok_or_else(|| Error::undecided(format!("relatedness of ({x}, {y}) at t = {t}")))
}

/// Principal `(ω+1)^{1/4}` and `(ω−1)^{1/4}`.
fn kappas(t: &BigInt, prec: u32) -> Option<(ComplexInterval, ComplexInterval)> {
    let d = omega_d(t);
    let kp = RingElem::new(1, 1, &d).to_complex(prec).fourth_root(Sign::Plus)?;
    let km = RingElem::new(-1, 1, &d).to_complex(prec).fourth_root(Sign::Plus)?;
    Some((kp, km))
}

/// Enclosures of `ξ = √2·κ₊·(x − ωy)` and `η = √2·κ₋·(x + ωy)`, where
/// `κ₊⁴ = ω+1`, `κ₋⁴ = ω−1` are principal roots.  With
/// `(−t−1)^{1/4} := κ₊κ₋` this gives `ξ₁η₂/(−t−1)^{1/4} = 2(x₁−ωy₁)(x₂+ωy₂)`.
pub fn linear_forms(
    t: &BigInt,
    x: &BigInt,
    y: &BigInt,
    prec: u32,
) -> Option<(ComplexInterval, ComplexInterval)> {
    let d = omega_d(t);
    let (kp, km) = kappas(t, prec)?;
    let sqrt2 = Interval::from_i64(2, prec).sqrt()?;
    let minus = RingElem::new(x.clone(), -y, &d).to_complex(prec);
    let plus = RingElem::new(x.clone(), y.clone(), &d).to_complex(prec);
    Some((
        (&kp * &minus).scale(&sqrt2),
        (&km * &plus).scale(&sqrt2),
    ))
}

/// `κ₊κ₋`, the branch of `(−t−1)^{1/4}` matching [`linear_forms`].
pub fn root_minus_t_minus_one(t: &BigInt, prec: u32) -> Option<ComplexInterval> {
    let (kp, km) = kappas(t, prec)?;
    Some(&kp * &km)
}

#[derive(Clone, Debug)]
pub struct WronskianReport {
    /// `x₁y₂ − x₂y₁`.
    pub det: BigInt,
    /// `|ξ₁η₂ − ξ₂η₁|`.
    pub lhs: Interval,
    /// `4(t+1)^{1/4}√t·|x₁y₂ − x₂y₁|`.
    pub rhs: Interval,
    /// `4√t(t+1)^{1/4}`.
    pub floor: Interval,
    pub identity_holds: bool,
    pub bound_holds: bool,
}

/// Checks `|ξ₁η₂ − ξ₂η₁| = 4(t+1)^{1/4}√t·|x₁y₂ − x₂y₁| ≥ 4√t(t+1)^{1/4}`.
pub fn wronskian_check(
    t: &BigInt,
    p1: (&BigInt, &BigInt),
    p2: (&BigInt, &BigInt),
) -> Result<WronskianReport> {
    let det = p1.0 * p2.1 - p2.0 * p1.1;
    if det.is_zero() {
        return Err(Error::Precondition("wronskian_check needs x₁y₂ ≠ x₂y₁".into()));
    }
    precision_ladder(|prec| {
        let (xi1, eta1) = linear_forms(t, p1.0, p1.1, prec)?;
        let (xi2, eta2) = linear_forms(t, p2.0, p2.1, prec)?;
        let lhs = (&(&xi1 * &eta2) - &(&xi2 * &eta1)).abs();
        let tt = Interval::from_int(t, prec);
        let floor = &(&(&tt + &Interval::from_i64(1, prec)).nth_root(4)? * &tt.sqrt()?)
            * &Interval::from_i64(4, prec);
        let rhs = &floor * &Interval::from_int(&det.abs(), prec);
        // a false identity would separate the enclosures once they are tight
        let tight = lhs.width().to_rat() * BigRat::from_integer(BigInt::one() << 64u32)
            < rhs.hi().to_rat();
        if !tight {
            return None;
        }
        let identity_holds = lhs.overlaps(&rhs);
        let bound_holds = identity_holds && det.abs() >= BigInt::one() && lhs.hi() >= floor.lo();
        Some(WronskianReport {
            det: det.clone(),
            lhs,
            rhs,
            floor,
            identity_holds,
            bound_holds,
        })
    })
    .ok_or_else(|| Error::undecided("Wronskian enclosure"))
}

/// `|x/y + √t| < √t`, i.e. `x/y ∈ (−2√t, 0)`, checked exactly.
pub fn in_beta2_window(t: &BigInt, x: &BigInt, y: &BigInt) -> bool {
    !y.is_zero() && (x.sign() != y.sign()) && !x.is_zero() && x * x < t * y * y * 4
}

#[derive(Clone, Debug, Serialize)]
pub struct ExclusionItem {
    pub name: &'static str,
    pub holds: bool,
}

/// The inequalities that rule out solutions related to `β₁, β₃, β₄`:
///
/// * `|√t + β₁| > 2√t`, `|√t + β₃| > √t + 1/5`, `|√t + β₄| > 3t` (and
///   `3t − √t > 2t`), using the bracket endpoints;
/// * `|β − √−t|² = β² + t < 16t² + 17t` for `β ∈ {β₁, β₃, β₄}`;
/// * `2/(5√(80t² + 85t)) > (π/12)·8t²/(2¹⁶t^{15/2})`, the contradiction with
///   the relatedness bound once `|ξ|⁴ > 2¹⁶t^{15/2}`.
pub fn exclusion_check(t: &BigInt) -> Result<Vec<ExclusionItem>> {
    let bounds = root_bounds(t)?;
    let b = |i: usize| &bounds.brackets[i];
    let sqrt_t = Surd::new(BigRat::zero(), BigRat::one(), t);
    let tq = BigRat::from_integer(t.clone());
    let c = |r: BigRat| Surd::rational(r, t);
    let pos = |s: Surd| s.signum() == Ordering::Greater;

    let mut items = Vec::new();
    // β₁ > lo₁ > 0, so |√t + β₁| > √t + lo₁
    items.push(ExclusionItem {
        name: "|sqrt(t) + beta1| > 2 sqrt(t)",
        holds: pos(b(0).lo.sub(&sqrt_t)),
    });
    items.push(ExclusionItem {
        name: "|sqrt(t) + beta3| > sqrt(t) + 1/5",
        holds: pos(b(2).lo.sub(&c(BigRat::new(1.into(), 5.into())))),
    });
    // β₄ < hi₄ < −√t, so |√t + β₄| > −√t − hi₄
    items.push(ExclusionItem {
        name: "|sqrt(t) + beta4| > 3t",
        holds: pos(c(-&b(3).hi.r - &tq * BigRat::from_integer(3.into())).sub(&sqrt_t)),
    });
    items.push(ExclusionItem {
        name: "3t - sqrt(t) > 2t",
        holds: pos(c(tq.clone()).sub(&sqrt_t)),
    });
    let cap = &tq * &tq * BigRat::from_integer(16.into()) + &tq * BigRat::from_integer(17.into());
    for (i, name) in [
        (0, "|beta1 - sqrt(-t)|^2 < 16t^2 + 17t"),
        (2, "|beta3 - sqrt(-t)|^2 < 16t^2 + 17t"),
        (3, "|beta4 - sqrt(-t)|^2 < 16t^2 + 17t"),
    ] {
        let far = {
            let (lo, hi) = (b(i).lo.abs(), b(i).hi.abs());
            if pos(lo.sub(&hi)) {
                lo
            } else {
                hi
            }
        };
        let sq = far.mul(&far).add(&c(tq.clone()));
        items.push(ExclusionItem {
            name,
            holds: pos(c(cap.clone()).sub(&sq)),
        });
    }
    let last = precision_ladder(|prec| {
        let tt = Interval::from_int(t, prec);
        let t2 = tt.square();
        let rad = &(&t2 * &Interval::from_i64(80, prec)) + &(&tt * &Interval::from_i64(85, prec));
        let lhs = Interval::from_i64(2, prec).div(&(&rad.sqrt()? * &Interval::from_i64(5, prec)))?;
        let rhs = (&(&pi(prec) * &Interval::from_i64(8, prec)) * &tt.pow_ratio(-11, 2)?)
            .div(&Interval::from_i64(12 << 16, prec))?;
        lhs.gt(&rhs)
    })
    .ok_or_else(|| Error::undecided("final exclusion inequality"))?;
    items.push(ExclusionItem {
        name: "2/(5 sqrt(80t^2 + 85t)) > (pi/12) 8t^2 / (2^16 t^(15/2))",
        holds: last,
    });
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn eval_examples() {
        let f = QuarticForm::new(7).unwrap();
        assert_eq!(f.eval(&big(1), &big(0)), big(1));
        assert_eq!(f.eval(&big(0), &big(1)), big(49));
        let f = QuarticForm::new(1).unwrap();
        assert_eq!(eval_p(&f, &big(-2), &big(3)), big(1));
    }

    #[test]
    fn resolvent_examples() {
        let r = resolvent(&big(1), &big(1), &big(0)).unwrap();
        assert_eq!(r.xi4, RingElem::new(4, 4, &big(-1)));
        assert_eq!(r.eta4, RingElem::new(-4, 4, &big(-1)));
        assert_eq!(r.z_num, RingElem::from_int(8, &big(-1)));
        let r = resolvent(&big(2), &big(1), &big(1)).unwrap();
        assert_eq!(r.z_num.a, big(-120));
        let r = resolvent(&big(1), &big(-2), &big(3)).unwrap();
        assert_eq!(r.z_num.a, big(8));
        assert!(resolvent(&big(1), &big(0), &big(0)).is_err());
    }

    #[test]
    fn xi_abs8_examples() {
        assert_eq!(xi_abs8(&big(1), &big(1), &big(0)), big(32));
        assert_eq!(xi_abs8(&big(2), &big(1), &big(1)), big(3888));
        assert_eq!(xi_abs8(&big(1), &big(-2), &big(3)), big(913952));
    }

    #[test]
    fn random_ring_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let t = big(rng.gen_range(1..=1000));
            let x = big(rng.gen_range(-1000..=1000));
            let y = big(rng.gen_range(-1000..=1000));
            if x.is_zero() && y.is_zero() {
                continue;
            }
            let r = resolvent(&t, &x, &y).unwrap();
            assert!(r.z_num.b.is_zero());
            assert_eq!(r.z_num.a, QuarticForm::new(t.clone()).unwrap().eval(&x, &y) * 8);
            assert_eq!(xi_abs8(&t, &x, &y), r.xi4.norm());
            assert_eq!(r.eta4, -&r.xi4.conj());
        }
    }

    #[test]
    fn raccoon_examples() {
        assert_eq!(
            raccoon_check(&big(1), &big(65), &big(1)).unwrap(),
            RaccoonVerdict::Holds
        );
        assert_eq!(
            raccoon_check(&big(1), &big(1), &big(1)).unwrap(),
            RaccoonVerdict::NotApplicable
        );
        let x = big(64) * big(205).pow(3) + 1;
        assert_eq!(
            raccoon_check(&big(205), &x, &big(1)).unwrap(),
            RaccoonVerdict::Holds
        );
    }

    #[test]
    fn surd_sign_is_exact() {
        let t = big(2);
        // 3 − 2√2 > 0, 1 − √2 < 0, 2 − √4·1 with t = 4 is zero
        assert_eq!(Surd::new(rat(3, 1), rat(-2, 1), &t).signum(), Ordering::Greater);
        assert_eq!(Surd::new(rat(1, 1), rat(-1, 1), &t).signum(), Ordering::Less);
        assert_eq!(Surd::new(rat(2, 1), rat(-1, 1), &big(4)).signum(), Ordering::Equal);
    }

    #[test]
    fn root_brackets_hold_from_eighteen() {
        for t in 18..=400 {
            root_bounds(&big(t)).unwrap();
        }
        root_bounds(&big(205)).unwrap();
        root_bounds(&big(1_000_000)).unwrap();
        // just below the stated threshold the displayed brackets break down
        assert!(root_brackets(&big(17)).iter().any(|b| !b.sign_changes()));
        assert!(root_bounds(&big(17)).is_err());
    }

    #[test]
    fn bracket_widths_are_exact() {
        let t = big(10_000);
        let b = root_bounds(&t).unwrap();
        let tq = BigRat::from_integer(t.clone());
        assert_eq!(b.brackets[0].width, BigRat::one() / (&tq * BigRat::from_integer(8.into())));
        assert_eq!(b.brackets[1].width, BigRat::one() / (&tq * BigRat::from_integer(8.into())));
        assert_eq!(b.brackets[2].width, BigRat::one() / (&tq * &tq * BigRat::from_integer(512.into())));
        assert_eq!(b.brackets[3].width, rat(3, 1) / (&tq * &tq * BigRat::from_integer(512.into())));
        assert!(b.brackets[3].width < rat(1, 1000));
        let b4 = b.brackets[3].interval(128);
        assert!((b4.mid_f64() - (-40_001.25)).abs() < 0.01);
    }

    #[test]
    fn brackets_contain_the_numerical_roots() {
        // cross-check against f64 bisection on each bracket
        for t in [18i64, 205, 5000] {
            let b = root_bounds(&big(t)).unwrap();
            let tf = t as f64;
            let p = |x: f64| x.powi(4) + 4.0 * tf * x.powi(3) - 6.0 * tf * x * x - 4.0 * tf * tf * x + tf * tf;
            for br in &b.brackets {
                let (mut lo, mut hi) = (br.lo.to_f64(), br.hi.to_f64());
                let s = p(lo).signum();
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if p(mid).signum() == s {
                        lo = mid
                    } else {
                        hi = mid
                    }
                }
                assert!(br.lo.to_f64() <= lo && hi <= br.hi.to_f64());
            }
        }
    }

    #[test]
    fn classify_examples() {
        let x = big(64) * big(205).pow(3) + 1;
        let rel = classify_related(&big(205), &x, &big(1)).unwrap();
        assert!(rel.related);
        let rel = classify_related(&big(2), &big(1), &big(0)).unwrap();
        assert!(rel.ratio.abs().contains_rat(&rat(1, 1)));
        let rel = classify_related(&big(1), &big(-2), &big(3)).unwrap();
        assert!(rel.j < 4);
        let neg = classify_related(&big(1), &big(2), &big(-3)).unwrap();
        assert_eq!((rel.j, rel.related), (neg.j, neg.related));
    }

    #[test]
    fn wronskian_examples() {
        let r = wronskian_check(&big(2), (&big(1), &big(0)), (&big(0), &big(1))).unwrap();
        assert_eq!(r.det, big(1));
        assert!(r.identity_holds && r.bound_holds);
        assert!(wronskian_check(&big(2), (&big(1), &big(0)), (&big(2), &big(0))).is_err());
        let r = wronskian_check(&big(5), (&big(1), &big(2)), (&big(3), &big(1))).unwrap();
        assert_eq!(r.det.abs(), big(5));
        assert!(r.identity_holds && r.bound_holds);
    }

    #[test]
    fn exclusion_inequalities() {
        for t in [18i64, 205, 1000, 1_000_000] {
            let items = exclusion_check(&big(t)).unwrap();
            assert_eq!(items.len(), 8);
            assert!(items.iter().all(|i| i.holds), "t={t}: {items:?}");
        }
    }
}
