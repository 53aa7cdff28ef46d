//! The gap principle: the constants `c₁(r, g)`, `c₂(r, g)`, the Stirling and
//! `X_r` estimates behind them, and an interval replay of the induction that
//! forces a second related solution to be impossibly large.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::exact_arith::{
    binom_int, binom_rat, pi, precision_ladder, rat, BigRat, Dyadic, Interval, MAX_PRECISION,
    START_PRECISION,
};
use crate::pade::explicit_table;
use crate::{Error, Result};

/// Interval building blocks at a fixed working precision.
#[derive(Clone, Copy)]
struct Ctx {
    prec: u32,
}

impl Ctx {
    fn int(&self, n: i64) -> Interval {
        Interval::from_i64(n, self.prec)
    }

    fn q(&self, q: &BigRat) -> Interval {
        Interval::from_rat(q, self.prec)
    }

    fn big(&self, n: &BigInt) -> Interval {
        Interval::from_int(n, self.prec)
    }

    fn pi(&self) -> Interval {
        pi(self.prec)
    }

    /// `b^e` for a positive integer base and rational exponent.
    fn pow(&self, b: &BigInt, e: &BigRat) -> Option<Interval> {
        self.big(b).pow_rat(e)
    }

    fn pow_i(&self, b: i64, e: &BigRat) -> Option<Interval> {
        self.pow(&BigInt::from(b), e)
    }

    fn sqrt(&self, n: i64) -> Option<Interval> {
        self.int(n).sqrt()
    }
}

fn q(n: i64, d: i64) -> BigRat {
    rat(n, d)
}

fn qi(n: i64) -> BigRat {
    BigRat::from_integer(n.into())
}

#[derive(Clone, Debug, Serialize)]
pub struct GapConstants {
    pub r: u32,
    pub g: u32,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub t: BigInt,
    #[serde(serialize_with = "crate::ser::display")]
    pub c1: Interval,
    #[serde(serialize_with = "crate::ser::display")]
    pub c2: Interval,
}

fn c1_at(c: Ctx, r: u32, g: u32, t: &BigInt) -> Option<Interval> {
    let (r, g) = (r as i64, g as i64);
    let two = c.pow_i(2, &(qi(2 * r + 1) + q(g, 4)))?;
    let tp = c.pow(t, &(q(5, 4) + q(3 * g, 8)))?;
    (&two * &tp).div(&(&c.pi() * &c.int(r)).sqrt()?)
}

fn c2_at(c: Ctx, r: u32, g: u32, t: &BigInt) -> Option<Interval> {
    let (r, g) = (r as i64, g as i64);
    let two = c.pow_i(2, &(q(1, 2) + q(g, 4) - qi(2 * r)))?;
    let three = c.pow_i(3, &qi(4 * r + 2 - 2 * g))?;
    let tp = c.pow(t, &(qi(4 * r) + q(5, 4) - q(13 * g, 8)))?;
    (&(&two * &three) * &tp).div(&(&c.pi() * &c.sqrt(r)?))
}

fn check_rgt(r: u32, g: u32, t: &BigInt) -> Result<()> {
    if r == 0 || g > 1 || t < &BigInt::one() {
        return Err(Error::Precondition(format!(
            "gap constants need r ≥ 1, g ∈ {{0, 1}}, t ≥ 1 (got r={r}, g={g}, t={t})"
        )));
    }
    Ok(())
}

/// `c₁ = 2^{2r+1+g/4}·t^{5/4+3g/8}/√(πr)` and
/// `c₂ = 2^{1/2+g/4−2r}·3^{4r+2−2g}·t^{4r+5/4−13g/8}/(π√r)`.
pub fn gap_constants(r: u32, g: u32, t: &BigInt) -> Result<GapConstants> {
    check_rgt(r, g, t)?;
    let c = Ctx { prec: START_PRECISION };
    let fail = || Error::undecided("gap constants");
    Ok(GapConstants {
        r,
        g,
        t: t.clone(),
        c1: c1_at(c, r, g, t).ok_or_else(fail)?,
        c2: c2_at(c, r, g, t).ok_or_else(fail)?,
    })
}

/// `π_hi·n < d` decided exactly against the dyadic upper end of `π`.
fn pi_times_lt(n: &BigInt, d: &BigInt) -> Option<bool> {
    precision_ladder(|prec| {
        let p = pi(prec);
        let cmp = |x: &Dyadic| {
            // x·n < d  ⇔  m·n < d·2^{−e}
            let (m, e) = (x.mantissa(), x.exponent());
            if e >= 0 {
                ((m * n) << (e as usize)) < *d
            } else {
                m * n < (d << ((-e) as usize))
            }
        };
        match (cmp(p.hi()), cmp(p.lo())) {
            (true, _) => Some(true),
            (false, false) => Some(false),
            _ => None,
        }
    })
}

/// `4^k/(2√k) ≤ C(2k, k) < 4^k/√(πk)`, with exact integer arithmetic on
/// the squared inequalities.
pub fn stirling_check(k: u64) -> Result<bool> {
    if k == 0 {
        return Err(Error::Precondition("stirling_check needs k ≥ 1".into()));
    }
    let c = binom_int(2 * k, k);
    let c2 = &c * &c;
    let sixteen_k = BigInt::one() << (4 * k) as usize;
    let lower = sixteen_k <= &c2 * (4 * k);
    let upper = pi_times_lt(&(&c2 * k), &sixteen_k)
        .ok_or_else(|| Error::undecided(format!("Stirling upper bound at k = {k}")))?;
    Ok(lower && upper)
}

/// Runs [`stirling_check`] for every `k ≤ k_max` through the interval
/// recurrence `s_{k+1} = s_k·(2k+1)/(2k+2)` for `s_k = C(2k, k)/4^k`, falling
/// back to the exact check whenever an interval comparison is undecided.
/// Returns the first failing `k`, if any.
pub fn stirling_sweep(k_max: u64) -> Result<Option<u64>> {
    let c = Ctx { prec: 192 };
    let pi_iv = c.pi();
    let one = c.int(1);
    let mut s = c.q(&q(1, 2));
    for k in 1..=k_max {
        if k > 1 {
            let f = c.q(&BigRat::new((2 * k - 1).into(), (2 * k).into()));
            s = &s * &f;
        }
        let kk = c.big(&BigInt::from(k));
        let lower = (&(&s * &c.int(2)) * &kk.sqrt().expect("k > 0")).lt(&one).map(|b| !b);
        let upper = (&s * &(&pi_iv * &kk).sqrt().expect("k > 0")).lt(&one);
        let ok = match (lower, upper) {
            (Some(true), Some(true)) => true,
            (Some(false), _) | (_, Some(false)) => false,
            _ => stirling_check(k)?,
        };
        if !ok && !stirling_check(k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `X_r = C(r−3/4, r)·C(r−1/4, r)` as an exact rational.
pub fn x_r(r: u32) -> BigRat {
    binom_rat(&(qi(r as i64) - q(3, 4)), r) * binom_rat(&(qi(r as i64) - q(1, 4)), r)
}

/// `X_r < 1/(√2·π·r)` together with `C(r−3/4, r) > C(r+1/4, r+1)`.
pub fn xr_bound_check(r: u32) -> Result<bool> {
    if r == 0 {
        return Err(Error::Precondition("xr_bound_check needs r ≥ 1".into()));
    }
    let x = x_r(r);
    let rr = qi(r as i64);
    let companion = binom_rat(&(rr.clone() - q(3, 4)), r) > binom_rat(&(rr + q(1, 4)), r + 1);
    let verdict = precision_ladder(|prec| {
        let c = Ctx { prec };
        let lhs = &(&c.q(&x) * &c.sqrt(2)?) * &(&c.pi() * &c.int(r as i64));
        lhs.lt(&c.int(1))
    })
    .ok_or_else(|| Error::undecided(format!("X_r bound at r = {r}")))?;
    Ok(verdict && companion)
}

/// The `X_r` bound for all `r ≤ r_max` via `X_{r+1} = X_r·(4r+1)(4r+3)/(16(r+1)²)`
/// in interval arithmetic; the companion inequality reduces to `4r+1 < 4r+4`.
/// Returns the first failing `r`, if any.
pub fn xr_sweep(r_max: u32) -> Result<Option<u32>> {
    let c = Ctx { prec: 192 };
    let k = &c.sqrt(2).expect("positive") * &c.pi();
    let one = c.int(1);
    let mut x = c.q(&q(3, 16));
    for r in 1..=r_max {
        if r > 1 {
            let p = (r - 1) as i64;
            x = &x * &c.q(&BigRat::new(((4 * p + 1) * (4 * p + 3)).into(), (16 * r as i64 * r as i64).into()));
        }
        let ok = match (&(&x * &k) * &c.int(r as i64)).lt(&one) {
            Some(b) => b,
            None => xr_bound_check(r)?,
        };
        if !ok {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// `(3/π)·t^{−5/4}·|ξ₁|³` given the exact carrier `|ξ₁|⁸`.
pub fn gap_lower_bound(t: &BigInt, xi1_abs8: &BigInt) -> Result<Interval> {
    if !xi1_abs8.is_positive() || !t.is_positive() {
        return Err(Error::Precondition("gap_lower_bound needs t, |ξ₁|⁸ > 0".into()));
    }
    let c = Ctx { prec: START_PRECISION };
    (|| {
        let xi3 = c.pow(xi1_abs8, &q(3, 8))?;
        let tp = c.pow(t, &q(-5, 4))?;
        (&(&c.int(3) * &tp) * &xi3).div(&c.pi())
    })()
    .ok_or_else(|| Error::undecided("gap lower bound"))
}

/// `2^{−g/4}·t^{1/2−3g/8}`.
pub fn lambda_floor(g: u32, t: &BigInt) -> Result<Interval> {
    if g > 1 || !t.is_positive() {
        return Err(Error::Precondition("lambda_floor needs g ∈ {0, 1}, t ≥ 1".into()));
    }
    let c = Ctx { prec: START_PRECISION };
    let g = g as i64;
    (|| Some(&c.pow_i(2, &q(-g, 4))? * &c.pow(t, &(q(1, 2) - q(3 * g, 8)))?))()
        .ok_or_else(|| Error::undecided("Λ floor"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Refuted,
    Undecided,
}

/// Left side of `c₁|ξ₁|^{4r+1−g}|ξ₂|^{−3} + c₂|ξ₁|^{−4r−3(1−g)}|ξ₂| > 1` and
/// whether `> 1` is certified, refuted or undecided.
pub fn gap_inequality(
    r: u32,
    g: u32,
    t: &BigInt,
    xi1_abs8: &BigInt,
    xi2_abs8: &BigInt,
) -> Result<(Interval, Verdict)> {
    check_rgt(r, g, t)?;
    if !xi1_abs8.is_positive() || !xi2_abs8.is_positive() {
        return Err(Error::Precondition("gap_inequality needs |ξ₁|, |ξ₂| > 0".into()));
    }
    let eval = |prec: u32| -> Option<Interval> {
        let c = Ctx { prec };
        let (ri, gi) = (r as i64, g as i64);
        let a = &(&c1_at(c, r, g, t)? * &c.pow(xi1_abs8, &q(4 * ri + 1 - gi, 8))?)
            * &c.pow(xi2_abs8, &q(-3, 8))?;
        let b = &(&c2_at(c, r, g, t)? * &c.pow(xi1_abs8, &q(-4 * ri - 3 * (1 - gi), 8))?)
            * &c.pow(xi2_abs8, &q(1, 8))?;
        Some(&a + &b)
    };
    let mut last = None;
    let decided = precision_ladder(|prec| {
        let lhs = eval(prec)?;
        let v = lhs.gt(&Interval::from_i64(1, prec));
        last = Some(lhs.clone());
        v.map(|b| (lhs, if b { Verdict::Certified } else { Verdict::Refuted }))
    });
    match decided {
        Some(x) => Ok(x),
        None => last
            .map(|l| (l, Verdict::Undecided))
            .ok_or_else(|| Error::undecided("gap inequality left-hand side")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// The first step, from the gap inequality.
    Base,
    /// `Σ_{r+1,0} ≠ 0`.
    SigmaNonzero,
    /// `Σ_{r+1,0} = 0`, forcing `g = 1` and `r ≥ 5`.
    SigmaZero,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    /// The `r` whose (goat) inequality this step establishes.
    pub r: u32,
    pub branch: Branch,
    pub claim: String,
    /// Upper bound of the quantity (for `<` claims) or lower bound (for `>`
    /// and dominance claims).
    pub bound: f64,
    pub margin: f64,
    pub certified: bool,
    /// Whether the constant displayed for this step bounds the derived one.
    pub displayed_constant_dominates: Option<bool>,
}

/// The induction state: `|ξ₂| > K·t^{−(4r+7/4)}·|ξ₁|^{4r+3}`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainState {
    pub r: u32,
    /// `K·t^{−(4r+7/4)}`, the coefficient of `|ξ₁|^{4r+3}`.
    #[serde(serialize_with = "crate::ser::display")]
    pub xi1_pow_lower: Interval,
    pub xi1_exponent: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    #[serde(serialize_with = "crate::ser::bigint")]
    pub t: BigInt,
    pub r_max: u32,
    pub steps: Vec<ChainStep>,
    pub states: Vec<ChainState>,
    pub goat_exponents: Vec<u32>,
    /// `|ξ₂| > t^{7r/2+31/8}` at `r = r_max`.
    #[serde(serialize_with = "crate::ser::bigrat")]
    pub final_t_exponent: BigRat,
    pub final_certified: bool,
    pub min_margin: f64,
    pub all_certified: bool,
    pub precision: u32,
}

/// Margins below this are not accepted as certified.
pub const CHAIN_MARGIN: f64 = 1e-3;

struct Replay<'a> {
    c: Ctx,
    t: &'a BigInt,
    steps: Vec<ChainStep>,
    undecided: Option<(u32, Branch)>,
}

impl Replay<'_> {
    fn tp(&self, e: BigRat) -> Option<Interval> {
        self.c.pow(self.t, &e)
    }

    /// `|ξ₁|⁴ > 2¹⁶·t^{15/2}`.
    fn l4(&self) -> Option<Interval> {
        Some(&self.c.pow_i(2, &qi(16))? * &self.tp(q(15, 2))?)
    }

    /// `√r/5·(4/81)^r·t^{−(4r+7/4)}`.
    fn goat(&self, r: u32) -> Option<Interval> {
        let ri = r as i64;
        let k = (&self.c.sqrt(ri)? * &self.c.q(&q(4, 81)).powi(ri)?).div(&self.c.int(5))?;
        Some(&k * &self.tp(-(qi(4 * ri) + q(7, 4)))?)
    }

    /// Certifies `value < threshold` (upper bound) or `value > threshold`.
    fn record(
        &mut self,
        r: u32,
        branch: Branch,
        claim: String,
        value: &Interval,
        threshold: &BigRat,
        less: bool,
        shown: Option<&Interval>,
    ) {
        let th = self.c.q(threshold);
        let (bound, margin, decided) = if less {
            let b = value.hi().to_f64();
            (b, (&th - value).lo().to_f64(), value.lt(&th))
        } else {
            let b = value.lo().to_f64();
            (b, (value - &th).lo().to_f64(), value.gt(&th))
        };
        if decided.is_none() && self.undecided.is_none() {
            self.undecided = Some((r, branch));
        }
        let certified = decided == Some(true) && margin >= CHAIN_MARGIN;
        let displayed_constant_dominates = shown.and_then(|p| if less { p.gt(value) } else { p.lt(value) });
        self.steps.push(ChainStep {
            r,
            branch,
            claim,
            bound,
            margin,
            certified,
            displayed_constant_dominates,
        });
    }

    /// Records `derived ≥ needed` as a ratio claim `derived/needed > 1`.
    fn dominates(&mut self, r: u32, branch: Branch, claim: String, derived: &Interval, needed: &Interval) -> Option<()> {
        let ratio = derived.div(needed)?;
        self.record(r, branch, claim, &ratio, &BigRat::one(), false, None);
        Some(())
    }

    fn run(&mut self, r_max: u32) -> Option<Vec<ChainState>> {
        let c = self.c;
        let l4 = self.l4()?;
        let pi = c.pi();
        let mut states = Vec::new();

        // Base step from |ξ₂| > (3/π)t^{−5/4}|ξ₁|³.
        let pi3 = (&pi.div(&c.int(3))?).powi(3)?;
        let qv = (&(&c1_at(c, 1, 0, self.t)? * &pi3) * &self.tp(q(15, 4))?).div(&l4)?;
        let shown = (&c.pow_i(2, &qi(-13))? * &self.tp(q(-5, 2))?).div(&pi.sqrt()?)?;
        self.record(1, Branch::Base, "c1(1,0)|xi1|^5|xi2|^-3 < 0.1".into(), &qv, &q(1, 10), true, Some(&shown));
        let rest = &c.int(1) - &qv;
        self.record(1, Branch::Base, "c2(1,0)|xi1|^-7|xi2| > 0.9".into(), &rest, &q(9, 10), false, None);
        let derived = c.q(&q(9, 10)).div(&c2_at(c, 1, 0, self.t)?)?;
        let goat1 = self.goat(1)?;
        self.dominates(1, Branch::Base, "goat(1)".into(), &derived, &goat1)?;
        states.push(ChainState {
            r: 1,
            xi1_pow_lower: goat1,
            xi1_exponent: 7,
        });

        for r in 1..r_max {
            let ri = r as i64;
            let g_r = self.goat(r)?;
            let g_next = self.goat(r + 1)?;
            let inv3 = g_r.powi(-3)?;
            let r2 = c.int(ri * ri);
            let sqrt_pi = pi.sqrt()?;

            // Σ_{r+1,0} ≠ 0
            let pre = &c1_at(c, r + 1, 0, self.t)? * &inv3;
            let shown_pre = (&(&c.int(2000) * &self.tp(qi(12 * ri) + q(13, 2))?)
                * &c.q(&q(531441, 16)).powi(ri)?)
                .div(&(&sqrt_pi * &r2))?;
            self.record(
                r + 1,
                Branch::SigmaNonzero,
                format!("c1({},0)|xi1|^{}|xi2|^-3 coefficient", r + 1, 4 * r + 5),
                &pre,
                &BigRat::zero(),
                false,
                None,
            );
            if let Some(last) = self.steps.last_mut() {
                last.displayed_constant_dominates = shown_pre.gt(&pre);
            }
            let qv = pre.div(&l4.powi(2 * ri + 1)?)?;
            let shown = (&(&c.int(125) * &self.tp(qi(-3 * ri - 1))?)
                * &c.q(&BigRat::new(531441.into(), BigInt::one() << 36u32)).powi(ri)?)
                .div(&(&(&c.int(4096) * &sqrt_pi) * &r2))?;
            self.record(
                r + 1,
                Branch::SigmaNonzero,
                format!("c1({},0)|xi1|^{}|xi2|^-3 < 0.1", r + 1, 4 * r + 5),
                &qv,
                &q(1, 10),
                true,
                Some(&shown),
            );
            let rest = &c.int(1) - &qv;
            self.record(
                r + 1,
                Branch::SigmaNonzero,
                format!("c2({},0)|xi1|^-{}|xi2| > 0.9", r + 1, 4 * r + 7),
                &rest,
                &q(9, 10),
                false,
                None,
            );
            let derived = c.q(&q(9, 10)).div(&c2_at(c, r + 1, 0, self.t)?)?;
            self.dominates(r + 1, Branch::SigmaNonzero, format!("goat({})", r + 1), &derived, &g_next)?;

            // Σ_{r+1,0} = 0: only possible for r ≥ 5.
            if r >= 5 {
                let b = Branch::SigmaZero;
                let q1 = (&c1_at(c, r + 1, 1, self.t)? * &inv3).div(&l4.pow_ratio(8 * ri + 5, 4)?)?;
                self.record(r + 1, b, format!("c1({},1)|xi1|^{}|xi2|^-3 < 0.1", r + 1, 4 * r + 4), &q1, &q(1, 10), true, None);
                let rest = &c.int(1) - &q1;
                self.record(r + 1, b, format!("c2({},1)|xi1|^-{}|xi2| > 0.9", r + 1, 4 * r + 4), &rest, &q(9, 10), false, None);
                let m = c.q(&q(9, 10)).div(&c2_at(c, r + 1, 1, self.t)?)?;
                let four81 = c.q(&q(4, 81));
                let m_shown = &(&(&c.q(&q(8, 100)) * &c.sqrt(ri + 1)?) * &four81.powi(ri)?)
                    * &self.tp(-(qi(4 * ri) + q(29, 8)))?;
                self.dominates(r + 1, b, "|xi2| > 0.08 sqrt(r+1) (4/81)^r t^-(4r+29/8) |xi1|^(4r+4)".into(), &m, &m_shown)?;

                let pre2 = &c1_at(c, r + 2, 1, self.t)? * &m_shown.powi(-3)?;
                let shown_pre2 = (&(&c.int(24000) * &c.q(&q(531441, 16)).powi(ri)?)
                    * &self.tp(qi(12 * ri) + q(25, 2))?)
                    .div(&c.int((ri + 1) * (ri + 1)))?;
                self.record(r + 1, b, format!("c1({},1)|xi1|^{}|xi2|^-3 coefficient", r + 2, 4 * r + 8), &pre2, &BigRat::zero(), false, None);
                if let Some(last) = self.steps.last_mut() {
                    last.displayed_constant_dominates = shown_pre2.gt(&pre2);
                }
                let q2 = pre2.div(&l4.powi(2 * ri + 1)?)?;
                let shown2 = (&c.q(&BigRat::new(531441.into(), BigInt::one() << 36u32)).powi(ri)?
                    * &self.tp(qi(5 - 3 * ri))?)
                    .div(&c.int(2 * (ri + 1) * (ri + 1)))?;
                self.record(r + 1, b, format!("c1({},1)|xi1|^{}|xi2|^-3 < 0.1", r + 2, 4 * r + 8), &q2, &q(1, 10), true, Some(&shown2));
                let rest = &c.int(1) - &q2;
                self.record(r + 1, b, format!("c2({},1)|xi1|^-{}|xi2| > 0.9", r + 2, 4 * r + 8), &rest, &q(9, 10), false, None);
                let n = c.q(&q(9, 10)).div(&c2_at(c, r + 2, 1, self.t)?)?;
                let n_shown = &(&(&c.q(&q(8, 100)) * &c.sqrt(ri + 1)?) * &four81.powi(ri + 1)?)
                    * &self.tp(-(qi(4 * ri) + q(61, 8)))?;
                self.dominates(r + 1, b, "|xi2| > 0.08 sqrt(r+1) (4/81)^(r+1) t^-(4r+61/8) |xi1|^(4r+8)".into(), &n, &n_shown)?;
                // |ξ₁|^{4r+8} > |ξ₁|^{4r+7}·(2¹⁶t^{15/2})^{1/4}
                let via = &n_shown * &l4.nth_root(4)?;
                self.dominates(r + 1, b, format!("goat({})", r + 1), &via, &g_next)?;
            }
            states.push(ChainState {
                r: r + 1,
                xi1_pow_lower: g_next,
                xi1_exponent: 4 * (r + 1) + 3,
            });
        }
        Some(states)
    }
}

fn replay_at(t: &BigInt, r_max: u32, prec: u32) -> Option<(Vec<ChainStep>, Vec<ChainState>, Option<(u32, Branch)>, bool)> {
    let mut rp = Replay {
        c: Ctx { prec },
        t,
        steps: Vec::new(),
        undecided: None,
    };
    let states = rp.run(r_max)?;
    // |ξ₂| > goat·|ξ₁|^{4r+3} > goat·(2¹⁶t^{15/2})^{(4r+3)/4} ≥ t^{7r/2+31/8}
    let last = states.last()?;
    let mag = &last.xi1_pow_lower * &rp.l4()?.pow_ratio((4 * r_max + 3) as i64, 4)?;
    let target = rp.tp(q(7 * r_max as i64, 2) + q(31, 8))?;
    let final_ok = mag.gt(&target);
    if final_ok.is_none() && rp.undecided.is_none() {
        rp.undecided = Some((r_max, Branch::SigmaNonzero));
    }
    Some((rp.steps, states, rp.undecided, final_ok == Some(true)))
}

/// Replays the induction for a concrete `t > 204`, certifying every
/// displayed `< 0.1` / `> 0.9` step and every change of (goat) constant.
pub fn chain_replay(t: &BigInt, r_max: u32) -> Result<ChainReport> {
    if t <= &BigInt::from(204) || r_max == 0 {
        return Err(Error::Precondition("chain_replay needs t > 204 and r_max ≥ 1".into()));
    }
    let mut prec = START_PRECISION;
    loop {
        let (steps, states, undecided, final_certified) = replay_at(t, r_max, prec)
            .ok_or_else(|| Error::undecided(format!("chain replay at t = {t}")))?;
        if let Some((r, branch)) = undecided {
            if prec >= MAX_PRECISION {
                return Err(Error::undecided(format!("chain replay at t = {t}, r = {r}, branch {branch:?}")));
            }
            prec *= 2;
            continue;
        }
        let min_margin = steps.iter().map(|s| s.margin).fold(f64::INFINITY, f64::min);
        let all_certified = final_certified && steps.iter().all(|s| s.certified);
        return Ok(ChainReport {
            t: t.clone(),
            r_max,
            goat_exponents: states.iter().map(|s| s.xi1_exponent).collect(),
            steps,
            states,
            final_t_exponent: q(7 * r_max as i64, 2) + q(31, 8),
            final_certified,
            min_margin,
            all_certified,
            precision: prec,
        });
    }
}

/// [`chain_replay`] over a grid of `t`, in parallel, in input order.
pub fn chain_grid(ts: &[BigInt], r_max: u32) -> Vec<Result<ChainReport>> {
    ts.par_iter().map(|t| chain_replay(t, r_max)).collect()
}

/// Printed bounds on `N(𝔦_r)^{1/2}·|ξ₁⁴ − η₁⁴|^{−(4r+1)}`.
pub fn norm_bound(r: u32) -> Option<BigInt> {
    let four = |n: u64| BigInt::from(n).pow(4u32);
    Some(match r {
        1 => BigInt::from(1296),
        2 => four(560),
        3 => four(77 * 16800),
        4 => four(231 * 150678528),
        5 => four(209 * 134424576),
        _ => return None,
    })
}

/// Printed lower bounds `F_r(z₁) > f_r` for `|z₁| < 0.001`.
pub fn f_floor(r: u32) -> Option<BigInt> {
    let exp = [2u32, 4, 10, 13, 14].get(r.checked_sub(1)? as usize)?;
    Some(BigInt::from(10).pow(*exp))
}

/// `|F_r(z)| ≥ F_r(0) − Σ_{i≥1}|f_i|·10^{−3i} > f_r` for all `|z| < 1/1000`.
pub fn f_floor_check(r: u32) -> Result<bool> {
    let table = explicit_table(r)?;
    let floor = f_floor(r).expect("r ≤ 5");
    let z = q(1, 1000);
    let mut lower = table.f.coeff(0);
    let mut zi = BigRat::one();
    for coeff in &table.f.coeffs()[1..] {
        zi *= &z;
        lower -= coeff.abs() * &zi;
    }
    Ok(lower > BigRat::from_integer(floor))
}

#[derive(Clone, Debug, Serialize)]
pub struct IdolReport {
    pub r: u32,
    /// `2^{26r−3}`.
    #[serde(serialize_with = "crate::ser::bigint")]
    pub lhs_coeff: BigInt,
    pub lhs_t_exp: u32,
    /// `N_r·8^{2r+1}/f_r`.
    #[serde(serialize_with = "crate::ser::bigrat")]
    pub rhs_coeff: BigRat,
    pub rhs_t_exp: u32,
    /// Smallest `t ≥ 1` from which `lhs ≥ rhs`, i.e. the inequality is refuted.
    #[serde(serialize_with = "crate::ser::bigint")]
    pub refuted_from: BigInt,
    pub refuted_for_all_t: bool,
}

/// The contradiction `2^{26r−3}t^{11r−2} < N_r·(8t²)^{2r+1}/f_r`, decided
/// exactly: returns the threshold beyond which it fails.
pub fn idol_check(r: u32) -> Result<IdolReport> {
    let n = norm_bound(r).ok_or_else(|| Error::Precondition("idol check exists for r = 1..5".into()))?;
    let f = f_floor(r).expect("r ≤ 5");
    let lhs_coeff = BigInt::one() << (26 * r - 3) as usize;
    let rhs_coeff = BigRat::new(n * (BigInt::one() << (3 * (2 * r + 1)) as usize), f);
    let (lhs_t_exp, rhs_t_exp) = (11 * r - 2, 2 * (2 * r + 1));
    // lhs ≥ rhs ⇔ t^{7r−4} ≥ rhs/lhs; the exponent is positive for r ≥ 1.
    let ratio = &rhs_coeff / BigRat::from_integer(lhs_coeff.clone());
    let e = lhs_t_exp - rhs_t_exp;
    let holds = |t: &BigInt| BigRat::from_integer(t.pow(e)) >= ratio;
    let mut lo = BigInt::one();
    if !holds(&lo) {
        let mut hi = BigInt::from(2);
        while !holds(&hi) {
            hi *= 2;
        }
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
            if holds(&mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo = hi;
    }
    let refuted_for_all_t = lo.is_one();
    Ok(IdolReport {
        r,
        lhs_coeff,
        lhs_t_exp,
        rhs_coeff,
        rhs_t_exp,
        refuted_from: lo,
        refuted_for_all_t,
    })
}

/// The `r = 1` instance `2²³t⁹ < 6635.52·t⁶` is false for every `t ≥ 1`:
/// `2²³ > 6635.52` and `t⁹ ≥ t⁶`.
pub fn idol_r1_refuted() -> bool {
    let rep = idol_check(1).expect("r = 1 is tabulated");
    rep.rhs_coeff == q(663552, 100)
        && BigRat::from_integer(rep.lhs_coeff.clone()) > rep.rhs_coeff
        && rep.lhs_t_exp >= rep.rhs_t_exp
        && rep.refuted_for_all_t
}
