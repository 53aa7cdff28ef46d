//! Hypergeometric Padé approximants to `(1 − z)^{1/4}`:
//!
//! ```text
//! A_{r,g}(z) = Σ_{m≤r}   C(r−g+1/4, m)·C(2r−g−m, r−g)·(−z)^m
//! B_{r,g}(z) = Σ_{m≤r−g} C(r−1/4, m)  ·C(2r−g−m, r)  ·(−z)^m
//! ```
//!
//! with `A − (1−z)^{1/4}B = z^{2r+1−g}F_{r,g}(z)`, and the algebraic numbers
//! `Σ_{r,g}`, `Λ_{r,g}` built from them and the resolvent forms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact_arith::{
    binom_int, binom_rat, precision_ladder, quarter_root_series, rat, BigRat, ComplexInterval,
    IntForm, Interval, RatPoly, RingElem,
};
use crate::quartic::{eta4, linear_forms, root_minus_t_minus_one, xi4, QuarticForm};
use crate::{Error, Result};

fn check_rg(r: u32, g: u32) -> Result<()> {
    if r == 0 || g > 1 {
        return Err(Error::Precondition(format!(
            "Padé index needs r ≥ 1 and g ∈ {{0, 1}}, got ({r}, {g})"
        )));
    }
    Ok(())
}

fn quarter_shift(k: i64, sign: i64) -> BigRat {
    BigRat::from_integer(k.into()) + rat(sign, 4)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadePair {
    pub r: u32,
    pub g: u32,
    pub a: RatPoly,
    pub b: RatPoly,
}

fn a_poly(r: u32, g: u32) -> RatPoly {
    let alpha = quarter_shift((r - g) as i64, 1);
    RatPoly::new(
        (0..=r)
            .map(|m| {
                let c = binom_rat(&alpha, m)
                    * BigRat::from_integer(binom_int((2 * r - g - m) as u64, (r - g) as u64));
                if m % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect(),
    )
}

fn b_poly(r: u32, g: u32) -> RatPoly {
    let beta = quarter_shift(r as i64, -1);
    RatPoly::new(
        (0..=r - g)
            .map(|m| {
                let c = binom_rat(&beta, m)
                    * BigRat::from_integer(binom_int((2 * r - g - m) as u64, r as u64));
                if m % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect(),
    )
}

pub fn pade_pair(r: u32, g: u32) -> Result<PadePair> {
    check_rg(r, g)?;
    Ok(PadePair {
        r,
        g,
        a: a_poly(r, g),
        b: b_poly(r, g),
    })
}

/// `C_{r,g}(z) = Σ_m C(r−1/4, r−m)·C(r−g+1/4, m)·z^m`.
pub fn c_poly(r: u32, g: u32) -> RatPoly {
    let beta = quarter_shift(r as i64, -1);
    let alpha = quarter_shift((r - g) as i64, 1);
    RatPoly::new(
        (0..=r)
            .map(|m| binom_rat(&beta, r - m) * binom_rat(&alpha, m))
            .collect(),
    )
}

/// `D_{r,g}(z) = Σ_m C(r−1/4, m)·C(r−g+1/4, r−g−m)·z^m`.
pub fn d_poly(r: u32, g: u32) -> RatPoly {
    let beta = quarter_shift(r as i64, -1);
    let alpha = quarter_shift((r - g) as i64, 1);
    RatPoly::new(
        (0..=r - g)
            .map(|m| binom_rat(&beta, m) * binom_rat(&alpha, r - g - m))
            .collect(),
    )
}

/// The closed-form leading remainder coefficient
/// `C(r−1/4, r)·C(r−g+1/4, r+1−g) / C(2r+1−g, r)`.
pub fn remainder_leading_closed_form(r: u32, g: u32) -> BigRat {
    binom_rat(&quarter_shift(r as i64, -1), r)
        * binom_rat(&quarter_shift((r - g) as i64, 1), r + 1 - g)
        / BigRat::from_integer(binom_int((2 * r + 1 - g) as u64, r as u64))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemainderReport {
    pub r: u32,
    pub g: u32,
    pub order: u32,
    #[serde(serialize_with = "crate::ser::bigrat")]
    pub leading: BigRat,
    #[serde(serialize_with = "crate::ser::bigrat")]
    pub closed_form: BigRat,
}

/// Expands `A − (1−z)^{1/4}B` as a series and checks that it vanishes to
/// order exactly `2r+1−g`, with the closed-form leading coefficient.
pub fn remainder_order_check(r: u32, g: u32) -> Result<RemainderReport> {
    let pair = pade_pair(r, g)?;
    let order = (2 * r + 1 - g) as usize;
    let series = quarter_root_series(order + 1);
    let rem = &pair.a - &series.mul_trunc(&pair.b, order + 1);
    let rem = rem.truncate(order + 1);
    if let Some(v) = rem.valuation().filter(|&v| v < order) {
        return Err(Error::failed(format!(
            "A_{{{r},{g}}} − (1−z)^{{1/4}}B has a nonzero z^{v} coefficient"
        )));
    }
    let leading = rem.coeff(order);
    let closed_form = remainder_leading_closed_form(r, g);
    if leading != closed_form {
        return Err(Error::failed(format!(
            "leading remainder coefficient {leading} at ({r}, {g}) vs closed form {closed_form}"
        )));
    }
    Ok(RemainderReport {
        r,
        g,
        order: order as u32,
        leading,
        closed_form,
    })
}

fn reflection_holds(pair: &PadePair, c: &RatPoly, d: &RatPoly) -> bool {
    let (r, g) = (pair.r, pair.g);
    let c_at_one = c.eval(&BigRat::one());
    &pair.a.reflect() == c
        && &pair.b.reflect() == d
        && c_at_one == BigRat::from_integer(binom_int((2 * r - g) as u64, r as u64))
}

/// `C_{r,g}(z) = A_{r,g}(1−z)`, `D_{r,g}(z) = B_{r,g}(1−z)` and
/// `C_{r,g}(1) = C(2r−g, r)`.
pub fn reflection_check(r: u32, g: u32) -> Result<bool> {
    let pair = pade_pair(r, g)?;
    Ok(reflection_holds(&pair, &c_poly(r, g), &d_poly(r, g)))
}

/// Negative control: the same check with one coefficient of `C` perturbed.
pub fn reflection_check_tampered(r: u32, g: u32, index: usize) -> Result<bool> {
    let pair = pade_pair(r, g)?;
    let mut coeffs = c_poly(r, g).coeffs().to_vec();
    let i = index.min(coeffs.len() - 1);
    coeffs[i] += BigRat::one();
    Ok(reflection_holds(&pair, &RatPoly::new(coeffs), &d_poly(r, g)))
}

/// Every coefficient of `C_{r,g}` is positive.
pub fn c_coefficients_positive(r: u32, g: u32) -> bool {
    c_poly(r, g).coeffs().iter().all(|c| c.is_positive())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminantReport {
    pub r: u32,
    pub h: u32,
    pub k: u32,
    #[serde(serialize_with = "crate::ser::bigrat")]
    pub c: BigRat,
}

/// `A_{r,0}B_{r+h,1} − A_{r+h,1}B_{r,0}`, which must be a single nonzero
/// monomial `c·z^k`.
pub fn determinant_check(r: u32, h: u32) -> Result<DeterminantReport> {
    if h > 1 {
        return Err(Error::Precondition("h must be 0 or 1".into()));
    }
    let p0 = pade_pair(r, 0)?;
    let p1 = pade_pair(r + h, 1)?;
    let det = &(&p0.a * &p1.b) - &(&p1.a * &p0.b);
    let (k, c) = det.as_monomial().ok_or_else(|| {
        Error::failed(format!("determinant at (r, h) = ({r}, {h}) is not a monomial: {det}"))
    })?;
    Ok(DeterminantReport {
        r,
        h,
        k: k as u32,
        c,
    })
}

/// Printed scales and polynomials for `r = 1..5`.
const TABLE_SCALES: [(i64, i64); 5] = [(4, 1), (32, 3), (128, 1), (2048, 5), (8192, 21)];

const TABLE_A: [&[i64]; 5] = [
    &[8, -5],
    &[64, -72, 15],
    &[2560, -4160, 1872, -195],
    &[28672, -60928, 42432, -10608, 663],
    &[98304, -258048, 243712, -99008, 15912, -663],
];

const TABLE_B: [&[i64]; 5] = [
    &[8, -3],
    &[64, -56, 7],
    &[2560, -3520, 1232, -77],
    &[28672, -53760, 31680, -6160, 231],
    &[98304, -233472, 194560, -66880, 8360, -209],
];

const TABLE_F: [&[i64]; 5] = [
    &[320, -320, 81],
    &[86016, -172032, 114624, -28608, 2401],
    &[
        14057472000,
        -42172416000,
        48483635200,
        -26679910400,
        7150266240,
        -839047040,
        35153041,
    ],
    &[
        13989396348928,
        -55957585395712,
        91916125077504,
        -79896826347520,
        39463764078592,
        -11050000539648,
        1648475542656,
        -113348764800,
        2847396321,
    ],
    &[
        121733331812352,
        -608666659061760,
        1301756554248192,
        -1555026262622208,
        1136607561252864,
        -523630732640256,
        151029162176512,
        -26204424888320,
        2515441608384,
        -113971885760,
        1908029761,
    ],
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitTable {
    pub r: u32,
    pub a: RatPoly,
    pub b: RatPoly,
    pub f: RatPoly,
    pub scale: BigRat,
}

/// The printed integer tables, verified against the construction and the
/// identity `A_r⁴ − (1−z)B_r⁴ = z^{2r+1}F_r`.
pub fn explicit_table(r: u32) -> Result<ExplicitTable> {
    if !(1..=5).contains(&r) {
        return Err(Error::Precondition(format!("tables exist for r = 1..5, got {r}")));
    }
    let i = (r - 1) as usize;
    let (sn, sd) = TABLE_SCALES[i];
    let table = ExplicitTable {
        r,
        a: RatPoly::from_ints(TABLE_A[i].iter().copied()),
        b: RatPoly::from_ints(TABLE_B[i].iter().copied()),
        f: RatPoly::from_ints(TABLE_F[i].iter().copied()),
        scale: rat(sn, sd),
    };
    let pair = pade_pair(r, 0)?;
    if pair.a.scale(&table.scale) != table.a || pair.b.scale(&table.scale) != table.b {
        return Err(Error::failed(format!(
            "scale·(A_{{{r},0}}, B_{{{r},0}}) does not reproduce the printed A_{r}, B_{r}"
        )));
    }
    let one_minus_z = RatPoly::from_ints([1, -1]);
    let lhs = &table.a.pow(4) - &(&one_minus_z * &table.b.pow(4));
    let rhs = &RatPoly::monomial(BigRat::one(), (2 * r + 1) as usize) * &table.f;
    if lhs != rhs {
        return Err(Error::failed(format!(
            "A_{r}⁴ − (1−z)B_{r}⁴ ≠ z^{}·F_{r}",
            2 * r + 1
        )));
    }
    Ok(table)
}

/// `c·x^i·y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Monomial {
    #[serde(serialize_with = "crate::ser::bigint")]
    pub coeff: BigInt,
    pub x_exp: u32,
    pub y_exp: u32,
}

impl Monomial {
    fn new(coeff: i64, x_exp: u32, y_exp: u32) -> Self {
        Monomial {
            coeff: coeff.into(),
            x_exp,
            y_exp,
        }
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.coeff)?;
        match self.x_exp {
            0 => {}
            1 => write!(f, "x")?,
            e => write!(f, "x^{e}")?,
        }
        match self.y_exp {
            0 => Ok(()),
            1 => write!(f, "y"),
            e => write!(f, "y^{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub id: u32,
    pub expression: &'static str,
    pub printed: Monomial,
    pub computed: Option<Monomial>,
    /// Computed monomial equals the printed one exactly.
    pub exact_match: bool,
    /// Same constant, possibly different exponents.
    pub constant_match: bool,
}

enum Multiplier {
    Star(u32, bool),
    Form(&'static [i64]),
}

const G4: &[i64] = &[14178304, -15889280, 4071760, -162393];
const H4: &[i64] = &[14178304, -19433856, 6714864, -466089];
const G5: &[i64] = &[43706368, -69346048, 32767856, -4764782, 123519];
const H5: &[i64] = &[43706368, -80272640, 46006896, -8845746, 391833];

fn star_forms(r: u32) -> Result<(IntForm, IntForm)> {
    let t = explicit_table(r)?;
    let a = IntForm::homogenize(&t.a, r as usize).expect("tables are integral");
    let b = IntForm::homogenize(&t.b, r as usize).expect("tables are integral");
    Ok((a, b))
}

/// The nine bilinear identities `L·A_r* − M·B_r* = monomial`, with the
/// printed multipliers and right-hand sides as data.
pub fn ledger_check() -> Result<Vec<LedgerEntry>> {
    use Multiplier::*;
    let rows: [(u32, &'static str, Multiplier, Multiplier, u32, Monomial); 9] = [
        (1, "A1* - B1*", Form(&[1]), Form(&[1]), 1, Monomial::new(-2, 0, 1)),
        (2, "B1* A2* - A1* B2*", Star(1, false), Star(1, true), 2, Monomial::new(-10, 0, 3)),
        (3, "(-32x + 7y) A2* - (-32x + 15y) B2*", Form(&[-32, 7]), Form(&[-32, 15]), 2, Monomial::new(80, 1, 2)),
        (4, "B2* A3* - A2* B3*", Star(2, false), Star(2, true), 3, Monomial::new(-210, 0, 5)),
        (
            5,
            "(1616x^2 - 1078xy + 77y^2) A3* - (1616x^2 - 1482xy + 195y^2) B3*",
            Form(&[1616, -1078, 77]),
            Form(&[1616, -1482, 195]),
            3,
            Monomial::new(-16800, 2, 3),
        ),
        (6, "B3* A4* - A3* B4*", Star(3, false), Star(3, true), 4, Monomial::new(-6006, 0, 7)),
        (7, "G4 A4* - H4 B4*", Form(G4), Form(H4), 4, Monomial::new(-150678528, 3, 4)),
        (8, "B4* A5* - A4* B5*", Star(4, false), Star(4, true), 5, Monomial::new(-14586, 0, 7)),
        (9, "G5 A5* - H5 B5*", Form(G5), Form(H5), 5, Monomial::new(-134424576, 4, 5)),
    ];
    let resolve = |m: &Multiplier| -> Result<IntForm> {
        Ok(match m {
            // Star(r, false) is B_r*, Star(r, true) is A_r*
            Star(r, is_a) => {
                let (a, b) = star_forms(*r)?;
                if *is_a {
                    a
                } else {
                    b
                }
            }
            Form(c) => IntForm::from_i64s(c),
        })
    };
    rows.into_iter()
        .map(|(id, expression, l, m, r, printed)| {
            let (a, b) = star_forms(r)?;
            let form = &(&resolve(&l)? * &a) - &(&resolve(&m)? * &b);
            let computed = form.as_monomial().map(|(c, xe, ye)| Monomial {
                coeff: c,
                x_exp: xe as u32,
                y_exp: ye as u32,
            });
            let exact_match = computed.as_ref() == Some(&printed);
            let constant_match = computed.as_ref().is_some_and(|c| c.coeff == printed.coeff);
            Ok(LedgerEntry {
                id,
                expression,
                printed,
                computed,
                exact_match,
                constant_match,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegralityKind {
    /// `ξ₁η₂/(−t−1)^{1/4}`, candidate `2(x₁−ωy₁)(x₂+ωy₂)`.
    XiEtaOverRoot,
    /// `ξ₁³ξ₂`, candidate `4(ω+1)(x₁−ωy₁)³(x₂−ωy₂)`.
    Xi3Xi,
    /// `η₁³η₂`, candidate `4(ω−1)(x₁+ωy₁)³(x₂+ωy₂)`.
    Eta3Eta,
}

/// Returns the element of `ℤ[ω]` whose fourth power equals the fourth power
/// of the named quantity, after checking that equality exactly.
pub fn fourth_power_integrality(
    t: &BigInt,
    p1: (&BigInt, &BigInt),
    p2: (&BigInt, &BigInt),
    kind: IntegralityKind,
) -> Result<RingElem> {
    let d = -t;
    let minus = |x: &BigInt, y: &BigInt| RingElem::new(x.clone(), -y, &d);
    let plus = |x: &BigInt, y: &BigInt| RingElem::new(x.clone(), y.clone(), &d);
    let (candidate, target) = match kind {
        IntegralityKind::XiEtaOverRoot => {
            let c = (&minus(p1.0, p1.1) * &plus(p2.0, p2.1)).scale(&BigInt::from(2));
            // (ξ₁η₂)⁴ / (−t−1)
            let target = &xi4(t, p1.0, p1.1) * &eta4(t, p2.0, p2.1);
            (c, (target, -(t + BigInt::one())))
        }
        IntegralityKind::Xi3Xi => {
            let c = &(&RingElem::new(4, 4, &d) * &minus(p1.0, p1.1).pow(3)) * &minus(p2.0, p2.1);
            let target = &xi4(t, p1.0, p1.1).pow(3) * &xi4(t, p2.0, p2.1);
            (c, (target, BigInt::one()))
        }
        IntegralityKind::Eta3Eta => {
            let c = &(&RingElem::new(-4, 4, &d) * &plus(p1.0, p1.1).pow(3)) * &plus(p2.0, p2.1);
            let target = &eta4(t, p1.0, p1.1).pow(3) * &eta4(t, p2.0, p2.1);
            (c, (target, BigInt::one()))
        }
    };
    let (target, divisor) = target;
    if candidate.pow(4).scale(&divisor) != target {
        return Err(Error::failed(format!(
            "{kind:?}: fourth power of {candidate} does not match at t = {t}"
        )));
    }
    Ok(candidate)
}

/// `Σ_m (c_m·8^m)·P^m·X^{n−m}`, i.e. the homogenized polynomial evaluated at
/// `(X, 8P)`, with every `c_m·8^m` checked to be an integer.
pub fn star_eval(poly: &RatPoly, n: usize, x: &RingElem, p: &BigInt) -> Result<RingElem> {
    let mut acc = RingElem::zero(&x.d);
    let mut eight_m = BigInt::one();
    let mut p_m = BigInt::one();
    for m in 0..=n {
        let c = poly.coeff(m) * BigRat::from_integer(eight_m.clone());
        if !c.denom().is_one() {
            return Err(Error::failed(format!(
                "coefficient {} of {poly} times 8^{m} is not integral",
                poly.coeff(m)
            )));
        }
        if !c.is_zero() {
            acc = &acc + &x.pow((n - m) as u32).scale(&(c.numer() * &p_m));
        }
        eight_m *= 8;
        p_m *= p;
    }
    Ok(acc)
}

/// `A*_{r,g}(ξ⁴, ξ⁴−η⁴)` and `B*_{r,g}(ξ⁴, ξ⁴−η⁴)` as exact elements of `ℤ[ω]`.
pub fn astar_integrality(
    t: &BigInt,
    r: u32,
    g: u32,
    x: &BigInt,
    y: &BigInt,
) -> Result<(RingElem, RingElem)> {
    let pair = pade_pair(r, g)?;
    let p = QuarticForm::new(t.clone())?.eval(x, y);
    let x4 = xi4(t, x, y);
    Ok((
        star_eval(&pair.a, r as usize, &x4, &p)?,
        star_eval(&pair.b, (r - g) as usize, &x4, &p)?,
    ))
}

/// Exact algebraic content of `Λ_{r,g}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaExact {
    /// `Λ_{r,0}` itself.
    Zero(RingElem),
    /// `Λ_{r,1} = 2Q/s` with `s⁴ = 4(ω+1)`; `scaled_fourth = (1+t)·Λ⁴`.
    One {
        q: RingElem,
        scaled_fourth: RingElem,
    },
}

/// `Λ_{r,0} = α·A* − (−1)^r·ᾱ·B*` with `α = 2(x₁−ωy₁)(x₂+ωy₂)`, or for
/// `g = 1` the element `Q = (x₂+ωy₂)A* − (−1)^r·4(ω+1)(x₁−ωy₁)³(x₂−ωy₂)(x₁+ωy₁)B*`.
pub fn lambda_exact(
    t: &BigInt,
    r: u32,
    g: u32,
    p1: (&BigInt, &BigInt),
    p2: (&BigInt, &BigInt),
) -> Result<LambdaExact> {
    let d = -t;
    let (a_star, b_star) = astar_integrality(t, r, g, p1.0, p1.1)?;
    let minus = |x: &BigInt, y: &BigInt| RingElem::new(x.clone(), -y, &d);
    let plus = |x: &BigInt, y: &BigInt| RingElem::new(x.clone(), y.clone(), &d);
    let sign = if r % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    if g == 0 {
        let alpha = (&minus(p1.0, p1.1) * &plus(p2.0, p2.1)).scale(&BigInt::from(2));
        let lam = &(&alpha * &a_star) - &(&alpha.conj() * &b_star).scale(&sign);
        Ok(LambdaExact::Zero(lam))
    } else {
        let w = &(&(&RingElem::new(4, 4, &d) * &minus(p1.0, p1.1).pow(3)) * &minus(p2.0, p2.1))
            * &plus(p1.0, p1.1);
        let q = &(&plus(p2.0, p2.1) * &a_star) - &(&w * &b_star).scale(&sign);
        // Λ⁴ = 4Q⁴/(ω+1) = 4Q⁴(1−ω)/(1+t)
        let scaled_fourth = (&q.pow(4) * &RingElem::new(1, -1, &d)).scale(&BigInt::from(4));
        Ok(LambdaExact::One { q, scaled_fourth })
    }
}

#[derive(Clone, Debug)]
pub struct SigmaEval {
    pub r: u32,
    pub g: u32,
    pub sigma: ComplexInterval,
    /// `ξ₁^{4r+1−g}ξ₂Σ/(−t−1)^{1/4}` from the enclosures.
    pub lambda: ComplexInterval,
    pub exact: LambdaExact,
    /// The exact value lies inside the enclosure.
    pub consistent: bool,
    /// `g = 0`: the real part of `Λ_{r,0}` vanishes.
    pub pure_omega: Option<bool>,
    /// `g = 1`: whether `Λ⁴` itself (not just `(1+t)Λ⁴`) lies in `ℤ[ω]`.
    pub lambda4_integral: Option<bool>,
    pub precision: u32,
}

fn complex_of_rat(q: &BigRat, prec: u32) -> ComplexInterval {
    ComplexInterval::from_real(Interval::from_rat(q, prec))
}

fn horner(poly: &RatPoly, z: &ComplexInterval, prec: u32) -> ComplexInterval {
    poly.coeffs()
        .iter()
        .rev()
        .fold(complex_of_rat(&BigRat::zero(), prec), |acc, c| {
            &(&acc * z) + &complex_of_rat(c, prec)
        })
}

fn tight(c: &ComplexInterval, scale: &BigRat) -> bool {
    let eps = scale / BigRat::from_integer(BigInt::one() << 40u32);
    c.re().width().to_rat() < eps && c.im().width().to_rat() < eps
}

/// Enclosure of `Σ_{r,g}` and `Λ_{r,g}` together with the exact algebraic
/// value, cross-checked against each other.
pub fn sigma_eval(
    t: &BigInt,
    r: u32,
    g: u32,
    p1: (&BigInt, &BigInt),
    p2: (&BigInt, &BigInt),
) -> Result<SigmaEval> {
    check_rg(r, g)?;
    let form = QuarticForm::new(t.clone())?;
    let p_1 = form.eval(p1.0, p1.1);
    if p_1.is_zero() || form.eval(p2.0, p2.1).is_zero() {
        return Err(Error::Precondition("sigma_eval needs P(x_i, y_i) ≠ 0".into()));
    }
    let pair = pade_pair(r, g)?;
    let exact = lambda_exact(t, r, g, p1, p2)?;
    let x4 = xi4(t, p1.0, p1.1);
    let d = -t;
    let (pure_omega, lambda4_integral) = match &exact {
        LambdaExact::Zero(l) => (Some(l.a.is_zero()), None),
        LambdaExact::One { scaled_fourth, .. } => (None, Some(scaled_fourth.div_exact(&(t + 1)).is_some())),
    };
    precision_ladder(|prec| {
        let (xi1, eta1) = linear_forms(t, p1.0, p1.1, prec)?;
        let (xi2, eta2) = linear_forms(t, p2.0, p2.1, prec)?;
        let z1 = RingElem::from_int(&p_1 * 8, &d).to_complex(prec).div(&x4.to_complex(prec))?;
        let a_val = horner(&pair.a, &z1, prec);
        let b_val = horner(&pair.b, &z1, prec);
        let first = &eta2.div(&xi2)? * &a_val;
        let second = &eta1.div(&xi1)? * &b_val;
        let sigma = if r % 2 == 0 { &first - &second } else { &first + &second };
        let root = root_minus_t_minus_one(t, prec)?;
        let lambda = (&(&xi1.powi(4 * r + 1 - g) * &xi2) * &sigma).div(&root)?;
        let exact_enc = match &exact {
            LambdaExact::Zero(l) => l.to_complex(prec),
            LambdaExact::One { q, .. } => {
                // 2Q/s with s = √2·κ₊, κ₊⁴ = ω+1
                let kp = RingElem::new(1, 1, &d).to_complex(prec).fourth_root(num_bigint::Sign::Plus)?;
                let s = kp.scale(&Interval::from_i64(2, prec).sqrt()?);
                q.to_complex(prec).scale(&Interval::from_i64(2, prec)).div(&s)?
            }
        };
        let scale = BigRat::from_integer(
            BigInt::from(1) + exact_enc.abs().hi().to_rat().ceil().to_integer(),
        );
        if !tight(&lambda, &scale) {
            return None;
        }
        let consistent = lambda.re().overlaps(exact_enc.re()) && lambda.im().overlaps(exact_enc.im());
        Some(SigmaEval {
            r,
            g,
            sigma,
            lambda,
            exact: exact.clone(),
            consistent,
            pure_omega,
            lambda4_integral,
            precision: prec,
        })
    })
    .ok_or_else(|| Error::undecided(format!("Σ_{{{r},{g}}} enclosure")))
}

/// At most one of `Λ_{r,0}` and `Λ_{r+h,1}` (equivalently `Σ`) vanishes.
pub fn lambda_nonvanishing(
    t: &BigInt,
    r: u32,
    h: u32,
    p1: (&BigInt, &BigInt),
    p2: (&BigInt, &BigInt),
) -> Result<bool> {
    let zero0 = match lambda_exact(t, r, 0, p1, p2)? {
        LambdaExact::Zero(l) => l.is_zero(),
        LambdaExact::One { .. } => unreachable!(),
    };
    let zero1 = match lambda_exact(t, r + h, 1, p1, p2)? {
        LambdaExact::One { q, .. } => q.is_zero(),
        LambdaExact::Zero(_) => unreachable!(),
    };
    Ok(!(zero0 && zero1))
}

/// Bound (A): `|A_{r,g}(z)| ≤ C(2r−g, r)` on the disc `|1 − z| ≤ 1`, checked
/// exactly at `z = 1 − ρ·(1−s², 2s)/(1+s²)` for rational `ρ ∈ [0, 1]`, `s`.
pub fn bound_a_holds(r: u32, g: u32, rho: &BigRat, s: &BigRat) -> Result<bool> {
    let pair = pade_pair(r, g)?;
    if rho.is_negative() || rho > &BigRat::one() {
        return Err(Error::Precondition("ρ must lie in [0, 1]".into()));
    }
    let one = BigRat::one();
    let den = &one + s * s;
    let (cr, ci) = ((&one - s * s) / &den, (s * BigRat::from_integer(2.into())) / &den);
    let (zr, zi) = (&one - rho * cr, -(rho * ci));
    // Horner over ℚ(i)
    let (mut ar, mut ai) = (BigRat::zero(), BigRat::zero());
    for c in pair.a.coeffs().iter().rev() {
        let nr = &ar * &zr - &ai * &zi + c;
        let ni = &ar * &zi + &ai * &zr;
        ar = nr;
        ai = ni;
    }
    let cap = BigRat::from_integer(binom_int((2 * r - g) as u64, r as u64));
    Ok(&ar * &ar + &ai * &ai <= &cap * &cap)
}

/// Bound (F) at a real `z ∈ (0, 1)`: `|F_{r,g}(z)| ≤ K·(1 − z)^{−(2r+1−g)/2}`
/// with `K` the closed-form leading constant.  `F` is evaluated directly as
/// `(A(z) − (1−z)^{1/4}B(z))/z^{2r+1−g}` in interval arithmetic.
pub fn bound_f_holds(r: u32, g: u32, z: &BigRat) -> Result<bool> {
    let pair = pade_pair(r, g)?;
    if !z.is_positive() || z >= &BigRat::one() {
        return Err(Error::Precondition("z must lie in (0, 1)".into()));
    }
    let n = 2 * r + 1 - g;
    let k = remainder_leading_closed_form(r, g).abs();
    precision_ladder(|prec| {
        let zi = Interval::from_rat(z, prec);
        let one_minus = Interval::from_rat(&(BigRat::one() - z), prec);
        let f = (&Interval::from_rat(&pair.a.eval(z), prec)
            - &(&one_minus.nth_root(4)? * &Interval::from_rat(&pair.b.eval(z), prec)))
            .div(&zi.powi(n as i64)?)?;
        let bound = &Interval::from_rat(&k, prec) * &one_minus.pow_ratio(-(n as i64), 2)?;
        f.abs().lt(&bound).or_else(|| (f.abs().hi() <= bound.lo()).then_some(true))
    })
    .ok_or_else(|| Error::undecided(format!("bound (F) at r={r}, g={g}, z={z}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn poly(c: &[(i64, i64)]) -> RatPoly {
        RatPoly::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn pair_examples() {
        let p = pade_pair(1, 0).unwrap();
        assert_eq!(p.a, poly(&[(2, 1), (-5, 4)]));
        assert_eq!(p.b, poly(&[(2, 1), (-3, 4)]));
        let p = pade_pair(1, 1).unwrap();
        assert_eq!(p.a, poly(&[(1, 1), (-1, 4)]));
        assert_eq!(p.b, poly(&[(1, 1)]));
        let p = pade_pair(2, 1).unwrap();
        assert_eq!(p.a, poly(&[(3, 1), (-5, 2), (5, 32)]));
        assert_eq!(p.b, poly(&[(3, 1), (-7, 4)]));
        assert!(pade_pair(0, 0).is_err());
        assert!(pade_pair(1, 2).is_err());
    }

    #[test]
    fn degrees_and_constant_terms() {
        for r in 1..=12 {
            for g in 0..=1 {
                let p = pade_pair(r, g).unwrap();
                assert_eq!(p.a.degree(), r as isize);
                assert_eq!(p.b.degree(), (r - g) as isize);
                let c = BigRat::from_integer(binom_int((2 * r - g) as u64, r as u64));
                assert_eq!(p.a.coeff(0), c);
                assert_eq!(p.b.coeff(0), c);
            }
        }
    }

    #[test]
    fn remainder_examples() {
        let rep = remainder_order_check(1, 0).unwrap();
        assert_eq!((rep.order, rep.closed_form.clone()), (3, rat(5, 128)));
        let rep = remainder_order_check(1, 1).unwrap();
        assert_eq!((rep.order, rep.closed_form.clone()), (2, rat(3, 32)));
        let rep = remainder_order_check(5, 0).unwrap();
        assert_eq!(rep.order, 11);
    }

    #[test]
    fn remainder_orders_up_to_ten() {
        for r in 1..=10 {
            for g in 0..=1 {
                let rep = remainder_order_check(r, g).unwrap();
                assert_eq!(rep.order, 2 * r + 1 - g);
                assert_eq!(rep.leading, rep.closed_form);
            }
        }
    }

    #[test]
    fn reflections_up_to_twenty() {
        for r in 1..=20 {
            for g in 0..=1 {
                assert!(reflection_check(r, g).unwrap(), "({r}, {g})");
                assert!(!reflection_check_tampered(r, g, 1).unwrap());
                assert!(c_coefficients_positive(r, g));
            }
        }
    }

    #[test]
    fn determinant_examples() {
        let d = determinant_check(1, 0).unwrap();
        assert_eq!((d.k, d.c), (2, rat(-3, 16)));
        let d = determinant_check(1, 1).unwrap();
        assert_eq!((d.k, d.c), (3, rat(15, 128)));
        let d = determinant_check(2, 0).unwrap();
        assert_eq!((d.k, d.c), (4, rat(-105, 1024)));
        let d = determinant_check(4, 1).unwrap();
        assert_eq!((d.k, d.c), (9, rat(765765, 16777216)));
        for r in 1..=8 {
            for h in 0..=1 {
                let d = determinant_check(r, h).unwrap();
                assert_eq!(d.k, 2 * r + h);
            }
        }
    }

    #[test]
    fn tables_verify() {
        for r in 1..=5 {
            explicit_table(r).unwrap();
        }
        assert_eq!(explicit_table(3).unwrap().f.coeff(0), rat(14057472000, 1));
        assert_eq!(explicit_table(5).unwrap().f.coeff(10), rat(1908029761, 1));
        assert!(explicit_table(6).is_err());
    }

    #[test]
    fn ledger_matches_except_one_exponent() {
        let entries = ledger_check().unwrap();
        assert_eq!(entries.len(), 9);
        for e in &entries {
            if e.id == 8 {
                assert!(!e.exact_match && e.constant_match);
                assert_eq!(e.computed, Some(Monomial::new(-14586, 0, 9)));
            } else {
                assert!(e.exact_match, "identity {}: {:?}", e.id, e.computed);
            }
        }
    }

    #[test]
    fn fourth_power_examples() {
        let e = fourth_power_integrality(&big(1), (&big(1), &big(0)), (&big(0), &big(1)), IntegralityKind::XiEtaOverRoot).unwrap();
        assert_eq!(e, RingElem::new(0, 2, &big(-1)));
        fourth_power_integrality(&big(2), (&big(1), &big(1)), (&big(1), &big(1)), IntegralityKind::Xi3Xi).unwrap();
        fourth_power_integrality(&big(1), (&big(1), &big(0)), (&big(1), &big(0)), IntegralityKind::Eta3Eta).unwrap();
    }

    #[test]
    fn astar_examples() {
        let (a, _) = astar_integrality(&big(1), 1, 0, &big(1), &big(0)).unwrap();
        assert_eq!(a, RingElem::new(-2, 8, &big(-1)));
        astar_integrality(&big(2), 3, 1, &big(1), &big(1)).unwrap();
        astar_integrality(&big(1), 5, 0, &big(2), &big(3)).unwrap();
    }

    #[test]
    fn lambda_zero_is_pure_omega() {
        let s = sigma_eval(&big(1), 1, 0, (&big(1), &big(0)), (&big(0), &big(1))).unwrap();
        assert_eq!(s.pure_omega, Some(true));
        assert!(s.consistent);
        let s = sigma_eval(&big(2), 2, 0, (&big(1), &big(1)), (&big(1), &big(2))).unwrap();
        assert_eq!(s.pure_omega, Some(true));
        assert!(s.consistent);
    }

    #[test]
    fn sigma_enclosures_match_exact_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let t = big(rng.gen_range(1..=60));
            let c: Vec<BigInt> = (0..4).map(|_| big(rng.gen_range(-9..=9))).collect();
            let form = QuarticForm::new(t.clone()).unwrap();
            if form.eval(&c[0], &c[1]).is_zero() || form.eval(&c[2], &c[3]).is_zero() {
                continue;
            }
            for r in 1..=4 {
                for g in 0..=1 {
                    let s = sigma_eval(&t, r, g, (&c[0], &c[1]), (&c[2], &c[3])).unwrap();
                    assert!(s.consistent, "t={t} {c:?} r={r} g={g}");
                    if g == 0 {
                        assert_eq!(s.pure_omega, Some(true));
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_floor_for_nonzero_lambda_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut seen = 0;
        while seen < 100 {
            let t = big(rng.gen_range(1..=200));
            let c: Vec<BigInt> = (0..4).map(|_| big(rng.gen_range(-20..=20))).collect();
            if (c[0].is_zero() && c[1].is_zero()) || (c[2].is_zero() && c[3].is_zero()) {
                continue;
            }
            let r = rng.gen_range(1..=5);
            if let LambdaExact::Zero(l) = lambda_exact(&t, r, 0, (&c[0], &c[1]), (&c[2], &c[3])).unwrap() {
                if l.is_zero() {
                    continue;
                }
                assert!(l.a.is_zero());
                // |kω|² = k²t ≥ t
                assert!(l.norm() >= t);
                seen += 1;
            }
            assert!(lambda_nonvanishing(&t, r, 1, (&c[0], &c[1]), (&c[2], &c[3])).unwrap());
        }
    }

    #[test]
    fn bound_a_on_rational_disc_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for r in 1..=8 {
            for g in 0..=1 {
                for _ in 0..200 {
                    let rho = rat(rng.gen_range(0..=1000), 1000);
                    let s = rat(rng.gen_range(-2000..=2000), 500);
                    assert!(bound_a_holds(r, g, &rho, &s).unwrap());
                }
            }
        }
    }

    #[test]
    fn bound_f_on_real_grid() {
        for r in 1..=5 {
            for g in 0..=1 {
                for k in 1..=18 {
                    let z = rat(k, 20);
                    assert!(bound_f_holds(r, g, &z).unwrap(), "r={r} g={g} z={z}");
                }
            }
        }
    }
}
