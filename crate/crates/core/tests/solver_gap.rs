use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use quartic_thue::gap::{
    chain_grid, chain_replay, f_floor_check, gap_constants, idol_check, gap_inequality, stirling_check, Verdict,
    CHAIN_MARGIN,
};
use quartic_thue::quartic::xi_abs8;
use quartic_thue::solver::{brute_force, family_range, family_solve, solve, thue_witness, Limits, WitnessOutcome};

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solve_paths_agree(a in 1i64..80, b in 1i64..80) {
        let limits = Limits { k_max: 20, x_max: 3000 };
        if let Ok(rep) = solve(&big(a), &big(b), limits) {
            prop_assert!(rep.paths_agree);
            prop_assert!(rep.solutions.len() <= 2);
            for s in &rep.solutions {
                let x2 = &s.x * &s.x;
                prop_assert!((big(a) * &x2 * &x2 - big(b) * &s.y * &s.y).is_one());
            }
        }
    }

    #[test]
    fn witnesses_verify(t in 1i64..400, n in 0u32..6) {
        // thue_witness checks every invariant itself; an Err is a failure
        let out = thue_witness(&big(t), n).unwrap();
        if let WitnessOutcome::Witness(w) = out {
            prop_assert_eq!(&big(t) % &w.t1, BigInt::from(0));
        }
    }
}

#[test]
fn solve_maps_family_solutions_back() {
    let rep = solve(&big(2), &big(1), Limits::default()).unwrap();
    assert!(rep.paths_agree);
    assert_eq!(rep.solutions.len(), 2);
    // a = 5·… members with a non-trivial scaling: (t+1)X⁴ − tY² = 1 at t = 6
    let rep = solve(&big(7), &big(6), Limits { k_max: 30, x_max: 10_000 }).unwrap();
    let xs: Vec<BigInt> = rep.solutions.iter().map(|s| s.x.clone()).collect();
    assert_eq!(xs, [big(1), big(5)]);
}

#[test]
fn family_range_agrees_with_brute_force() {
    for (t, res) in family_range(1, 150, 40, 5000) {
        let fam = res.unwrap();
        let brute = brute_force(&big(t as i64 + 1), &big(t as i64), 5000).unwrap();
        let strip = |v: &[quartic_thue::solver::SolutionRecord]| -> Vec<(BigInt, BigInt)> {
            v.iter().map(|s| (s.x.clone(), s.y.clone())).collect()
        };
        assert_eq!(strip(&fam), strip(&brute), "t = {t}");
    }
}

#[test]
fn family_solve_rejects_t_zero() {
    assert!(family_solve(&big(0), 10, 100).is_err());
}

#[test]
fn stirling_small_cases() {
    for k in 1..=200 {
        assert!(stirling_check(k).unwrap(), "k = {k}");
    }
}

#[test]
fn gap_constants_are_positive() {
    for r in 1..=10 {
        for g in 0..=1 {
            let c = gap_constants(r, g, &big(205)).unwrap();
            assert!(c.c1.lo().to_f64() > 0.0 && c.c2.lo().to_f64() > 0.0, "({r}, {g})");
        }
    }
}

#[test]
fn gap_inequality_verdicts_track_height() {
    let t = big(300);
    let small = xi_abs8(&t, &big(1), &big(1));
    let huge: BigInt = BigInt::one() << 4000u32;
    let (_, v) = gap_inequality(1, 0, &t, &small, &huge).unwrap();
    assert_ne!(v, Verdict::Refuted);
    let (_, v) = gap_inequality(1, 0, &t, &small, &small).unwrap();
    assert_ne!(v, Verdict::Undecided);
}

#[test]
fn chain_grid_certifies_above_threshold() {
    let ts: Vec<BigInt> = [205i64, 300, 5000, 77_777, 10_000_000].iter().map(|&t| big(t)).collect();
    for rep in chain_grid(&ts, 8) {
        let rep = rep.unwrap();
        assert!(rep.all_certified && rep.final_certified, "t = {}", rep.t);
        assert!(rep.min_margin >= CHAIN_MARGIN);
    }
    assert!(chain_replay(&big(204), 5).is_err());
}

#[test]
fn idol_and_floors() {
    for r in 1..=5 {
        assert!(f_floor_check(r).unwrap(), "r = {r}");
        let rep = idol_check(r).unwrap();
        assert_eq!(rep.lhs_t_exp, 11 * r - 2);
        assert_eq!(rep.rhs_t_exp, 4 * r + 2);
        assert!(rep.refuted_from >= BigInt::one());
    }
}
