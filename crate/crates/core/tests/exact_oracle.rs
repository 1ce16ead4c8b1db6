use giant_ld::exact::{
    self, brute, partition, rational, EdgeProb, EventSpec, ExactProb,
};
use giant_ld::rate::{self, AlphaParam};
use giant_ld::saddle::log_partition_bound;
use giant_ld::verify::forest_from_q;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn al(a: f64) -> AlphaParam {
    AlphaParam::new(a).unwrap()
}

#[test]
fn two_vertices_give_p() {
    for p in [rat(0, 1), rat(3, 7), rat(1, 1)] {
        let got = rational::connectivity(2, &p).unwrap().to_rational();
        assert_eq!(got, p);
        assert_eq!(rational::forest(2, &p, 2).unwrap().to_rational(), BigRational::one());
    }
}

#[test]
fn connectivity_inside_finite_bracket_at_50() {
    let p = EdgeProb::from_alpha(50, &rat(3, 1)).unwrap();
    let lp = exact::exact_connectivity(50, &p).unwrap().ln();
    let (lo, hi) = rate::connectivity_bounds(50, al(3.0)).unwrap();
    assert!(lo.ln() <= lp && lp <= hi.ln(), "{} <= {lp} <= {}", lo.ln(), hi.ln());
}

#[test]
fn forest_small_matches_enumeration() {
    let p = rat(1, 3);
    let dp = rational::forest(6, &p, 2).unwrap().to_rational();
    let bf = brute::enumerate_exact(6, &p, &EventSpec::NoCyclesAndSmall(2)).unwrap();
    assert_eq!(dp, bf);
}

#[test]
fn small_components_examples() {
    let p = rat(2, 7);
    let dp = rational::small_components(7, &p, 3).unwrap().to_rational();
    assert_eq!(dp, brute::enumerate_exact(7, &p, &EventSpec::AllSmall(3)).unwrap());
    let q = BigRational::one() - &p;
    let isolated = rational::small_components(3, &p, 1).unwrap().to_rational();
    assert_eq!(isolated, &q * &q * &q);
    assert_eq!(rational::small_components(9, &p, 9).unwrap().to_rational(), BigRational::one());
}

// 2^28 graphs at n = 8 is too slow for a test run; the n = 7 case exercises
// the same decomposition
#[test]
fn macro_volume_matches_enumeration_at_seven() {
    let p = rat(1, 4);
    let law = rational::macro_volume_law(7, &p, 2).unwrap();
    for (m, x) in law.iter().enumerate() {
        let bf = brute::enumerate_exact(7, &p, &EventSpec::MacroVolume { r: 2, m }).unwrap();
        assert_eq!(x.to_rational(), bf, "m = {m}");
    }
    let m0 = exact::exact_macro_volume(7, &EdgeProb::Rational(p.clone()), 2, 0).unwrap();
    let small = exact::exact_small_components(7, &EdgeProb::Rational(p), 2).unwrap();
    assert_eq!(m0, small);
}

#[test]
fn macro_volume_infeasible_is_zero() {
    let p = EdgeProb::from_alpha(30, &rat(2, 1)).unwrap();
    for m in 1..=4 {
        assert!(exact::exact_macro_volume(30, &p, 4, m).unwrap().is_zero());
    }
    assert!(exact::exact_macro_volume(30, &p, 4, 31).is_err());
}

#[test]
fn normalisation_exact_and_float() {
    let n = 40;
    let p = rat(3, 80);
    for r in [1, 4, 15, 39] {
        let total = rational::macro_volume_law(n, &p, r)
            .unwrap()
            .iter()
            .fold(BigRational::zero(), |acc, x| acc + x.to_rational());
        assert_eq!(total, BigRational::one());
        let law = exact::exact_macro_volume_law(400, &EdgeProb::Real(3.0 / 800.0), r).unwrap();
        let s: f64 = law.iter().map(|x| x.prob()).sum();
        assert!((s - 1.0).abs() < 1e-10, "r = {r}: {s}");
    }
}

#[test]
fn q_examples_and_forest_identity() {
    assert!((partition::exact_q(2, 1, 2) - 0.5f64.ln()).abs() < 1e-15);
    // k! Q ≤ inf_s F_r(s)^k / s^n
    let q = partition::exact_q(12, 5, 4);
    let bound = log_partition_bound(12, 5, 4).unwrap().unwrap();
    assert!(q + (120f64).ln() <= bound + 1e-12);
    for (n, r) in [(9, 3), (12, 12), (10, 1)] {
        let p = rat(1, 5);
        assert_eq!(forest_from_q(n, &p, r), rational::forest(n, &p, r).unwrap().to_rational());
    }
}

#[test]
fn partition_bound_holds_up_to_forty() {
    for n in 1..=40u64 {
        for k in 1..=n {
            for r in [2usize, 3, 5, 10, 40] {
                let q = partition::exact_q(n as usize, k as usize, r);
                let bound = log_partition_bound(n, k, r).unwrap();
                match bound {
                    None => assert_eq!(q, f64::NEG_INFINITY),
                    Some(b) => {
                        let lf: f64 = (1..=k).map(|i| (i as f64).ln()).sum();
                        assert!(q + lf <= b + 1e-9 * b.abs().max(1.0), "n={n} k={k} r={r}: {} > {b}", q + lf);
                    }
                }
            }
        }
    }
}

#[test]
fn grounded_heterogeneous_three() {
    let (a, b, c) = (rat(1, 5), rat(1, 2), rat(7, 10));
    let z = rat(0, 1);
    let m = vec![
        vec![z.clone(), a.clone(), b.clone()],
        vec![a.clone(), z.clone(), c.clone()],
        vec![b.clone(), c.clone(), z.clone()],
    ];
    let g = brute::grounded_exact(&m).unwrap();
    assert_eq!(g, brute::inhomogeneous_connectivity_exact(&m).unwrap());
    // spanning trees of a triangle: ab + ac + bc − 2abc
    let want = &a * &b + &a * &c + &b * &c - rat(2, 1) * &a * &b * &c;
    assert_eq!(g, want);
    let lp = brute::brute_force_grounded(&[
        vec![EdgeProb::Real(0.0), EdgeProb::Real(0.3)],
        vec![EdgeProb::Real(0.3), EdgeProb::Real(0.0)],
    ])
    .unwrap();
    assert!((lp.prob() - 0.3).abs() < 1e-15);
}

#[test]
fn no_cycles_cap_inequality() {
    // P(B_r) ≤ P(L) (1 − α/n)^{−rn/2}, exact at n = 100, float on a grid
    let n = 100;
    for a in [rat(1, 2), rat(1, 1), rat(2, 1), rat(4, 1)] {
        let p = &a / BigRational::from_integer(BigInt::from(n));
        let forest = rational::forest(n, &p, n).unwrap().log_prob().ln();
        let af = a.to_f64().unwrap();
        for r in [2, 5, 10, 20] {
            let small = rational::small_components(n, &p, r).unwrap().log_prob().ln();
            let cap = forest - (r * n) as f64 / 2.0 * (-af / n as f64).ln_1p();
            assert!(small <= cap + 1e-12, "alpha={a} r={r}");
        }
    }
    for n in (20..=200).step_by(20) {
        for a in [0.5, 1.0, 2.0, 4.0] {
            let p = EdgeProb::Real(a / n as f64);
            let forest = exact::exact_forest(n, &p, None).unwrap().ln();
            for r in [2, 5, 10, 20] {
                let small = exact::exact_small_components(n, &p, r).unwrap().ln();
                let cap = forest - (r * n) as f64 / 2.0 * (-a / n as f64).ln_1p();
                assert!(small <= cap + 1e-9 * cap.abs(), "n={n} alpha={a} r={r}");
            }
        }
    }
}

#[test]
fn connectivity_rate_constant() {
    // -(1/n) log P(K) + log π₁(α) = O(log n / n); report the fitted constant
    for a in [1.0, 2.0, 4.0] {
        let mut c_fit = 0.0f64;
        for n in (40..=200).step_by(40) {
            let p = EdgeProb::from_alpha(n, &BigRational::from_float(a).unwrap()).unwrap();
            let rate_n = exact::exact_connectivity(n, &p).unwrap().rate_per_vertex(n as u64);
            let err = (rate_n + rate::pi1(al(a)).ln()).abs();
            c_fit = c_fit.max(err * n as f64 / (n as f64).ln());
        }
        println!("alpha = {a}: fitted C = {c_fit:.4}");
        assert!(c_fit < 5.0);
    }
}

#[test]
fn float_connectivity_tracks_exact_at_200() {
    for a in [rat(1, 2), rat(4, 1)] {
        let exact_p = EdgeProb::from_alpha(200, &a).unwrap();
        let e = exact::exact_connectivity(200, &exact_p).unwrap().ln();
        let f = exact::exact_connectivity(200, &exact_p.to_real()).unwrap().ln();
        assert!((e - f).abs() < 1e-10 * e.abs(), "{e} vs {f}");
    }
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (1i64..12).prop_flat_map(|b| (0..=b).prop_map(move |a| rat(a, b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn small_components_dominate_forests(n in 1usize..40, r_frac in 0.0f64..1.0, p in small_rational()) {
        let r = 1 + ((n - 1) as f64 * r_frac) as usize;
        let small = rational::small_components(n, &p, r).unwrap();
        let forest = rational::forest(n, &p, r).unwrap();
        prop_assert!(forest <= small);
        let plain = rational::forest(n, &p, n).unwrap();
        prop_assert!(forest <= plain);
    }

    #[test]
    fn dp_matches_enumeration(n in 1usize..=6, p in small_rational(), r_frac in 0.0f64..1.0) {
        let r = 1 + ((n - 1) as f64 * r_frac) as usize;
        let pairs = [
            (rational::connectivity(n, &p).unwrap(), EventSpec::Connected),
            (rational::forest(n, &p, r).unwrap(), EventSpec::NoCyclesAndSmall(r)),
            (rational::small_components(n, &p, r).unwrap(), EventSpec::AllSmall(r)),
        ];
        for (dp, ev) in pairs {
            prop_assert_eq!(dp.to_rational(), brute::enumerate_exact(n, &p, &ev).unwrap());
        }
    }

    #[test]
    fn exact_values_are_probabilities(n in 1usize..60, p in small_rational()) {
        let c: ExactProb = rational::connectivity(n, &p).unwrap();
        prop_assert!(c.num() <= c.den());
    }
}
