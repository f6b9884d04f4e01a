//! Cross-module oracle comparisons and property tests. The oracles live in
//! `common/` and are independent of the library's algorithm choices.

mod common;

use furstenberg_lab::diophantine::{star_discrepancy, PointSample};
use furstenberg_lab::fixed::UnitReal;
use furstenberg_lab::fourier::{self, TrigPoly};
use furstenberg_lab::numerics::BigNat;
use furstenberg_lab::orbits::{weyl_sum, weyl_sum_rational, weyl_sum_strict, IntegerSet};
use furstenberg_lab::rng::SplitMix64;
use furstenberg_lab::semigroup;
use furstenberg_lab::thinsets::{
    extract_quasi_independent, is_dissociate, is_quasi_independent, mesh_alpha, ExtractStrategy,
    FiniteSet,
};
use proptest::prelude::*;

#[test]
fn count_matches_double_loop_on_log_grid() {
    for e in 1..=9u32 {
        let a = BigNat::from(10u64.pow(e));
        let r = semigroup::count(&a).unwrap();
        assert_eq!(r.exact, common::count_double_loop(&a), "A=10^{e}");
    }
}

#[test]
fn enumerate_matches_double_loop_counts() {
    for a in [1u64, 2, 7, 100, 12345, 999_999] {
        let big = BigNat::from(a);
        let terms = semigroup::enumerate_furstenberg(&big).unwrap();
        assert_eq!(terms.len() as u64, common::count_double_loop(&big));
    }
}

#[test]
fn star_discrepancy_matches_exhaustive_oracle() {
    for seed in 0..200u64 {
        let n = 1 + (seed as usize * 7) % 200;
        let s = PointSample::seeded(n, seed).unwrap();
        let fast = star_discrepancy(&s);
        let slow = common::dstar_exhaustive(s.points());
        assert!((fast - slow).abs() < 1e-12, "seed {seed}: {fast} vs {slow}");
    }
}

#[test]
fn thin_set_testers_match_exhaustive_scan() {
    let mut rng = SplitMix64::new(2024);
    for trial in 0..400 {
        let n = 1 + (trial % 9); // literal scan comfortable through size 9
        let mut elems: Vec<i64> = Vec::new();
        while elems.len() < n {
            let v = rng.next_below(400) as i64 + 1;
            let v = if rng.next_f64() < 0.2 { -v } else { v };
            if !elems.contains(&v) {
                elems.push(v);
            }
        }
        let set = FiniteSet::new(elems.clone()).unwrap();
        let quasi = is_quasi_independent(&set).unwrap();
        let diss = is_dissociate(&set).unwrap();
        assert_eq!(
            quasi,
            !common::has_relation_exhaustive(&elems, 1),
            "quasi mismatch on {elems:?}"
        );
        assert_eq!(
            diss,
            !common::has_relation_exhaustive(&elems, 2),
            "dissociate mismatch on {elems:?}"
        );
    }
}

#[test]
fn distinctness_oracle_agrees_with_relation_oracle() {
    // the two independent characterizations agree with each other
    let mut rng = SplitMix64::new(55);
    for _ in 0..200 {
        let n = 1 + (rng.next_below(8) as usize);
        let mut elems: Vec<i64> = Vec::new();
        while elems.len() < n {
            let v = rng.next_below(120) as i64 + 1;
            if !elems.contains(&v) {
                elems.push(v);
            }
        }
        assert_eq!(
            common::sums_distinct_exhaustive(&elems, 1),
            !common::has_relation_exhaustive(&elems, 1)
        );
        assert_eq!(
            common::sums_distinct_exhaustive(&elems, 2),
            !common::has_relation_exhaustive(&elems, 2)
        );
    }
}

#[test]
fn mesh_alpha_matches_brute_force() {
    let mut rng = SplitMix64::new(7);
    for trial in 0..25 {
        let m = 60 + (trial % 4) * 80; // up to 300
        let size = 5 + rng.next_below(20) as usize;
        let mut elems: Vec<i64> = Vec::new();
        while elems.len() < size {
            let v = rng.next_below(m as u64) as i64 + 1;
            if !elems.contains(&v) {
                elems.push(v);
            }
        }
        for n_len in [1u64, 2, 3, 7, 12] {
            let set = FiniteSet::new(elems.clone()).unwrap();
            let fast = mesh_alpha(&set, n_len).unwrap();
            let slow = common::mesh_brute_force(&elems, n_len, m as i64);
            assert_eq!(fast, slow, "elems {elems:?} N={n_len}");
        }
    }
}

#[test]
fn moran_weyl_sum_agrees_with_exact_rational_route() {
    use furstenberg_lab::orbits::{moran_point, moran_point_rational, DigitRule, MoranSpec};
    let spec = MoranSpec::new(vec![8, 40], 0.3, DigitRule::Seeded(5)).unwrap();
    let x = moran_point(&spec, 2, 768).unwrap();
    let (num, den) = moran_point_rational(&spec, 2).unwrap();
    let limit = BigNat::from(6u32).pow(20);
    // fixed-point route
    let w1 = weyl_sum(&IntegerSet::Furstenberg, &x, &limit, 1).unwrap();
    // exact rational route: phases (s * num mod den) / den
    let terms = semigroup::enumerate_furstenberg(&limit).unwrap();
    let mut acc = (0.0f64, 0.0f64);
    for t in &terms {
        let phase = std::f64::consts::TAU
            * furstenberg_lab::fixed::frac_to_f64(&(&t.value * &num % &den), &den);
        acc.0 += phase.cos();
        acc.1 += phase.sin();
    }
    let n = terms.len() as f64;
    assert!((w1.value.re - acc.0 / n).abs() < 1e-9);
    assert!((w1.value.im - acc.1 / n).abs() < 1e-9);
}

#[test]
fn generic_point_decays_where_the_moran_witness_stays_coherent() {
    use furstenberg_lab::orbits::{nonnormal_witness, DigitRule, MoranSpec};
    let spec = MoranSpec::new(vec![12, 96], 0.25, DigitRule::Constant(5)).unwrap();
    let rows = nonnormal_witness(&spec, 2, 0.1, 1024).unwrap();
    // at the same scales N = 6^10 and 6^86, a generic point equidistributes
    let alpha = furstenberg_lab::numerics::alpha_unit(1024).unwrap();
    for (row, reference) in rows.iter().zip([0.02462f64, 0.00614]) {
        let n = BigNat::from(6u32).pow(row.p_k as u32);
        let w = weyl_sum_strict(&IntegerSet::Furstenberg, &alpha, &n, 1).unwrap();
        assert!((w.value.norm() - reference).abs() < 1e-4, "scale 6^{}", row.p_k);
        assert!(w.value.norm() < 0.1);
        // the witness point keeps a positive fraction of the mass
        assert!(row.ratio > 0.29, "witness ratio {}", row.ratio);
    }
    // seeded wide random fractions decay at the larger scale as well
    // (a narrow dyadic x would be annihilated by the powers of 2)
    let big = BigNat::from(6u32).pow(86);
    for seed in 0..5u64 {
        let mut rng = SplitMix64::new(seed);
        let mut frac = BigNat::from(0u32);
        for _ in 0..14 {
            frac = (frac << 64) | BigNat::from(rng.next_u64());
        }
        let x = UnitReal::from_frac(frac << (1024 - 14 * 64), 1024).unwrap();
        let w = weyl_sum_strict(&IntegerSet::Furstenberg, &x, &big, 1).unwrap();
        assert!(w.value.norm() < 0.1, "seed {seed}: {}", w.value.norm());
    }
}

#[test]
fn parseval_holds_at_degree_ten_thousand() {
    let mut rng = SplitMix64::new(99);
    let mut f = TrigPoly::new();
    for _ in 0..300 {
        f.add_coeff(
            rng.next_below(20001) as i64 - 10_000,
            fourier::Complex64::new(rng.next_gaussian(), rng.next_gaussian()),
        );
    }
    let g = fourier::grid_size(f.degree(), 8);
    let vals = fourier::values_on_grid(&f, g);
    let quad = (vals.iter().map(|v| v.norm_sqr()).sum::<f64>() / g as f64).sqrt();
    assert!((quad - fourier::norm2_coeff(&f)).abs() <= 1e-10 * (1.0 + quad));
}

#[test]
fn conditional_expectation_is_idempotent_and_contractive() {
    let mut rng = SplitMix64::new(123);
    let mut f = TrigPoly::new();
    for _ in 0..40 {
        f.add_coeff(
            rng.next_below(401) as i64 - 200,
            fourier::Complex64::new(rng.next_gaussian(), rng.next_gaussian()),
        );
    }
    for m in [1u64, 2, 3, 5, 12] {
        let once = fourier::cond_expect(&f, m).unwrap();
        let twice = fourier::cond_expect(&once, m).unwrap();
        assert_eq!(once, twice);
        for p in [1.0, 1.5, 2.0, 4.0] {
            let before = fourier::norm(&f, p, 8);
            let after = fourier::norm(&once, p, 8);
            assert!(after <= before + 1e-9, "m={m} p={p}: {after} > {before}");
        }
    }
}

#[test]
fn burkholder_holds_on_randomized_corpus() {
    let mut rng = SplitMix64::new(4242);
    for trial in 0..60 {
        let mut f = TrigPoly::new();
        let terms = 5 + rng.next_below(30) as usize;
        for _ in 0..terms {
            f.add_coeff(
                rng.next_below(2187) as i64 + 1,
                fourier::Complex64::new(rng.next_gaussian(), rng.next_gaussian()),
            );
        }
        for p in [1.5, 3.0, 4.0] {
            let r = fourier::burkholder_check(&f, p, 2, 8).unwrap();
            assert!(r.holds, "trial {trial} p {p}: ratio {}", r.ratio);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prop_mul_mod1_exact_on_dyadics(num in 0u64..1024, k in 10u32..14, n in 1u64..10_000) {
        let num = num % (1 << k);
        let x = UnitReal::from_dyadic(num, k, 128).unwrap();
        let (got, _) = x.mul_mod1(&BigNat::from(n)).unwrap();
        // rational arithmetic oracle
        let expect = ((num as u128 * n as u128) % (1u128 << k)) as f64 / (1u128 << k) as f64;
        prop_assert_eq!(got.to_f64(), expect);
    }

    #[test]
    fn prop_weyl_rational_equals_fixed_point(a in 0u64..12, q in 1u64..13, limit in 2u64..2000, h in 1u64..4) {
        prop_assume!(num_integer::gcd(a % q, q) == 1 || q == 1);
        let big = BigNat::from(limit);
        let wr = weyl_sum_rational(a % q, q, &IntegerSet::Furstenberg, &big, h).unwrap();
        let x = UnitReal::from_ratio(&BigNat::from(a % q), &BigNat::from(q), 256).unwrap();
        let w = weyl_sum(&IntegerSet::Furstenberg, &x, &big, h).unwrap();
        prop_assert!((wr.value - w.value).norm() < 1e-12);
        prop_assert!(w.value.norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn prop_star_discrepancy_bounds(seed in 0u64..5000, n in 1usize..120) {
        let s = PointSample::seeded(n, seed).unwrap();
        let ds = star_discrepancy(&s);
        let d = furstenberg_lab::diophantine::discrepancy(&s);
        prop_assert!(ds >= 0.5 / n as f64 - 1e-12); // D* >= 1/(2N) always
        prop_assert!(ds <= d + 1e-12);
        prop_assert!(d <= 2.0 * ds + 1e-12);
    }

    #[test]
    fn prop_extraction_is_quasi_independent(seed in 0u64..1000) {
        let mut rng = SplitMix64::new(seed);
        let size = 4 + rng.next_below(20) as usize;
        let mut elems: Vec<i64> = Vec::new();
        while elems.len() < size {
            let v = rng.next_below(3000) as i64 + 1;
            if !elems.contains(&v) {
                elems.push(v);
            }
        }
        let set = FiniteSet::new(elems).unwrap();
        let b = extract_quasi_independent(&set, ExtractStrategy::Descending).unwrap();
        prop_assert!(is_quasi_independent(&b).unwrap());
        prop_assert!(!b.is_empty());
    }

    #[test]
    fn prop_rajchman_coeff_bounded(h in 1u64..100_000) {
        let spec = furstenberg_lab::rajchman::RajchmanSpec::from_schedule(
            furstenberg_lab::rajchman::Schedule::Pow2, 8).unwrap();
        let c = furstenberg_lab::rajchman::coeff(&spec, &BigNat::from(h)).unwrap();
        prop_assert!(c.norm() <= 1.0 + 1e-9);
    }

    #[test]
    fn prop_selector_prefix_stability(seed in 0u64..300) {
        use furstenberg_lab::selectors::{sample, SelectorModel};
        let small = sample(&SelectorModel::furstenberg(500, seed)).unwrap();
        let large = sample(&SelectorModel::furstenberg(2500, seed)).unwrap();
        let prefix: Vec<u64> = large.members.iter().copied().filter(|&t| t <= 500).collect();
        prop_assert_eq!(small.members, prefix);
    }
}
