//! Growth of the 3-smooth sequence: counting law, n-th-term law, gaps, and
//! consecutive pairs at continued-fraction convergents.
//!
//!     cargo run --example semigroup_growth

use furstenberg_lab::numerics::BigNat;
use furstenberg_lab::semigroup::{
    adjacent_pair_check, asymptotic_estimate, count, gap_series, growth_constants, nth_residual,
    nth_term, Enumerator,
};

fn main() {
    let first: Vec<u64> = Enumerator::new(&[2, 3])
        .unwrap()
        .take(20)
        .map(|t| u64::try_from(&t.value).unwrap())
        .collect();
    println!("first 20 terms: {first:?}");

    println!("\ncounting law |S ∩ [1,A]| vs log²A/(2 log2 log3) + log6·logA/(2 log2 log3):");
    println!("{:>14} {:>8} {:>12} {:>9}", "A", "exact", "predicted", "error");
    for e in [2u32, 4, 6, 8, 10, 12] {
        let r = count(&BigNat::from(10u64.pow(e))).unwrap();
        println!("{:>14} {:>8} {:>12.3} {:>+9.3}", format!("10^{e}"), r.exact, r.predicted, r.error);
    }

    let c = growth_constants();
    println!("\nn-th term law s_n ≈ (1/√6) exp(C√n), C = {:.10}:", c.growth_c);
    println!("{:>8} {:>26} {:>14} {:>10}", "n", "s_n", "estimate", "residual");
    for n in [10u64, 100, 1000, 10_000] {
        let t = nth_term(n).unwrap();
        println!(
            "{:>8} {:>26} {:>14.4e} {:>+10.5}",
            n,
            t.value.to_string(),
            asymptotic_estimate(n),
            nth_residual(&t)
        );
    }

    let g = gap_series(50_000).unwrap();
    println!("\nrelative gaps over n ≤ 5·10⁴ (lower law exponent 4.117, upper 0.1954):");
    println!("  min g_n (log s_n)^4.117  = {:.4}  (positive)", g.min_scaled_lower);
    println!("  max g_n (log s_n)^0.1954 = {:.4}  (bounded)", g.max_scaled_upper);
    println!("  s_n+1 <= 2 s_n held everywhere: {}", g.doubling_bound_ok);

    println!("\nconsecutive pairs at convergents p/q of log2/log3:");
    for (p, q) in [(1u32, 1u32), (1, 2), (2, 3), (5, 8), (12, 19), (41, 65), (53, 84)] {
        let r = adjacent_pair_check(p, q).unwrap();
        println!(
            "  p/q={p}/{q}: ({}, {}) adjacent={} gap ratio {:.5}",
            r.lower, r.upper, r.is_adjacent, r.gap_ratio
        );
    }
}
