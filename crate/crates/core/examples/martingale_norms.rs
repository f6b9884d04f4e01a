//! Martingale structure of sparse spectra: periodic conditional
//! expectations, base-a differences, square functions, two-sided Burkholder
//! ratios, the Fejér/Paley divergence, and the L^4/L^2 boundedness trend.
//!
//!     cargo run --example martingale_norms

use furstenberg_lab::fourier::{
    burkholder_check, cond_expect, fejer_l1, fejer_paley_sum, lambda_ratio, martingale_diffs,
    norm, sup_norm, Complex64, SzMode, TrigPoly,
};
use furstenberg_lab::numerics::BigNat;
use furstenberg_lab::rng::SplitMix64;
use furstenberg_lab::semigroup::enumerate_furstenberg;

fn main() {
    let f = TrigPoly::from_pairs([
        (2i64, Complex64::new(1.0, 0.0)),
        (3, Complex64::new(1.0, 0.0)),
        (6, Complex64::new(0.5, 0.0)),
        (12, Complex64::new(-1.0, 0.0)),
    ]);
    println!("f with spectrum {{2, 3, 6, 12}}:");
    println!("  E(f | 3-periodic) spectrum: {:?}", cond_expect(&f, 3).unwrap().spectrum());
    let diffs = martingale_diffs(&f, 2, 8).unwrap();
    for (level, d) in diffs.iter().enumerate() {
        if d.nnz() > 0 {
            println!("  base-2 difference level {level}: spectrum {:?}", d.spectrum());
        }
    }
    println!("  ||f||_2 = {:.4}  ||f||_4 = {:.4}  sup ∈ [{:.4}, {:.4}]",
        norm(&f, 2.0, 8), norm(&f, 4.0, 8), sup_norm(&f).lower, sup_norm(&f).upper);

    println!("\nBurkholder ratios ||S(f)||_p / ||f||_p over random spectra in [1, 3^7]:");
    let mut rng = SplitMix64::new(1);
    println!("{:>6} {:>10} {:>10} {:>8}", "p", "ratio", "B_p", "holds");
    let mut g = TrigPoly::new();
    for _ in 0..40 {
        g.add_coeff(rng.next_below(2187) as i64 + 1,
                    Complex64::new(rng.next_gaussian(), rng.next_gaussian()));
    }
    for p in [1.5f64, 2.0, 3.0, 4.0] {
        let r = burkholder_check(&g, p, 3, 8).unwrap();
        println!("{:>6} {:>10.4} {:>10.1} {:>8}", p, r.ratio, r.b_p, r.holds);
    }

    println!("\nFejér kernel: L^1 mass stays 1 while the dyadic Paley mass diverges:");
    println!("{:>9} {:>10} {:>14} {:>10}", "N", "||K_N||_1", "paley mass", "log2 N");
    for e in [3u32, 4, 5, 6] {
        let n = 10u64.pow(e);
        let (l1, _) = fejer_l1(n);
        println!("{:>9} {:>10.6} {:>14.4} {:>10.2}", n, l1, fejer_paley_sum(n), (n as f64).log2());
    }

    println!("\nL^4/L^2 ratio for random signs on S ∩ [1, N] (bounded: Lambda(4)):");
    for e in [2u32, 3, 4, 5] {
        let spectrum: Vec<i64> = enumerate_furstenberg(&BigNat::from(10u64.pow(e)))
            .unwrap()
            .iter()
            .map(|t| i64::try_from(&t.value).unwrap())
            .collect();
        let mut total = 0.0;
        let trials = 20;
        for t in 0..trials {
            let mut trng = SplitMix64::for_trial(99, t);
            let poly = TrigPoly::from_pairs(
                spectrum.iter().map(|&fr| (fr, Complex64::new(trng.next_sign(), 0.0))),
            );
            total += lambda_ratio(&poly, 4.0).unwrap();
        }
        println!("  N = 10^{e}: mean ratio {:.4} ({} frequencies)", total / trials as f64, spectrum.len());
    }

    println!("\nSalem-Zygmund: E sup |Σ ±e_n| against sqrt(N log N):");
    for n in [256usize, 1024, 4096] {
        let r = furstenberg_lab::fourier::salem_zygmund_mc(
            &SzMode::Rademacher { magnitudes: vec![1.0; n] }, 50, 3).unwrap();
        println!("  N = {n:>5}: mean sup = {:.2}, ratio to sqrt(N log N) = {:.4}", r.mean_sup, r.ratio);
    }
}
