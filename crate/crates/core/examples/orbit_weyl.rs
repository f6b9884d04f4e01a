//! Weyl sums of the 3-smooth set: rational points keep a coherent mass
//! (the set is far from Hartman uniformly distributed), generic points
//! equidistribute.
//!
//!     cargo run --example orbit_weyl

use furstenberg_lab::numerics::{alpha_unit, BigNat};
use furstenberg_lab::orbits::{khinchin_average, weyl_sum, weyl_sum_rational, AverageFn, IntegerSet};

fn main() {
    let s = IntegerSet::Furstenberg;

    println!("normalized Weyl sums (1/|S_N|) Σ e(s x) over S ∩ [1, N]:");
    println!("{:>10} {:>10} {:>22} {:>10}", "x", "N", "value", "modulus");
    for (a, q) in [(1u64, 2u64), (1, 3), (1, 6), (2, 9)] {
        for e in [4u32, 6, 8] {
            let n = BigNat::from(10u64.pow(e));
            let w = weyl_sum_rational(a, q, &s, &n, 1).unwrap();
            println!(
                "{:>10} {:>10} {:>22} {:>10.4}",
                format!("{a}/{q}"),
                format!("10^{e}"),
                format!("{:.4}{:+.4}i", w.value.re, w.value.im),
                w.value.norm()
            );
        }
    }
    println!("  -> at x = 1/2 the modulus tends to 1: odd terms (powers of 3) thin out.");

    let alpha = alpha_unit(256).unwrap();
    println!("\nat the generic point x = alpha the orbit equidistributes:");
    for e in [4u32, 6, 8] {
        let n = BigNat::from(10u64.pow(e));
        let w = weyl_sum(&s, &alpha, &n, 1).unwrap();
        println!("  N = 10^{e}: |weyl| = {:.4}  ({} terms)", w.value.norm(), w.terms);
    }

    println!("\nempirical Khinchin averages at x = alpha, N = 10^6:");
    let n = BigNat::from(1_000_000u64);
    for (label, f) in [
        ("f = 1", AverageFn::One),
        ("f = e_1", AverageFn::Character(1)),
        ("f = 1_[0,1/2)", AverageFn::Indicator(0.5)),
        ("f = {x}", AverageFn::Sawtooth),
    ] {
        let r = khinchin_average(&s, f, &alpha, &n).unwrap();
        println!(
            "  {label:<14} average {:+.4}{:+.4}i   integral {:+.2}   deviation {:.4}",
            r.average.re, r.average.im, r.integral.re, r.deviation
        );
    }
}
