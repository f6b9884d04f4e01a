//! The block-random measure: a probability measure carried by orbits that
//! do not equidistribute, whose Fourier coefficients still vanish at
//! infinity. Decay is profiled block by block and cross-checked by
//! Monte-Carlo sampling.
//!
//!     cargo run --example rajchman_measure

use furstenberg_lab::fourier::Complex64;
use furstenberg_lab::numerics::BigNat;
use furstenberg_lab::rajchman::{
    coeff, decay_profile, del_sums, phase_of_digits, sample_digits, RajchmanSpec, Schedule,
};
use furstenberg_lab::semigroup::Enumerator;

fn main() {
    let spec = RajchmanSpec::from_schedule(Schedule::Pow2, 8).unwrap();
    println!("block schedule m_k = 2^k, blocks 2..=7, P(skip block j) = 1/(j log j)");

    println!("\nsample coefficients:");
    for h in [0u64, 1, 100, 10_000, 1_000_000] {
        let c = coeff(&spec, &BigNat::from(h)).unwrap();
        println!("  mu_hat({h:>8}) = {:+.5}{:+.5}i   |.| = {:.5}", c.re, c.im, c.norm());
    }

    println!("\nper-block decay maxima over log-grids of h:");
    println!("{:>3} {:>14} {:>14} {:>14}", "k", "observed max", "literal bound", "safe bound");
    for row in decay_profile(&spec, 3..=6, 24).unwrap() {
        println!(
            "{:>3} {:>14.5} {:>14.5} {:>14.5}",
            row.k, row.observed_max, row.bound, row.bound_safe
        );
    }
    println!("  (the literal display can be exceeded near block bottoms, where the");
    println!("   vanishing factor is c_(k-1); the safe bound covers both cases)");

    let h = BigNat::from(5000u32);
    let predicted = coeff(&spec, &h).unwrap();
    let trials = 5000u64;
    let mut acc = Complex64::new(0.0, 0.0);
    for t in 0..trials {
        acc += phase_of_digits(&h, &sample_digits(&spec, t).unwrap());
    }
    let mean = acc / trials as f64;
    println!("\nMonte-Carlo mean of e(h X) over {trials} draws at h = 5000:");
    println!("  sampled {:+.5}{:+.5}i vs product {:+.5}{:+.5}i", mean.re, mean.im, predicted.re, predicted.im);

    println!("\npartial sums of the a.e.-convergence criterion over the 3-smooth set:");
    let values: Vec<BigNat> = Enumerator::new(&[2, 3]).unwrap().take(200).map(|t| t.value).collect();
    let rows = del_sums(&values, |d| coeff(&spec, d), 200).unwrap();
    for n in [10usize, 50, 100, 200] {
        let r = &rows[n - 1];
        println!("  n = {:>3}: v_n = {:.5e}  running sum = {:.5}", r.n, r.v_n, r.partial);
    }
}
