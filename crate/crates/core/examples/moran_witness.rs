//! Base-6 Moran points with sparse free digits keep the 3-smooth Weyl sums
//! coherent, witnessing orbits that fail to equidistribute; the dimension
//! of the witness family comes from the Moran lower bound.
//!
//!     cargo run --example moran_witness

use furstenberg_lab::orbits::{moran_point, nonnormal_witness, witness_threshold, DigitRule, MoranSpec};
use furstenberg_lab::rajchman::{moran_dim_bound, wdim_quadratic};

fn main() {
    let spec = MoranSpec::new(vec![12, 96], 0.25, DigitRule::Constant(5)).unwrap();
    let x = moran_point(&spec, 2, 1024).unwrap();
    let digits = x.base6_digits(40);
    println!("Moran point, levels (12, 96), free fraction 0.25, free digits = 5:");
    println!("  first 40 base-6 digits: {digits:?}");

    println!("\nunnormalized Weyl sums at scales N = 6^p_k (p_k = 0.9 ell_k):");
    println!("{:>3} {:>6} {:>9} {:>12} {:>10}", "k", "p_k", "|S_N|", "|T_N|", "ratio");
    for row in nonnormal_witness(&spec, 2, 0.1, 1024).unwrap() {
        println!(
            "{:>3} {:>6} {:>9} {:>12.2} {:>10.4}",
            row.k, row.p_k, row.terms, row.modulus, row.ratio
        );
    }
    println!(
        "  asymptotic lower bound at (delta, eps) = (0.25, 0.1): {:.4}",
        witness_threshold(0.25, 0.1)
    );
    println!("  (a fully equidistributed orbit would give ratio -> 0; the");
    println!("   coherent mass stays near C = 0.6566 for small delta)");

    println!("\nMoran dimension lower bounds:");
    let cantor = moran_dim_bound((0..1_000_000).map(|_| (2u64, 1.0 / 3.0))).unwrap();
    println!("  middle-thirds schedule: {cantor:.6} (log2/log3 = {:.6})", 2f64.ln() / 3f64.ln());
    println!("  witness-family quadratic root: {:.6}", wdim_quadratic());
}
