//! Diophantine toolkit: the continued fraction of alpha = log2/log3,
//! distance-to-integer scans, and discrepancy of the orbit {j alpha}.
//!
//!     cargo run --example equidistribution

use furstenberg_lab::diophantine::{
    cf_expand, discrepancy, erdos_turan_bound, irrationality_scan, koksma_check, qnorm,
    star_discrepancy, PointSample, Shape,
};

fn main() {
    let cf = cf_expand(14, 384).unwrap();
    println!("alpha = log2/log3 = [0; {}]", cf.quotients[1..]
        .iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "));
    println!("\nconvergents and ‖q·alpha‖ (best approximations):");
    println!("{:>4} {:>10} {:>10} {:>14} {:>14}", "i", "p", "q", "‖q alpha‖", "q^4.117 ‖..‖");
    for (i, (p, q)) in cf.convergents.iter().enumerate().skip(1).take(9) {
        let qv = u64::try_from(q).unwrap();
        let norm = qnorm(qv, 384).unwrap();
        println!(
            "{:>4} {:>10} {:>10} {:>14.6e} {:>14.5}",
            i, p, q, norm, (qv as f64).powf(4.117) * norm,
        );
    }

    let scan = irrationality_scan(100_000, 4.117, 384).unwrap();
    println!(
        "\nmin over q ≤ 10⁵ of q^4.117 ‖q alpha‖ = {:.5} at q = {} (positive: alpha is 4.117-diophantine)",
        scan.min_value, scan.argmin_q
    );

    println!("\ndiscrepancy of {{j alpha}}, j ≤ N:");
    println!("{:>7} {:>12} {:>12} {:>12} {:>8}", "N", "D_N*", "D_N", "ET bound", "Koksma");
    for n in [100usize, 1000, 10_000] {
        let s = PointSample::jalpha(n, 256).unwrap();
        let ds = star_discrepancy(&s);
        let d = discrepancy(&s);
        let et = erdos_turan_bound(&s, 64, 3.0).unwrap();
        let ko = koksma_check(Shape::Sawtooth, &s);
        println!(
            "{:>7} {:>12.6} {:>12.6} {:>12.6} {:>8}",
            n, ds, d, et.bound,
            if ko.holds { "holds" } else { "FAILS" }
        );
    }

    println!("\nequispaced points attain D_N* = 1/N exactly:");
    for n in [10usize, 100] {
        let s = PointSample::equispaced(n).unwrap();
        println!("  N={n}: D* = {:.6}", star_discrepancy(&s));
    }
}
