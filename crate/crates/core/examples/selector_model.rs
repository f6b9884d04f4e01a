//! The random analogue of the 3-smooth set: select k with probability
//! log k / k. Demonstrates prefix-stable sampling, the mass law,
//! concentration, gap laws, Hartman statistics, relation scarcity, and
//! extraction densities.
//!
//!     cargo run --example selector_model

use furstenberg_lab::selectors::{
    gap_stats, hartman_stat, mass, relation_scan, rider_witness, sample, SelectorModel,
};

fn main() {
    let n = 100_000u64;
    let model = SelectorModel::furstenberg(n, 1);
    let s = sample(&model).unwrap();
    println!("one sample at horizon 10^5, seed 1: {} members", s.len());
    println!("  first members: {:?}", &s.members[..12.min(s.len())]);
    println!("  last members:  {:?}", &s.members[s.len().saturating_sub(5)..]);

    println!("\nmass law m_N = Σ log k/k vs 0.5 log²N:");
    for e in [2u32, 4, 6, 8] {
        let r = mass(10u64.pow(e));
        println!("  N = 10^{e}: exact {:.4}  approx {:.4}  diff {:+.4}", r.exact, r.approx, r.diff);
    }

    println!("\nensemble statistics over 40 seeds at N = 10^5:");
    let mut conc = 0;
    let mut max_centered: f64 = 0.0;
    let mut max_gap: f64 = 0.0;
    let mut max_ratio: f64 = 0.0;
    for seed in 0..40 {
        let s = sample(&SelectorModel::furstenberg(n, seed)).unwrap();
        let h = hartman_stat(&s, 4 * n as usize).unwrap();
        let radius = 6.0 * (h.m_n * (n as f64).ln()).sqrt();
        if h.centered_at_zero.abs() <= radius {
            conc += 1;
        }
        max_centered = max_centered.max(h.centered_sup_normalized);
        let g = gap_stats(&s.members, 0.5).unwrap();
        max_gap = max_gap.max(g.sup_stat);
        max_ratio = max_ratio.max(g.max_ratio);
    }
    println!("  concentration within 6 sqrt(m_N log N): {conc}/40 seeds");
    println!("  max centered sup / sqrt(m_N log N): {max_centered:.3} (subgaussian scale)");
    println!("  max tail-half gap statistic: {max_gap:.3} (a.s. limsup is 2)");
    println!("  max tail-half ratio t_n+1/t_n: {max_ratio:.3} (tends to 1 as N grows)");

    println!("\nrelation scan in the tail T ∩ [10^3, 10^5] (lengths ≤ 4):");
    for seed in 0..5 {
        let s = sample(&SelectorModel::furstenberg(n, seed)).unwrap();
        println!("  seed {seed}: {} relations", relation_scan(&s, 4, 1000).unwrap());
    }

    println!("\nextraction densities |B|/|A|^(2/p-1) at p = 1.5 (bounded away from 0):");
    let s = sample(&SelectorModel::furstenberg(1_000_000, 3)).unwrap();
    let report = rider_witness(&s, 1.5, &[8, 16, 32, 64], 3, 11).unwrap();
    for r in &report.extraction {
        println!("  size {:>3}: min density {:.4}", r.size, r.min_density);
    }
}
