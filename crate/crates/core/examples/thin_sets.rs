//! Combinatorial thin-set tests: quasi-independence, dissociation, shortest
//! relations, greedy extraction densities, and the arithmetic-progression
//! mesh statistic.
//!
//!     cargo run --example thin_sets

use furstenberg_lab::numerics::BigNat;
use furstenberg_lab::semigroup::enumerate_furstenberg;
use furstenberg_lab::thinsets::{
    extract_quasi_independent, extraction_density, find_relation, is_dissociate,
    is_quasi_independent, mesh_alpha, rider_density, ExtractStrategy, FiniteSet,
};

fn main() {
    println!("named examples:");
    for elems in [vec![1i64, 2, 3], vec![1, 2, 4, 8], vec![1, 3, 9], vec![1, 2], vec![3, 5, 7, 9]] {
        let set = FiniteSet::new(elems.clone()).unwrap();
        let rel = find_relation(&set, 6).unwrap();
        println!(
            "  {:?}: quasi-independent={} dissociate={} shortest relation: {}",
            elems,
            is_quasi_independent(&set).unwrap(),
            is_dissociate(&set).unwrap(),
            rel.map(|r| {
                r.coeffs
                    .iter()
                    .map(|&(x, e)| if e == 1 { format!("+{x}") } else { format!("-{x}") })
                    .collect::<String>()
            })
            .unwrap_or_else(|| "none".into()),
        );
    }

    let s_values: Vec<i64> = enumerate_furstenberg(&BigNat::from(10_000u64))
        .unwrap()
        .iter()
        .map(|t| i64::try_from(&t.value).unwrap())
        .collect();
    let a = FiniteSet::new(s_values.clone()).unwrap();
    let b = extract_quasi_independent(&a, ExtractStrategy::Descending).unwrap();
    println!("\ngreedy extraction from S ∩ [1, 10^4] ({} elements):", a.len());
    println!("  kept {} elements: {:?}", b.len(), b.elements());
    println!(
        "  density |B|/|A|^(1/2) = {:.4}  (the p = 4/3 exponent)",
        extraction_density(b.len(), a.len(), 0.5)
    );

    println!("\nmesh statistic alpha_E(N) for E = S ∩ [1, 100]:");
    let s100 = FiniteSet::new(
        s_values.iter().copied().take_while(|&v| v <= 100).collect::<Vec<_>>(),
    )
    .unwrap();
    for n in [2u64, 3, 5, 10] {
        println!("  N = {n}: {}", mesh_alpha(&s100, n).unwrap());
    }

    println!("\nextraction and counting statistics for S (p = 1.5):");
    let values: Vec<u64> = s_values.iter().map(|&v| v as u64).collect();
    let report = rider_density(&values, 1.5, &[8, 16, 32, 64], 3, &[100, 1000, 10_000], 7).unwrap();
    for r in &report.extraction {
        println!("  size {:>3}: min |B|/|A|^(1/3) = {:.4}", r.size, r.min_density);
    }
    for r in &report.counting {
        println!("  N = {:>6}: |S_N|/(log N)^3 = {:.4}", r.n, r.statistic);
    }
}
