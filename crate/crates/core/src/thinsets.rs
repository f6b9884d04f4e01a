//! Combinatorial thin-set tests: quasi-independence and dissociation by
//! meet-in-the-middle, shortest-relation search, greedy quasi-independent
//! extraction with an incremental subset-sum checker, the arithmetic-
//! progression mesh statistic, and extraction/counting density tables.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Elements admitted in finite sets (keeps all signed sums inside i64).
const MAX_ELEMENT: i64 = 1 << 48;
/// Meet-in-the-middle caps: 3^15 resp. 5^10 enumerated sums per half.
const QUASI_CAP: usize = 30;
const DISSOCIATE_CAP: usize = 20;
/// Spec-level size limit for the testers.
const SIZE_LIMIT: usize = 40;

/// Sorted list of distinct nonzero integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSet {
    elems: Vec<i64>,
}

impl FiniteSet {
    pub fn new(mut elems: Vec<i64>) -> Result<FiniteSet> {
        elems.sort_unstable();
        for w in elems.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Domain(format!("duplicate element {}", w[0])));
            }
        }
        for &x in &elems {
            if x == 0 {
                return Err(Error::Domain("elements must be nonzero".into()));
            }
            if x.abs() > MAX_ELEMENT {
                return Err(Error::Domain(format!("element {x} out of desk range")));
            }
        }
        Ok(FiniteSet { elems })
    }

    pub fn elements(&self) -> &[i64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

/// A vanishing signed combination: `sum eps_i x_i = 0`, eps in -2..=2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    /// (element, coefficient) with nonzero coefficients only.
    pub coeffs: Vec<(i64, i8)>,
}

impl Relation {
    pub fn length(&self) -> u32 {
        self.coeffs.iter().map(|&(_, e)| e.unsigned_abs() as u32).sum()
    }

    pub fn holds(&self) -> bool {
        self.coeffs
            .iter()
            .map(|&(x, e)| i128::from(x) * i128::from(e))
            .sum::<i128>()
            == 0
    }
}

/// Advance `support` to the next t-combination of `0..n` in lexicographic
/// order; false when exhausted.
fn next_combination(support: &mut [usize], n: usize) -> bool {
    let t = support.len();
    let mut i = t;
    while i > 0 {
        i -= 1;
        if support[i] != i + n - t {
            support[i] += 1;
            for j in i + 1..t {
                support[j] = support[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Sums of every coefficient vector in `{-bound..=bound}^elems`, plus a flag
/// for an internal relation (the zero sum reached by a nonzero vector).
fn half_sums(elems: &[i64], bound: i8) -> (Vec<i64>, bool) {
    let mut sums = Vec::with_capacity((2 * bound as usize + 1).pow(elems.len() as u32));
    let mut internal = false;
    fn rec(elems: &[i64], bound: i8, idx: usize, acc: i64, nonzero: bool, sums: &mut Vec<i64>, internal: &mut bool) {
        if idx == elems.len() {
            if acc == 0 && nonzero {
                *internal = true;
            }
            sums.push(acc);
            return;
        }
        for e in -bound..=bound {
            rec(
                elems,
                bound,
                idx + 1,
                acc + elems[idx] * e as i64,
                nonzero || e != 0,
                sums,
                internal,
            );
        }
    }
    rec(elems, bound, 0, 0, false, &mut sums, &mut internal);
    (sums, internal)
}

/// Whether a nontrivial relation with coefficients in `{-bound..=bound}`
/// exists, by signed-sum collision between the two halves.
fn has_relation(elems: &[i64], bound: i8, cap: usize) -> Result<bool> {
    if elems.len() > SIZE_LIMIT {
        return Err(Error::Domain(format!(
            "set size {} exceeds the tester limit {SIZE_LIMIT}",
            elems.len()
        )));
    }
    if elems.len() > cap {
        return Err(Error::Domain(format!(
            "set size {} exceeds the meet-in-the-middle budget {cap} for coefficient bound {bound}",
            elems.len()
        )));
    }
    // relations are invariant under x -> -x (flip the coefficient), so work
    // with absolute values; a duplicate absolute value is itself a relation
    let mut abs: Vec<i64> = elems.iter().map(|&x| x.abs()).collect();
    abs.sort_unstable();
    if abs.windows(2).any(|w| w[0] == w[1]) {
        return Ok(true);
    }
    let mid = abs.len() / 2;
    let (mut left, int_l) = half_sums(&abs[..mid], bound);
    let (mut right, int_r) = half_sums(&abs[mid..], bound);
    if int_l || int_r {
        return Ok(true);
    }
    left.sort_unstable();
    right.sort_unstable();
    // scan for a common nonzero value of left and -right = right (symmetric)
    let (mut i, mut j) = (0usize, 0usize);
    while i < left.len() && j < right.len() {
        match left[i].cmp(&right[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if left[i] != 0 {
                    return Ok(true);
                }
                i += 1;
                j += 1;
            }
        }
    }
    Ok(false)
}

/// No vanishing signed combination with coefficients in {-1, 0, 1}.
pub fn is_quasi_independent(set: &FiniteSet) -> Result<bool> {
    Ok(!has_relation(set.elements(), 1, QUASI_CAP)?)
}

/// No vanishing signed combination with coefficients in {-2, ..., 2}.
pub fn is_dissociate(set: &FiniteSet) -> Result<bool> {
    Ok(!has_relation(set.elements(), 2, DISSOCIATE_CAP)?)
}

/// Shortest relation with coefficients in {-1,0,1} and length at most
/// `max_length`, if any; ties broken by the enumeration order (supports in
/// lexicographic order over the sorted elements, then sign patterns with
/// the first coefficient normalized to +1).
pub fn find_relation(set: &FiniteSet, max_length: u32) -> Result<Option<Relation>> {
    if set.len() > SIZE_LIMIT {
        return Err(Error::Domain("set size exceeds the tester limit".into()));
    }
    let elems = set.elements();
    let n = elems.len();
    for t in 2..=(max_length.min(n as u32) as usize) {
        let combos = binomial(n, t);
        if combos.saturating_mul(1 << t) > 200_000_000 {
            return Err(Error::Domain(format!(
                "relation search of length {t} over {n} elements exceeds the budget"
            )));
        }
        let mut support: Vec<usize> = (0..t).collect();
        loop {
            // sign patterns: first coefficient fixed to +1
            for mask in 0..(1u32 << (t - 1)) {
                let mut acc: i128 = i128::from(elems[support[0]]);
                for (b, &idx) in support.iter().enumerate().skip(1) {
                    let sign = if mask >> (b - 1) & 1 == 0 { 1 } else { -1 };
                    acc += i128::from(elems[idx]) * sign;
                }
                if acc == 0 {
                    let mut coeffs = vec![(elems[support[0]], 1i8)];
                    for (b, &idx) in support.iter().enumerate().skip(1) {
                        let sign = if mask >> (b - 1) & 1 == 0 { 1i8 } else { -1 };
                        coeffs.push((elems[idx], sign));
                    }
                    let r = Relation { coeffs };
                    debug_assert!(r.holds());
                    return Ok(Some(r));
                }
            }
            if !next_combination(&mut support, n) {
                break;
            }
        }
    }
    Ok(None)
}

fn binomial(n: usize, k: usize) -> usize {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u128::from(u64::MAX) {
            return usize::MAX;
        }
    }
    acc.min(usize::MAX as u128) as usize
}

/// Number of distinct relations of length at most `s` (canonical form:
/// leading coefficient +1), by direct support enumeration.
pub fn count_relations_up_to_length(set: &FiniteSet, s: u32) -> Result<u64> {
    let elems = set.elements();
    let n = elems.len();
    let mut count = 0u64;
    for t in 2..=(s.min(n as u32) as usize) {
        if binomial(n, t).saturating_mul(1 << t) > 2_000_000_000 {
            return Err(Error::Domain(format!(
                "relation count of length {t} over {n} elements exceeds the budget"
            )));
        }
        let mut support: Vec<usize> = (0..t).collect();
        loop {
            for mask in 0..(1u32 << (t - 1)) {
                let mut acc: i128 = i128::from(elems[support[0]]);
                for (b, &idx) in support.iter().enumerate().skip(1) {
                    let sign = if mask >> (b - 1) & 1 == 0 { 1 } else { -1 };
                    acc += i128::from(elems[idx]) * sign;
                }
                if acc == 0 {
                    count += 1;
                }
            }
            if !next_combination(&mut support, n) {
                break;
            }
        }
    }
    Ok(count)
}

/// Scan order of the greedy extraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtractStrategy {
    /// Largest elements first (large elements rarely relate to the tail).
    Descending,
    Ascending,
}

/// Incremental quasi-independence checker over positive elements: keeps the
/// set of achievable subset sums as a bitset; `x` can join iff no two sums
/// differ by exactly `x`.
struct SubsetSumChecker {
    bits: Vec<u64>,
    top: usize, // highest achievable sum
}

impl SubsetSumChecker {
    fn new() -> SubsetSumChecker {
        SubsetSumChecker { bits: vec![1u64], top: 0 }
    }

    fn words_for(&self, sum: usize) -> usize {
        sum / 64 + 1
    }

    /// True iff some achievable sums s, s + x are both present.
    fn collides(&self, x: usize) -> bool {
        let (wshift, bshift) = (x / 64, (x % 64) as u32);
        let active = self.words_for(self.top);
        for w in 0..active {
            let lo = self.bits.get(w + wshift).copied().unwrap_or(0) >> bshift;
            let hi = if bshift == 0 {
                0
            } else {
                self.bits.get(w + wshift + 1).copied().unwrap_or(0) << (64 - bshift)
            };
            if self.bits[w] & (lo | hi) != 0 {
                return true;
            }
        }
        false
    }

    /// `bits |= bits << x` (called only after `collides` returned false).
    fn insert(&mut self, x: usize) {
        let new_top = self.top + x;
        let need = self.words_for(new_top);
        self.bits.resize(need.max(self.bits.len()), 0);
        let (wshift, bshift) = (x / 64, (x % 64) as u32);
        for w in (0..=self.top / 64).rev() {
            let v = self.bits[w];
            if v == 0 {
                continue;
            }
            self.bits[w + wshift] |= v << bshift;
            if bshift != 0 && w + wshift + 1 < self.bits.len() {
                self.bits[w + wshift + 1] |= v >> (64 - bshift);
            }
        }
        self.top = new_top;
    }
}

const BITSET_SUM_BUDGET: usize = 1 << 28; // 32 MiB of subset-sum bitset

/// Greedy quasi-independent subset, scanning in the strategy's order and
/// keeping each element whose addition preserves quasi-independence.
pub fn extract_quasi_independent(set: &FiniteSet, strategy: ExtractStrategy) -> Result<FiniteSet> {
    if set.len() > 10_000 {
        return Err(Error::Domain("extraction limited to 10^4 elements".into()));
    }
    // work on absolute values (relations are sign-invariant); a duplicated
    // absolute value can contribute only one representative
    let mut order: Vec<i64> = set.elements().iter().map(|&x| x.abs()).collect();
    order.sort_unstable();
    order.dedup();
    match strategy {
        ExtractStrategy::Descending => order.reverse(),
        ExtractStrategy::Ascending => {}
    }
    let budget: i128 = order.iter().map(|&x| i128::from(x)).sum();
    if budget > BITSET_SUM_BUDGET as i128 {
        return Err(Error::Domain(
            "element magnitudes exceed the incremental checker budget".into(),
        ));
    }
    let mut checker = SubsetSumChecker::new();
    let mut kept: Vec<i64> = Vec::new();
    for &x in &order {
        let xu = x as usize;
        if !checker.collides(xu) {
            checker.insert(xu);
            kept.push(x);
        }
    }
    // map back to the original signs where the original element was negative
    let set_elems: std::collections::BTreeSet<i64> = set.elements().iter().copied().collect();
    let restored: Vec<i64> = kept
        .into_iter()
        .map(|a| if set_elems.contains(&a) { a } else { -a })
        .collect();
    FiniteSet::new(restored)
}

/// `|B| / |A|^eps`, the extraction density statistic.
pub fn extraction_density(b_len: usize, a_len: usize, eps: f64) -> f64 {
    b_len as f64 / (a_len as f64).powf(eps)
}

/// Exact mesh statistic: the maximal number of elements of `E` inside an
/// arithmetic progression `a+b, a+2b, ..., a+Nb`.
///
/// Any progression meeting `E` twice has its common difference dividing a
/// pairwise difference, so only those candidates are scanned.
pub fn mesh_alpha(set: &FiniteSet, n_len: u64) -> Result<u64> {
    if n_len == 0 {
        return Err(Error::Domain("progression length must be >= 1".into()));
    }
    let elems = set.elements();
    if elems.iter().any(|&x| x < 1) {
        return Err(Error::Domain("mesh statistic needs positive elements".into()));
    }
    if elems.len() > 2000 {
        return Err(Error::Domain("mesh statistic limited to 2000 elements".into()));
    }
    if elems.is_empty() {
        return Ok(0);
    }
    if elems.len() == 1 || n_len == 1 {
        return Ok(1);
    }
    // distinct pairwise differences
    let mut diffs: BTreeSet<u64> = BTreeSet::new();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            diffs.insert((elems[j] - elems[i]) as u64);
        }
    }
    // divisors of the differences
    let mut candidates: BTreeSet<u64> = BTreeSet::new();
    for &d in &diffs {
        let mut f = 1u64;
        while f * f <= d {
            if d % f == 0 {
                candidates.insert(f);
                candidates.insert(d / f);
            }
            f += 1;
        }
    }
    let mut best = 1u64;
    for &b in &candidates {
        // group by residue class, count a window of n_len consecutive steps
        let mut by_res: std::collections::HashMap<u64, Vec<u64>> = std::collections::HashMap::new();
        for &x in elems {
            let x = x as u64;
            by_res.entry(x % b).or_default().push(x / b);
        }
        for qs in by_res.values_mut() {
            qs.sort_unstable();
            let mut lo = 0usize;
            for hi in 0..qs.len() {
                while qs[hi] - qs[lo] > n_len - 1 {
                    lo += 1;
                }
                best = best.max((hi - lo + 1) as u64);
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Debug)]
pub struct RiderRow {
    pub size: usize,
    /// min over trials of `|B| / |A|^{2/p - 1}`
    pub min_density: f64,
}

#[derive(Clone, Debug)]
pub struct CountingRow {
    pub n: u64,
    /// `|E ∩ [1, N]| / (log N)^{p/(2-p)}`
    pub statistic: f64,
}

#[derive(Clone, Debug)]
pub struct RiderReport {
    pub extraction: Vec<RiderRow>,
    pub counting: Vec<CountingRow>,
}

/// Extraction densities over random subsets of `values` at each requested
/// size, plus the counting statistic over a grid of horizons.
pub fn rider_density(
    values: &[u64],
    p: f64,
    sizes: &[usize],
    trials: usize,
    n_grid: &[u64],
    seed: u64,
) -> Result<RiderReport> {
    if !(1.0 < p && p < 2.0) {
        return Err(Error::Domain("rider density needs p in (1,2)".into()));
    }
    let eps = 2.0 / p - 1.0;
    let alpha = p / (2.0 - p);
    let mut extraction = Vec::new();
    for (si, &size) in sizes.iter().enumerate() {
        if size == 0 || size > values.len() {
            return Err(Error::Domain(format!(
                "subset size {size} out of range (population {})",
                values.len()
            )));
        }
        let mut min_density = f64::INFINITY;
        for t in 0..trials.max(1) {
            let mut rng = SplitMix64::for_trial(seed, (si * 1000 + t) as u64);
            let idx = rng.sample_indices(values.len(), size);
            let subset: Vec<i64> = idx.iter().map(|&i| values[i] as i64).collect();
            let b = extract_quasi_independent(&FiniteSet::new(subset)?, ExtractStrategy::Descending)?;
            min_density = min_density.min(extraction_density(b.len(), size, eps));
        }
        extraction.push(RiderRow { size, min_density });
    }
    let counting = n_grid
        .iter()
        .map(|&n| {
            let cnt = values.iter().take_while(|&&v| v <= n).count() as f64;
            CountingRow {
                n,
                statistic: cnt / (n as f64).ln().powf(alpha),
            }
        })
        .collect();
    Ok(RiderReport { extraction, counting })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> FiniteSet {
        FiniteSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn quasi_independence_examples() {
        assert!(!is_quasi_independent(&set(&[1, 2, 3])).unwrap()); // 1+2-3
        assert!(is_quasi_independent(&set(&[1, 2, 4, 8])).unwrap());
        assert!(is_quasi_independent(&set(&[1])).unwrap());
    }

    #[test]
    fn dissociate_examples() {
        assert!(!is_dissociate(&set(&[1, 2])).unwrap()); // 2*1 - 2
        assert!(is_dissociate(&set(&[1, 3, 9])).unwrap());
        assert!(!is_dissociate(&set(&[1, 2, 4, 8])).unwrap()); // 2*1+2-4, etc.
    }

    #[test]
    fn negatives_and_duplicated_magnitude() {
        assert!(!is_quasi_independent(&set(&[-3, 3])).unwrap());
        assert!(is_quasi_independent(&set(&[-1, 2, -4, 8])).unwrap());
    }

    #[test]
    fn find_relation_examples() {
        let r = find_relation(&set(&[3, 5, 7, 9]), 4).unwrap().unwrap();
        assert!(r.holds());
        assert_eq!(r.length(), 4); // 3 - 5 - 7 + 9 = 0
        assert!(find_relation(&set(&[1, 2, 4, 8]), 4).unwrap().is_none());
        assert!(find_relation(&set(&[1, 2, 3]), 2).unwrap().is_none());
        let r = find_relation(&set(&[1, 2, 3]), 3).unwrap().unwrap();
        assert_eq!(r.length(), 3);
        assert!(r.holds());
    }

    #[test]
    fn find_relation_is_deterministic() {
        let a = find_relation(&set(&[1, 2, 3, 4, 5, 6, 7]), 3).unwrap().unwrap();
        let b = find_relation(&set(&[1, 2, 3, 4, 5, 6, 7]), 3).unwrap().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.length(), 3); // 1 + 2 - 3 comes first lexicographically
        assert_eq!(a.coeffs, vec![(1, 1), (2, 1), (3, -1)]);
    }

    #[test]
    fn relation_count_triangle() {
        assert_eq!(count_relations_up_to_length(&set(&[1, 2, 3]), 3).unwrap(), 1);
        assert_eq!(count_relations_up_to_length(&set(&[1, 2, 3]), 2).unwrap(), 0);
        // {1,2,3,4}: 1+2-3, 1+3-4, 1-2-3+4... enumerate: t=3: {1,2,3}, {1,3,4};
        // t=4: 1+2+... 1-2-3+4=0 yes; 2+3-4-1=0 yes (same canonical? leading +1:
        // 1-2-3+4); so 3 total
        assert_eq!(count_relations_up_to_length(&set(&[1, 2, 3, 4]), 4).unwrap(), 3);
    }

    #[test]
    fn extraction_keeps_quasi_independent_sets_whole() {
        let a = set(&[1, 2, 4, 8, 16]);
        let b = extract_quasi_independent(&a, ExtractStrategy::Descending).unwrap();
        assert_eq!(b, a);
    }

    #[test]
    fn extraction_output_is_quasi_independent() {
        let a = set(&(1..=40).collect::<Vec<i64>>());
        let b = extract_quasi_independent(&a, ExtractStrategy::Descending).unwrap();
        assert!(is_quasi_independent(&b).unwrap());
        // at least the dyadic lower bound survives
        assert!(b.len() >= 6, "kept {:?}", b.elements());
        // greedy from the top keeps the two largest
        assert!(b.elements().contains(&40));
        assert!(b.elements().contains(&39));
    }

    #[test]
    fn extraction_matches_naive_greedy() {
        // independent oracle: greedy with a fresh meet-in-the-middle test
        // at every step
        let mut rng = SplitMix64::new(17);
        for _ in 0..30 {
            let mut pool: Vec<i64> = (0..12).map(|_| rng.next_below(200) as i64 + 1).collect();
            pool.sort_unstable();
            pool.dedup();
            let a = FiniteSet::new(pool.clone()).unwrap();
            let fast = extract_quasi_independent(&a, ExtractStrategy::Descending).unwrap();
            let mut naive: Vec<i64> = Vec::new();
            for &x in pool.iter().rev() {
                let mut cand = naive.clone();
                cand.push(x);
                if is_quasi_independent(&FiniteSet::new(cand).unwrap()).unwrap() {
                    naive.push(x);
                }
            }
            naive.sort_unstable();
            assert_eq!(fast.elements(), &naive[..]);
        }
    }

    #[test]
    fn mesh_examples() {
        let full = set(&(1..=30).collect::<Vec<i64>>());
        for n in [1u64, 3, 10, 30] {
            assert_eq!(mesh_alpha(&full, n).unwrap(), n);
        }
        assert_eq!(mesh_alpha(&set(&[2, 4, 6, 8, 10]), 3).unwrap(), 3);
        // S cap [1,100] contains the progression 2,3,4
        let s: Vec<i64> = vec![1, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 27, 32, 36, 48, 54, 64, 72, 81, 96];
        assert_eq!(mesh_alpha(&FiniteSet::new(s).unwrap(), 3).unwrap(), 3);
    }

    #[test]
    fn rider_counting_statistics_for_the_smooth_set() {
        let s: Vec<u64> = crate::semigroup::Enumerator::new(&[2, 3])
            .unwrap()
            .map(|t| t.value)
            .take_while(|v| *v <= num_bigint::BigUint::from(1_000_000u64))
            .map(|v| u64::try_from(&v).unwrap())
            .collect();
        // p = 4/3: statistic |S_N|/log^2 N approaches 1/(2 log2 log3) from
        // above (0.8383 at 1e3, 0.7440 at 1e6 vs the limit 0.6566)
        let rep = rider_density(&s, 4.0 / 3.0, &[4], 1, &[1000, 1_000_000], 1).unwrap();
        let k2 = 1.0 / (2.0 * 2f64.ln() * 3f64.ln());
        assert!(rep.counting[1].statistic < rep.counting[0].statistic);
        assert!((rep.counting[1].statistic - 0.7440).abs() < 1e-3);
        assert!(rep.counting[1].statistic > k2);
        // p = 1.2 < 4/3: the statistic grows instead (2.2032 -> 2.7653)
        let rep = rider_density(&s, 1.2, &[4], 1, &[1000, 1_000_000], 1).unwrap();
        assert!(rep.counting[1].statistic > rep.counting[0].statistic + 0.3);
    }

    #[test]
    fn rider_density_hadamard_is_full() {
        let values: Vec<u64> = (0..14).map(|k| 1u64 << k).collect();
        let report = rider_density(&values, 1.5, &[4, 8, 14], 3, &[16, 1 << 13], 5).unwrap();
        for row in &report.extraction {
            // quasi-independent subsets extract whole: |B| = |A|
            let expected = row.size as f64 / (row.size as f64).powf(2.0 / 1.5 - 1.0);
            assert!((row.min_density - expected).abs() < 1e-12);
        }
    }
}
