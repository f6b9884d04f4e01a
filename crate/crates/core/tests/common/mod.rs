//! Brute-force oracles shared by the integration suites. Everything here is
//! deliberately naive and independent of the library's algorithms.

use num_bigint::BigUint;

/// `|S(2,3) ∩ [1, A]|` by the double loop over exponent pairs.
pub fn count_double_loop(a: &BigUint) -> u64 {
    let mut count = 0u64;
    let mut p2 = BigUint::from(1u32);
    while p2 <= *a {
        let mut v = p2.clone();
        while v <= *a {
            count += 1;
            v *= 3u32;
        }
        p2 *= 2u32;
    }
    count
}

/// Star discrepancy by exhaustive evaluation of the empirical gap at every
/// candidate right endpoint (sample points, approached from both sides,
/// plus 1).
pub fn dstar_exhaustive(points: &[f64]) -> f64 {
    let n = points.len() as f64;
    let mut best = 0.0f64;
    let count_lt = |b: f64| points.iter().filter(|&&x| x < b).count() as f64;
    let count_le = |b: f64| points.iter().filter(|&&x| x <= b).count() as f64;
    for &b in points {
        best = best.max((count_lt(b) / n - b).abs());
        best = best.max((count_le(b) / n - b).abs());
    }
    best = best.max((count_lt(1.0) / n - 1.0).abs());
    best
}

/// Exhaustive relation scan over coefficient vectors in
/// `{-bound..=bound}^n` via an incremental odometer.
pub fn has_relation_exhaustive(elems: &[i64], bound: i8) -> bool {
    let n = elems.len();
    let radix = (2 * bound + 1) as i64;
    let mut digits = vec![0i64; n]; // digit d encodes coefficient d - bound
    let mut sum: i128 = elems.iter().map(|&x| -i128::from(x) * i128::from(bound)).sum();
    // start at all-(-bound); walk the full odometer
    loop {
        if sum == 0 && digits.iter().any(|&d| d != i64::from(bound)) {
            return true;
        }
        // increment
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            if digits[i] + 1 < radix {
                digits[i] += 1;
                sum += i128::from(elems[i]);
                break;
            }
            sum -= i128::from(elems[i]) * i128::from(radix - 1);
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Exhaustive distinctness oracle: quasi-independence via all 2^n subset
/// sums, dissociation via all 3^n {0,1,2}-sums.
pub fn sums_distinct_exhaustive(elems: &[i64], top_coeff: u8) -> bool {
    let n = elems.len();
    let radix = top_coeff as usize + 1;
    let total = radix.pow(n as u32);
    let mut sums = Vec::with_capacity(total);
    let mut digits = vec![0usize; n];
    let mut acc: i128 = 0;
    loop {
        sums.push(acc);
        let mut i = 0;
        loop {
            if i == n {
                sums.sort_unstable();
                return sums.windows(2).all(|w| w[0] != w[1]);
            }
            if digits[i] + 1 < radix {
                digits[i] += 1;
                acc += i128::from(elems[i]);
                break;
            }
            acc -= i128::from(elems[i]) * (radix as i128 - 1);
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Mesh statistic by brute force over every progression `a+b, ..., a+Nb`
/// with `1 <= b <= m_bound` and `-bN <= a <= m_bound`.
pub fn mesh_brute_force(elems: &[i64], n_len: u64, m_bound: i64) -> u64 {
    let membership: std::collections::HashSet<i64> = elems.iter().copied().collect();
    let mut best = 0u64;
    for b in 1..=m_bound {
        let a_lo = -(b * n_len as i64);
        for a in a_lo..=m_bound {
            let mut cnt = 0u64;
            for i in 1..=n_len as i64 {
                if membership.contains(&(a + i * b)) {
                    cnt += 1;
                }
            }
            best = best.max(cnt);
        }
    }
    best
}
