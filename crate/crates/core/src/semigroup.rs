//! Enumeration of the multiplicative semigroup generated by coprime integers
//! (by default 2 and 3), with the counting law, the n-th term law, relative
//! gaps, and the consecutive-pair test at convergent exponents.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fixed::{frac_to_f64, ln_biguint};
use crate::numerics::{constants, BigNat};

/// Exponent tuple of a semigroup element, parallel to the generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentPair {
    pub exps: Vec<u32>,
}

/// One term of the increasing enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothTerm {
    /// 1-based index in the increasing enumeration.
    pub rank: u64,
    pub exps: ExponentPair,
    pub value: BigNat,
}

impl SmoothTerm {
    /// Exponent of the first generator (2 in the default semigroup).
    pub fn j(&self) -> u32 {
        self.exps.exps[0]
    }

    /// Exponent of the second generator (3 in the default semigroup).
    pub fn k(&self) -> u32 {
        self.exps.exps[1]
    }
}

fn validate_generators(generators: &[u64]) -> Result<()> {
    if generators.is_empty() {
        return Err(Error::Domain("need at least one generator".into()));
    }
    for &g in generators {
        if g < 2 {
            return Err(Error::Domain(format!("generator {g} must be >= 2")));
        }
    }
    for (i, &a) in generators.iter().enumerate() {
        for &b in &generators[i + 1..] {
            if a.gcd(&b) != 1 {
                return Err(Error::Domain(format!(
                    "generators {a} and {b} are not coprime"
                )));
            }
        }
    }
    Ok(())
}

/// Streaming enumerator over the semigroup in strictly increasing order.
///
/// Frontier rule: from exponent tuple `e`, always push the successor in the
/// first coordinate; push the successor in coordinate `i > 0` only when all
/// earlier coordinates vanish. Every tuple is generated exactly once, so no
/// deduplication is needed and the heap stays `O(frontier)`.
pub struct Enumerator {
    generators: Vec<u64>,
    heap: BinaryHeap<Reverse<(BigNat, Vec<u32>)>>,
    rank: u64,
}

impl Enumerator {
    pub fn new(generators: &[u64]) -> Result<Enumerator> {
        validate_generators(generators)?;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((BigNat::one(), vec![0u32; generators.len()])));
        Ok(Enumerator {
            generators: generators.to_vec(),
            heap,
            rank: 0,
        })
    }
}

impl Iterator for Enumerator {
    type Item = SmoothTerm;

    fn next(&mut self) -> Option<SmoothTerm> {
        let Reverse((value, exps)) = self.heap.pop()?;
        self.rank += 1;
        for (i, &g) in self.generators.iter().enumerate() {
            if i == 0 || exps[..i].iter().all(|&e| e == 0) {
                let mut ne = exps.clone();
                ne[i] += 1;
                self.heap.push(Reverse((&value * g, ne)));
            }
        }
        Some(SmoothTerm {
            rank: self.rank,
            exps: ExponentPair { exps },
            value,
        })
    }
}

/// All semigroup elements `<= limit`, strictly increasing.
pub fn enumerate_upto(limit: &BigNat, generators: &[u64]) -> Result<Vec<SmoothTerm>> {
    if limit.is_zero() {
        return Err(Error::Domain("limit must be >= 1".into()));
    }
    Ok(Enumerator::new(generators)?
        .take_while(|t| t.value <= *limit)
        .collect())
}

/// Default enumeration of S(2,3) up to `limit`.
pub fn enumerate_furstenberg(limit: &BigNat) -> Result<Vec<SmoothTerm>> {
    enumerate_upto(limit, &[2, 3])
}

/// First `n` terms of S(2,3).
pub fn enumerate_upto_rank(n: u64) -> Result<Vec<SmoothTerm>> {
    Ok(Enumerator::new(&[2, 3])?.take(n as usize).collect())
}

#[derive(Clone, Debug)]
pub struct CountReport {
    pub exact: u64,
    pub predicted: f64,
    pub error: f64,
}

/// Exact `|S(2,3) ∩ [1,A]|` against the two-term prediction
/// `log²A/(2 log2 log3) + log6·logA/(2 log2 log3)`.
pub fn count(limit: &BigNat) -> Result<CountReport> {
    if limit.is_zero() {
        return Err(Error::Domain("limit must be >= 1".into()));
    }
    let exact = Enumerator::new(&[2, 3])?
        .take_while(|t| t.value <= *limit)
        .count() as u64;
    let c = constants(96)?;
    let (l2, l3, l6) = (c.log2.to_f64(), c.log3.to_f64(), c.log6.to_f64());
    let la = ln_biguint(limit);
    let predicted = la * la / (2.0 * l2 * l3) + l6 * la / (2.0 * l2 * l3);
    Ok(CountReport {
        exact,
        predicted,
        error: exact as f64 - predicted,
    })
}

/// The n-th term of S(2,3) (1-based).
pub fn nth_term(n: u64) -> Result<SmoothTerm> {
    if n == 0 {
        return Err(Error::Domain("rank must be >= 1".into()));
    }
    Enumerator::new(&[2, 3])?
        .nth(n as usize - 1)
        .ok_or_else(|| Error::Domain("enumeration exhausted".into()))
}

/// `(1/sqrt 6) exp(C sqrt n)`; overflows to +inf for n beyond ~5.8e5.
pub fn asymptotic_estimate(n: u64) -> f64 {
    let c = growth_constants();
    (c.growth_c * (n as f64).sqrt()).exp() / 6f64.sqrt()
}

/// Leading counting constant `K_s = (1/s!) prod 1/log q_j` of the general
/// s-generator semigroup (exposed as a formula; the two-term refinement is
/// proved only for two generators).
pub fn marstrand_constant(generators: &[u64]) -> Result<f64> {
    validate_generators(generators)?;
    let s = generators.len();
    let factorial: f64 = (1..=s as u64).map(|k| k as f64).product();
    let prod: f64 = generators.iter().map(|&g| 1.0 / (g as f64).ln()).product();
    Ok(prod / factorial)
}

/// f64 snapshot of the constants used by the asymptotic laws.
#[derive(Clone, Copy, Debug)]
pub struct GrowthConstants {
    pub log2: f64,
    pub log3: f64,
    pub log6: f64,
    pub growth_c: f64,
    pub rho: f64,
    pub two_r: f64,
}

pub fn growth_constants() -> GrowthConstants {
    let c = constants(96).expect("constant cache");
    GrowthConstants {
        log2: c.log2.to_f64(),
        log3: c.log3.to_f64(),
        log6: c.log6.to_f64(),
        growth_c: c.growth_c.to_f64(),
        rho: c.rho.to_f64(),
        two_r: 2.0 * c.small_r.to_f64(),
    }
}

/// Residual `delta_n = log(sqrt6 s_n) - C sqrt n`, computed from the exact
/// exponent decomposition `log s_n = j log2 + k log3`.
pub fn nth_residual(term: &SmoothTerm) -> f64 {
    let c = growth_constants();
    let log_s = term.j() as f64 * c.log2 + term.k() as f64 * c.log3;
    0.5 * c.log6 + log_s - c.growth_c * (term.rank as f64).sqrt()
}

#[derive(Clone, Debug)]
pub struct GapRow {
    pub n: u64,
    /// relative gap g_n = (s_{n+1} - s_n) / s_n
    pub gap_ratio: f64,
    /// g_n (log s_n)^rho — bounded below by the lower gap law
    pub scaled_lower: f64,
    /// g_n (log s_n)^{2r} — bounded above by the upper gap law
    pub scaled_upper: f64,
}

#[derive(Clone, Debug)]
pub struct GapSeries {
    pub rows: Vec<GapRow>,
    /// min over 2 <= n <= n_max of the lower-scaled column
    pub min_scaled_lower: f64,
    /// max over 2 <= n <= n_max of the upper-scaled column
    pub max_scaled_upper: f64,
    /// whether s_{n+1} <= 2 s_n held for every examined n (it must)
    pub doubling_bound_ok: bool,
}

/// Relative gaps `g_n` for `1 <= n <= n_max` with the two scaled columns.
pub fn gap_series(n_max: u64) -> Result<GapSeries> {
    if n_max < 2 {
        return Err(Error::Domain("n_max must be >= 2".into()));
    }
    let c = growth_constants();
    let mut rows = Vec::with_capacity(n_max as usize);
    let mut min_lower = f64::INFINITY;
    let mut max_upper = 0.0f64;
    let mut doubling = true;
    let mut prev: Option<SmoothTerm> = None;
    for term in Enumerator::new(&[2, 3])?.take(n_max as usize + 1) {
        if let Some(p) = prev.take() {
            let diff = &term.value - &p.value;
            if term.value > (&p.value) * 2u32 {
                doubling = false;
            }
            let g = frac_to_f64(&diff, &p.value);
            let log_s = p.j() as f64 * c.log2 + p.k() as f64 * c.log3;
            let (lo, up) = if p.rank >= 2 {
                (g * log_s.powf(c.rho), g * log_s.powf(c.two_r))
            } else {
                (f64::NAN, f64::NAN)
            };
            if p.rank >= 2 {
                min_lower = min_lower.min(lo);
                max_upper = max_upper.max(up);
            }
            rows.push(GapRow {
                n: p.rank,
                gap_ratio: g,
                scaled_lower: lo,
                scaled_upper: up,
            });
        }
        prev = Some(term);
    }
    Ok(GapSeries {
        rows,
        min_scaled_lower: min_lower,
        max_scaled_upper: max_upper,
        doubling_bound_ok: doubling,
    })
}

#[derive(Clone, Debug)]
pub struct AdjacentPair {
    pub is_adjacent: bool,
    pub lower: BigNat,
    pub upper: BigNat,
    /// (upper - lower) / lower
    pub gap_ratio: f64,
}

/// Orders `2^q` and `3^p` and decides whether some `2^i 3^j` lies strictly
/// between them, scanning powers of 3 and testing the 2-power window —
/// `O(p + q)` big-integer comparisons, no enumeration.
pub fn adjacent_pair_check(p: u32, q: u32) -> Result<AdjacentPair> {
    let two_q = BigNat::from(2u32).pow(q);
    let three_p = BigNat::from(3u32).pow(p);
    if two_q == three_p {
        return Err(Error::Domain("2^q = 3^p only for p = q = 0".into()));
    }
    let (lower, upper) = if two_q < three_p {
        (two_q, three_p)
    } else {
        (three_p, two_q)
    };
    let mut adjacent = true;
    let mut pow3 = BigNat::one();
    while pow3 < upper {
        // smallest i >= 0 with 2^i * pow3 > lower, via the bit length of the
        // floor quotient, then adjusted by at most one doubling either way
        let quotient = &lower / &pow3;
        let mut i = quotient.bits();
        let mut candidate = &pow3 << i;
        while candidate <= lower {
            i += 1;
            candidate <<= 1;
        }
        while i > 0 && (&candidate >> 1) > lower {
            i -= 1;
            candidate >>= 1;
        }
        if candidate < upper {
            adjacent = false;
            break;
        }
        pow3 *= 3u32;
    }
    let diff = &upper - &lower;
    let gap_ratio = frac_to_f64(&diff, &lower);
    Ok(AdjacentPair {
        is_adjacent: adjacent,
        lower,
        upper,
        gap_ratio,
    })
}
