//! The block-random measure on the circle whose Fourier transform vanishes
//! at infinity while the measure concentrates on non-equidistributed orbits:
//! coefficients by the convergent product formula, block decay profiling,
//! sampling, the summability criterion's partial sums, and Moran dimension
//! lower bounds.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fixed::{frac_to_f64, UnitReal};
use crate::numerics::{constants, BigNat};
use crate::rng::SplitMix64;

/// Block schedule `(m_k)` defining `M_k = 6^{m_k}` and `Q_k = M_{k+1}/M_k`.
///
/// `m[i]` stores `m_{i+1}` (1-based schedule). Block `j` contributes the
/// factor `(1 - p_j) c_j + p_j` with `p_j = P(eps_j = 0) = 1/(j log j)`,
/// which starts at `j_min` (default 2, where `1/(j log j)` first lies in
/// `(0,1)`); the divergence of `sum 1/(j log j)` is unaffected.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct RajchmanSpec {
    pub m: Vec<u64>,
    pub j_min: usize,
}

/// Built-in block schedules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// `m_k = k!` — the choice giving `O(1/log log h)` decay.
    Factorial,
    /// `m_k = 2^k`.
    Pow2,
    /// `m_k = ceil(exp(k log log k))`, adjusted to stay strictly increasing.
    LogLog,
}

impl Schedule {
    pub fn parse(s: &str) -> Result<Schedule> {
        Ok(match s {
            "factorial" => Schedule::Factorial,
            "pow2" => Schedule::Pow2,
            "loglog" => Schedule::LogLog,
            other => return Err(Error::Domain(format!("unknown schedule: {other}"))),
        })
    }
}

impl RajchmanSpec {
    pub fn new(m: Vec<u64>, j_min: usize) -> Result<RajchmanSpec> {
        let spec = RajchmanSpec { m, j_min };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_schedule(schedule: Schedule, k_max: usize) -> Result<RajchmanSpec> {
        let mut m = Vec::with_capacity(k_max);
        let mut prev = 0u64;
        for k in 1..=k_max as u64 {
            let v = match schedule {
                Schedule::Factorial => (1..=k).product::<u64>(),
                Schedule::Pow2 => 1u64 << k,
                Schedule::LogLog => {
                    let kk = k as f64;
                    if k < 3 {
                        k
                    } else {
                        (kk * kk.ln().ln()).exp().ceil() as u64
                    }
                }
            };
            let v = v.max(prev + 1);
            m.push(v);
            prev = v;
        }
        RajchmanSpec::new(m, 2)
    }

    pub fn validate(&self) -> Result<()> {
        if self.j_min < 2 {
            return Err(Error::Domain("j_min must be >= 2".into()));
        }
        if self.m.len() < self.j_min + 1 {
            return Err(Error::Domain(format!(
                "schedule needs at least {} entries",
                self.j_min + 1
            )));
        }
        let mut prev = 0u64;
        for &v in &self.m {
            if v <= prev {
                return Err(Error::Domain("schedule must be strictly increasing".into()));
            }
            prev = v;
        }
        Ok(())
    }

    /// Largest block index `j` with both `m_j` and `m_{j+1}` in the schedule.
    pub fn last_block(&self) -> usize {
        self.m.len() - 1
    }

    /// `m_k` (1-based).
    pub fn m_k(&self, k: usize) -> u64 {
        self.m[k - 1]
    }

    /// `M_k = 6^{m_k}`.
    pub fn big_m(&self, k: usize) -> BigNat {
        BigNat::from(6u32).pow(self.m_k(k) as u32)
    }

    /// `P(eps_j = 0) = 1/(j log j)`.
    pub fn p_zero(&self, j: usize) -> f64 {
        1.0 / (j as f64 * (j as f64).ln())
    }
}

/// Factor j has phases up to `h/M_j`, so it is within `2 pi 2^-40` of 1 as
/// soon as `M_j > h * 2^40`, and so is every later factor; the truncated
/// product carries a total error below `2^-36`.
const TRUNCATION_SHIFT: u64 = 40;

/// One product factor `c_j = E e(h X_j)` from the exact fractional parts
/// `r1 = {h/M_j}`, `r2 = {h/M_{j+1}}`:
/// `c_j = [sin(pi r1)/(Q_j sin(pi r2))] e^{i pi (r1 - r2)}`, with the
/// removable cases `M_{j+1} | h -> 1` and `M_j | h -> 0`.
fn factor_c(h: &BigNat, m_j: u64, m_j1: u64) -> Complex64 {
    let big_mj = BigUint::from(6u32).pow(m_j as u32);
    let big_mj1 = BigUint::from(6u32).pow(m_j1 as u32);
    let rem1 = h % &big_mj;
    let rem2 = h % &big_mj1;
    if rem2.is_zero() {
        return Complex64::new(1.0, 0.0);
    }
    if rem1.is_zero() {
        return Complex64::new(0.0, 0.0);
    }
    // ln |sin(pi num/den)| via the distance to the nearest integer,
    // switching to ln(pi * folded) once the fraction leaves the
    // comfortable f64 range
    let ln_sin_pi = |num: &BigUint, den: &BigUint| -> f64 {
        let doubled: BigUint = num << 1;
        let folded = if doubled <= *den { num.clone() } else { den - num };
        let r = frac_to_f64(&folded, den);
        if r > 1e-9 {
            (std::f64::consts::PI * r).sin().ln()
        } else {
            std::f64::consts::PI.ln() + crate::fixed::ln_biguint(&folded)
                - crate::fixed::ln_biguint(den)
        }
    };
    let r1 = frac_to_f64(&rem1, &big_mj);
    let r2 = frac_to_f64(&rem2, &big_mj1);
    let ln_q = (m_j1 - m_j) as f64 * 6f64.ln();
    let ln_mag = ln_sin_pi(&rem1, &big_mj) - ln_q - ln_sin_pi(&rem2, &big_mj1);
    let mag = ln_mag.exp();
    let phase = std::f64::consts::PI * (r1 - r2);
    Complex64::new(mag * phase.cos(), mag * phase.sin())
}

/// `mu_hat(h)` by the truncated product formula; fails if the schedule is
/// too short for the truncation criterion at this `h`.
pub fn coeff(spec: &RajchmanSpec, h: &BigNat) -> Result<Complex64> {
    spec.validate()?;
    if h.is_zero() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let stop = h * (BigNat::one() << TRUNCATION_SHIFT);
    let mut product = Complex64::new(1.0, 0.0);
    let mut converged = false;
    for j in spec.j_min..=spec.m.len() {
        let m_j = spec.m_k(j);
        if BigNat::from(6u32).pow(m_j as u32) > stop {
            converged = true;
            break;
        }
        if j > spec.last_block() {
            break; // schedule has no m_{j+1} for this factor
        }
        let c = factor_c(h, m_j, spec.m_k(j + 1));
        let p = spec.p_zero(j);
        product *= c * (1.0 - p) + p;
    }
    if !converged {
        return Err(Error::Precision(format!(
            "schedule truncation K={} too short for h with {} bits",
            spec.m.len(),
            h.bits()
        )));
    }
    Ok(product)
}

/// The closed-form factor `c_j` for block `j` of a spec.
pub fn factor_closed_form(spec: &RajchmanSpec, j: usize, h: &BigNat) -> Complex64 {
    factor_c(h, spec.m_k(j), spec.m_k(j + 1))
}

/// Direct-average oracle for one factor: `(1/Q_j) sum_{a<Q_j} e(h a/M_{j+1})`.
/// Only for small `Q_j`; used to validate the closed form.
pub fn factor_direct(spec: &RajchmanSpec, j: usize, h: &BigNat) -> Result<Complex64> {
    let q = spec.m_k(j + 1) - spec.m_k(j);
    if q > 8 {
        return Err(Error::Domain("direct factor oracle limited to Q <= 6^8".into()));
    }
    let big_m = spec.big_m(j + 1);
    let q_count = 6u64.pow(q as u32);
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..q_count {
        let num = h * BigNat::from(a) % &big_m;
        let phase = std::f64::consts::TAU * frac_to_f64(&num, &big_m);
        acc += Complex64::new(phase.cos(), phase.sin());
    }
    Ok(acc / q_count as f64)
}

#[derive(Clone, Debug)]
pub struct DecayRow {
    pub k: usize,
    /// max `|mu_hat(h)|` over the sampled log-grid of the block
    pub observed_max: f64,
    /// `sqrt(M_{k-1}/M_k) + 1/(k log k)` — the literal display of the decay
    /// proof, which silently assumes the vanishing factor is c_k; near the
    /// block bottom it is c_{k-1} instead, so this bound can be exceeded.
    pub bound: f64,
    /// `sqrt(M_{k-1}/M_k) + 1/((k-1) log(k-1))` — covers both cases of
    /// which among c_{k-1}, c_k is the small factor; always valid.
    pub bound_safe: f64,
    pub samples: usize,
}

/// One sampled coefficient inside a block.
#[derive(Clone, Debug)]
pub struct CoeffRow {
    pub k: usize,
    pub h: BigNat,
    pub value: Complex64,
    pub bound: f64,
    pub bound_safe: f64,
}

fn block_bounds(spec: &RajchmanSpec, k: usize) -> (f64, f64) {
    let k_f = k as f64;
    let root_delta = (-((spec.m_k(k) - spec.m_k(k - 1)) as f64) * 6f64.ln() / 2.0).exp();
    (
        root_delta + 1.0 / (k_f * k_f.ln()),
        root_delta + 1.0 / ((k_f - 1.0) * (k_f - 1.0).ln()),
    )
}

/// Coefficients on a log-grid of each block `M_k/2 < h <= M_{k+1}/2`.
pub fn coeff_rows(
    spec: &RajchmanSpec,
    blocks: std::ops::RangeInclusive<usize>,
    grid_per_block: usize,
) -> Result<Vec<CoeffRow>> {
    spec.validate()?;
    let lo_block = *blocks.start();
    let hi_block = *blocks.end();
    if lo_block <= spec.j_min {
        return Err(Error::Domain(format!(
            "block range must start after j_min={} so both tested factors are in the product",
            spec.j_min
        )));
    }
    if hi_block + 2 > spec.m.len() {
        return Err(Error::Domain(
            "block range must end two short of the schedule so the product can converge".into(),
        ));
    }
    let mut rows = Vec::new();
    for k in lo_block..=hi_block {
        let (m_k, m_k1) = (spec.m_k(k), spec.m_k(k + 1));
        let lo = spec.big_m(k) / 2u32 + BigNat::one();
        let hi = spec.big_m(k + 1) / 2u32;
        let mut hs = std::collections::BTreeSet::new();
        hs.insert(lo.clone());
        hs.insert(hi.clone());
        let steps = grid_per_block.max(2);
        for t in 0..steps {
            // exponents interpolating m_k..m_{k+1}, fanned by small multipliers
            let e = m_k + (t as u64 * (m_k1 - m_k)) / steps as u64;
            for w in [1u32, 2, 3, 5] {
                let h = BigNat::from(6u32).pow(e as u32) * w;
                if h >= lo && h <= hi {
                    hs.insert(h);
                }
            }
        }
        let hs: Vec<BigNat> = hs.into_iter().collect();
        let values: Vec<Complex64> = hs
            .par_iter()
            .map(|h| coeff(spec, h))
            .collect::<Result<Vec<_>>>()?;
        let (bound, bound_safe) = block_bounds(spec, k);
        for (h, value) in hs.into_iter().zip(values) {
            rows.push(CoeffRow { k, h, value, bound, bound_safe });
        }
    }
    Ok(rows)
}

/// Observed block maxima of `|mu_hat|` over `M_k/2 < h <= M_{k+1}/2`
/// against the per-block bounds.
pub fn decay_profile(
    spec: &RajchmanSpec,
    blocks: std::ops::RangeInclusive<usize>,
    grid_per_block: usize,
) -> Result<Vec<DecayRow>> {
    let per_h = coeff_rows(spec, blocks, grid_per_block)?;
    let mut rows: Vec<DecayRow> = Vec::new();
    for r in &per_h {
        match rows.last_mut() {
            Some(row) if row.k == r.k => {
                row.observed_max = row.observed_max.max(r.value.norm());
                row.samples += 1;
            }
            _ => rows.push(DecayRow {
                k: r.k,
                observed_max: r.value.norm(),
                bound: r.bound,
                bound_safe: r.bound_safe,
                samples: 1,
            }),
        }
    }
    Ok(rows)
}

/// Base-6 digit string of one draw `X = sum_{j >= j_min} eps_j X_j`,
/// with an injectable coin source (the probability-zero all-zeros path is
/// reachable in tests by forcing every coin).
pub fn sample_digits_with(
    spec: &RajchmanSpec,
    mut keep_block: impl FnMut(usize) -> bool,
    mut digit: impl FnMut() -> u8,
) -> Result<Vec<u8>> {
    spec.validate()?;
    let total = spec.m_k(spec.m.len()) as usize;
    let mut digits = vec![0u8; total];
    for j in spec.j_min..=spec.last_block() {
        if keep_block(j) {
            // X_j occupies base-6 positions m_j+1 ..= m_{j+1}
            for pos in spec.m_k(j) + 1..=spec.m_k(j + 1) {
                digits[(pos - 1) as usize] = digit();
            }
        }
    }
    Ok(digits)
}

/// Seeded draw of the digit string of `X`.
pub fn sample_digits(spec: &RajchmanSpec, seed: u64) -> Result<Vec<u8>> {
    let mut rng = SplitMix64::for_trial(seed, 0x9a9c);
    let spec2 = spec.clone();
    sample_digits_with(
        spec,
        move |j| crate::rng::coin(seed, j as u64) >= spec2.p_zero(j),
        move || rng.next_below(6) as u8,
    )
}

/// One draw of `X` as a fixed-point real.
pub fn sample(spec: &RajchmanSpec, seed: u64, bits: u32) -> Result<UnitReal> {
    UnitReal::from_base6_digits(&sample_digits(spec, seed)?, bits)
}

/// `e(h X)` for a digit string, via the exact rational value of `X`.
pub fn phase_of_digits(h: &BigNat, digits: &[u8]) -> Complex64 {
    let mut num = BigNat::zero();
    for &d in digits {
        num = num * 6u32 + d;
    }
    let den = BigNat::from(6u32).pow(digits.len() as u32);
    let rem = h * num % &den;
    let phase = std::f64::consts::TAU * frac_to_f64(&rem, &den);
    Complex64::new(phase.cos(), phase.sin())
}

#[derive(Clone, Debug)]
pub struct DelRow {
    pub n: u64,
    /// `v_n = n^{-3} (n + sum_{j != k <= n} mu_hat(s_k - s_j))`
    pub v_n: f64,
    /// running sum of `v_1..v_n`
    pub partial: f64,
}

/// Partial sums of the almost-everywhere convergence criterion for the
/// averages over the integer list `values` under a measure given by its
/// coefficient function (conjugation handles negative differences).
pub fn del_sums(
    values: &[BigNat],
    coeff_fn: impl Fn(&BigNat) -> Result<Complex64> + Sync,
    n_max: usize,
) -> Result<Vec<DelRow>> {
    if values.len() < n_max {
        return Err(Error::Domain("value list shorter than n_max".into()));
    }
    // off-diagonal sums grow incrementally: adding s_n contributes
    // 2 Re sum_{j<n} mu_hat(s_n - s_j)
    let mut rows = Vec::with_capacity(n_max);
    let mut off_diag = 0.0f64;
    let mut partial = 0.0f64;
    for n in 1..=n_max {
        if n > 1 {
            let s_n = &values[n - 1];
            let news: Vec<f64> = values[..n - 1]
                .par_iter()
                .map(|s_j| {
                    let diff = s_n - s_j;
                    coeff_fn(&diff).map(|c| c.re)
                })
                .collect::<Result<Vec<_>>>()?;
            off_diag += 2.0 * news.iter().sum::<f64>();
        }
        let nf = n as f64;
        let v_n = (nf + off_diag) / (nf * nf * nf);
        partial += v_n;
        rows.push(DelRow { n: n as u64, v_n, partial });
    }
    Ok(rows)
}

/// Moran-set Hausdorff dimension lower bound
/// `liminf_k log(n_1...n_k) / (-log(c_1...c_{k+1} n_{k+1}))`, evaluated as
/// the minimum over the tail half of the finite schedule.
pub fn moran_dim_bound(schedule: impl Iterator<Item = (u64, f64)>) -> Result<f64> {
    let mut ln_n: Vec<f64> = Vec::new();
    let mut ln_c: Vec<f64> = Vec::new();
    for (n_k, c_k) in schedule {
        if n_k < 2 {
            return Err(Error::Domain("branch counts must be >= 2".into()));
        }
        if !(0.0 < c_k && c_k < 1.0) {
            return Err(Error::Domain("ratios must lie in (0,1)".into()));
        }
        if n_k as f64 * c_k > 1.0 + 1e-12 {
            return Err(Error::Domain("need n_k c_k <= 1".into()));
        }
        ln_n.push((n_k as f64).ln());
        ln_c.push(c_k.ln());
    }
    let k_top = ln_n.len().saturating_sub(1); // k ranges over 1..=len-1
    if k_top == 0 {
        return Err(Error::Domain("schedule needs at least two levels".into()));
    }
    let mut num = 0.0f64; // sum of ln n_1..n_k
    let mut den_c = ln_c[0]; // sum of ln c_1..c_{k+1}
    let mut best = f64::INFINITY;
    let tail_start = (k_top / 2).max(1);
    for k in 1..=k_top {
        num += ln_n[k - 1];
        den_c += ln_c[k];
        let den = -(den_c + ln_n[k]);
        if den <= 0.0 {
            return Err(Error::Domain("degenerate covering at level".into()));
        }
        if k >= tail_start {
            best = best.min(num / den);
        }
    }
    Ok(best)
}

/// Positive root of `delta^2 + 2 a delta - a = 0` with
/// `a = log^2 6 / (2 log2 log3)` — the dimension bound of the explicit
/// witness family.
pub fn wdim_quadratic() -> f64 {
    let c = constants(96).expect("constants");
    let (l2, l3, l6) = (c.log2.to_f64(), c.log3.to_f64(), c.log6.to_f64());
    let a = l6 * l6 / (2.0 * l2 * l3);
    -a + (a * a + a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec() -> RajchmanSpec {
        // m_k = 2^k through k = 6
        RajchmanSpec::from_schedule(Schedule::Pow2, 6).unwrap()
    }

    #[test]
    fn coeff_at_zero_is_one() {
        let spec = small_spec();
        let c = coeff(&spec, &BigNat::zero()).unwrap();
        assert_eq!(c, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn coeff_modulus_at_most_one() {
        let spec = small_spec();
        for h in [1u64, 2, 5, 17, 100, 1234, 55_555] {
            let c = coeff(&spec, &BigNat::from(h)).unwrap();
            assert!(c.norm() <= 1.0 + 1e-12, "h={h}");
        }
    }

    #[test]
    fn closed_form_factor_matches_direct_average() {
        let spec = small_spec();
        for j in 2..=3usize {
            for h in [1u64, 3, 6, 36, 215, 1296, 7777] {
                let h = BigNat::from(h);
                let direct = factor_direct(&spec, j, &h).unwrap();
                let closed = factor_c(&h, spec.m_k(j), spec.m_k(j + 1));
                // the direct oracle accumulates one rounding per summand
                let terms = 6f64.powi((spec.m_k(j + 1) - spec.m_k(j)) as i32);
                let tol = (terms * 2e-15).max(1e-12);
                assert!(
                    (direct - closed).norm() < tol,
                    "j={j} h={h} direct={direct} closed={closed}"
                );
            }
        }
    }

    #[test]
    fn factor_magnitude_identity() {
        // |c_j| = M_j |sin(pi h/M_j)| / (M_{j+1} |sin(pi h/M_{j+1})|)
        let spec = small_spec();
        let j = 3usize;
        let (mj, mj1) = (spec.m_k(j), spec.m_k(j + 1));
        let big_mj = 6f64.powi(mj as i32);
        let big_mj1 = 6f64.powi(mj1 as i32);
        for h in [5u64, 19, 100, 1000] {
            let c = factor_c(&BigNat::from(h), mj, mj1);
            let expected = (big_mj * (std::f64::consts::PI * h as f64 / big_mj).sin().abs())
                / (big_mj1 * (std::f64::consts::PI * h as f64 / big_mj1).sin().abs());
            assert!((c.norm() - expected).abs() < 1e-10, "h={h}");
        }
    }

    #[test]
    fn truncation_shortfall_is_detected() {
        let spec = small_spec(); // M_{K+1} = 6^64
        let huge = BigNat::from(6u32).pow(64);
        assert!(matches!(coeff(&spec, &huge), Err(Error::Precision(_))));
    }

    #[test]
    fn decay_bound_example_pow2_block3() {
        // literal bound at block 3 for m_k = 2^k: 6^{-2} + 1/(3 log 3) = 0.3312
        let spec = small_spec();
        let rows = decay_profile(&spec, 3..=4, 16).unwrap();
        assert!((rows[0].bound - (1.0 / 36.0 + 1.0 / (3.0 * 3f64.ln()))).abs() < 1e-12);
        for r in &rows {
            assert!(
                r.observed_max <= r.bound_safe + 1e-9,
                "block {}: observed {} > safe bound {}",
                r.k,
                r.observed_max,
                r.bound_safe
            );
        }
        // at the block bottom h = M_3/2 the factor c_2 vanishes, the product
        // is p_2 * |factor_3| = 0.3876, above the literal bound 0.3312:
        // the literal display is not a valid finite-scale envelope
        assert!(rows[0].observed_max > rows[0].bound);
        assert!((rows[0].observed_max - 0.38759690628).abs() < 1e-8);
    }

    #[test]
    fn forced_zero_draw_gives_zero() {
        let spec = small_spec();
        let digits = sample_digits_with(&spec, |_| false, || 5).unwrap();
        assert!(digits.iter().all(|&d| d == 0));
        let x = UnitReal::from_base6_digits(&digits, 512).unwrap();
        assert_eq!(x.to_f64(), 0.0);
    }

    #[test]
    fn sampled_digits_respect_block_layout() {
        let spec = small_spec();
        let digits = sample_digits(&spec, 42).unwrap();
        // positions 1..=m_{j_min} are always zero
        for pos in 1..=spec.m_k(spec.j_min) {
            assert_eq!(digits[(pos - 1) as usize], 0);
        }
        assert_eq!(digits.len(), spec.m_k(spec.m.len()) as usize);
    }

    #[test]
    fn monte_carlo_mean_matches_product_formula() {
        let spec = small_spec();
        let h = BigNat::from(100u32);
        let predicted = coeff(&spec, &h).unwrap();
        let trials = 4000u64;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut acc2 = 0.0f64;
        for t in 0..trials {
            let digits = sample_digits(&spec, t).unwrap();
            let z = phase_of_digits(&h, &digits);
            acc += z;
            acc2 += (z - predicted).norm_sqr();
        }
        let mean = acc / trials as f64;
        let se = (acc2 / trials as f64 / trials as f64).sqrt();
        assert!(
            (mean - predicted).norm() <= 3.0 * se.max(1e-4),
            "mean {mean} vs predicted {predicted} (se {se})"
        );
    }

    #[test]
    fn del_sums_degenerate_measures() {
        let values: Vec<BigNat> = (1..=60u64).map(BigNat::from).collect();
        // Lebesgue: mu_hat = 0 away from 0 -> v_n = 1/n^2
        let rows = del_sums(&values, |_| Ok(Complex64::new(0.0, 0.0)), 50).unwrap();
        for r in &rows {
            assert!((r.v_n - 1.0 / (r.n as f64).powi(2)).abs() < 1e-12);
        }
        // point mass: mu_hat = 1 -> v_n = 1/n
        let rows = del_sums(&values, |_| Ok(Complex64::new(1.0, 0.0)), 50).unwrap();
        for r in &rows {
            assert!((r.v_n - 1.0 / r.n as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn del_sums_block_measure_trend_is_summable_scale() {
        // v_n * n * log n stays bounded over the 3-smooth averages
        // (measured max 3.5114 on [10, 200], running sum 5.4281)
        let spec = RajchmanSpec::from_schedule(Schedule::Pow2, 10).unwrap();
        let values: Vec<BigNat> = crate::semigroup::Enumerator::new(&[2, 3])
            .unwrap()
            .take(200)
            .map(|t| t.value)
            .collect();
        let rows = del_sums(&values, |h| coeff(&spec, h), 200).unwrap();
        let mut mx: f64 = 0.0;
        for r in rows.iter().skip(9) {
            mx = mx.max(r.v_n * r.n as f64 * (r.n as f64).ln());
        }
        assert!((mx - 3.5114).abs() < 1e-3, "trend stat {mx}");
        assert!((rows[199].partial - 5.4281).abs() < 1e-3);
    }

    #[test]
    fn moran_bound_full_intervals_is_one() {
        let schedule = (0..100).map(|_| (2u64, 0.5f64));
        let b = moran_dim_bound(schedule).unwrap();
        assert!((b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn moran_bound_cantor_limit() {
        let k = 4_000_000usize;
        let schedule = (0..k).map(|_| (2u64, 1.0 / 3.0));
        let b = moran_dim_bound(schedule).unwrap();
        let alpha = 2f64.ln() / 3f64.ln();
        assert!((b - alpha).abs() < 1e-6, "bound {b}");
    }

    #[test]
    fn moran_bound_rejects_bad_parameters() {
        assert!(moran_dim_bound([(1u64, 0.3f64)].into_iter()).is_err());
        assert!(moran_dim_bound([(2, 1.2)].into_iter()).is_err());
        assert!(moran_dim_bound([(3, 0.5), (3, 0.5)].into_iter()).is_err());
    }

    #[test]
    fn quadratic_root_reference_value() {
        assert!((wdim_quadratic() - 0.451620828824).abs() < 1e-9);
    }
}
