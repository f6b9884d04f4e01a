//! The Bernoulli selector model: independent inclusion of each integer k
//! with probability delta_k (default log k / k), with prefix-stable
//! counter-based coins, mass asymptotics, gap laws, Hartman statistics,
//! relation scans, and extraction-density witnesses.

use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::grid::eval_dense_on_grid;
use crate::numerics::BigNat;
use crate::orbits::IntegerSet;
use crate::rng::coin;
use crate::thinsets::{count_relations_up_to_length, FiniteSet, RiderReport};

/// Density schedule of the selector.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub enum DensityRule {
    /// `delta_k = log k / k` (with `delta_1 = 0`); mimics the counting
    /// function of the deterministic 3-smooth set.
    Furstenberg,
    /// `delta_k = min(c/k, 1)` — the random Sidon regime.
    Sidon { c: f64 },
    /// Explicit table `delta_1, delta_2, ...` (0 beyond the end). Values of
    /// exactly 1 are admitted as degenerate test hooks.
    Custom(Vec<f64>),
}

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct SelectorModel {
    pub rule: DensityRule,
    pub horizon: u64,
    pub seed: u64,
}

impl SelectorModel {
    pub fn furstenberg(horizon: u64, seed: u64) -> SelectorModel {
        SelectorModel { rule: DensityRule::Furstenberg, horizon, seed }
    }

    pub fn delta(&self, k: u64) -> f64 {
        match &self.rule {
            DensityRule::Furstenberg => {
                if k <= 1 {
                    0.0
                } else {
                    (k as f64).ln() / k as f64
                }
            }
            DensityRule::Sidon { c } => (c / k as f64).min(1.0).max(0.0),
            DensityRule::Custom(table) => table.get(k as usize - 1).copied().unwrap_or(0.0),
        }
    }

    /// Schedule sanity: values in [0,1], non-increasing from k = 3 on
    /// (`log k / k` itself peaks at k = 3, its first index past e).
    pub fn validate(&self) -> Result<()> {
        if self.horizon < 1 {
            return Err(Error::Domain("horizon must be >= 1".into()));
        }
        let mut prev = f64::INFINITY;
        for k in 1..=self.horizon.min(100_000) {
            let d = self.delta(k);
            if !(0.0..=1.0).contains(&d) {
                return Err(Error::Domain(format!("delta_{k} = {d} outside [0,1]")));
            }
            if k >= 3 {
                if d > prev + 1e-15 {
                    return Err(Error::Domain(format!(
                        "schedule increases at k = {k}: {d} > {prev}"
                    )));
                }
                prev = d;
            }
        }
        Ok(())
    }

    pub fn mass(&self) -> f64 {
        (1..=self.horizon).map(|k| self.delta(k)).sum()
    }
}

#[derive(Clone, Debug)]
pub struct SelectorSample {
    pub members: Vec<u64>,
    pub model: SelectorModel,
}

impl SelectorSample {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Membership bitmap over `1..=horizon`.
    pub fn bitmap(&self) -> Vec<bool> {
        let mut b = vec![false; self.model.horizon as usize + 1];
        for &t in &self.members {
            b[t as usize] = true;
        }
        b
    }

    pub fn as_integer_set(&self) -> IntegerSet {
        IntegerSet::Explicit(self.members.iter().map(|&t| BigNat::from(t)).collect())
    }
}

/// One realization of the model. Member k's coin depends only on
/// `(seed, k)`, so samples at different horizons share their prefix.
pub fn sample(model: &SelectorModel) -> Result<SelectorSample> {
    model.validate()?;
    let members = (1..=model.horizon)
        .filter(|&k| coin(model.seed, k) < model.delta(k))
        .collect();
    Ok(SelectorSample { members, model: model.clone() })
}

#[derive(Clone, Copy, Debug)]
pub struct MassReport {
    /// exact partial sum of log k / k
    pub exact: f64,
    /// `0.5 log^2 N`
    pub approx: f64,
    pub diff: f64,
}

/// `m_N = sum_{k<=N} log k / k` against `0.5 log^2 N`.
pub fn mass(n: u64) -> MassReport {
    let exact: f64 = (2..=n).map(|k| (k as f64).ln() / k as f64).sum();
    let l = (n.max(1) as f64).ln();
    let approx = 0.5 * l * l;
    MassReport { exact, approx, diff: exact - approx }
}

#[derive(Clone, Debug)]
pub struct GapStats {
    /// max over the tail half of `(t_{n+1}-t_n) log t_n / (t_n loglog t_n)`
    pub sup_stat: f64,
    /// min over the tail half of `(t_{n+1}-t_n) (log t_n)^{3+delta} / t_n`
    pub inf_stat: f64,
    /// max of `t_{n+1}/t_n` over the tail half
    pub max_ratio: f64,
    /// heuristic flag: tail ratios have come close to 1
    pub ratio_near_one: bool,
    /// (n, t_n, gap, sup-statistic, ratio) rows over the tail half
    pub rows: Vec<(u64, u64, u64, f64, f64)>,
}

/// Gap statistics over the tail half of a member list.
pub fn gap_stats(members: &[u64], delta: f64) -> Result<GapStats> {
    if members.len() < 10 {
        return Err(Error::Domain("need at least 10 members for gap stats".into()));
    }
    let start = members.len() / 2;
    let mut sup_stat = 0.0f64;
    let mut inf_stat = f64::INFINITY;
    let mut max_ratio = 0.0f64;
    let mut rows = Vec::new();
    for n in start..members.len() - 1 {
        let t = members[n] as f64;
        let gap = (members[n + 1] - members[n]) as f64;
        if t < 16.0 {
            continue;
        }
        let s = gap * t.ln() / (t * t.ln().ln());
        let i = gap * t.ln().powf(3.0 + delta) / t;
        let r = members[n + 1] as f64 / t;
        sup_stat = sup_stat.max(s);
        inf_stat = inf_stat.min(i);
        max_ratio = max_ratio.max(r);
        rows.push((n as u64 + 1, members[n], gap as u64, s, r));
    }
    Ok(GapStats {
        sup_stat,
        inf_stat,
        max_ratio,
        ratio_near_one: max_ratio < 1.5,
        rows,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct HartmanStats {
    /// sup over the grid of `|sum (xi_n - delta_n) e(n x)|`
    pub centered_sup: f64,
    /// centered sup normalized by `sqrt(m_N log N)`
    pub centered_sup_normalized: f64,
    /// `(1/|T_N|) sup_{x in grid, x != 0} |sum_{t in T} e(t x)|`
    pub weyl_sup_normalized: f64,
    /// centered polynomial at x = 0: exactly `|T_N| - m_N`
    pub centered_at_zero: f64,
    pub m_n: f64,
    pub members: u64,
}

/// Sup statistics of the centered selector polynomial and of the raw Weyl
/// sum over a uniform grid (`grid_size >= 4N` recommended).
pub fn hartman_stat(sample: &SelectorSample, grid_size: usize) -> Result<HartmanStats> {
    let n = sample.model.horizon as usize;
    if grid_size <= n {
        return Err(Error::Domain("grid must exceed the horizon".into()));
    }
    if sample.is_empty() {
        return Err(Error::Domain("empty sample".into()));
    }
    let m_n = sample.model.mass();
    let log_n = (n as f64).ln();

    let mut centered = vec![Complex64::new(0.0, 0.0); n + 1];
    for k in 1..=n {
        centered[k] = Complex64::new(-sample.model.delta(k as u64), 0.0);
    }
    for &t in &sample.members {
        centered[t as usize].re += 1.0;
    }
    let centered_vals = eval_dense_on_grid(&centered, grid_size);
    let centered_sup = centered_vals.iter().map(|v| v.norm()).fold(0.0f64, f64::max);

    let mut raw = vec![Complex64::new(0.0, 0.0); n + 1];
    for &t in &sample.members {
        raw[t as usize] = Complex64::new(1.0, 0.0);
    }
    let raw_vals = eval_dense_on_grid(&raw, grid_size);
    let weyl_sup = raw_vals
        .iter()
        .skip(1)
        .map(|v| v.norm())
        .fold(0.0f64, f64::max);

    Ok(HartmanStats {
        centered_sup,
        centered_sup_normalized: centered_sup / (m_n * log_n).sqrt(),
        weyl_sup_normalized: weyl_sup / sample.len() as f64,
        centered_at_zero: sample.len() as f64 - m_n,
        m_n,
        members: sample.len() as u64,
    })
}

/// Number of relations of length <= s in the tail `T ∩ [a_min, N]`.
pub fn relation_scan(sample: &SelectorSample, s: u32, a_min: u64) -> Result<u64> {
    let tail: Vec<i64> = sample
        .members
        .iter()
        .filter(|&&t| t >= a_min)
        .map(|&t| t as i64)
        .collect();
    if tail.is_empty() {
        return Ok(0);
    }
    count_relations_up_to_length(&FiniteSet::new(tail)?, s)
}

/// Extraction-density witness over random subsets of the sample.
pub fn rider_witness(
    sample: &SelectorSample,
    p: f64,
    sizes: &[usize],
    trials: usize,
    seed: u64,
) -> Result<RiderReport> {
    if p <= 4.0 / 3.0 {
        return Err(Error::Domain("rider witness needs p > 4/3".into()));
    }
    let n_grid: Vec<u64> = sizes
        .iter()
        .map(|&s| sample.members.get(s.saturating_sub(1)).copied().unwrap_or(sample.model.horizon))
        .collect();
    crate::thinsets::rider_density(&sample.members, p, sizes, trials, &n_grid, seed)
}
