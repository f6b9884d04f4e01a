//! Continued fraction of alpha = log2/log3 with certified quotients,
//! distance-to-integer scans, and the discrepancy toolkit (exact star
//! discrepancy, exact interval discrepancy, Erdős–Turán bound, Koksma check).

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fixed::GUARD_BITS;
use crate::numerics::{alpha_unit, BigNat};

#[derive(Clone, Debug)]
pub struct ContinuedFraction {
    /// Partial quotients starting with a_0 = 0.
    pub quotients: Vec<u64>,
    /// Convergents (p_i, q_i) aligned with `quotients`.
    pub convergents: Vec<(BigNat, BigNat)>,
}

/// First `depth` partial quotients of alpha beyond a_0 = 0, certified by
/// running the expansion on both endpoints of the fixed-point enclosure of
/// alpha and emitting quotients only while they agree.
pub fn cf_expand(depth: usize, bits: u32) -> Result<ContinuedFraction> {
    let alpha = alpha_unit(bits)?;
    // alpha in ((mant-4)/2^bits, (mant+5)/2^bits): 1 ulp truncation plus
    // the documented 2^(-bits+2) computation error
    let mant = alpha.frac().clone();
    if mant < BigUint::from(8u32) {
        return Err(Error::Precision("enclosure too coarse".into()));
    }
    let den = BigUint::one() << bits;
    let mut lo = (mant.clone() - 4u32, den.clone());
    let mut hi = (mant + 5u32, den);

    let mut quotients = vec![0u64];
    // state: both fractions in (0,1), represented as (num, den)
    for _ in 0..depth {
        if lo.0.is_zero() || hi.0.is_zero() {
            return Err(Error::Precision(
                "continued fraction exhausted the enclosure".into(),
            ));
        }
        // next quotient of num/den in (0,1): floor(den/num); interval flips
        let a_lo = &hi.1 / &hi.0; // smaller value -> from upper endpoint
        let a_hi = &lo.1 / &lo.0;
        if a_lo != a_hi {
            return Err(Error::Precision(format!(
                "quotient {} uncertified at {} bits",
                quotients.len(),
                bits
            )));
        }
        let a = a_lo
            .to_u64()
            .ok_or_else(|| Error::Precision("quotient overflow".into()))?;
        let new_hi = (lo.1.clone() - &a_lo * &lo.0, lo.0.clone());
        let new_lo = (hi.1.clone() - &a_lo * &hi.0, hi.0.clone());
        lo = new_lo;
        hi = new_hi;
        quotients.push(a);
    }

    // convergents by the standard recurrence
    let mut convergents = Vec::with_capacity(quotients.len());
    let (mut p_prev, mut p) = (BigNat::one(), BigNat::zero());
    let (mut q_prev, mut q) = (BigNat::zero(), BigNat::one());
    for (i, &a) in quotients.iter().enumerate() {
        if i == 0 {
            convergents.push((BigNat::zero(), BigNat::one()));
            continue;
        }
        let np = &p * a + &p_prev;
        let nq = &q * a + &q_prev;
        p_prev = std::mem::replace(&mut p, np);
        q_prev = std::mem::replace(&mut q, nq);
        convergents.push((p.clone(), q.clone()));
    }
    Ok(ContinuedFraction {
        quotients,
        convergents,
    })
}

/// `‖q·alpha‖`, the distance from `q·alpha` to the nearest integer.
pub fn qnorm(q: u64, bits: u32) -> Result<f64> {
    if q == 0 {
        return Err(Error::Domain("q must be >= 1".into()));
    }
    let alpha = alpha_unit(bits)?;
    let (frac, _err) = alpha.mul_mod1(&BigNat::from(q))?;
    Ok(frac.dist_to_int())
}

#[derive(Clone, Debug)]
pub struct ScanResult {
    pub min_value: f64,
    pub argmin_q: u64,
}

/// `min over 1 <= q <= q_max of q^rho * ‖q alpha‖`, positive since alpha has
/// finite irrationality exponent.
pub fn irrationality_scan(q_max: u64, rho: f64, bits: u32) -> Result<ScanResult> {
    if q_max == 0 {
        return Err(Error::Domain("q_max must be >= 1".into()));
    }
    if (bits as u64) < 64 - q_max.leading_zeros() as u64 + GUARD_BITS {
        return Err(Error::Precision("insufficient precision for the scan".into()));
    }
    let alpha = alpha_unit(bits)?;
    let mut x = alpha.clone();
    let mut best = f64::INFINITY;
    let mut arg = 1u64;
    for q in 1..=q_max {
        let v = (q as f64).powf(rho) * x.dist_to_int();
        if v < best {
            best = v;
            arg = q;
        }
        if q < q_max {
            x = x.add_mod1(&alpha);
        }
    }
    Ok(ScanResult {
        min_value: best,
        argmin_q: arg,
    })
}

/// Finite point sample in `[0,1)`.
#[derive(Clone, Debug)]
pub struct PointSample {
    points: Vec<f64>,
    sorted: Vec<f64>,
}

impl PointSample {
    pub fn new(points: Vec<f64>) -> Result<PointSample> {
        if points.is_empty() {
            return Err(Error::Domain("empty sample".into()));
        }
        if points.iter().any(|&x| !(0.0..1.0).contains(&x)) {
            return Err(Error::Domain("sample point outside [0,1)".into()));
        }
        let mut sorted = points.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(PointSample { points, sorted })
    }

    /// `{j alpha}` for `j = 1..=n`, computed by exact fixed-point addition.
    pub fn jalpha(n: usize, bits: u32) -> Result<PointSample> {
        let alpha = alpha_unit(bits)?;
        let mut x = alpha.clone();
        let mut pts = Vec::with_capacity(n);
        for _ in 0..n {
            pts.push(x.to_f64());
            x = x.add_mod1(&alpha);
        }
        PointSample::new(pts)
    }

    /// `{j/n}` for `j = 0..n`.
    pub fn equispaced(n: usize) -> Result<PointSample> {
        PointSample::new((0..n).map(|j| j as f64 / n as f64).collect())
    }

    pub fn seeded(n: usize, seed: u64) -> Result<PointSample> {
        let mut rng = crate::rng::SplitMix64::new(seed);
        PointSample::new((0..n).map(|_| rng.next_f64()).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }
}

/// Star discrepancy `D_N*` by the exact sorted-points formula.
pub fn star_discrepancy(sample: &PointSample) -> f64 {
    let xs = sample.sorted();
    let n = xs.len() as f64;
    let mut best = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let up = (i as f64 + 1.0) / n - x;
        let down = x - i as f64 / n;
        best = best.max(up).max(down);
    }
    best
}

const EXACT_DISCREPANCY_LIMIT: usize = 10_000;

/// Interval discrepancy `D_N`, exact (O(N^2) scan over sorted points) up to
/// 10^4 points, and the `2 D_N*` upper bound beyond.
pub fn discrepancy(sample: &PointSample) -> f64 {
    if sample.len() > EXACT_DISCREPANCY_LIMIT {
        return 2.0 * star_discrepancy(sample);
    }
    // collapse ties so index arithmetic counts strict interiors correctly
    let mut uniq: Vec<(f64, usize)> = Vec::with_capacity(sample.len());
    for &x in sample.sorted() {
        match uniq.last_mut() {
            Some((v, c)) if *v == x => *c += 1,
            _ => uniq.push((x, 1)),
        }
    }
    let n = sample.len() as f64;
    let m = uniq.len();
    let mut prefix = vec![0usize; m + 1];
    for (k, &(_, c)) in uniq.iter().enumerate() {
        prefix[k + 1] = prefix[k] + c;
    }
    let mut best = 0.0f64;
    // excess on closed intervals [v_i, v_j]
    for i in 0..m {
        for j in i..m {
            let cnt = (prefix[j + 1] - prefix[i]) as f64;
            best = best.max(cnt / n - (uniq[j].0 - uniq[i].0));
        }
    }
    // deficit on open intervals between sentinels {0, v_1..v_m, 1}
    let mut ys = Vec::with_capacity(m + 2);
    ys.push((0.0f64, 0usize)); // (value, points strictly before-or-at)
    for k in 0..m {
        ys.push((uniq[k].0, prefix[k + 1]));
    }
    ys.push((1.0, prefix[m]));
    for i in 0..ys.len() {
        for j in (i + 1)..ys.len() {
            // points strictly inside (y_i, y_j)
            let inside = ys[j - 1].1.saturating_sub(ys[i].1) as f64;
            best = best.max((ys[j].0 - ys[i].0) - inside / n);
        }
    }
    best
}

#[derive(Clone, Debug)]
pub struct EtBound {
    pub bound: f64,
    /// `|N^{-1} sum_n e(h x_n)|` for h = 1..=m.
    pub weyl_column: Vec<f64>,
}

/// Erdős–Turán majorant `C (1/m + sum_{h<=m} |W_h| / h)` for the sample.
pub fn erdos_turan_bound(sample: &PointSample, m: usize, c: f64) -> Result<EtBound> {
    if m == 0 {
        return Err(Error::Domain("m must be >= 1".into()));
    }
    let n = sample.len() as f64;
    let mut weyl = Vec::with_capacity(m);
    let mut sum = 0.0;
    for h in 1..=m {
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for &x in sample.points() {
            let (s, co) = (std::f64::consts::TAU * h as f64 * x).sin_cos();
            re += co;
            im += s;
        }
        let w = (re * re + im * im).sqrt() / n;
        weyl.push(w);
        sum += w / h as f64;
    }
    Ok(EtBound {
        bound: c * (1.0 / m as f64 + sum),
        weyl_column: weyl,
    })
}

/// The two bounded-variation shapes used with the Koksma inequality; their
/// variation and integral are analytic, never estimated.
#[derive(Clone, Copy, Debug)]
pub enum Shape {
    /// Indicator of `[0, c)`.
    Indicator(f64),
    /// `x -> {x}` (the identity on `[0,1)`).
    Sawtooth,
}

impl Shape {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Shape::Indicator(c) => {
                if x < c {
                    1.0
                } else {
                    0.0
                }
            }
            Shape::Sawtooth => x,
        }
    }

    pub fn variation(&self) -> f64 {
        match *self {
            Shape::Indicator(c) => {
                if c > 0.0 && c < 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Shape::Sawtooth => 1.0,
        }
    }

    pub fn integral(&self) -> f64 {
        match *self {
            Shape::Indicator(c) => c.clamp(0.0, 1.0),
            Shape::Sawtooth => 0.5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct KoksmaReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// `|mean_f - integral| <= V(f) * D_N*`, checked with a 1e-12 slack.
pub fn koksma_check(shape: Shape, sample: &PointSample) -> KoksmaReport {
    let mean =
        sample.points().iter().map(|&x| shape.eval(x)).sum::<f64>() / sample.len() as f64;
    let lhs = (mean - shape.integral()).abs();
    let rhs = shape.variation() * star_discrepancy(sample);
    KoksmaReport {
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-12,
    }
}
