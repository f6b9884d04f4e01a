//! Orbit fractional parts `{n x}` over integer sets, Weyl sums (fixed-point
//! and exact-rational routes), Moran-set witnesses of non-equidistribution,
//! and empirical Khinchin averages for the closed function catalogue.

use num_traits::{ToPrimitive, Zero};
use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fixed::UnitReal;
use crate::numerics::{constants, pow_mod, BigNat};
use crate::semigroup::Enumerator;

/// Integer sets over which orbits are taken.
#[derive(Clone, Debug)]
pub enum IntegerSet {
    /// S(2,3), enumerated on demand.
    Furstenberg,
    /// All positive integers up to the limit.
    Naturals,
    /// An explicit increasing list (e.g. a selector sample).
    Explicit(Vec<BigNat>),
}

const NATURALS_CAP: u64 = 20_000_000;

fn members_upto(set: &IntegerSet, limit: &BigNat, strict: bool) -> Result<Vec<BigNat>> {
    let keep = |v: &BigNat| if strict { v < limit } else { v <= limit };
    Ok(match set {
        IntegerSet::Furstenberg => Enumerator::new(&[2, 3])?
            .map(|t| t.value)
            .take_while(keep)
            .collect(),
        IntegerSet::Naturals => {
            let n = limit
                .to_u64()
                .filter(|&n| n <= NATURALS_CAP)
                .ok_or_else(|| {
                    Error::Domain(format!("naturals.capped at {NATURALS_CAP} elements"))
                })?;
            let top = if strict { n.saturating_sub(1) } else { n };
            (1..=top).map(BigNat::from).collect()
        }
        IntegerSet::Explicit(v) => v.iter().filter(|x| keep(x)).cloned().collect(),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct WeylSum {
    pub value: Complex64,
    /// Number of terms averaged, `|E_N|`.
    pub terms: u64,
    /// Accumulated bound on the phase error inherited from the fixed-point x.
    pub error_bound: f64,
}

const WEYL_ERROR_BUDGET: f64 = 1e-6;

/// `(1/|E_N|) sum_{n in E, n <= N} e(h n x)` with a tracked error budget.
pub fn weyl_sum(set: &IntegerSet, x: &UnitReal, limit: &BigNat, h: u64) -> Result<WeylSum> {
    weyl_sum_impl(set, x, limit, h, false)
}

/// Same sum with strict `n < N` (the convention of the witness tables).
pub fn weyl_sum_strict(set: &IntegerSet, x: &UnitReal, limit: &BigNat, h: u64) -> Result<WeylSum> {
    weyl_sum_impl(set, x, limit, h, true)
}

fn weyl_sum_impl(
    set: &IntegerSet,
    x: &UnitReal,
    limit: &BigNat,
    h: u64,
    strict: bool,
) -> Result<WeylSum> {
    if h == 0 {
        return Err(Error::Domain("harmonic h must be >= 1".into()));
    }
    let members = members_upto(set, limit, strict)?;
    if members.is_empty() {
        return Err(Error::Domain("no members below the limit".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0f64;
    for n in &members {
        let hn = n * h;
        let (frac, e) = x.mul_mod1(&hn)?;
        err += e;
        if err > WEYL_ERROR_BUDGET {
            return Err(Error::Precision(format!(
                "weyl sum error budget exceeded: {err:.3e}"
            )));
        }
        let phase = std::f64::consts::TAU * frac.to_f64();
        let (s, c) = phase.sin_cos();
        acc += Complex64::new(c, s);
    }
    let terms = members.len() as u64;
    Ok(WeylSum {
        value: acc / terms as f64,
        terms,
        error_bound: err * std::f64::consts::TAU,
    })
}

/// Weyl sum at the rational point `x = a/q` using only modular arithmetic:
/// `e(h n a/q)` depends on `n mod q`, which for S(2,3) is `2^j 3^k mod q`.
pub fn weyl_sum_rational(
    a: u64,
    q: u64,
    set: &IntegerSet,
    limit: &BigNat,
    h: u64,
) -> Result<WeylSum> {
    if q == 0 {
        return Err(Error::Domain("denominator must be >= 1".into()));
    }
    if num_integer::gcd(a % q.max(1), q) != 1 && q > 1 {
        return Err(Error::Domain(format!("{a}/{q} is not in lowest terms")));
    }
    let qb = BigNat::from(q);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut terms = 0u64;
    match set {
        IntegerSet::Furstenberg => {
            for t in Enumerator::new(&[2, 3])? {
                if t.value > *limit {
                    break;
                }
                let njq = pow_mod(&BigNat::from(2u32), t.j() as u64, &qb)?
                    * pow_mod(&BigNat::from(3u32), t.k() as u64, &qb)?
                    % &qb;
                let r = njq.to_u64().unwrap() as u128 * a as u128 % q as u128;
                let r = (r * h as u128 % q as u128) as f64;
                let phase = std::f64::consts::TAU * r / q as f64;
                let (s, c) = phase.sin_cos();
                acc += Complex64::new(c, s);
                terms += 1;
            }
        }
        _ => {
            for n in members_upto(set, limit, false)? {
                let residue = (&n % &qb).to_u64().unwrap();
                let r = residue as u128 * a as u128 % q as u128;
                let r = (r * h as u128 % q as u128) as f64;
                let phase = std::f64::consts::TAU * r / q as f64;
                let (s, c) = phase.sin_cos();
                acc += Complex64::new(c, s);
                terms += 1;
            }
        }
    }
    if terms == 0 {
        return Err(Error::Domain("no members below the limit".into()));
    }
    Ok(WeylSum {
        value: acc / terms as f64,
        terms,
        error_bound: 0.0,
    })
}

/// Digit rule on the free zones of a Moran spec.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub enum DigitRule {
    /// Every free digit takes this value (0..=5).
    Constant(u8),
    /// Free digits drawn uniformly from 0..=5 with a counter-based seed.
    Seeded(u64),
}

/// Schedule of a homogeneous Moran point in base 6.
///
/// Positions are 1-based; with `m_k = floor(delta * ell_k)` the digit at
/// position `j` is free when `ell_{k-1} < j <= m_k` and forced to zero when
/// `m_k < j <= ell_k` (so level k contributes `m_k - ell_{k-1}` free
/// digits, matching the branch count `6^{m_k - ell_{k-1}}`).
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct MoranSpec {
    pub ell: Vec<u64>,
    pub delta: f64,
    pub digit_rule: DigitRule,
}

impl MoranSpec {
    pub fn new(ell: Vec<u64>, delta: f64, digit_rule: DigitRule) -> Result<MoranSpec> {
        let spec = MoranSpec { ell, delta, digit_rule };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ell.is_empty() {
            return Err(Error::Domain("empty level schedule".into()));
        }
        if !(0.0 < self.delta && self.delta < 1.0) {
            return Err(Error::Domain("delta must lie in (0,1)".into()));
        }
        let mut prev = 0u64;
        for (i, &l) in self.ell.iter().enumerate() {
            if l <= prev {
                return Err(Error::Domain("levels must be strictly increasing".into()));
            }
            let m = self.m(i + 1);
            if m <= prev || m >= l {
                return Err(Error::Domain(format!(
                    "level {}: free cutoff m={} must satisfy ell_prev={} < m < ell={}",
                    i + 1,
                    m,
                    prev,
                    l
                )));
            }
            prev = l;
        }
        Ok(())
    }

    /// `m_k = floor(delta * ell_k)` for 1-based `k`.
    pub fn m(&self, k: usize) -> u64 {
        (self.delta * self.ell[k - 1] as f64).floor() as u64
    }

    /// Base-6 digits through level `k_max` (positions 1..=ell_{k_max}).
    pub fn digits(&self, k_max: usize) -> Result<Vec<u8>> {
        if k_max == 0 || k_max > self.ell.len() {
            return Err(Error::Domain("k_max out of range".into()));
        }
        let total = self.ell[k_max - 1] as usize;
        let mut digits = vec![0u8; total];
        let mut prev = 0u64;
        for k in 1..=k_max {
            let m = self.m(k);
            for j in (prev + 1)..=m {
                digits[(j - 1) as usize] = match self.digit_rule {
                    DigitRule::Constant(d) => {
                        if d > 5 {
                            return Err(Error::Domain("digit must be 0..=5".into()));
                        }
                        d
                    }
                    DigitRule::Seeded(seed) => (crate::rng::mix(seed ^ crate::rng::mix(j)) % 6) as u8,
                };
            }
            prev = self.ell[k - 1];
        }
        Ok(digits)
    }
}

/// The Moran point `x = sum a_j 6^{-j}` through level `k_max`.
pub fn moran_point(spec: &MoranSpec, k_max: usize, bits: u32) -> Result<UnitReal> {
    spec.validate()?;
    UnitReal::from_base6_digits(&spec.digits(k_max)?, bits)
}

/// The same point as an exact rational `(numerator, 6^ell)`.
pub fn moran_point_rational(spec: &MoranSpec, k_max: usize) -> Result<(BigNat, BigNat)> {
    spec.validate()?;
    let digits = spec.digits(k_max)?;
    let mut num = BigNat::zero();
    for &d in &digits {
        num = num * 6u32 + d;
    }
    Ok((num, BigNat::from(6u32).pow(digits.len() as u32)))
}

#[derive(Clone, Debug)]
pub struct WitnessRow {
    pub k: usize,
    /// `p_k = floor((1 - epsilon) ell_k)`; the scale is `N = 6^{p_k}`.
    pub p_k: u64,
    /// `|S ∩ [1, N)|`
    pub terms: u64,
    /// `|T_N| = |sum_{s < N} e(s x)|` (unnormalized)
    pub modulus: f64,
    /// `|T_N| / log^2 N`
    pub ratio: f64,
}

/// Unnormalized Weyl sums of the Furstenberg set at the Moran point, scale
/// by scale, with their ratio to `log^2 N`.
pub fn nonnormal_witness(
    spec: &MoranSpec,
    k_max: usize,
    epsilon: f64,
    bits: u32,
) -> Result<Vec<WitnessRow>> {
    if !(0.0 < epsilon && epsilon < 1.0) {
        return Err(Error::Domain("epsilon must lie in (0,1)".into()));
    }
    let x = moran_point(spec, k_max, bits)?;
    let mut rows = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let p_k = ((1.0 - epsilon) * spec.ell[k - 1] as f64).floor() as u64;
        if p_k <= spec.m(k) {
            return Err(Error::Domain(format!(
                "scale {k}: p_k={p_k} must exceed m_k={}",
                spec.m(k)
            )));
        }
        let n = BigNat::from(6u32).pow(p_k as u32);
        let w = weyl_sum_strict(&IntegerSet::Furstenberg, &x, &n, 1)?;
        let log_n = p_k as f64 * 6f64.ln();
        let modulus = w.value.norm() * w.terms as f64;
        rows.push(WitnessRow {
            k,
            p_k,
            terms: w.terms,
            modulus,
            ratio: modulus / (log_n * log_n),
        });
    }
    Ok(rows)
}

/// Asymptotic lower bound for `liminf |T_N|/log^2 N` at parameters
/// `(delta, epsilon)`; positive for small delta.
pub fn witness_threshold(delta: f64, epsilon: f64) -> f64 {
    let c = constants(96).expect("constants");
    let (l2, l3, l6) = (c.log2.to_f64(), c.log3.to_f64(), c.log6.to_f64());
    let cc = 1.0 / (2.0 * l2 * l3);
    cc - (l6 / l3 + l6 / l2) * delta / ((1.0 - epsilon) * l6 * l6)
        - delta * delta / ((1.0 - epsilon).powi(2) * l6 * l6)
}

/// Functions admitted in empirical Khinchin averages; integrals are analytic.
#[derive(Clone, Copy, Debug)]
pub enum AverageFn {
    One,
    /// `x -> e(h x)`
    Character(i64),
    /// Indicator of `[0, c)`
    Indicator(f64),
    /// `x -> {x}`
    Sawtooth,
}

impl AverageFn {
    pub fn eval(&self, x: f64) -> Complex64 {
        match *self {
            AverageFn::One => Complex64::new(1.0, 0.0),
            AverageFn::Character(h) => {
                let phase = std::f64::consts::TAU * (h as f64 * x).rem_euclid(1.0);
                let (s, c) = phase.sin_cos();
                Complex64::new(c, s)
            }
            AverageFn::Indicator(c) => Complex64::new(if x < c { 1.0 } else { 0.0 }, 0.0),
            AverageFn::Sawtooth => Complex64::new(x, 0.0),
        }
    }

    pub fn integral(&self) -> Complex64 {
        match *self {
            AverageFn::One => Complex64::new(1.0, 0.0),
            AverageFn::Character(0) => Complex64::new(1.0, 0.0),
            AverageFn::Character(_) => Complex64::new(0.0, 0.0),
            AverageFn::Indicator(c) => Complex64::new(c.clamp(0.0, 1.0), 0.0),
            AverageFn::Sawtooth => Complex64::new(0.5, 0.0),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct KhinchinReport {
    pub average: Complex64,
    pub integral: Complex64,
    pub deviation: f64,
    pub terms: u64,
}

/// `(1/|E_N|) sum f({n x})` against `∫ f dm`.
pub fn khinchin_average(
    set: &IntegerSet,
    f: AverageFn,
    x: &UnitReal,
    limit: &BigNat,
) -> Result<KhinchinReport> {
    let members = members_upto(set, limit, false)?;
    if members.is_empty() {
        return Err(Error::Domain("no members below the limit".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0f64;
    for n in &members {
        let (frac, e) = x.mul_mod1(n)?;
        err += e;
        if err > WEYL_ERROR_BUDGET {
            return Err(Error::Precision("khinchin error budget exceeded".into()));
        }
        acc += f.eval(frac.to_f64());
    }
    let terms = members.len() as u64;
    let average = acc / terms as f64;
    let integral = f.integral();
    Ok(KhinchinReport {
        average,
        integral,
        deviation: (average - integral).norm(),
        terms,
    })
}
