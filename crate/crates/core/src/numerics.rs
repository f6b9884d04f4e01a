//! Shared numeric layer: modular exponentiation and cached high-precision
//! constants (log 2, log 3, log 6, alpha = log2/log3, C = sqrt(2 log2 log3),
//! the irrationality exponent rho = 4.117 and its derived exponents).
//!
//! The logarithms are computed by the arctanh series
//! `ln 2 = 2 atanh(1/3)`, `ln(3/2) = 2 atanh(1/5)` in fixed point with
//! internal guard bits, so `constant(name, bits)` is correct to within
//! `2^(-bits+2)`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fixed::{BigFixed, UnitReal};

/// Arbitrary-precision natural number used throughout the crate.
pub type BigNat = BigUint;

/// `base^exp mod modulus` by square-and-multiply.
pub fn pow_mod(base: &BigNat, exp: u64, modulus: &BigNat) -> Result<BigNat> {
    if modulus.is_zero() {
        return Err(Error::Domain("pow_mod: modulus must be >= 1".into()));
    }
    if modulus.is_one() {
        return Ok(BigNat::zero());
    }
    let mut result = BigNat::one();
    let mut b = base % modulus;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &b % modulus;
        }
        b = &b * &b % modulus;
        e >>= 1;
    }
    Ok(result)
}

/// Fractional part of `n * x` with its error bound; forwards to
/// [`UnitReal::mul_mod1`].
pub fn mul_mod1(x: &UnitReal, n: &BigNat) -> Result<(UnitReal, f64)> {
    x.mul_mod1(n)
}

/// Named constants exposed by the numeric layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstName {
    Log2,
    Log3,
    Log6,
    /// alpha = log2 / log3
    Alpha,
    /// C = sqrt(2 log2 log3), the growth constant of the n-th term law
    GrowthC,
    /// rho = 4.117, irrationality exponent of alpha (Wu-Wang)
    Rho,
    /// delta = rho/(rho+1), counting error exponent
    Delta,
    /// r = 1/(2(rho+1)), n-th term residual exponent
    SmallR,
}

impl ConstName {
    pub fn parse(name: &str) -> Result<ConstName> {
        Ok(match name {
            "log2" => ConstName::Log2,
            "log3" => ConstName::Log3,
            "log6" => ConstName::Log6,
            "alpha" => ConstName::Alpha,
            "C" => ConstName::GrowthC,
            "rho" => ConstName::Rho,
            "delta" => ConstName::Delta,
            "r" => ConstName::SmallR,
            other => return Err(Error::Domain(format!("unknown constant: {other}"))),
        })
    }
}

/// Immutable bundle of constants at one precision.
#[derive(Clone, Debug)]
pub struct Constants {
    bits: u32,
    pub log2: BigFixed,
    pub log3: BigFixed,
    pub log6: BigFixed,
    pub alpha: UnitReal,
    pub growth_c: BigFixed,
    pub rho: BigFixed,
    pub delta: BigFixed,
    pub small_r: BigFixed,
}

impl Constants {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn get(&self, name: ConstName) -> BigFixed {
        match name {
            ConstName::Log2 => self.log2.clone(),
            ConstName::Log3 => self.log3.clone(),
            ConstName::Log6 => self.log6.clone(),
            ConstName::Alpha => {
                BigFixed::from_parts(self.alpha.frac().clone(), self.alpha.bits())
            }
            ConstName::GrowthC => self.growth_c.clone(),
            ConstName::Rho => self.rho.clone(),
            ConstName::Delta => self.delta.clone(),
            ConstName::SmallR => self.small_r.clone(),
        }
    }
}

const GUARD: u32 = 48;

/// `2 * atanh(1/q) = ln((q+1)/(q-1))` in fixed point, truncated.
fn atanh_recip_times2(q: u64, bits: u32) -> BigFixed {
    let q2 = BigUint::from(q * q);
    // term_k = (1/q) * (1/q^2)^k, sum += term_k / (2k+1)
    let mut term = (BigUint::one() << bits) / q;
    let mut sum = term.clone();
    let mut k = 1u64;
    while !term.is_zero() {
        term /= &q2;
        if term.is_zero() {
            break;
        }
        sum += &term / (2 * k + 1);
        k += 1;
    }
    BigFixed::from_parts(sum << 1, bits)
}

fn compute_constants(bits: u32) -> Constants {
    let wb = bits + GUARD;
    let ln2_w = atanh_recip_times2(3, wb); // ln 2
    let ln32_w = atanh_recip_times2(5, wb); // ln(3/2)
    let ln3_w = ln2_w.add(&ln32_w);
    let ln6_w = ln2_w.add(&ln3_w);
    let alpha_w = BigFixed::from_ratio(ln2_w.mant(), ln3_w.mant(), wb);
    // C^2 = 2 log2 log3
    let c2_w = ln2_w.mul(&ln3_w).mul_u64(2);
    let c_w = c2_w.sqrt();

    let rational = |n: u64, d: u64| {
        BigFixed::from_ratio(&BigUint::from(n), &BigUint::from(d), bits)
    };

    Constants {
        bits,
        log2: ln2_w.truncate(bits),
        log3: ln3_w.truncate(bits),
        log6: ln6_w.truncate(bits),
        alpha: alpha_w.truncate(bits).frac_part(),
        growth_c: c_w.truncate(bits),
        rho: rational(4117, 1000),
        delta: rational(4117, 5117),
        small_r: rational(500, 5117),
    }
}

/// Constants at the requested precision, computed once and cached.
pub fn constants(bits: u32) -> Result<Arc<Constants>> {
    if bits < 32 {
        return Err(Error::Domain("constants need bits >= 32".into()));
    }
    static CACHE: OnceLock<Mutex<BTreeMap<u32, Arc<Constants>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(c) = guard.get(&bits) {
        return Ok(c.clone());
    }
    let c = Arc::new(compute_constants(bits));
    guard.insert(bits, c.clone());
    Ok(c)
}

/// `constant(name, bits)`: the named constant, correct to `2^(-bits+2)`.
pub fn constant(name: ConstName, bits: u32) -> Result<BigFixed> {
    Ok(constants(bits)?.get(name))
}

/// alpha = log2/log3 as a `UnitReal` at the requested precision.
pub fn alpha_unit(bits: u32) -> Result<UnitReal> {
    Ok(constants(bits)?.alpha.clone())
}
