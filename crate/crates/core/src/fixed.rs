//! Fixed-point reals on top of arbitrary-precision naturals.
//!
//! `BigFixed` is a non-negative real stored as `mant / 2^bits`; `UnitReal`
//! is the same representation constrained to `[0, 1)`. All arithmetic here
//! is exact on the stored mantissa; construction from a rational truncates
//! (floor) and is therefore accurate to one unit in the last place. Callers
//! that multiply by large integers must carry enough fractional bits: the
//! operations check their budget and fail loudly instead of degrading.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{precision, Error, Result};

/// Guard bits required beyond the bit length of a multiplier in `mul_mod1`.
pub const GUARD_BITS: u64 = 64;

/// Non-negative fixed-point real: `mant / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFixed {
    mant: BigUint,
    bits: u32,
}

impl BigFixed {
    pub fn from_parts(mant: BigUint, bits: u32) -> Self {
        BigFixed { mant, bits }
    }

    pub fn zero(bits: u32) -> Self {
        BigFixed { mant: BigUint::zero(), bits }
    }

    pub fn from_u64(v: u64, bits: u32) -> Self {
        BigFixed { mant: BigUint::from(v) << bits, bits }
    }

    /// Truncated fixed-point value of `num/den`.
    pub fn from_ratio(num: &BigUint, den: &BigUint, bits: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        BigFixed { mant: (num.clone() << bits) / den, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mant(&self) -> &BigUint {
        &self.mant
    }

    pub fn add(&self, other: &BigFixed) -> BigFixed {
        assert_eq!(self.bits, other.bits, "mixed precisions");
        BigFixed { mant: &self.mant + &other.mant, bits: self.bits }
    }

    /// Saturating subtraction (clamps at zero).
    pub fn sub_sat(&self, other: &BigFixed) -> BigFixed {
        assert_eq!(self.bits, other.bits, "mixed precisions");
        let mant = if self.mant >= other.mant {
            &self.mant - &other.mant
        } else {
            BigUint::zero()
        };
        BigFixed { mant, bits: self.bits }
    }

    /// Product, truncated back to the common precision.
    pub fn mul(&self, other: &BigFixed) -> BigFixed {
        assert_eq!(self.bits, other.bits, "mixed precisions");
        BigFixed { mant: (&self.mant * &other.mant) >> self.bits, bits: self.bits }
    }

    pub fn mul_u64(&self, k: u64) -> BigFixed {
        BigFixed { mant: &self.mant * k, bits: self.bits }
    }

    pub fn div(&self, other: &BigFixed) -> BigFixed {
        assert_eq!(self.bits, other.bits, "mixed precisions");
        assert!(!other.mant.is_zero(), "division by zero");
        BigFixed { mant: (self.mant.clone() << self.bits) / &other.mant, bits: self.bits }
    }

    /// Floor square root in the same fixed-point scale.
    pub fn sqrt(&self) -> BigFixed {
        BigFixed { mant: (self.mant.clone() << self.bits).sqrt(), bits: self.bits }
    }

    /// Drop precision to `bits` (truncation). Panics if asked to add bits.
    pub fn truncate(&self, bits: u32) -> BigFixed {
        assert!(bits <= self.bits, "cannot extend precision by truncation");
        BigFixed { mant: self.mant.clone() >> (self.bits - bits), bits }
    }

    pub fn to_f64(&self) -> f64 {
        biguint_scaled_f64(&self.mant, -(self.bits as i64))
    }

    /// Decimal string with `dps` fractional digits, truncated.
    pub fn to_decimal(&self, dps: usize) -> String {
        let int = &self.mant >> self.bits;
        let mask = (BigUint::one() << self.bits) - BigUint::one();
        let frac = &self.mant & &mask;
        let scaled = (frac * BigUint::from(10u32).pow(dps as u32)) >> self.bits;
        let digits = scaled.to_str_radix(10);
        format!("{}.{}{}", int, "0".repeat(dps.saturating_sub(digits.len())), digits)
    }

    /// Fractional part as a `UnitReal` of the same precision.
    pub fn frac_part(&self) -> UnitReal {
        let mask = (BigUint::one() << self.bits) - BigUint::one();
        UnitReal { frac: &self.mant & &mask, bits: self.bits }
    }
}

/// Fixed-point real in `[0, 1)`: `frac / 2^bits` with `frac < 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitReal {
    frac: BigUint,
    bits: u32,
}

impl UnitReal {
    pub fn zero(bits: u32) -> Self {
        UnitReal { frac: BigUint::zero(), bits }
    }

    pub fn from_frac(frac: BigUint, bits: u32) -> Result<Self> {
        if frac.bits() > bits as u64 {
            return Err(Error::Domain("fraction outside [0,1)".into()));
        }
        Ok(UnitReal { frac, bits })
    }

    /// Truncated value of `num/den`; requires `num < den`.
    pub fn from_ratio(num: &BigUint, den: &BigUint, bits: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        if num >= den {
            return Err(Error::Domain("ratio not below one".into()));
        }
        Ok(UnitReal { frac: (num.clone() << bits) / den, bits })
    }

    /// Dyadic rational `num / 2^k`, exact as long as `k <= bits`.
    pub fn from_dyadic(num: u64, k: u32, bits: u32) -> Result<Self> {
        if k > bits {
            return precision(format!("dyadic denominator 2^{k} exceeds precision 2^{bits}"));
        }
        let den = 1u128 << k;
        if (num as u128) >= den {
            return Err(Error::Domain("ratio not below one".into()));
        }
        Ok(UnitReal { frac: BigUint::from(num) << (bits - k), bits })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn frac(&self) -> &BigUint {
        &self.frac
    }

    pub fn to_f64(&self) -> f64 {
        biguint_scaled_f64(&self.frac, -(self.bits as i64))
    }

    /// Distance to the nearest integer, `min(x, 1-x)`, as f64.
    pub fn dist_to_int(&self) -> f64 {
        let x = self.to_f64();
        x.min(1.0 - x)
    }

    /// Exact fractional part of `n * x` together with a bound on the
    /// absolute error inherited from the representation of `x`.
    ///
    /// Precondition: `bits >= bitlen(n) + GUARD_BITS`, otherwise the
    /// accumulated representation error could exceed the budget and the
    /// call fails with a precision error.
    pub fn mul_mod1(&self, n: &BigUint) -> Result<(UnitReal, f64)> {
        let need = n.bits() + GUARD_BITS;
        if (self.bits as u64) < need {
            return precision(format!(
                "mul_mod1 needs {} fractional bits for a {}-bit multiplier, have {}",
                need,
                n.bits(),
                self.bits
            ));
        }
        let mask = (BigUint::one() << self.bits) - BigUint::one();
        let frac = (&self.frac * n) & mask;
        // representation error of x is < 2^-bits; it scales by n
        let err = exp2_i64(n.bits() as i64 - self.bits as i64);
        Ok((UnitReal { frac, bits: self.bits }, err))
    }

    /// `{x + y}` exactly in the common precision.
    pub fn add_mod1(&self, other: &UnitReal) -> UnitReal {
        assert_eq!(self.bits, other.bits, "mixed precisions");
        let mut frac = &self.frac + &other.frac;
        let modulus = BigUint::one() << self.bits;
        if frac >= modulus {
            frac -= modulus;
        }
        UnitReal { frac, bits: self.bits }
    }

    /// Base-6 expansion `0.d_1 d_2 ...`, truncated into the fixed-point grid.
    pub fn from_base6_digits(digits: &[u8], bits: u32) -> Result<Self> {
        let needed = (digits.len() as f64 * 6f64.log2()).ceil() as u64 + GUARD_BITS;
        if (bits as u64) < needed {
            return precision(format!(
                "{} base-6 digits need at least {} bits, have {}",
                digits.len(),
                needed,
                bits
            ));
        }
        let mut num = BigUint::zero();
        for &d in digits {
            if d > 5 {
                return Err(Error::Domain(format!("base-6 digit out of range: {d}")));
            }
            num = num * 6u32 + d;
        }
        let den = BigUint::from(6u32).pow(digits.len() as u32);
        UnitReal::from_ratio(&num, &den, bits)
    }

    /// First `count` base-6 digits, rounding at the last requested digit so
    /// a value constructed from a digit string (truncated into the binary
    /// grid) recovers that string exactly.
    pub fn base6_digits(&self, count: usize) -> Vec<u8> {
        let six_pow = BigUint::from(6u32).pow(count as u32);
        let mut scaled = (&self.frac * &six_pow + (BigUint::one() << (self.bits - 1))) >> self.bits;
        if scaled >= six_pow {
            scaled = six_pow - BigUint::one();
        }
        let mut out = vec![0u8; count];
        for slot in out.iter_mut().rev() {
            *slot = (&scaled % 6u32).to_u8().unwrap();
            scaled /= 6u32;
        }
        out
    }
}

/// `x * 2^shift` as f64 where `x` may far exceed the f64 range before scaling.
pub fn biguint_scaled_f64(x: &BigUint, shift: i64) -> f64 {
    let nb = x.bits();
    if nb == 0 {
        return 0.0;
    }
    if nb <= 900 {
        // safely inside f64 range before scaling
        return x.to_f64().unwrap_or(f64::INFINITY) * exp2_i64(shift);
    }
    let top_shift = nb as i64 - 64;
    let top: BigUint = x >> (top_shift as u64);
    let t = top.to_f64().unwrap_or(f64::INFINITY);
    t * exp2_i64(top_shift + shift)
}

/// `2^e` without intermediate overflow for very negative exponents.
pub fn exp2_i64(e: i64) -> f64 {
    if e >= 1024 {
        f64::INFINITY
    } else if e <= -1200 {
        0.0
    } else {
        (e as f64).exp2()
    }
}

/// Natural log of a positive big integer, from its leading 64 bits.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let nb = x.bits();
    assert!(nb > 0, "ln of zero");
    if nb <= 63 {
        return (x.to_u64().unwrap() as f64).ln();
    }
    let top_shift = nb - 53;
    let top: BigUint = x >> top_shift;
    (top.to_f64().unwrap()).ln() + top_shift as f64 * std::f64::consts::LN_2
}

/// `num/den` as f64 for non-negative big operands, robust far outside the
/// f64 range (ratios below the subnormal range underflow to zero).
pub fn frac_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    // scale so the quotient keeps ~64 significant bits however small it is
    let shift = (den.bits() + 64).saturating_sub(num.bits());
    let q = (num.clone() << shift) / den;
    biguint_scaled_f64(&q, -(shift as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_mul_mod1_is_exact() {
        // {3 * 0.5} = 0.5
        let x = UnitReal::from_dyadic(1, 1, 128).unwrap();
        let (y, _) = x.mul_mod1(&BigUint::from(3u32)).unwrap();
        assert_eq!(y.to_f64(), 0.5);
        // {8 * 0.25} = 0
        let x = UnitReal::from_dyadic(1, 2, 128).unwrap();
        let (y, _) = x.mul_mod1(&BigUint::from(8u32)).unwrap();
        assert_eq!(y.to_f64(), 0.0);
    }

    #[test]
    fn mul_mod1_precision_guard() {
        let x = UnitReal::from_dyadic(1, 1, 64).unwrap();
        let n = BigUint::from(u64::MAX); // 64-bit multiplier, need 128 bits
        assert!(matches!(x.mul_mod1(&n), Err(Error::Precision(_))));
    }

    #[test]
    fn base6_round_trip() {
        let digits = vec![5u8, 0, 3, 0, 0, 5, 1, 4];
        let x = UnitReal::from_base6_digits(&digits, 256).unwrap();
        assert_eq!(x.base6_digits(8), digits);
    }

    #[test]
    fn decimal_rendering() {
        let half = BigFixed::from_ratio(&BigUint::from(1u32), &BigUint::from(2u32), 64);
        assert_eq!(half.to_decimal(4), "0.5000");
        let x = BigFixed::from_ratio(&BigUint::from(1u32), &BigUint::from(3u32), 64);
        assert!(x.to_decimal(6).starts_with("0.333333"));
    }

    #[test]
    fn sqrt_matches_known_value() {
        let two = BigFixed::from_u64(2, 96);
        let r = two.sqrt().to_f64();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn scaled_f64_handles_huge_values() {
        let x = BigUint::from(3u32).pow(2000); // ~3171 bits
        let l = ln_biguint(&x);
        assert!((l - 2000.0 * 3f64.ln()).abs() < 1e-6 * l);
        let r = frac_to_f64(&BigUint::from(1u32), &x);
        assert_eq!(r, 0.0); // underflows cleanly
    }
}
