//! Nonnegative extended-range floating point numbers.
//!
//! An [`ExtNum`] stores a 64-bit normalized mantissa and an exponent
//! restricted to the `i32` range, so values up to roughly `2^(2^31)` are
//! representable. Only addition and multiplication are provided; both round
//! to nearest with ties to even, which keeps them commutative bit-for-bit.
//! Counting algorithms that only add and multiply nonnegative numbers see
//! relative errors that grow at most linearly with the number of operations.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

/// Smallest exponent an [`ExtNum`] may carry.
pub const EXP_MIN: i64 = i32::MIN as i64;
/// Largest exponent an [`ExtNum`] may carry.
pub const EXP_MAX: i64 = i32::MAX as i64;

/// Above this binary exponent, decimal rendering falls back to `f64`
/// logarithms instead of exact big-integer arithmetic.
const EXACT_DECIMAL_EXP_LIMIT: i64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ExtNumError {
    #[error("exponent overflow")]
    Overflow,
    #[error("exponent underflow")]
    Underflow,
    #[error("root of order zero is undefined")]
    ZeroRoot,
}

/// A nonnegative number `mantissa * 2^exponent`.
///
/// Nonzero values always have the top mantissa bit set; zero is stored as
/// `mantissa == 0, exponent == 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtNum {
    mantissa: u64,
    exponent: i64,
}

impl ExtNum {
    pub const ZERO: ExtNum = ExtNum {
        mantissa: 0,
        exponent: 0,
    };
    pub const ONE: ExtNum = ExtNum {
        mantissa: 1 << 63,
        exponent: -63,
    };

    pub fn mantissa(&self) -> u64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0
    }

    /// Builds a value from raw parts, normalizing the mantissa.
    pub fn from_parts(mantissa: u64, exponent: i64) -> Result<Self, ExtNumError> {
        if mantissa == 0 {
            return Ok(Self::ZERO);
        }
        let shift = mantissa.leading_zeros() as i64;
        checked(mantissa << shift, exponent - shift)
    }

    pub fn from_u64(v: u64) -> Self {
        Self::from_u128(v as u128)
    }

    pub fn from_u128(v: u128) -> Self {
        if v == 0 {
            return Self::ZERO;
        }
        // exponents stay tiny here, range errors are impossible
        round_wide(v, false, 0).expect("u128 always fits the exponent range")
    }

    pub fn from_biguint(v: &BigUint) -> Result<Self, ExtNumError> {
        let bits = v.bits();
        if bits <= 128 {
            return Ok(Self::from_u128(v.to_u128().expect("fits in 128 bits")));
        }
        let shift = bits - 128;
        let top = (v >> shift).to_u128().expect("exactly 128 bits");
        let sticky = v.trailing_zeros().is_some_and(|tz| tz < shift);
        round_wide(top, sticky, shift as i64)
    }

    /// `2^k` exactly.
    pub fn pow2(k: i64) -> Result<Self, ExtNumError> {
        checked(1 << 63, k - 63)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExtNumError> {
        if self.is_zero() {
            return Ok(*other);
        }
        if other.is_zero() {
            return Ok(*self);
        }
        let (big, small) = if self.exponent >= other.exponent {
            (self, other)
        } else {
            (other, self)
        };
        // branch-free: mantissas are aligned in 128 bits, big at bit 126
        let d = (big.exponent - small.exponent).min(127) as u32;
        let a = (big.mantissa as u128) << 63;
        let b = ((small.mantissa as u128) << 63) >> d;
        // bits of small shifted below the 128-bit window
        let lost = d.saturating_sub(63).min(64);
        let lost_mask = ((1u128 << lost) - 1) as u64;
        let sticky = small.mantissa & lost_mask != 0;
        round_top(a + b, sticky, big.exponent - 63)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExtNumError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::ZERO);
        }
        // both mantissas are in [2^63, 2^64), so the product has 127 or 128 bits
        let p = (self.mantissa as u128) * (other.mantissa as u128);
        round_top(p, false, self.exponent + other.exponent)
    }

    /// Exact integer power by repeated squaring (rounded at each step).
    pub fn checked_pow(&self, mut e: u64) -> Result<Self, ExtNumError> {
        let mut base = *self;
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Natural logarithm as a double. Returns `-inf` for zero.
    pub fn ln(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        (self.mantissa as f64).ln() + (self.exponent as f64) * std::f64::consts::LN_2
    }

    /// `self^(1/n)` in double precision.
    pub fn nth_root(&self, n: u64) -> Result<f64, ExtNumError> {
        if n == 0 {
            return Err(ExtNumError::ZeroRoot);
        }
        if self.is_zero() {
            return Ok(0.0);
        }
        // self = f * 2^e with f in [1, 2); split e = q n + r
        let f = self.mantissa as f64 / 2f64.powi(63);
        let e = self.exponent + 63;
        let n_i = n as i64;
        let (q, r) = (e.div_euclid(n_i), e.rem_euclid(n_i));
        let frac = if n == 1 {
            f
        } else {
            f.powf(1.0 / n as f64) * (r as f64 / n as f64).exp2()
        };
        let q = q.clamp(-2200, 2200) as i32;
        // split the scaling so subnormal or huge intermediates do not round early
        Ok(frac * 2f64.powi(q / 2) * 2f64.powi(q - q / 2))
    }

    /// Nearest double; saturates to infinity or zero outside the `f64` range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exponent.clamp(-2000, 2000) as i32;
        (self.mantissa as f64) * 2f64.powi(e)
    }

    /// `floor(self)` as a big integer.
    pub fn to_biguint_floor(&self) -> BigUint {
        let m = BigUint::from(self.mantissa);
        if self.exponent >= 0 {
            m << self.exponent as u64
        } else if self.exponent > -64 {
            m >> (-self.exponent) as u64
        } else {
            BigUint::zero()
        }
    }

    /// Scientific notation with `digits` digits after the decimal point,
    /// matching the layout of Rust's `{:.N e}` formatting (`1.024000e3`).
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if self.exponent.abs() <= EXACT_DECIMAL_EXP_LIMIT {
            self.to_decimal_exact(digits)
        } else {
            self.to_decimal_approx(digits)
        }
    }

    fn to_decimal_exact(self, digits: usize) -> String {
        let (num, den) = if self.exponent >= 0 {
            (
                BigUint::from(self.mantissa) << self.exponent as u64,
                BigUint::from(1u32),
            )
        } else {
            (
                BigUint::from(self.mantissa),
                BigUint::from(1u32) << (-self.exponent) as u64,
            )
        };
        let mut dexp = (self.ln() / std::f64::consts::LN_10).floor() as i64;
        let lo = BigUint::from(10u32).pow(digits as u32);
        let hi = &lo * 10u32;
        // the f64 estimate of the decimal exponent may be off by one
        for _ in 0..4 {
            let shift = digits as i64 - dexp;
            let (n, d) = if shift >= 0 {
                (&num * BigUint::from(10u32).pow(shift as u32), den.clone())
            } else {
                (
                    num.clone(),
                    &den * BigUint::from(10u32).pow((-shift) as u32),
                )
            };
            let q = div_round_half_even(&n, &d);
            if q >= hi {
                dexp += 1;
            } else if q < lo {
                dexp -= 1;
            } else {
                return format_scientific(&q.to_string(), dexp);
            }
        }
        // q == hi after rounding up from 9.99..; renormalize
        format_scientific(&format!("1{}", "0".repeat(digits)), dexp)
    }

    fn to_decimal_approx(self, digits: usize) -> String {
        let log10 =
            ((self.mantissa as f64).log2() + self.exponent as f64) * std::f64::consts::LOG10_2;
        let dexp = log10.floor();
        let frac = 10f64.powf(log10 - dexp);
        let s = format!("{:.*e}", digits, frac);
        // frac lies in [1, 10); rounding may carry into 10.0
        let (mant, e) = s.split_once('e').expect("exponent marker");
        let carry: i64 = e.parse().expect("integer exponent");
        format!("{}e{}", mant, dexp as i64 + carry)
    }
}

fn div_round_half_even(n: &BigUint, d: &BigUint) -> BigUint {
    let q = n / d;
    let r = n - &q * d;
    let twice = &r << 1u32;
    match twice.cmp(d) {
        Ordering::Greater => q + 1u32,
        Ordering::Less => q,
        Ordering::Equal => {
            if q.bit(0) {
                q + 1u32
            } else {
                q
            }
        }
    }
}

fn format_scientific(digits: &str, exp: i64) -> String {
    let (head, tail) = digits.split_at(1);
    if tail.is_empty() {
        format!("{}e{}", head, exp)
    } else {
        format!("{}.{}e{}", head, tail, exp)
    }
}

fn checked(mantissa: u64, exponent: i64) -> Result<ExtNum, ExtNumError> {
    if exponent > EXP_MAX {
        Err(ExtNumError::Overflow)
    } else if exponent < EXP_MIN {
        Err(ExtNumError::Underflow)
    } else {
        Ok(ExtNum { mantissa, exponent })
    }
}

/// Rounds `s * 2^exp` for `s` with its top bit at 126 or 127, ties to even.
#[inline]
fn round_top(s: u128, sticky: bool, exp: i64) -> Result<ExtNum, ExtNumError> {
    debug_assert!(s >> 126 != 0);
    let shift = 63 + (s >> 127) as u32;
    let kept = (s >> shift) as u64;
    let rem = s & ((1u128 << shift) - 1);
    let half = 1u128 << (shift - 1);
    let up = (rem > half) | ((rem == half) & (sticky | (kept & 1 == 1)));
    bump(kept, exp + shift as i64, up)
}

/// `mantissa * 2^exp`, plus one unit if `up`, renormalized on carry.
#[inline]
fn bump(mantissa: u64, exp: i64, up: bool) -> Result<ExtNum, ExtNumError> {
    if !up {
        return checked(mantissa, exp);
    }
    match mantissa.checked_add(1) {
        Some(m) => checked(m, exp),
        None => checked(1 << 63, exp + 1),
    }
}

/// Rounds `s * 2^exp` (plus a positive amount below one unit of `s` when
/// `sticky` is set) to a 64-bit mantissa, ties to even.
fn round_wide(s: u128, sticky: bool, exp: i64) -> Result<ExtNum, ExtNumError> {
    debug_assert!(s != 0);
    let top = 127 - s.leading_zeros() as i64;
    if top <= 63 {
        debug_assert!(!sticky);
        return checked((s as u64) << (63 - top), exp - (63 - top));
    }
    let shift = (top - 63) as u32;
    let mut kept = s >> shift;
    let rem = s & ((1u128 << shift) - 1);
    let half = 1u128 << (shift - 1);
    let up = rem > half || (rem == half && (sticky || kept & 1 == 1));
    let mut e = exp + shift as i64;
    if up {
        kept += 1;
        if kept == 1u128 << 64 {
            kept >>= 1;
            e += 1;
        }
    }
    checked(kept as u64, e)
}

impl Default for ExtNum {
    fn default() -> Self {
        Self::ZERO
    }
}

impl PartialOrd for ExtNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtNum {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => self
                .exponent
                .cmp(&other.exponent)
                .then(self.mantissa.cmp(&other.mantissa)),
        }
    }
}

impl fmt::Display for ExtNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(9)))
    }
}

impl fmt::Debug for ExtNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtNum({:#018x} * 2^{})", self.mantissa, self.exponent)
    }
}
