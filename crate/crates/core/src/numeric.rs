//! Integer helpers shared by the calendar algorithms.
//!
//! Division here is Euclidean (the remainder is never negative) and total:
//! dividing by zero yields a quotient of `0` and a remainder equal to the
//! dividend. This differs from Rust's `/`, which panics on a zero divisor and
//! truncates toward zero.
//!
//! The fast conversions in [`crate::civil`] are written once, generically over
//! [`Arith`]. The [`Plain`] instantiation wraps on overflow and never fails, so
//! it is total on arbitrary raw input. The [`Checked`] instantiation rejects
//! any intermediate value that overflows, leaves `±2^62`, or falls outside the
//! bounds declared at a call site. Running the test sweeps through [`Checked`]
//! is what shows the fast path never overflows on in-range input.

use std::convert::Infallible;
use std::fmt;

/// Magnitude limit for every intermediate computed in checked mode.
pub const INTERMEDIATE_LIMIT: i64 = 1 << 62;

/// Euclidean quotient, with `ediv(n, 0) == 0`.
pub fn ediv(n: i64, d: i64) -> i64 {
    if d == 0 {
        0
    } else {
        n.wrapping_div_euclid(d)
    }
}

/// Euclidean remainder, with `erem(n, 0) == n` so that
/// `n == ediv(n, d) * d + erem(n, d)` holds for every `d`.
pub fn erem(n: i64, d: i64) -> i64 {
    if d == 0 {
        n
    } else {
        n.wrapping_rem_euclid(d)
    }
}

/// A checked-mode diagnostic: an intermediate left its permitted range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundViolation {
    pub site: &'static str,
    pub detail: String,
}

impl fmt::Display for BoundViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.site, self.detail)
    }
}

impl std::error::Error for BoundViolation {}

/// Returns `x` unchanged when `lo <= x <= hi`, otherwise a diagnostic naming
/// the site.
pub fn assert_in_bounds(
    site: &'static str,
    x: i64,
    lo: i64,
    hi: i64,
) -> Result<i64, BoundViolation> {
    if (lo..=hi).contains(&x) {
        Ok(x)
    } else {
        Err(BoundViolation {
            site,
            detail: format!("{x} not in [{lo}, {hi}]"),
        })
    }
}

/// An `i64` whose arithmetic refuses to overflow or to exceed
/// [`INTERMEDIATE_LIMIT`] in magnitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CheckedInt(i64);

#[allow(clippy::should_implement_trait)]
impl CheckedInt {
    pub fn new(value: i64) -> Result<Self, BoundViolation> {
        if value.unsigned_abs() > INTERMEDIATE_LIMIT as u64 {
            return Err(BoundViolation {
                site: "intermediate",
                detail: format!("{value} exceeds 2^62 in magnitude"),
            });
        }
        Ok(CheckedInt(value))
    }

    pub fn get(self) -> i64 {
        self.0
    }

    fn lift(op: &'static str, r: Option<i64>) -> Result<Self, BoundViolation> {
        match r {
            Some(v) => Self::new(v),
            None => Err(BoundViolation {
                site: op,
                detail: "64-bit overflow".to_string(),
            }),
        }
    }

    pub fn add(self, rhs: Self) -> Result<Self, BoundViolation> {
        Self::lift("add", self.0.checked_add(rhs.0))
    }

    pub fn sub(self, rhs: Self) -> Result<Self, BoundViolation> {
        Self::lift("sub", self.0.checked_sub(rhs.0))
    }

    pub fn mul(self, rhs: Self) -> Result<Self, BoundViolation> {
        Self::lift("mul", self.0.checked_mul(rhs.0))
    }

    pub fn div(self, rhs: Self) -> Result<Self, BoundViolation> {
        if rhs.0 == 0 {
            return Ok(CheckedInt(0));
        }
        Self::lift("div", self.0.checked_div_euclid(rhs.0))
    }

    pub fn rem(self, rhs: Self) -> Result<Self, BoundViolation> {
        if rhs.0 == 0 {
            return Ok(self);
        }
        Self::lift("rem", self.0.checked_rem_euclid(rhs.0))
    }

    pub fn abs(self) -> Result<Self, BoundViolation> {
        Self::lift("abs", self.0.checked_abs())
    }
}

/// Arithmetic policy for the fast conversions.
pub trait Arith {
    type Error;

    fn add(a: i64, b: i64) -> Result<i64, Self::Error>;
    fn sub(a: i64, b: i64) -> Result<i64, Self::Error>;
    fn mul(a: i64, b: i64) -> Result<i64, Self::Error>;
    /// Euclidean division, zero divisor gives zero.
    fn div(a: i64, b: i64) -> Result<i64, Self::Error>;
    fn rem(a: i64, b: i64) -> Result<i64, Self::Error>;
    fn abs(a: i64) -> Result<i64, Self::Error>;
    /// Declares that `x` must lie in `[lo, hi]` for in-contract inputs.
    fn bound(site: &'static str, x: i64, lo: i64, hi: i64) -> Result<i64, Self::Error>;
}

/// Wrapping, infallible arithmetic. Bound declarations are ignored.
#[derive(Debug)]
pub enum Plain {}

impl Arith for Plain {
    type Error = Infallible;

    #[inline(always)]
    fn add(a: i64, b: i64) -> Result<i64, Infallible> {
        Ok(a.wrapping_add(b))
    }
    #[inline(always)]
    fn sub(a: i64, b: i64) -> Result<i64, Infallible> {
        Ok(a.wrapping_sub(b))
    }
    #[inline(always)]
    fn mul(a: i64, b: i64) -> Result<i64, Infallible> {
        Ok(a.wrapping_mul(b))
    }
    #[inline(always)]
    fn div(a: i64, b: i64) -> Result<i64, Infallible> {
        Ok(ediv(a, b))
    }
    #[inline(always)]
    fn rem(a: i64, b: i64) -> Result<i64, Infallible> {
        Ok(erem(a, b))
    }
    #[inline(always)]
    fn abs(a: i64) -> Result<i64, Infallible> {
        Ok(a.wrapping_abs())
    }
    #[inline(always)]
    fn bound(_: &'static str, x: i64, _: i64, _: i64) -> Result<i64, Infallible> {
        Ok(x)
    }
}

/// Overflow- and bound-checked arithmetic, reporting [`BoundViolation`].
#[derive(Debug)]
pub enum Checked {}

fn ci(v: i64) -> Result<CheckedInt, BoundViolation> {
    CheckedInt::new(v)
}

impl Arith for Checked {
    type Error = BoundViolation;

    fn add(a: i64, b: i64) -> Result<i64, BoundViolation> {
        Ok(ci(a)?.add(ci(b)?)?.get())
    }
    fn sub(a: i64, b: i64) -> Result<i64, BoundViolation> {
        Ok(ci(a)?.sub(ci(b)?)?.get())
    }
    fn mul(a: i64, b: i64) -> Result<i64, BoundViolation> {
        Ok(ci(a)?.mul(ci(b)?)?.get())
    }
    fn div(a: i64, b: i64) -> Result<i64, BoundViolation> {
        Ok(ci(a)?.div(ci(b)?)?.get())
    }
    fn rem(a: i64, b: i64) -> Result<i64, BoundViolation> {
        Ok(ci(a)?.rem(ci(b)?)?.get())
    }
    fn abs(a: i64) -> Result<i64, BoundViolation> {
        Ok(ci(a)?.abs()?.get())
    }
    fn bound(site: &'static str, x: i64, lo: i64, hi: i64) -> Result<i64, BoundViolation> {
        assert_in_bounds(site, x, lo, hi)
    }
}

/// Unwraps a result whose error type is uninhabited.
#[inline(always)]
pub(crate) fn total<T>(r: Result<T, Infallible>) -> T {
    match r {
        Ok(v) => v,
        Err(never) => match never {},
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::range_check::{check_range2, CheckResult, Range};

    #[test]
    fn ediv_examples() {
        assert_eq!(ediv(7, 2), 3);
        assert_eq!(ediv(5, 0), 0);
        assert_eq!(ediv(-7, 2), -4);
        // brute-force witness for the negative case
        assert_eq!(-7, -4 * 2 + 1);
        assert_eq!(erem(-7, 2), 1);
    }

    #[test]
    fn ediv_zero_divisor_is_zero() {
        for n in [-1_000_000, -1, 0, 1, 17, i64::MAX, i64::MIN] {
            assert_eq!(ediv(n, 0), 0);
            assert_eq!(erem(n, 0), n);
        }
    }

    #[test]
    fn ediv_reconstructs_dividend() {
        // The full [0, 10^6) x [1, 10^4) product is 10^10 pairs; stride the
        // divisor axis instead.
        let res = check_range2(
            |n, d| {
                let (n, d) = (n as i64, d as i64 * 97 + 1);
                let r = erem(n, d);
                n == ediv(n, d) * d + r && (0..d).contains(&r)
            },
            Range::new(0, 1_000_000),
            Range::new(0, 103),
        );
        assert_eq!(res, CheckResult::Pass);
    }

    #[test]
    fn assert_in_bounds_examples() {
        assert_eq!(assert_in_bounds("t", 60, 0, 100), Ok(60));
        assert!(assert_in_bounds("t", -1, 0, 100).is_err());
        assert_eq!(assert_in_bounds("t", 146096, 0, 146097), Ok(146096));
    }

    #[test]
    fn checked_int_limits() {
        assert!(CheckedInt::new(INTERMEDIATE_LIMIT).is_ok());
        assert!(CheckedInt::new(INTERMEDIATE_LIMIT + 1).is_err());
        let big = CheckedInt::new(1 << 40).unwrap();
        assert!(big.mul(big).is_err());
        assert_eq!(Checked::div(-7, 2), Ok(-4));
        assert_eq!(Checked::div(5, 0), Ok(0));
        assert!(Checked::add(INTERMEDIATE_LIMIT, 1).is_err());
    }

    #[test]
    fn plain_wraps() {
        assert_eq!(total(Plain::add(i64::MAX, 1)), i64::MIN);
        assert_eq!(total(Plain::abs(i64::MIN)), i64::MIN);
    }
}
