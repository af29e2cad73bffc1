//! Checked integer helpers. Every division here has a positive divisor and
//! rounds exactly; nothing goes through floating point.

use crate::{Error, Result};

#[inline]
pub(crate) fn add(x: i128, y: i128, what: &'static str) -> Result<i128> {
    x.checked_add(y).ok_or(Error::Overflow(what))
}

#[inline]
pub(crate) fn mul(x: i128, y: i128, what: &'static str) -> Result<i128> {
    x.checked_mul(y).ok_or(Error::Overflow(what))
}

#[inline]
pub(crate) fn narrow(x: i128, what: &'static str) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow(what))
}

/// `floor(p / q)` for `q > 0`.
#[inline]
pub fn floor_div(p: i128, q: i128) -> i128 {
    debug_assert!(q > 0);
    p.div_euclid(q)
}

/// `ceil(p / q)` for `q > 0`.
#[inline]
pub fn ceil_div(p: i128, q: i128) -> i128 {
    debug_assert!(q > 0);
    let f = p.div_euclid(q);
    if p.rem_euclid(q) == 0 {
        f
    } else {
        f + 1
    }
}

/// Residue of `x` modulo `m > 0`, always in `[0, m)`.
#[inline]
pub fn residue(x: i128, m: i128) -> i128 {
    debug_assert!(m > 0);
    x.rem_euclid(m)
}

/// Largest `s >= 0` with `s * s <= x`, for `x >= 0`.
#[inline]
pub fn isqrt_floor(x: i128) -> i128 {
    debug_assert!(x >= 0);
    x.isqrt()
}
