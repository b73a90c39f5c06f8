//! Exact integer helpers: k-th roots, perfect power tests, gcds and
//! decimal rounding for reports. No floating point is used for any
//! membership decision.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

/// `base^exp` in `u128`, `None` on overflow.
pub fn checked_pow_u128(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// `base^exp` in `i128`, `None` on overflow.
pub fn checked_pow_i128(base: i128, exp: u32) -> Option<i128> {
    let mut acc: i128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Largest `m >= 0` with `m^k <= n`, by binary search.
pub fn floor_root_u128(n: u128, k: u32) -> u128 {
    assert!(k >= 1);
    if k == 1 || n < 2 {
        return n;
    }
    // 2^(128/k + 1) bounds the root from above.
    let bits = 128 / k + 1;
    let mut lo: u128 = 0;
    let mut hi: u128 = if bits >= 127 { u128::MAX / 2 } else { 1u128 << bits };
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match checked_pow_u128(mid, k) {
            Some(p) if p <= n => lo = mid,
            _ => hi = mid - 1,
        }
    }
    lo
}

/// Exact integer k-th root of `n` if `n` is a perfect k-th power.
///
/// For even `k` only nonnegative `n` qualify and the nonnegative root is
/// returned; for odd `k` negative `n` have a negative root.
pub fn exact_root_i128(n: i128, k: u32) -> Option<i128> {
    assert!(k >= 1);
    if n < 0 {
        if k.is_multiple_of(2) {
            return None;
        }
        let r = floor_root_u128(n.unsigned_abs(), k);
        return (checked_pow_u128(r, k) == Some(n.unsigned_abs())).then(|| -(r as i128));
    }
    let r = floor_root_u128(n as u128, k);
    (checked_pow_u128(r, k) == Some(n as u128)).then_some(r as i128)
}

pub fn is_kth_power(n: i128, k: u32) -> bool {
    exact_root_i128(n, k).is_some()
}

pub fn is_square(n: i128) -> bool {
    exact_root_i128(n, 2).is_some()
}

/// Exact k-th root of a big integer, same sign conventions as
/// [`exact_root_i128`].
pub fn exact_root_big(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    if n.sign() == Sign::Minus && k.is_multiple_of(2) {
        return None;
    }
    let r = n.abs().nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == n.abs() {
        Some(if n.is_negative() { -r } else { r })
    } else {
        None
    }
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> u64 {
    gcd_u64(a.unsigned_abs(), b.unsigned_abs())
}

pub fn gcd_i128(a: i128, b: i128) -> u128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Rounds to 12 significant decimal digits, the precision of every
/// decimal ratio in reports.
pub fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// `n!/(k!(n-k)!)` in `u128`.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

pub(crate) fn big_pow(base: &BigInt, exp: u32) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}
