//! Number-theoretic transform over `Z/998244353`, used to convolve 0/1
//! indicator vectors exactly. A coefficient of the product of two
//! indicators is at most `min(|A|, |B|)`, so results are exact whenever
//! that bound is below the modulus.

const MOD: u64 = 998_244_353;
const ROOT: u64 = 3;
/// `MOD - 1 = 119 * 2^23`.
const MAX_LOG: u32 = 23;

/// Whether the transform beats direct pair counting for this shape.
pub(crate) fn worthwhile(span: usize, pairs: u128, max_coefficient: u64) -> bool {
    let len = span.next_power_of_two();
    if len.trailing_zeros() > MAX_LOG || max_coefficient >= MOD {
        return false;
    }
    let log = len.trailing_zeros().max(1) as u128;
    pairs > 6 * len as u128 * log
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    b %= MOD;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % MOD;
        }
        b = b * b % MOD;
        e >>= 1;
    }
    acc
}

fn transform(a: &mut [u64], invert: bool) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j ^= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(ROOT, (MOD - 1) / len as u64);
        if invert {
            w = pow_mod(w, MOD - 2);
        }
        for chunk in a.chunks_mut(len) {
            let mut wn = 1;
            let (lo, hi) = chunk.split_at_mut(len / 2);
            for (u, v) in lo.iter_mut().zip(hi.iter_mut()) {
                let x = *u;
                let y = *v * wn % MOD;
                *u = if x + y >= MOD { x + y - MOD } else { x + y };
                *v = if x >= y { x - y } else { x + MOD - y };
                wn = wn * w % MOD;
            }
        }
        len <<= 1;
    }
    if invert {
        let inv_n = pow_mod(n as u64, MOD - 2);
        a.iter_mut().for_each(|x| *x = *x * inv_n % MOD);
    }
}

/// Exact linear convolution of two nonnegative vectors whose product
/// coefficients stay below the modulus.
pub(crate) fn convolve(a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    let n = out_len.next_power_of_two();
    assert!(n.trailing_zeros() <= MAX_LOG, "transform length 2^{} too large", n.trailing_zeros());
    let mut fa: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let mut fb: Vec<u64> = b.iter().map(|&x| x as u64).collect();
    fa.resize(n, 0);
    fb.resize(n, 0);
    transform(&mut fa, false);
    transform(&mut fb, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * y % MOD;
    }
    transform(&mut fa, true);
    fa.truncate(out_len);
    fa.into_iter().map(|x| x as u32).collect()
}
