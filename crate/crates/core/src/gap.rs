//! Generalized arithmetic progressions `{k_0 + sum_j k_j x_j : 0 <= x_j < L_j}`
//! and the gcd stratification counted with them.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow_u128, gcd_i64, gcd_u64, round_sig12};
use crate::error::{check_budget, Error, Result};
use crate::intset::IntSet;
use crate::Budgets;

/// A GAP of dimension `d = steps.len()`. Improper GAPs are allowed;
/// properness is a queried property.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GapRepr")]
pub struct Gap {
    base: i64,
    steps: Vec<i64>,
    lengths: Vec<u64>,
}

#[derive(Deserialize)]
struct GapRepr {
    base: i64,
    steps: Vec<i64>,
    lengths: Vec<u64>,
}

impl TryFrom<GapRepr> for Gap {
    type Error = Error;

    fn try_from(r: GapRepr) -> Result<Self> {
        Gap::new(r.base, r.steps, r.lengths)
    }
}

impl FromStr for Gap {
    type Err = Error;

    /// Parses `{"base": .., "steps": [..], "lengths": [..]}`.
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("gap {s:?}: {e}")))
    }
}

impl Gap {
    pub fn new(base: i64, steps: Vec<i64>, lengths: Vec<u64>) -> Result<Self> {
        if steps.is_empty() || steps.len() != lengths.len() {
            return Err(Error::precondition(format!(
                "gap needs d >= 1 steps and as many lengths, got {} and {}",
                steps.len(),
                lengths.len()
            )));
        }
        if steps.contains(&0) {
            return Err(Error::precondition("gap steps must be nonzero"));
        }
        if lengths.contains(&0) {
            return Err(Error::precondition("gap lengths must be >= 1"));
        }
        Ok(Gap {
            base,
            steps,
            lengths,
        })
    }

    /// The arithmetic progression `p, p + r, ..., p + (n-1) r`.
    pub fn progression(p: i64, r: i64, n: u64) -> Result<Self> {
        Gap::new(p, vec![r], vec![n])
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn steps(&self) -> &[i64] {
        &self.steps
    }

    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    pub fn dimension(&self) -> usize {
        self.steps.len()
    }

    /// `prod_j L_j`, the size of the index box.
    pub fn box_size(&self) -> u128 {
        self.lengths
            .iter()
            .try_fold(1u128, |acc, &l| acc.checked_mul(l as u128))
            .unwrap_or(u128::MAX)
    }

    /// Value range `[lo, hi]`, failing if it leaves `i64`.
    fn value_range(&self) -> Result<(i64, i64)> {
        let mut lo = self.base as i128;
        let mut hi = self.base as i128;
        for (&k, &l) in self.steps.iter().zip(&self.lengths) {
            let far = k as i128 * (l as i128 - 1);
            if far < 0 {
                lo += far;
            } else {
                hi += far;
            }
        }
        match (i64::try_from(lo), i64::try_from(hi)) {
            (Ok(lo), Ok(hi)) => Ok((lo, hi)),
            _ => Err(Error::overflow(format!("gap values span [{lo}, {hi}]"))),
        }
    }

    fn for_each_value(&self, mut f: impl FnMut(i64)) {
        let d = self.dimension();
        let mut idx = vec![0u64; d];
        let mut value = self.base;
        loop {
            f(value);
            let mut j = 0;
            loop {
                if j == d {
                    return;
                }
                idx[j] += 1;
                if idx[j] < self.lengths[j] {
                    value += self.steps[j];
                    break;
                }
                value -= self.steps[j] * (self.lengths[j] as i64 - 1);
                idx[j] = 0;
                j += 1;
            }
        }
    }

    /// The value set, deduplicated.
    pub fn enumerate(&self, budgets: &Budgets) -> Result<IntSet> {
        check_budget("gap enumeration", self.box_size(), budgets.enumeration)?;
        self.value_range()?;
        let mut values = Vec::with_capacity(self.box_size() as usize);
        self.for_each_value(|v| values.push(v));
        Ok(IntSet::new(values))
    }

    /// `|Q| = prod_j L_j`.
    pub fn is_proper(&self, budgets: &Budgets) -> Result<bool> {
        Ok(self.enumerate(budgets)?.len() as u128 == self.box_size())
    }

    /// `H + H`: same steps, base doubled, lengths `2 L_j - 1`.
    pub fn doubled(&self) -> Result<Gap> {
        let base = self
            .base
            .checked_mul(2)
            .ok_or_else(|| Error::overflow(format!("2 * {}", self.base)))?;
        Gap::new(
            base,
            self.steps.clone(),
            self.lengths.iter().map(|&l| 2 * l - 1).collect(),
        )
    }

    /// Halves every side of the index box, giving `2^d` sub-GAPs that
    /// partition it. Part `i` takes the upper half of side `j` when bit `j`
    /// of `i` is set.
    pub fn split_for_double_properness(&self, budgets: &Budgets) -> Result<Vec<SplitPart>> {
        if self.lengths.iter().any(|&l| l < 2) {
            return Err(Error::precondition("splitting needs every length >= 2"));
        }
        let d = self.dimension();
        if d > 20 {
            return Err(Error::Budget {
                what: "gap split parts",
                required: 1u128 << d,
                limit: 1 << 20,
            });
        }
        let mut parts = Vec::with_capacity(1 << d);
        for mask in 0..(1usize << d) {
            let mut base = self.base as i128;
            let mut lengths = Vec::with_capacity(d);
            for j in 0..d {
                let half = self.lengths[j] / 2;
                if mask >> j & 1 == 1 {
                    base += self.steps[j] as i128 * half as i128;
                    lengths.push(self.lengths[j] - half);
                } else {
                    lengths.push(half);
                }
            }
            let gap = Gap::new(base as i64, self.steps.clone(), lengths)?;
            let doubling_proper = gap.doubled()?.is_proper(budgets)?;
            parts.push(SplitPart {
                gap,
                doubling_proper,
            });
        }
        Ok(parts)
    }

    /// `λ = gcd(k_0, k_1, ..., k_d)` and the GAP divided through by it.
    pub fn gcd_normalize(&self) -> Normalized {
        let lambda = self
            .steps
            .iter()
            .fold(self.base.unsigned_abs(), |g, &k| gcd_u64(g, k.unsigned_abs()));
        let div = |x: i64| (x as i128 / lambda as i128) as i64;
        Normalized {
            lambda,
            primed: Gap {
                base: div(self.base),
                steps: self.steps.iter().map(|&k| div(k)).collect(),
                lengths: self.lengths.clone(),
            },
        }
    }

    /// Lengths `floor(L_j / M)`, clamped to at least 1.
    pub fn shrink(&self, inverse_eps: u64) -> Result<Gap> {
        if inverse_eps == 0 {
            return Err(Error::precondition("shrink factor must be >= 1"));
        }
        Ok(Gap {
            base: self.base,
            steps: self.steps.clone(),
            lengths: self
                .lengths
                .iter()
                .map(|&l| (l / inverse_eps).max(1))
                .collect(),
        })
    }

    /// Fixes the index of every coordinate outside `keep` and returns the
    /// GAP spanned by the kept coordinates. `fixed[j]` is read only for
    /// coordinates not in `keep`.
    pub fn fiber(&self, keep: &[usize], fixed: &[u64]) -> Result<Gap> {
        let d = self.dimension();
        if keep.is_empty() || keep.iter().any(|&j| j >= d) || fixed.len() != d {
            return Err(Error::precondition(
                "fiber needs nonempty in-range kept coordinates and d fixed indices",
            ));
        }
        let mut base = self.base as i128;
        for j in (0..d).filter(|j| !keep.contains(j)) {
            if fixed[j] >= self.lengths[j] {
                return Err(Error::precondition(format!(
                    "fixed index {} outside side {j} of length {}",
                    fixed[j], self.lengths[j]
                )));
            }
            base += self.steps[j] as i128 * fixed[j] as i128;
        }
        let base =
            i64::try_from(base).map_err(|_| Error::overflow(format!("fiber base {base}")))?;
        Gap::new(
            base,
            keep.iter().map(|&j| self.steps[j]).collect(),
            keep.iter().map(|&j| self.lengths[j]).collect(),
        )
    }

    /// `#{x in box : k_0 + sum k_j x_j ≡ 0 (mod l)}` by walking the box.
    pub fn residue_count_direct(&self, l: u64, budgets: &Budgets) -> Result<u64> {
        if l == 0 {
            return Err(Error::precondition("modulus must be >= 1"));
        }
        check_budget("residue count box", self.box_size(), budgets.enumeration)?;
        self.value_range()?;
        let mut count = 0u64;
        self.for_each_value(|v| {
            if v.rem_euclid(l as i64) == 0 {
                count += 1;
            }
        });
        Ok(count)
    }

    /// Same count as [`Gap::residue_count_direct`] without visiting the box.
    ///
    /// When `l` divides every side the box is a union of full periods and
    /// the count is `q(l) prod_j (L_j / l)` with the multiplicative `q` of
    /// [`Gap::periodic_solutions`]. Otherwise residues are propagated
    /// through all but the last coordinate and the last one is solved as a
    /// linear congruence.
    pub fn residue_count(&self, l: u64) -> Result<u64> {
        if l == 0 {
            return Err(Error::precondition("modulus must be >= 1"));
        }
        if self.lengths.iter().all(|&len| len % l == 0) {
            let periods = self.lengths.iter().map(|&len| (len / l) as u128).product::<u128>();
            let count = self.periodic_solutions(l)? * periods;
            return u64::try_from(count).map_err(|_| Error::overflow("residue count"));
        }
        let m = l as i128;
        let d = self.dimension();
        let mut dist: BTreeMap<i128, u64> = BTreeMap::new();
        dist.insert((self.base as i128).rem_euclid(m), 1);
        for j in 0..d - 1 {
            let (full, rem) = (self.lengths[j] / l, self.lengths[j] % l);
            let span = self.lengths[j].min(l);
            let step = (self.steps[j] as i128).rem_euclid(m);
            let mut next: BTreeMap<i128, u64> = BTreeMap::new();
            for (&r, &c) in &dist {
                for x in 0..span {
                    let times = full + u64::from(x < rem);
                    let v = (r + step * x as i128) % m;
                    *next.entry(v).or_insert(0) += c * times;
                }
            }
            dist = next;
        }
        let (k, len) = (self.steps[d - 1] as i128, self.lengths[d - 1]);
        Ok(dist
            .into_iter()
            .map(|(r, c)| c * congruence_count(k, (-r).rem_euclid(m), m, len))
            .sum())
    }

    /// `q(l) = #{x in (Z/l)^d : k_0 + sum k_j x_j ≡ 0 (mod l)}`, as the
    /// product of its prime-power factors.
    pub fn periodic_solutions(&self, l: u64) -> Result<u128> {
        if l == 0 {
            return Err(Error::precondition("modulus must be >= 1"));
        }
        factorize(l)
            .into_iter()
            .try_fold(1u128, |acc, (p, e)| {
                let q = self.periodic_solutions_prime_power(p, e)?;
                acc.checked_mul(q)
                    .ok_or_else(|| Error::overflow(format!("q({l})")))
            })
    }

    /// Over `Z/p^e` the form `sum k_j x_j` hits exactly the multiples of
    /// `g = gcd(p^e, k_1..k_d)`, each `p^{e(d-1)} g` times.
    fn periodic_solutions_prime_power(&self, p: u64, e: u32) -> Result<u128> {
        let pe = p.pow(e);
        let g = self.steps.iter().fold(pe, |g, &k| gcd_u64(g, k.unsigned_abs()));
        if !self.base.unsigned_abs().is_multiple_of(g) {
            return Ok(0);
        }
        let d = self.dimension() as u32;
        checked_pow_u128(pe as u128, d - 1)
            .and_then(|x| x.checked_mul(g as u128))
            .ok_or_else(|| Error::overflow(format!("q({p}^{e})")))
    }

    /// The count against its main term `|box| / l`.
    pub fn residue_error_report(&self, l: u64) -> Result<ResidueErrorReport> {
        let count = self.residue_count(l)?;
        let size = self.box_size() as f64;
        let main = size / l as f64;
        let min_side = *self.lengths.iter().min().unwrap() as f64;
        let scale = self.dimension() as f64 * size / min_side;
        Ok(ResidueErrorReport {
            l,
            count,
            main_term: round_sig12(main),
            error: round_sig12(count as f64 - main),
            normalized_error: round_sig12((count as f64 - main) / scale),
        })
    }
}

/// `#{x in [0, len) : k x ≡ u (mod m)}`.
fn congruence_count(k: i128, u: i128, m: i128, len: u64) -> u64 {
    let k = k.rem_euclid(m);
    let g = gcd_i128_pos(k, m);
    if u % g != 0 {
        return 0;
    }
    let (k, u, m) = (k / g, u / g, m / g);
    let x0 = if m == 1 { 0 } else { (u * mod_inverse(k, m)).rem_euclid(m) };
    let len = len as i128;
    if x0 >= len {
        0
    } else {
        ((len - 1 - x0) / m + 1) as u64
    }
}

fn gcd_i128_pos(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPart {
    pub gap: Gap,
    /// Whether `H + H` of this part is proper.
    pub doubling_proper: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalized {
    pub lambda: u64,
    pub primed: Gap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidueErrorReport {
    pub l: u64,
    pub count: u64,
    pub main_term: f64,
    pub error: f64,
    /// `error / (d |box| / min_j L_j)`
    pub normalized_error: f64,
}

/// Pair counts `|L_l| = #{(i, h) : gcd(i, h) = l}` over `I × H''`, where
/// `H''` is the value set of the gcd-normalized GAP.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratification {
    pub lambda: u64,
    pub classes: BTreeMap<u64, u64>,
}

impl Stratification {
    pub fn class(&self, l: u64) -> u64 {
        self.classes.get(&l).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.classes.values().sum()
    }
}

fn check_positive(i: &IntSet) -> Result<()> {
    match i.min() {
        Some(m) if m <= 0 => Err(Error::precondition(format!(
            "stratification needs positive I, found {m}"
        ))),
        _ => Ok(()),
    }
}

pub fn stratify(i: &IntSet, g: &Gap, budgets: &Budgets) -> Result<Stratification> {
    check_positive(i)?;
    let norm = g.gcd_normalize();
    let h = norm.primed.enumerate(budgets)?;
    check_budget(
        "stratification pairs",
        i.len() as u128 * h.len() as u128,
        budgets.pairs,
    )?;
    let classes = i
        .as_slice()
        .par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<u64, u64>, &x| {
            for y in h.iter() {
                *acc.entry(gcd_i64(x, y)).or_insert(0) += 1;
            }
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (l, c) in b {
                *a.entry(l).or_insert(0) += c;
            }
            a
        });
    Ok(Stratification {
        lambda: norm.lambda,
        classes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusCheck {
    pub l: u64,
    pub direct: u64,
    pub transformed: i128,
    pub equal: bool,
}

/// Compares `|L_l|` against `sum_t μ(t) |I_{lt}| |H''_{lt}|`.
pub fn mobius_identity_check(i: &IntSet, g: &Gap, l: u64, budgets: &Budgets) -> Result<MobiusCheck> {
    let strat = stratify(i, g, budgets)?;
    let h = g.gcd_normalize().primed.enumerate(budgets)?;
    Ok(mobius_against(&strat, i, &h, l))
}

/// Checks every `l` in `1..=lmax` against one stratification.
pub fn mobius_identity_range(
    i: &IntSet,
    g: &Gap,
    lmax: u64,
    budgets: &Budgets,
) -> Result<Vec<MobiusCheck>> {
    let strat = stratify(i, g, budgets)?;
    let h = g.gcd_normalize().primed.enumerate(budgets)?;
    Ok((1..=lmax).map(|l| mobius_against(&strat, i, &h, l)).collect())
}

fn mobius_against(strat: &Stratification, i: &IntSet, h: &IntSet, l: u64) -> MobiusCheck {
    let top = i.max().unwrap_or(0).max(0) as u64;
    let mut transformed = 0i128;
    let mut t = 1u64;
    while l.saturating_mul(t) <= top {
        let mu = mobius(t);
        if mu != 0 {
            let m = l * t;
            let ni = i.multiples_of(m).len() as i128;
            let nh = h.multiples_of(m).len() as i128;
            transformed += mu as i128 * ni * nh;
        }
        t += 1;
    }
    let direct = strat.class(l);
    MobiusCheck {
        l,
        direct,
        transformed,
        equal: direct as i128 == transformed,
    }
}

const SIEVE_LIMIT: usize = 1 << 20;

/// Smallest prime factor table up to [`SIEVE_LIMIT`], built on first use.
fn spf_table() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut spf = vec![0u32; SIEVE_LIMIT + 1];
        for i in 2..=SIEVE_LIMIT {
            if spf[i] == 0 {
                let mut j = i;
                while j <= SIEVE_LIMIT {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        spf
    })
}

/// Prime factorization as `(p, e)` pairs in increasing `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.last_mut() {
        Some((q, e)) if *q == p => *e += 1,
        _ => out.push((p, 1)),
    };
    let spf = spf_table();
    if n as usize <= SIEVE_LIMIT {
        while n > 1 {
            let p = spf[n as usize] as u64;
            push(p, &mut out);
            n /= p;
        }
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        while n.is_multiple_of(p) {
            push(p, &mut out);
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        push(n, &mut out);
    }
    out
}

/// Möbius function `μ(n)` for `n >= 1` (and `μ(0) = 0`).
pub fn mobius(n: u64) -> i8 {
    if n == 0 {
        return 0;
    }
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}
