//! Finite integer sets, representation functions and the energy
//! functionals built on them.
//!
//! Every representation function has two exact routes: a naive double
//! loop and a convolution route. The convolution route counts into a dense
//! array when the value span is at most [`DENSE_SPAN_LIMIT`] (switching to a
//! number-theoretic transform when the pair count dominates) and falls back
//! to hashing beyond that. Both routes agree bit for bit.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{checked_pow_u128, round_sig12};
use crate::error::{check_budget, Error, Result};
use crate::ntt;

/// Largest value span counted in a dense array.
pub const DENSE_SPAN_LIMIT: u64 = 1 << 26;

/// Finite set of distinct integers, stored strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntSet(Vec<i64>);

impl IntSet {
    pub fn new(mut elements: Vec<i64>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        IntSet(elements)
    }

    pub fn empty() -> Self {
        IntSet(Vec::new())
    }

    /// `{lo, lo+1, ..., hi}`; empty when `lo > hi`.
    pub fn interval(lo: i64, hi: i64) -> Self {
        if lo > hi {
            return IntSet::empty();
        }
        IntSet((lo..=hi).collect())
    }

    /// Wraps a vector that is already strictly increasing.
    pub(crate) fn from_sorted(elements: Vec<i64>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        IntSet(elements)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// Membership for a value that may lie outside the `i64` range.
    pub fn contains_wide(&self, x: i128) -> bool {
        i64::try_from(x).map(|x| self.contains(x)).unwrap_or(false)
    }

    pub fn min(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.0.last().copied()
    }

    /// `{-a : a in A}`.
    pub fn negated(&self) -> Result<IntSet> {
        let mut out = Vec::with_capacity(self.len());
        for &a in self.0.iter().rev() {
            out.push(
                a.checked_neg()
                    .ok_or_else(|| Error::overflow(format!("-({a})")))?,
            );
        }
        Ok(IntSet(out))
    }

    /// `A + t`.
    pub fn shifted(&self, t: i64) -> Result<IntSet> {
        self.0
            .iter()
            .map(|&a| {
                a.checked_add(t)
                    .ok_or_else(|| Error::overflow(format!("{a} + {t}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(IntSet)
    }

    /// `{c*a : a in A}` for `c != 0`.
    pub fn dilated(&self, c: i64) -> Result<IntSet> {
        if c == 0 {
            return Err(Error::precondition("dilation by zero"));
        }
        let v = self
            .0
            .iter()
            .map(|&a| {
                a.checked_mul(c)
                    .ok_or_else(|| Error::overflow(format!("{c} * {a}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntSet::new(v))
    }

    pub fn intersection(&self, other: &IntSet) -> IntSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        IntSet(out)
    }

    /// `{x in A : m | x}`, the set written `A_m`.
    pub fn multiples_of(&self, m: u64) -> IntSet {
        assert!(m >= 1);
        IntSet(
            self.0
                .iter()
                .copied()
                .filter(|&x| x.unsigned_abs() % m == 0)
                .collect(),
        )
    }
}

impl FromIterator<i64> for IntSet {
    fn from_iter<T: IntoIterator<Item = i64>>(iter: T) -> Self {
        IntSet::new(iter.into_iter().collect())
    }
}

impl From<Vec<i64>> for IntSet {
    fn from(v: Vec<i64>) -> Self {
        IntSet::new(v)
    }
}

impl<const N: usize> From<[i64; N]> for IntSet {
    fn from(v: [i64; N]) -> Self {
        IntSet::new(v.to_vec())
    }
}

impl Serialize for IntSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<i64>::deserialize(d).map(IntSet::new)
    }
}

impl FromStr for IntSet {
    type Err = Error;

    /// Parses a JSON array of integers.
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("integer set {s:?}: {e}")))
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Which representation function to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

/// Evaluation route for representation functions and energies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Naive,
    #[default]
    Convolution,
}

/// Value -> positive count; serializes as a JSON object.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepHistogram {
    entries: BTreeMap<i64, u64>,
    total: u64,
}

impl RepHistogram {
    fn from_map(entries: BTreeMap<i64, u64>) -> Self {
        let total = entries.values().sum();
        RepHistogram { entries, total }
    }

    pub fn get(&self, x: i64) -> u64 {
        self.entries.get(&x).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of distinct represented values.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.entries.iter().map(|(&x, &c)| (x, c))
    }

    pub fn support(&self) -> IntSet {
        IntSet::from_sorted(self.entries.keys().copied().collect())
    }

    /// `sum_x r(x)^k`.
    pub fn moment(&self, k: u32) -> Result<u128> {
        let mut acc: u128 = 0;
        for &c in self.entries.values() {
            let term = checked_pow_u128(c as u128, k)
                .ok_or_else(|| Error::overflow(format!("{c}^{k} in energy")))?;
            acc = acc
                .checked_add(term)
                .ok_or_else(|| Error::overflow("energy accumulator exceeds 128 bits"))?;
        }
        Ok(acc)
    }
}

impl Serialize for RepHistogram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RepHistogram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = BTreeMap::<i64, u64>::deserialize(d)?;
        if entries.values().any(|&c| c == 0) {
            return Err(serde::de::Error::custom("zero-count histogram entry"));
        }
        Ok(RepHistogram::from_map(entries))
    }
}

/// Checks that every `a +- b` fits in `i64`; since both sets are sorted
/// only the extreme pairs can overflow. Returns `(lowest, highest)`.
fn result_range(a: &IntSet, b: &IntSet, sign: Sign) -> Result<(i64, i64)> {
    let (amin, amax) = (a.min().unwrap(), a.max().unwrap());
    let (bmin, bmax) = (b.min().unwrap(), b.max().unwrap());
    let checked = |x: i64, y: i64| -> Result<i64> {
        match sign {
            Sign::Plus => x
                .checked_add(y)
                .ok_or_else(|| Error::overflow(format!("{x} + {y}"))),
            Sign::Minus => x
                .checked_sub(y)
                .ok_or_else(|| Error::overflow(format!("{x} - {y}"))),
        }
    };
    match sign {
        Sign::Plus => Ok((checked(amin, bmin)?, checked(amax, bmax)?)),
        Sign::Minus => Ok((checked(amin, bmax)?, checked(amax, bmin)?)),
    }
}

/// `r_{A+B}` or `r_{A-B}` by the default (convolution) route.
pub fn rep_function(a: &IntSet, b: &IntSet, sign: Sign) -> Result<RepHistogram> {
    rep_function_with(a, b, sign, Method::Convolution)
}

pub fn rep_function_with(
    a: &IntSet,
    b: &IntSet,
    sign: Sign,
    method: Method,
) -> Result<RepHistogram> {
    if a.is_empty() || b.is_empty() {
        return Ok(RepHistogram::default());
    }
    let (lo, hi) = result_range(a, b, sign)?;
    match method {
        Method::Naive => Ok(rep_naive(a, b, sign)),
        Method::Convolution => {
            let span = (hi as i128 - lo as i128 + 1) as u128;
            if span <= DENSE_SPAN_LIMIT as u128 {
                Ok(rep_dense(a, b, sign, lo, span as usize))
            } else {
                Ok(rep_sparse(a, b, sign))
            }
        }
    }
}

fn rep_naive(a: &IntSet, b: &IntSet, sign: Sign) -> RepHistogram {
    let mut map = BTreeMap::new();
    for x in a.iter() {
        for y in b.iter() {
            let v = match sign {
                Sign::Plus => x + y,
                Sign::Minus => x - y,
            };
            *map.entry(v).or_insert(0u64) += 1;
        }
    }
    RepHistogram::from_map(map)
}

fn rep_sparse(a: &IntSet, b: &IntSet, sign: Sign) -> RepHistogram {
    let mut map: HashMap<i64, u64> = HashMap::with_capacity(a.len().max(b.len()));
    for x in a.iter() {
        for y in b.iter() {
            let v = match sign {
                Sign::Plus => x + y,
                Sign::Minus => x - y,
            };
            *map.entry(v).or_insert(0) += 1;
        }
    }
    RepHistogram::from_map(map.into_iter().collect())
}

/// Dense counting over `[lo, lo + span)`. Offsets are taken relative to
/// the extremes so that `a +- b - lo = ia + ib` with `ia, ib >= 0`.
fn rep_dense(a: &IntSet, b: &IntSet, sign: Sign, lo: i64, span: usize) -> RepHistogram {
    let amin = a.min().unwrap() as i128;
    let ia: Vec<usize> = a.iter().map(|x| (x as i128 - amin) as usize).collect();
    let ib: Vec<usize> = match sign {
        Sign::Plus => {
            let bmin = b.min().unwrap() as i128;
            b.iter().map(|y| (y as i128 - bmin) as usize).collect()
        }
        Sign::Minus => {
            let bmax = b.max().unwrap() as i128;
            b.iter().map(|y| (bmax - y as i128) as usize).collect()
        }
    };
    let pairs = a.len() as u128 * b.len() as u128;
    let counts = if ntt::worthwhile(span, pairs, a.len().min(b.len()) as u64) {
        let la = *ia.iter().max().unwrap() + 1;
        let lb = *ib.iter().max().unwrap() + 1;
        let mut pa = vec![0u32; la];
        let mut pb = vec![0u32; lb];
        ia.iter().for_each(|&i| pa[i] = 1);
        ib.iter().for_each(|&i| pb[i] = 1);
        ntt::convolve(&pa, &pb)
            .into_iter()
            .map(u64::from)
            .collect::<Vec<_>>()
    } else {
        let mut counts = vec![0u64; span];
        for &i in &ia {
            for &j in &ib {
                counts[i + j] += 1;
            }
        }
        counts
    };
    let entries = counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(i, c)| ((lo as i128 + i as i128) as i64, c))
        .collect();
    RepHistogram::from_map(entries)
}

/// `A + B`, deduplicated and sorted.
pub fn sumset(a: &IntSet, b: &IntSet) -> Result<IntSet> {
    Ok(rep_function(a, b, Sign::Plus)?.support())
}

/// `A - B`.
pub fn difference_set(a: &IntSet, b: &IntSet) -> Result<IntSet> {
    Ok(rep_function(a, b, Sign::Minus)?.support())
}

/// `nA - mA` by iterated sums and differences.
pub fn signed_sumset(a: &IntSet, n: u32, m: u32) -> Result<IntSet> {
    if n + m == 0 {
        return Err(Error::precondition("nA - mA needs n + m >= 1"));
    }
    let mut acc: Option<IntSet> = None;
    for _ in 0..n {
        acc = Some(match acc {
            None => a.clone(),
            Some(s) => sumset(&s, a)?,
        });
    }
    for _ in 0..m {
        acc = Some(match acc {
            None => a.negated()?,
            Some(s) => difference_set(&s, a)?,
        });
    }
    Ok(acc.unwrap())
}

/// Common energy `E(A,B) = sum_x r_{A+B}(x)^2`.
pub fn energy(a: &IntSet, b: &IntSet) -> Result<u128> {
    energy_with(a, b, Method::Convolution)
}

pub fn energy_with(a: &IntSet, b: &IntSet, method: Method) -> Result<u128> {
    rep_function_with(a, b, Sign::Plus, method)?.moment(2)
}

/// `E_k(A) = sum_x r_{A-A}(x)^k`.
pub fn higher_energy(a: &IntSet, k: u32) -> Result<u128> {
    higher_energy_with(a, k, Method::Convolution)
}

pub fn higher_energy_with(a: &IntSet, k: u32, method: Method) -> Result<u128> {
    if k < 2 {
        return Err(Error::precondition(format!("E_k needs k >= 2, got {k}")));
    }
    rep_function_with(a, a, Sign::Minus, method)?.moment(k)
}

/// An energy value tagged with its parameters and the route used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub k: u32,
    pub l: u32,
    pub value: u128,
    pub method: Method,
}

/// `E_{k,l}(A)` as a report; `l = 2` is `E_k(A)`.
pub fn energy_report(a: &IntSet, k: u32, l: u32, method: Method, work: u64) -> Result<EnergyReport> {
    let value = if l == 2 {
        higher_energy_with(a, k, method)?
    } else {
        mixed_energy_with(a, k, l, method, work)?
    };
    Ok(EnergyReport { k, l, value, method })
}

/// `E_{k,l}(A) = sum over (k-1)-tuples of shifts of
/// |A ∩ (A+α_1) ∩ ... ∩ (A+α_{k-1})|^l`, with the default work budget.
pub fn mixed_energy(a: &IntSet, k: u32, l: u32) -> Result<u128> {
    mixed_energy_with(a, k, l, Method::Convolution, crate::Budgets::default().work)
}

/// Only shift tuples realized by `A` are visited: the next shift must
/// lie in `S - A` for the current intersection `S`. With
/// [`Method::Convolution`] the last shift is summed in one step as
/// `sum_α r_{S-A}(α)^l`; [`Method::Naive`] intersects explicitly.
pub fn mixed_energy_with(a: &IntSet, k: u32, l: u32, method: Method, work: u64) -> Result<u128> {
    if k < 2 || l < 2 {
        return Err(Error::precondition(format!(
            "E_{{k,l}} needs k, l >= 2, got k={k} l={l}"
        )));
    }
    if a.is_empty() {
        return Ok(0);
    }
    let mut visited = 0u64;
    mixed_rec(a, a.as_slice(), k - 1, l, method, work, &mut visited)
}

fn mixed_rec(
    a: &IntSet,
    current: &[i64],
    remaining: u32,
    l: u32,
    method: Method,
    work: u64,
    visited: &mut u64,
) -> Result<u128> {
    let pow = |n: usize| {
        checked_pow_u128(n as u128, l).ok_or_else(|| Error::overflow(format!("{n}^{l}")))
    };
    if remaining == 0 {
        return pow(current.len());
    }
    let shifts = realized_shifts(current, a);
    *visited += shifts.len() as u64;
    check_budget("mixed energy shift tuples", *visited as u128, work)?;
    if remaining == 1 && method == Method::Convolution {
        let current = IntSet::from_sorted(current.to_vec());
        return rep_function(&current, a, Sign::Minus)?.moment(l);
    }
    let mut acc: u128 = 0;
    for alpha in shifts {
        let next = shift_intersection(current, a, alpha);
        let term = mixed_rec(a, &next, remaining - 1, l, method, work, visited)?;
        acc = acc
            .checked_add(term)
            .ok_or_else(|| Error::overflow("mixed energy exceeds 128 bits"))?;
    }
    Ok(acc)
}

/// Shifts `α` with `S ∩ (A + α)` nonempty, i.e. the set `S - A`.
fn realized_shifts(current: &[i64], a: &IntSet) -> BTreeSet<i64> {
    current
        .iter()
        .flat_map(|&x| a.iter().map(move |y| x - y))
        .collect()
}

/// `S ∩ (A + α)`.
fn shift_intersection(current: &[i64], a: &IntSet, alpha: i64) -> Vec<i64> {
    current
        .iter()
        .copied()
        .filter(|&x| a.contains_wide(x as i128 - alpha as i128))
        .collect()
}

/// `|A ∩ (A+t_1) ∩ ... ∩ (A+t_j)|` for arbitrary shifts.
pub fn shifted_intersection_size(a: &IntSet, shifts: &[i64]) -> usize {
    a.iter()
        .filter(|&x| shifts.iter().all(|&t| a.contains_wide(x as i128 - t as i128)))
        .count()
}

/// `|A ∩ (A+α) ∩ (A+β) ∩ (A+γ)|` for distinct nonzero shifts.
pub fn quadruple_intersection(a: &IntSet, alpha: i64, beta: i64, gamma: i64) -> Result<usize> {
    if alpha == 0 || beta == 0 || gamma == 0 || alpha == beta || beta == gamma || alpha == gamma {
        return Err(Error::precondition(format!(
            "shifts must be distinct and nonzero, got ({alpha}, {beta}, {gamma})"
        )));
    }
    Ok(shifted_intersection_size(a, &[alpha, beta, gamma]))
}

/// Exact split of `E_4(A)` by how many distinct nonzero values a shift
/// triple takes:
/// `e4 = triples + 6 pairs + 7 singles + diagonal`,
/// where `triples` sums squared quadruple intersections over ordered
/// distinct nonzero triples, `pairs` squared triple intersections over
/// ordered distinct nonzero pairs, `singles = sum_{t≠0} r_{A-A}(t)^2`
/// and `diagonal = |A|^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E4Decomposition {
    pub e4: u128,
    pub triples: u128,
    pub pairs: u128,
    pub singles: u128,
    pub diagonal: u128,
    /// Largest quadruple intersection over distinct nonzero triples.
    pub max_quadruple: usize,
}

impl E4Decomposition {
    pub fn recombined(&self) -> u128 {
        self.triples + 6 * self.pairs + 7 * self.singles + self.diagonal
    }
}

pub fn e4_decomposition(a: &IntSet) -> Result<E4Decomposition> {
    let e4 = higher_energy(a, 4)?;
    let n = a.len() as u128;
    let diff = rep_function(a, a, Sign::Minus)?;
    let nonzero: Vec<i64> = diff.iter().map(|(x, _)| x).filter(|&x| x != 0).collect();
    let singles = diff
        .iter()
        .filter(|&(x, _)| x != 0)
        .map(|(_, c)| (c as u128).pow(2))
        .sum();
    let mut pairs = 0u128;
    let mut triples = 0u128;
    let mut max_quadruple = 0;
    for &s in &nonzero {
        for &t in nonzero.iter().filter(|&&t| t != s) {
            let c3 = shifted_intersection_size(a, &[s, t]);
            if c3 == 0 {
                continue;
            }
            pairs += (c3 as u128).pow(2);
            for &u in nonzero.iter().filter(|&&u| u != s && u != t) {
                let c4 = shifted_intersection_size(a, &[s, t, u]);
                triples += (c4 as u128).pow(2);
                max_quadruple = max_quadruple.max(c4);
            }
        }
    }
    Ok(E4Decomposition {
        e4,
        triples,
        pairs,
        singles,
        diagonal: n * n,
        max_quadruple,
    })
}

/// Exact rational serialized as `"num/den"` (or `"num"` when integral).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactRational(pub BigRational);

impl ExactRational {
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<BigRational>()
            .map(ExactRational)
            .map_err(|e| serde::de::Error::custom(format!("rational {s:?}: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PluenneckeReport {
    pub n: u32,
    pub m: u32,
    /// `|nA - mA|`
    pub lhs: u64,
    /// `(|A+A|/|A|)^{n+m} |A|`
    pub rhs: ExactRational,
    pub rhs_decimal: f64,
    pub holds: bool,
}

/// Evaluates both sides of `|nA - mA| <= (|A+A|/|A|)^{n+m} |A|` exactly.
pub fn pluennecke_check(a: &IntSet, n: u32, m: u32) -> Result<PluenneckeReport> {
    if a.is_empty() {
        return Err(Error::precondition("Plünnecke-Ruzsa needs a nonempty set"));
    }
    let lhs = signed_sumset(a, n, m)?.len() as u64;
    let doubling = sumset(a, a)?.len();
    let size = BigInt::from(a.len());
    let ratio = BigRational::new(BigInt::from(doubling), size.clone());
    let rhs = num_traits::pow(ratio, (n + m) as usize) * BigRational::from_integer(size);
    let holds = BigRational::from_integer(BigInt::from(lhs)) <= rhs;
    let rhs = ExactRational(rhs);
    Ok(PluenneckeReport {
        n,
        m,
        lhs,
        rhs_decimal: round_sig12(rhs.to_f64()),
        rhs,
        holds,
    })
}

/// `P = {s in A-A : r_{A-A}(s) >= |A|^2 / (4|A-A|)}`; ties are included.
pub fn popular_differences(a: &IntSet) -> Result<IntSet> {
    if a.is_empty() {
        return Err(Error::precondition("popular differences need |A| >= 1"));
    }
    let diff = rep_function(a, a, Sign::Minus)?;
    let n2 = (a.len() as u128).pow(2);
    let d = diff.len() as u128;
    Ok(IntSet::from_sorted(
        diff.iter()
            .filter(|&(_, r)| 4 * d * r as u128 >= n2)
            .map(|(s, _)| s)
            .collect(),
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PopularEnergyReport {
    pub k: u32,
    pub set_size: usize,
    pub difference_size: usize,
    pub popular_size: usize,
    /// `sum_{x in A-A} r_{P-P}(x)`
    pub sum: u128,
    /// `|A|^{2k/(k-1)}`
    pub reference: f64,
    pub ratio: f64,
}

pub fn popular_energy_sum(a: &IntSet, k: u32) -> Result<PopularEnergyReport> {
    if k < 2 {
        return Err(Error::precondition("reference exponent needs k >= 2"));
    }
    let d = difference_set(a, a)?;
    let p = popular_differences(a)?;
    let pp = rep_function(&p, &p, Sign::Minus)?;
    let sum: u128 = d.iter().map(|x| pp.get(x) as u128).sum();
    let reference = (a.len() as f64).powf(2.0 * k as f64 / (k as f64 - 1.0));
    Ok(PopularEnergyReport {
        k,
        set_size: a.len(),
        difference_size: d.len(),
        popular_size: p.len(),
        sum,
        reference: round_sig12(reference),
        ratio: round_sig12(sum as f64 / reference),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceTriples {
    /// `#{(x,y) in D^2 : x - y in D}`, `D = A - A`
    pub count: u128,
    pub difference_size: usize,
    pub difference_size_squared: u128,
}

pub fn count_difference_triples(a: &IntSet) -> Result<DifferenceTriples> {
    let d = difference_set(a, a)?;
    let dd = rep_function(&d, &d, Sign::Minus)?;
    let count = d.iter().map(|z| dd.get(z) as u128).sum();
    Ok(DifferenceTriples {
        count,
        difference_size: d.len(),
        difference_size_squared: (d.len() as u128).pow(2),
    })
}

/// The derived quantities `K` and `M` defined by `E(A) = |A|^3/K` and
/// `E_4(A) = M |A|^5 / K^3`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureRatios {
    pub set_size: usize,
    pub energy: u128,
    pub e4: u128,
    pub k_ratio: f64,
    pub m_ratio: f64,
}

pub fn structure_ratios(a: &IntSet) -> Result<StructureRatios> {
    if a.is_empty() {
        return Err(Error::precondition("structure ratios need a nonempty set"));
    }
    let e2 = higher_energy(a, 2)?;
    let e4 = higher_energy(a, 4)?;
    let n = a.len() as f64;
    let k = n.powi(3) / e2 as f64;
    let m = e4 as f64 * k.powi(3) / n.powi(5);
    Ok(StructureRatios {
        set_size: a.len(),
        energy: e2,
        e4,
        k_ratio: round_sig12(k),
        m_ratio: round_sig12(m),
    })
}
