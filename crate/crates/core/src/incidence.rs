//! Solutions of `a = bc + d` over `A × C × L` and the ratio multiplicity
//! of the planar set `L`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_i128, gcd_u64, round_sig12};
use crate::error::{check_budget, Error, Result};
use crate::gap::Gap;
use crate::intset::IntSet;
use crate::powers::kth_powers_in;
use crate::Budgets;

/// Distinct `(b, d)` pairs, stored sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(i64, i64)>", into = "Vec<(i64, i64)>")]
pub struct PointSet2D(Vec<(i64, i64)>);

impl TryFrom<Vec<(i64, i64)>> for PointSet2D {
    type Error = Error;

    fn try_from(v: Vec<(i64, i64)>) -> Result<Self> {
        PointSet2D::new(v)
    }
}

impl From<PointSet2D> for Vec<(i64, i64)> {
    fn from(p: PointSet2D) -> Self {
        p.0
    }
}

impl FromStr for PointSet2D {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("point set {s:?}: {e}")))
    }
}

impl PointSet2D {
    /// Rejects repeated pairs.
    pub fn new(mut pairs: Vec<(i64, i64)>) -> Result<Self> {
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Parse(format!("repeated pair {:?}", w[0])));
        }
        Ok(PointSet2D(pairs))
    }

    /// `B × D`.
    pub fn product(b: &IntSet, d: &IntSet) -> Self {
        PointSet2D(b.iter().flat_map(|x| d.iter().map(move |y| (x, y))).collect())
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(λb, λd)` for every pair.
    pub fn scaled(&self, lambda: i64) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::precondition("scaling factor must be nonzero"));
        }
        let scale = |x: i64| {
            x.checked_mul(lambda)
                .ok_or_else(|| Error::overflow(format!("{lambda} * {x}")))
        };
        let pairs = self
            .0
            .iter()
            .map(|&(b, d)| Ok((scale(b)?, scale(d)?)))
            .collect::<Result<Vec<_>>>()?;
        PointSet2D::new(pairs)
    }
}

/// The ratio `d/b` in lowest terms with a positive denominator.
fn ratio_key(b: i64, d: i64) -> (i128, i128) {
    let (b, d) = (b as i128, d as i128);
    let g = gcd_i128(b, d) as i128;
    let s = b.signum();
    (s * d / g, s * b / g)
}

/// The largest number of pairs sharing one ratio `d/b`; pairs with
/// `b = 0` have no ratio and are skipped.
pub fn tau(l: &PointSet2D) -> u64 {
    let mut counts: HashMap<(i128, i128), u64> = HashMap::new();
    for &(b, d) in l.pairs().iter().filter(|p| p.0 != 0) {
        *counts.entry(ratio_key(b, d)).or_insert(0) += 1;
    }
    counts.into_values().max().unwrap_or(0)
}

/// `σ = #{(a, c, (b, d)) : a = bc + d}`, probing a hash of `A` for every
/// `(c, (b, d))`. Products are formed in 128 bits and cannot overflow.
pub fn count_solutions(a: &IntSet, c: &IntSet, l: &PointSet2D) -> u64 {
    let set: HashSet<i64> = a.iter().collect();
    l.pairs()
        .par_iter()
        .map(|&(b, d)| {
            c.iter()
                .filter(|&x| {
                    i64::try_from(b as i128 * x as i128 + d as i128)
                        .is_ok_and(|v| set.contains(&v))
                })
                .count() as u64
        })
        .sum()
}

/// The triple loop over `A × C × L`.
pub fn count_solutions_naive(a: &IntSet, c: &IntSet, l: &PointSet2D) -> u64 {
    let mut n = 0;
    for x in a.iter() {
        for y in c.iter() {
            for &(b, d) in l.pairs() {
                if x as i128 == b as i128 * y as i128 + d as i128 {
                    n += 1;
                }
            }
        }
    }
    n
}

/// `σ` beside `τ^{1/6}|C||L|^{5/6} + |L|` and `τ^{1/4}|C||L|^{3/4} + |L|`.
/// Both bounds carry an unknown constant, so the ratios are reported and
/// never asserted; only the trivial cap `σ <= |A||C||L|` is checked.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IncidenceReport {
    pub sigma: u64,
    pub tau: u64,
    pub a_size: usize,
    pub c_size: usize,
    pub l_size: usize,
    /// Caller's claim that the first coordinates of `L` are squares.
    pub squares_b: bool,
    /// Whether they actually are.
    pub b_all_squares: bool,
    pub bound56: f64,
    pub bound34: f64,
    pub ratio56: f64,
    pub ratio34: f64,
    pub trivial_cap: u128,
    pub within_trivial_cap: bool,
}

fn ratio(num: u64, den: f64) -> f64 {
    if den > 0.0 {
        round_sig12(num as f64 / den)
    } else {
        0.0
    }
}

pub fn bound_report(a: &IntSet, c: &IntSet, l: &PointSet2D, squares_b: bool) -> IncidenceReport {
    let sigma = count_solutions(a, c, l);
    let t = tau(l);
    let (tf, cf, lf) = (t as f64, c.len() as f64, l.len() as f64);
    let bound56 = tf.powf(1.0 / 6.0) * cf * lf.powf(5.0 / 6.0) + lf;
    let bound34 = tf.powf(0.25) * cf * lf.powf(0.75) + lf;
    let trivial_cap = a.len() as u128 * c.len() as u128 * l.len() as u128;
    IncidenceReport {
        sigma,
        tau: t,
        a_size: a.len(),
        c_size: c.len(),
        l_size: l.len(),
        squares_b,
        b_all_squares: l.pairs().iter().all(|&(b, _)| crate::arith::is_square(b as i128)),
        bound56: round_sig12(bound56),
        bound34: round_sig12(bound34),
        ratio56: ratio(sigma, bound56),
        ratio34: ratio(sigma, bound34),
        trivial_cap,
        within_trivial_cap: (sigma as u128) <= trivial_cap,
    }
}

/// The incidence instance behind the bound for squares in a GAP `H`:
/// with `λ = gcd(k_0, ..., k_m)`, `Q = sum (k_j/λ) y_j` with sides
/// `floor(L_j/M)`, `I` the squares in `[1, M]` and `H'` the doubled GAP,
/// every `a ∈ A ∩ H`, `q ∈ Q`, `i ∈ I` gives `a + λ i q ∈ H'`. As
/// `a = (λi)(-q) + h'`, the instance is `C = -Q`, `L = λI × H'` and
/// `σ = |A ∩ H| |Q| |I|` exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapIncidence {
    pub lambda: u64,
    pub m: u64,
    pub a: IntSet,
    pub c: IntSet,
    pub i: IntSet,
    pub l: PointSet2D,
    /// `|A ∩ H| |Q| |I|`
    pub expected: u64,
}

pub fn gap_incidence(a: &IntSet, h: &Gap, m: u64, budgets: &Budgets) -> Result<GapIncidence> {
    if m == 0 {
        return Err(Error::precondition("M must be >= 1"));
    }
    let norm = h.gcd_normalize();
    if norm.lambda == 0 {
        return Err(Error::precondition("GAP with all-zero base and steps"));
    }
    let lambda = i64::try_from(norm.lambda).map_err(|_| Error::overflow("λ"))?;
    let q = Gap::new(0, norm.primed.steps().to_vec(), norm.primed.lengths().to_vec())?
        .shrink(m)?
        .enumerate(budgets)?;
    let squares = kth_powers_in(1, m as i64, 2)?;
    let a_in = a.intersection(&h.enumerate(budgets)?);
    let hp = h.doubled()?.enumerate(budgets)?;
    check_budget(
        "incidence pairs",
        squares.len() as u128 * hp.len() as u128,
        budgets.pairs,
    )?;
    let b = squares.dilated(lambda)?;
    Ok(GapIncidence {
        lambda: norm.lambda,
        m,
        expected: (a_in.len() * q.len() * squares.len()) as u64,
        a: a_in,
        c: q.negated()?,
        i: squares,
        l: PointSet2D::product(&b, &hp),
    })
}

/// One class `L_l = {(λi, h') : gcd(i, h'/λ) = l}` of the construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassRow {
    pub l: u64,
    pub size: usize,
    pub tau: u64,
    pub sigma: u64,
    pub bound34: f64,
    pub ratio34: f64,
}

pub fn gap_incidence_classes(inst: &GapIncidence) -> Vec<ClassRow> {
    let mut classes: BTreeMap<u64, Vec<(i64, i64)>> = BTreeMap::new();
    let lam = inst.lambda as i64;
    for &(b, d) in inst.l.pairs() {
        let g = gcd_u64((b / lam).unsigned_abs(), (d / lam).unsigned_abs());
        classes.entry(g).or_default().push((b, d));
    }
    classes
        .into_iter()
        .map(|(l, pairs)| {
            let set = PointSet2D(pairs);
            let r = bound_report(&inst.a, &inst.c, &set, false);
            ClassRow {
                l,
                size: set.len(),
                tau: r.tau,
                sigma: r.sigma,
                bound34: r.bound34,
                ratio34: r.ratio34,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> PointSet2D {
        PointSet2D::new(v.to_vec()).unwrap()
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&pts(&[(1, 2), (2, 4), (1, 3)])), 2);
        assert_eq!(tau(&pts(&[(1, 2), (1, 3), (1, 5)])), 1);
        assert_eq!(tau(&pts(&[(0, 5)])), 0);
        assert_eq!(tau(&pts(&[(1, 2), (-1, -2), (-2, -4)])), 3);
        assert_eq!(tau(&PointSet2D::default()), 0);
    }

    #[test]
    fn solution_examples() {
        let a = IntSet::from([1, 4, 9]);
        let c = IntSet::from([1, 2]);
        assert_eq!(count_solutions(&a, &c, &pts(&[(1, 0)])), 1);
        assert_eq!(count_solutions(&a, &c, &PointSet2D::default()), 0);
        let sq = kth_powers_in(1, 100, 2).unwrap();
        let c = IntSet::interval(1, 10);
        let l = PointSet2D::product(&IntSet::interval(1, 5), &IntSet::interval(0, 5));
        assert_eq!(count_solutions(&sq, &c, &l), count_solutions_naive(&sq, &c, &l));
    }

    #[test]
    fn duplicates_rejected() {
        assert!(PointSet2D::new(vec![(1, 2), (1, 2)]).is_err());
        assert!("[[1,2],[1,2]]".parse::<PointSet2D>().is_err());
        assert_eq!("[[3,4],[1,2]]".parse::<PointSet2D>().unwrap().pairs(), &[(1, 2), (3, 4)]);
    }

    #[test]
    fn single_point_is_bounded_by_c() {
        let a = kth_powers_in(0, 400, 2).unwrap();
        let c = IntSet::interval(-10, 10);
        let r = bound_report(&a, &c, &pts(&[(2, 1)]), false);
        assert!(r.sigma <= c.len() as u64);
        assert!(r.within_trivial_cap);
    }

    #[test]
    fn construction_is_exact() {
        let h = Gap::new(6, vec![4, 10], vec![30, 12]).unwrap();
        let a = kth_powers_in(0, 2000, 2).unwrap();
        let inst = gap_incidence(&a, &h, 4, &Budgets::default()).unwrap();
        assert_eq!(inst.lambda, 2);
        assert_eq!(count_solutions(&inst.a, &inst.c, &inst.l), inst.expected);
        let rows = gap_incidence_classes(&inst);
        assert_eq!(rows.iter().map(|r| r.size).sum::<usize>(), inst.l.len());
        assert_eq!(rows.iter().map(|r| r.sigma).sum::<u64>(), inst.expected);
    }
}
