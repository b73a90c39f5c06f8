//! Bounded-height point search on curves `y^k = f(x)`, genus for the
//! families handled here, and the square-sum structures built on them.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{big_pow, exact_root_big, exact_root_i128, gcd_u64, is_square, round_sig12};
use crate::error::{check_budget, Error, Result};
use crate::intset::{ExactRational, IntSet};
use crate::Budgets;

/// `y^k = f(x)`, `f` given by integer coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CurveRepr")]
pub struct CurveSpec {
    k: u32,
    coeffs: Vec<i64>,
}

#[derive(Deserialize)]
struct CurveRepr {
    k: u32,
    coeffs: Vec<i64>,
}

impl TryFrom<CurveRepr> for CurveSpec {
    type Error = Error;

    fn try_from(r: CurveRepr) -> Result<Self> {
        CurveSpec::new(r.k, r.coeffs)
    }
}

impl FromStr for CurveSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("curve {s:?}: {e}")))
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            let t = x
                .checked_mul(y)
                .and_then(|t| out[i + j].checked_add(t))
                .ok_or_else(|| Error::overflow("polynomial coefficient"))?;
            out[i + j] = t;
        }
    }
    Ok(out)
}

impl CurveSpec {
    pub fn new(k: u32, coeffs: Vec<i64>) -> Result<Self> {
        if k < 2 {
            return Err(Error::precondition(format!("curve exponent must be >= 2, got {k}")));
        }
        if coeffs.len() < 2 {
            return Err(Error::precondition("f must have degree >= 1"));
        }
        if *coeffs.last().unwrap() == 0 {
            return Err(Error::precondition("leading coefficient of f is zero"));
        }
        Ok(CurveSpec { k, coeffs })
    }

    /// `y^k = prod_i (x + c_i)`.
    pub fn product_of_linear(k: u32, shifts: &[i64]) -> Result<Self> {
        let mut f = vec![1i64];
        for &c in shifts {
            f = poly_mul(&f, &[c, 1])?;
        }
        CurveSpec::new(k, f)
    }

    /// `y^2 = (x^2 + α)(x^2 + β)(x^2 + γ)`.
    pub fn quadruple_family(alpha: i64, beta: i64, gamma: i64) -> Result<Self> {
        let mut f = vec![1i64];
        for c in [alpha, beta, gamma] {
            f = poly_mul(&f, &[c, 0, 1])?;
        }
        CurveSpec::new(2, f)
    }

    /// `y^k = x^k + a`.
    pub fn fermat(k: u32, a: i64) -> Result<Self> {
        let mut f = vec![0i64; k as usize + 1];
        f[0] = a;
        f[k as usize] = 1;
        CurveSpec::new(k, f)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `f(x + c)`.
    pub fn shifted(&self, c: i64) -> Result<CurveSpec> {
        let mut rev = self.coeffs.iter().rev();
        let mut out = vec![*rev.next().unwrap()];
        for &a in rev {
            out = poly_mul(&out, &[c, 1])?;
            out[0] = out[0]
                .checked_add(a)
                .ok_or_else(|| Error::overflow("shifted coefficient"))?;
        }
        CurveSpec::new(self.k, out)
    }

    /// `f(x)` in `i128`, failing loudly on overflow.
    pub fn eval_i128(&self, x: i128) -> Result<i128> {
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(x)
                .and_then(|v| v.checked_add(c as i128))
                .ok_or_else(|| Error::overflow(format!("f({x}) exceeds 128 bits")))?;
        }
        Ok(acc)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(BigInt::from(c));
        }
        acc
    }

    fn big_coeffs(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// `gcd(f, f') = 1` over the rationals.
    pub fn is_squarefree(&self) -> bool {
        let f = self.big_coeffs();
        let df: Vec<BigInt> = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        poly_gcd_degree(f, df) == 0
    }

    /// `b x^k + a` with `a, b != 0`.
    fn is_fermat_type(&self) -> bool {
        self.degree() == self.k as usize
            && self.coeffs[0] != 0
            && self.coeffs[1..self.k as usize].iter().all(|&c| c == 0)
    }

    /// Genus for `k = 2` with squarefree `f` (`floor((d-1)/2)`) or for
    /// `y^k = x^k + a`, `a != 0` (`(k-1)(k-2)/2`).
    pub fn genus(&self) -> Result<u32> {
        if self.k == 2 {
            if !self.is_squarefree() {
                return Err(Error::Unsupported(
                    "f is not squarefree (gcd(f, f') is nonconstant)".into(),
                ));
            }
            return Ok((self.degree() as u32 - 1) / 2);
        }
        if self.is_fermat_type() {
            return Ok((self.k - 1) * (self.k - 2) / 2);
        }
        Err(Error::Unsupported(format!(
            "y^{} = f(x) with f of degree {} is neither hyperelliptic nor of the form x^k + a",
            self.k,
            self.degree()
        )))
    }
}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut p);
    let content = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if content.is_zero() || content.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &content).collect()
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(deg a - deg b + 1) a mod b`.
fn pseudo_remainder(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    while a.len() > db && !a.is_empty() {
        let da = a.len() - 1;
        let lead = a[da].clone();
        for c in a.iter_mut() {
            *c *= lc;
        }
        for (i, bc) in b.iter().enumerate() {
            a[da - db + i] -= &lead * bc;
        }
        trim(&mut a);
    }
    a
}

/// Degree of `gcd(a, b)` by the primitive pseudo-remainder sequence.
fn poly_gcd_degree(a: Vec<BigInt>, b: Vec<BigInt>) -> usize {
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(pseudo_remainder(a, &b));
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Integer,
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: ExactRational,
    pub y: ExactRational,
}

impl Point {
    fn integer(x: i128, y: i128) -> Self {
        let r = |v: i128| ExactRational(BigRational::from_integer(BigInt::from(v)));
        Point { x: r(x), y: r(y) }
    }
}

/// Points found by a search. Solutions are counted as `(x, y)` pairs, so
/// for even `k` a nonzero `y` contributes both signs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointList {
    pub curve: CurveSpec,
    pub height: u64,
    pub mode: SearchMode,
    pub points: Vec<Point>,
}

impl PointList {
    /// Re-substitutes every point.
    pub fn verify(&self) -> bool {
        self.points.iter().all(|p| {
            let lhs = num_traits::pow(p.y.0.clone(), self.curve.k as usize);
            lhs == self.curve.eval_rational(&p.x.0)
        })
    }
}

/// The y-values over an integer `x`: every root with `y^k = v`.
fn roots_i128(v: i128, k: u32) -> impl Iterator<Item = i128> {
    let root = exact_root_i128(v, k);
    let mirror = root.filter(|&y| k.is_multiple_of(2) && y != 0).map(|y| -y);
    root.into_iter().chain(mirror)
}

pub fn point_search(c: &CurveSpec, height: u64, mode: SearchMode) -> Result<PointList> {
    let mut points = match mode {
        SearchMode::Integer => {
            let h = height as i128;
            let mut pts = Vec::new();
            for x in -h..=h {
                let v = c.eval_i128(x)?;
                pts.extend(roots_i128(v, c.k).map(|y| Point::integer(x, y)));
            }
            pts
        }
        SearchMode::Rational => rational_points(c, height),
    };
    points.sort();
    Ok(PointList {
        curve: c.clone(),
        height,
        mode,
        points,
    })
}

/// `x = p/q` in lowest terms with `max(|p|, q) <= height`. With the
/// homogenization `F(p, q) = q^d f(p/q)`, `f(p/q)` is a k-th power of a
/// rational iff both parts of `F / q^d` in lowest terms are k-th powers.
fn rational_points(c: &CurveSpec, height: u64) -> Vec<Point> {
    let d = c.degree() as u32;
    let coeffs = c.big_coeffs();
    let h = height as i64;
    (1..=h.max(0))
        .into_par_iter()
        .flat_map_iter(|q| {
            let qb = BigInt::from(q);
            let qd = big_pow(&qb, d);
            let coeffs = &coeffs;
            (-h..=h)
                .filter(move |&p| gcd_u64(p.unsigned_abs(), q as u64) == 1)
                .flat_map(move |p| {
                    let pb = BigInt::from(p);
                    let mut f = BigInt::zero();
                    for (i, a) in coeffs.iter().enumerate() {
                        f += a * big_pow(&pb, i as u32) * big_pow(&qb, d - i as u32);
                    }
                    let g = f.gcd(&qd);
                    let (num, den) = (&f / &g, &qd / &g);
                    let mut out = Vec::new();
                    if let (Some(yn), Some(yd)) = (exact_root_big(&num, c.k), exact_root_big(&den, c.k)) {
                        let x = ExactRational(BigRational::new(pb.clone(), qb.clone()));
                        let y = BigRational::new(yn, yd);
                        if c.k.is_multiple_of(2) && !y.is_zero() {
                            out.push(Point { x: x.clone(), y: ExactRational(-y.clone()) });
                        }
                        out.push(Point { x, y: ExactRational(y) });
                    }
                    out
                })
        })
        .collect()
}

/// `#{(x, y) : |x| <= height, y^k = f(x)}` over the integers.
pub fn count_integer_points(c: &CurveSpec, height: u64) -> Result<u64> {
    let h = height as i128;
    let mut n = 0u64;
    for x in -h..=h {
        n += roots_i128(c.eval_i128(x)?, c.k).count() as u64;
    }
    Ok(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub triple: [i64; 3],
    pub count: u64,
    pub height: u64,
}

/// Integer-point counts of `y^2 = (x^2+α)(x^2+β)(x^2+γ)` over all
/// `α < β < γ` drawn from a range with zero removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub height: u64,
    pub total_triples: u64,
    pub rows: Vec<CensusRow>,
    /// point count -> number of triples
    pub histogram: BTreeMap<u64, u64>,
    pub max_count: u64,
    pub argmax: Vec<[i64; 3]>,
}

pub fn probe_quadruple_family(lo: i64, hi: i64, height: u64, budgets: &Budgets) -> Result<Census> {
    let alphas: Vec<i64> = (lo..=hi).filter(|&a| a != 0).collect();
    let mut triples = Vec::new();
    for (i, &a) in alphas.iter().enumerate() {
        for (j, &b) in alphas.iter().enumerate().skip(i + 1) {
            for &c in &alphas[j + 1..] {
                triples.push([a, b, c]);
            }
        }
    }
    check_budget(
        "quadruple census evaluations",
        triples.len() as u128 * (2 * height as u128 + 1),
        budgets.work,
    )?;
    let rows = triples
        .par_iter()
        .map(|&t| {
            let curve = CurveSpec::quadruple_family(t[0], t[1], t[2])?;
            Ok(CensusRow {
                triple: t,
                count: count_integer_points(&curve, height)?,
                height,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut histogram = BTreeMap::new();
    for r in &rows {
        *histogram.entry(r.count).or_insert(0) += 1;
    }
    let max_count = rows.iter().map(|r| r.count).max().unwrap_or(0);
    let argmax = rows
        .iter()
        .filter(|r| r.count == max_count)
        .map(|r| r.triple)
        .collect();
    Ok(Census {
        height,
        total_triples: rows.len() as u64,
        rows,
        histogram,
        max_count,
        argmax,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueOptions {
    /// Stop after this many sets (the lexicographically first ones).
    pub cap: Option<usize>,
    pub node_budget: u64,
}

impl Default for CliqueOptions {
    fn default() -> Self {
        CliqueOptions {
            cap: None,
            node_budget: 1 << 28,
        }
    }
}

/// Neighbours `j > i` in `[1, height]` with `i + j` a square.
fn square_sum_neighbours(i: i64, height: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut s = ((2 * i + 1) as f64).sqrt() as i64;
    while s * s <= 2 * i {
        s += 1;
    }
    while s * s - i <= height {
        out.push(s * s - i);
        s += 1;
    }
    out
}

/// Sets of `size` distinct integers in `[1, height]` whose pairwise sums
/// are all squares, in lexicographic order.
pub fn square_sum_clique_search(height: i64, size: usize, opts: CliqueOptions) -> Result<Vec<IntSet>> {
    if size < 2 {
        return Err(Error::precondition("clique size must be >= 2"));
    }
    if height < 1 {
        return Ok(Vec::new());
    }
    let adj: Vec<Vec<i64>> = (0..=height)
        .map(|i| if i == 0 { Vec::new() } else { square_sum_neighbours(i, height) })
        .collect();
    let shards = (1..=height)
        .into_par_iter()
        .map(|v| {
            let mut found = Vec::new();
            let mut nodes = 0u64;
            let mut clique = vec![v];
            extend_clique(&adj, &mut clique, &adj[v as usize], size, &opts, &mut found, &mut nodes)?;
            Ok((found, nodes))
        })
        .collect::<Result<Vec<_>>>()?;
    let total: u64 = shards.iter().map(|s| s.1).sum();
    check_budget("clique search nodes", total as u128, opts.node_budget)?;
    let mut all: Vec<IntSet> = shards.into_iter().flat_map(|s| s.0).collect();
    if let Some(cap) = opts.cap {
        all.truncate(cap);
    }
    Ok(all)
}

fn extend_clique(
    adj: &[Vec<i64>],
    clique: &mut Vec<i64>,
    candidates: &[i64],
    size: usize,
    opts: &CliqueOptions,
    found: &mut Vec<IntSet>,
    nodes: &mut u64,
) -> Result<()> {
    if clique.len() == size {
        found.push(IntSet::from_sorted(clique.clone()));
        return Ok(());
    }
    if opts.cap.is_some_and(|c| found.len() >= c) {
        return Ok(());
    }
    for (idx, &c) in candidates.iter().enumerate() {
        *nodes += 1;
        check_budget("clique search nodes", *nodes as u128, opts.node_budget)?;
        if candidates.len() - idx < size - clique.len() {
            break;
        }
        let next: Vec<i64> = candidates[idx + 1..]
            .iter()
            .copied()
            .filter(|x| adj[c as usize].binary_search(x).is_ok())
            .collect();
        clique.push(c);
        extend_clique(adj, clique, &next, size, opts, found, nodes)?;
        clique.pop();
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SquareEdges {
    pub edges: Vec<(i64, i64)>,
    pub count: usize,
    /// `|A| |B|^{4/5} + |B|`
    pub bound: f64,
    pub ratio: f64,
}

/// Pairs `(a, b)` in `A × B` with `a + b` a perfect square.
pub fn pair_square_edges(a: &IntSet, b: &IntSet) -> SquareEdges {
    let edges: Vec<(i64, i64)> = a
        .iter()
        .flat_map(|x| {
            b.iter()
                .filter(move |&y| is_square(x as i128 + y as i128))
                .map(move |y| (x, y))
        })
        .collect();
    let bound = a.len() as f64 * (b.len() as f64).powf(0.8) + b.len() as f64;
    SquareEdges {
        count: edges.len(),
        ratio: if bound > 0.0 { round_sig12(edges.len() as f64 / bound) } else { 0.0 },
        bound: round_sig12(bound),
        edges,
    }
}

/// Whether `v` is the square of a rational, for callers holding exact
/// rationals.
pub fn is_rational_square(v: &BigRational) -> bool {
    !v.is_negative()
        && exact_root_big(v.numer(), 2).is_some()
        && exact_root_big(v.denom(), 2).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_examples() {
        let quintic = CurveSpec::product_of_linear(2, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(quintic.coeffs(), &[120, 274, 225, 85, 15, 1]);
        assert_eq!(quintic.genus().unwrap(), 2);
        assert_eq!(CurveSpec::fermat(5, 7).unwrap().genus().unwrap(), 6);
        assert_eq!(CurveSpec::fermat(3, 2).unwrap().genus().unwrap(), 1);
        let square = CurveSpec::new(2, vec![0, 0, 1]).unwrap();
        assert!(matches!(square.genus(), Err(Error::Unsupported(_))));
        let sextic = CurveSpec::quadruple_family(3, 8, 15).unwrap();
        assert_eq!(sextic.genus().unwrap(), 2);
        let repeated = CurveSpec::product_of_linear(2, &[1, 1, 3]).unwrap();
        assert!(repeated.genus().is_err());
        let cubic_pair = CurveSpec::new(3, poly_mul(&[2, 0, 0, 1], &[5, 0, 0, 1]).unwrap()).unwrap();
        assert!(matches!(cubic_pair.genus(), Err(Error::Unsupported(_))));
        assert!(CurveSpec::fermat(4, 0).unwrap().genus().is_err());
    }

    #[test]
    fn invalid_curves() {
        assert!(CurveSpec::new(1, vec![0, 1]).is_err());
        assert!(CurveSpec::new(2, vec![5]).is_err());
        assert!(CurveSpec::new(2, vec![1, 0]).is_err());
        assert!("{\"k\":2,\"coeffs\":[1,2,0]}".parse::<CurveSpec>().is_err());
    }

    #[test]
    fn shift_is_taylor_shift() {
        let c = CurveSpec::new(2, vec![1, 2, 3]).unwrap();
        let s = c.shifted(2).unwrap();
        for x in -5..5 {
            assert_eq!(s.eval_i128(x).unwrap(), c.eval_i128(x + 2).unwrap());
        }
    }

    #[test]
    fn point_search_examples() {
        let c = CurveSpec::fermat(5, 1).unwrap();
        let pts = point_search(&c, 10, SearchMode::Integer).unwrap();
        assert_eq!(pts.points, vec![Point::integer(-1, 0), Point::integer(0, 1)]);
        let c = CurveSpec::quadruple_family(-1, -4, -9).unwrap();
        let pts = point_search(&c, 100, SearchMode::Integer).unwrap();
        for x in [-3, -2, -1, 1, 2, 3] {
            assert!(pts.points.contains(&Point::integer(x, 0)));
        }
        assert!(pts.verify());
        let c = CurveSpec::quadruple_family(3, 8, 15).unwrap();
        let pts = point_search(&c, 1000, SearchMode::Integer).unwrap();
        for (x, y) in [(1, 24), (1, -24), (-1, 24), (-1, -24)] {
            assert!(pts.points.contains(&Point::integer(x, y)));
        }
    }

    #[test]
    fn integer_overflow_names_x() {
        let c = CurveSpec::new(2, vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, i64::MAX]).unwrap();
        let err = point_search(&c, 1000, SearchMode::Integer).unwrap_err();
        assert!(matches!(&err, Error::Overflow(m) if m.contains("f(-1000)")));
    }

    #[test]
    fn rational_points_include_integers_and_fractions() {
        // x = 1/3 gives 4/9
        let c = CurveSpec::new(2, vec![0, 1, 1]).unwrap();
        let pts = point_search(&c, 5, SearchMode::Rational).unwrap();
        assert!(pts.verify());
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert!(pts.points.iter().any(|p| p.x.0 == third));
        let ints = point_search(&c, 5, SearchMode::Integer).unwrap();
        for p in &ints.points {
            assert!(pts.points.contains(p));
        }
    }

    #[test]
    fn census_small() {
        let census = probe_quadruple_family(1, 4, 50, &Budgets::default()).unwrap();
        assert_eq!(census.total_triples, 4);
        assert_eq!(census.histogram.values().sum::<u64>(), 4);
    }

    #[test]
    fn clique_examples() {
        let triples = square_sum_clique_search(50, 3, CliqueOptions::default()).unwrap();
        assert!(triples.contains(&IntSet::from([6, 19, 30])));
        let pairs = square_sum_clique_search(10, 2, CliqueOptions::default()).unwrap();
        assert!(pairs.contains(&IntSet::from([1, 3])));
        assert!(pairs.iter().all(|p| is_square((p.as_slice()[0] + p.as_slice()[1]) as i128)));
        let capped = square_sum_clique_search(50, 3, CliqueOptions { cap: Some(2), ..Default::default() }).unwrap();
        assert_eq!(capped, triples[..2].to_vec());
        assert!(square_sum_clique_search(50, 1, CliqueOptions::default()).is_err());
    }

    #[test]
    fn square_edges_examples() {
        let e = pair_square_edges(&IntSet::from([1]), &IntSet::from([3, 8, 15]));
        assert_eq!(e.count, 3);
        let e = pair_square_edges(&IntSet::empty(), &IntSet::empty());
        assert_eq!(e.count, 0);
    }

    #[test]
    fn neighbour_lists() {
        assert_eq!(square_sum_neighbours(1, 30), vec![3, 8, 15, 24]);
        assert_eq!(square_sum_neighbours(6, 50), vec![10, 19, 30, 43]);
    }
}
