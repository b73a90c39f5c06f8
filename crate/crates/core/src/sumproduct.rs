//! Sums and products along a matching, the graph they span, complete
//! bipartite subgraphs and searches for matchings with few sums and
//! products.

use std::collections::{BTreeSet, HashMap};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_square, round_sig12};
use crate::error::{check_budget, Error, Result};
use crate::intset::IntSet;

/// Distinct ordered pairs `(a_i, b_i)`, stored sorted. `(a, b)` and
/// `(b, a)` are different pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(i64, i64)>", into = "Vec<(i64, i64)>")]
pub struct Matching(Vec<(i64, i64)>);

impl TryFrom<Vec<(i64, i64)>> for Matching {
    type Error = Error;

    fn try_from(v: Vec<(i64, i64)>) -> Result<Self> {
        Matching::new(v)
    }
}

impl From<Matching> for Vec<(i64, i64)> {
    fn from(m: Matching) -> Self {
        m.0
    }
}

impl FromStr for Matching {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("matching {s:?}: {e}")))
    }
}

impl Matching {
    pub fn new(mut pairs: Vec<(i64, i64)>) -> Result<Self> {
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Parse(format!("repeated pair {:?}", w[0])));
        }
        Ok(Matching(pairs))
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
}

fn sum_product(a: i64, b: i64) -> Result<(i64, i64)> {
    let s = a
        .checked_add(b)
        .ok_or_else(|| Error::overflow(format!("{a} + {b}")))?;
    let p = a
        .checked_mul(b)
        .ok_or_else(|| Error::overflow(format!("{a} * {b}")))?;
    Ok((s, p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumsProducts {
    #[serde(rename = "S")]
    pub s: IntSet,
    #[serde(rename = "P")]
    pub p: IntSet,
}

pub fn sums_products(m: &Matching) -> Result<SumsProducts> {
    let mut s = Vec::with_capacity(m.len());
    let mut p = Vec::with_capacity(m.len());
    for &(a, b) in m.pairs() {
        let (x, y) = sum_product(a, b)?;
        s.push(x);
        p.push(y);
    }
    Ok(SumsProducts {
        s: IntSet::new(s),
        p: IntSet::new(p),
    })
}

/// A bipartite graph between left values and right values. Edges are
/// stored sorted and without repetition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    left: IntSet,
    right: IntSet,
    edges: Vec<(i64, i64)>,
}

impl BipartiteGraph {
    /// Vertex sets are the endpoints of the edges.
    pub fn from_edges(mut edges: Vec<(i64, i64)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        BipartiteGraph {
            left: edges.iter().map(|e| e.0).collect(),
            right: edges.iter().map(|e| e.1).collect(),
            edges,
        }
    }

    /// Allows isolated vertices; every edge endpoint must be listed.
    pub fn new(left: IntSet, right: IntSet, edges: Vec<(i64, i64)>) -> Result<Self> {
        let g = BipartiteGraph::from_edges(edges);
        if g.left.iter().any(|x| !left.contains(x)) || g.right.iter().any(|y| !right.contains(y)) {
            return Err(Error::precondition("edge endpoint outside the vertex sets"));
        }
        Ok(BipartiteGraph {
            left,
            right,
            edges: g.edges,
        })
    }

    pub fn left(&self) -> &IntSet {
        &self.left
    }

    pub fn right(&self) -> &IntSet {
        &self.right
    }

    pub fn edges(&self) -> &[(i64, i64)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degrees of the right vertices, in the order of `right()`.
    pub fn right_degrees(&self) -> Vec<u64> {
        let mut deg: HashMap<i64, u64> = HashMap::new();
        for &(_, y) in &self.edges {
            *deg.entry(y).or_insert(0) += 1;
        }
        self.right.iter().map(|y| deg.get(&y).copied().unwrap_or(0)).collect()
    }

    /// Neighbourhoods as bitsets: one row per vertex of `side`, over the
    /// vertices of the other side.
    fn bit_rows(&self, left_rows: bool) -> Vec<Vec<u64>> {
        let (rows, cols) = if left_rows {
            (&self.left, &self.right)
        } else {
            (&self.right, &self.left)
        };
        let words = cols.len().div_ceil(64);
        let mut out = vec![vec![0u64; words]; rows.len()];
        let idx = |set: &IntSet, x: i64| set.as_slice().binary_search(&x).unwrap();
        for &(x, y) in &self.edges {
            let (r, c) = if left_rows {
                (idx(rows, x), idx(cols, y))
            } else {
                (idx(rows, y), idx(cols, x))
            };
            out[r][c / 64] |= 1 << (c % 64);
        }
        out
    }
}

/// `G(P, S)` with an edge `(a_i b_i, a_i + b_i)` for every pair.
pub fn sp_graph(m: &Matching) -> Result<BipartiteGraph> {
    let edges = m
        .pairs()
        .iter()
        .map(|&(a, b)| sum_product(a, b).map(|(s, p)| (p, s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BipartiteGraph::from_edges(edges))
}

/// Whether `s^2 - 4p` is a perfect square on every edge `(p, s)`.
pub fn discriminants_are_squares(g: &BipartiteGraph) -> bool {
    g.edges()
        .iter()
        .all(|&(p, s)| is_square(s as i128 * s as i128 - 4 * p as i128))
}

fn popcount(v: &[u64]) -> u32 {
    v.iter().map(|w| w.count_ones()).sum()
}

/// Searches `size`-subsets of the rows for a common neighbourhood of at
/// least `need` columns. Returns the first hit in lexicographic order.
fn find_common(
    rows: &[Vec<u64>],
    size: usize,
    need: u32,
    budget: u64,
) -> Result<Option<(Vec<usize>, Vec<u64>)>> {
    let eligible: Vec<usize> = (0..rows.len()).filter(|&r| popcount(&rows[r]) >= need).collect();
    let mut nodes = 0u64;
    let mut chosen = Vec::with_capacity(size);
    let words = rows.first().map_or(0, |r| r.len());
    #[allow(clippy::too_many_arguments)]
    fn go(
        rows: &[Vec<u64>],
        eligible: &[usize],
        from: usize,
        acc: &[u64],
        size: usize,
        need: u32,
        chosen: &mut Vec<usize>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<Option<Vec<u64>>> {
        if chosen.len() == size {
            return Ok(Some(acc.to_vec()));
        }
        for pos in from..eligible.len() {
            if eligible.len() - pos < size - chosen.len() {
                break;
            }
            *nodes += 1;
            check_budget("complete bipartite search nodes", *nodes as u128, budget)?;
            let r = eligible[pos];
            let next: Vec<u64> = acc.iter().zip(&rows[r]).map(|(a, b)| a & b).collect();
            if popcount(&next) < need {
                continue;
            }
            chosen.push(r);
            if let Some(hit) = go(rows, eligible, pos + 1, &next, size, need, chosen, nodes, budget)? {
                return Ok(Some(hit));
            }
            chosen.pop();
        }
        Ok(None)
    }
    if size == 0 {
        return Ok(Some((Vec::new(), vec![u64::MAX; words])));
    }
    let full = vec![u64::MAX; words];
    let hit = go(rows, &eligible, 0, &full, size, need, &mut chosen, &mut nodes, budget)?;
    Ok(hit.map(|cols| (chosen, cols)))
}

/// True iff `G` has no `K_{s,t}` with `s` vertices on the left and `t` on
/// the right. Subsets are drawn from the side with fewer vertices of
/// sufficient degree.
pub fn kst_free(g: &BipartiteGraph, s: usize, t: usize, budget: u64) -> Result<bool> {
    if s == 0 || t == 0 {
        return Err(Error::precondition("s and t must be >= 1"));
    }
    if g.left.len() < s || g.right.len() < t {
        return Ok(true);
    }
    let left = g.bit_rows(true);
    let right = g.bit_rows(false);
    let left_ok = left.iter().filter(|r| popcount(r) >= t as u32).count();
    let right_ok = right.iter().filter(|r| popcount(r) >= s as u32).count();
    let hit = if left_ok <= right_ok {
        find_common(&left, s, t as u32, budget)?
    } else {
        find_common(&right, t, s as u32, budget)?
    };
    Ok(hit.is_none())
}

/// Enumerates every `s`-subset of the left side and every `t`-subset of the
/// right side.
pub fn kst_free_naive(g: &BipartiteGraph, s: usize, t: usize) -> bool {
    let edges: BTreeSet<(i64, i64)> = g.edges().iter().copied().collect();
    let left = g.left().as_slice();
    let right = g.right().as_slice();
    let mut free = true;
    for_each_subset(left.len(), s, &mut |ls| {
        for_each_subset(right.len(), t, &mut |rs| {
            if ls
                .iter()
                .all(|&i| rs.iter().all(|&j| edges.contains(&(left[i], right[j]))))
            {
                free = false;
            }
        });
    });
    free
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::with_capacity(k), f);
}

/// The largest `K_{s,t}` found for a fixed number `t` of right vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliqueReport {
    pub t: usize,
    pub s: usize,
    pub left: Vec<i64>,
    pub right: Vec<i64>,
}

/// Maximizes the common left neighbourhood over all `t`-subsets of the
/// right side.
pub fn largest_biclique(g: &BipartiteGraph, t: usize, budget: u64) -> Result<BicliqueReport> {
    let rows = g.bit_rows(false);
    let mut best = BicliqueReport {
        t,
        s: 0,
        left: Vec::new(),
        right: Vec::new(),
    };
    if t == 0 || g.right.len() < t {
        return Ok(best);
    }
    let mut need = 1u32;
    while let Some((chosen, cols)) = find_common(&rows, t, need, budget)? {
        let left: Vec<i64> = (0..g.left.len())
            .filter(|&c| cols[c / 64] >> (c % 64) & 1 == 1)
            .map(|c| g.left.as_slice()[c])
            .collect();
        need = left.len() as u32 + 1;
        best = BicliqueReport {
            t,
            s: left.len(),
            left,
            right: chosen.iter().map(|&r| g.right.as_slice()[r]).collect(),
        };
    }
    Ok(best)
}

/// Edge count against `(s-1)^{1/t} (|B|-t+1)^+ |A|^{1-1/t} + (t-1)|A|`,
/// `A` the left side and `B` the right side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KstBound {
    pub s: usize,
    pub t: usize,
    pub left_size: usize,
    pub right_size: usize,
    pub edges: usize,
    pub bound: f64,
    pub holds: bool,
    pub constant_form: String,
}

pub const KST_CONSTANT_FORM: &str = "(s-1)^(1/t) * max(|B|-t+1, 0) * |A|^(1-1/t) + (t-1)*|A|";

pub fn kst_bound_value(left: usize, right: usize, s: usize, t: usize) -> f64 {
    let (a, tf) = (left as f64, t as f64);
    let width = (right as f64 - tf + 1.0).max(0.0);
    ((s - 1) as f64).powf(1.0 / tf) * width * a.powf(1.0 - 1.0 / tf) + (tf - 1.0) * a
}

/// Fails with a precondition error when `G` contains a `K_{s,t}`.
pub fn kst_bound(g: &BipartiteGraph, s: usize, t: usize, budget: u64) -> Result<KstBound> {
    if !kst_free(g, s, t, budget)? {
        return Err(Error::precondition(format!("graph contains K_{{{s},{t}}}")));
    }
    let bound = kst_bound_value(g.left.len(), g.right.len(), s, t);
    // absorbs rounding in the float evaluation
    let holds = g.edge_count() as f64 <= bound * (1.0 + 1e-12) + 1e-9;
    Ok(KstBound {
        s,
        t,
        left_size: g.left.len(),
        right_size: g.right.len(),
        edges: g.edge_count(),
        bound: round_sig12(bound),
        holds,
        constant_form: KST_CONSTANT_FORM.into(),
    })
}

/// `sum over right vertices of deg^3`.
pub fn cubic_energy(g: &BipartiteGraph) -> Result<u128> {
    g.right_degrees().iter().try_fold(0u128, |acc, &d| {
        (d as u128)
            .checked_pow(3)
            .and_then(|c| acc.checked_add(c))
            .ok_or_else(|| Error::overflow("cubic energy"))
    })
}

/// The summary written for a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    #[serde(rename = "P_size")]
    pub p_size: usize,
    #[serde(rename = "S_size")]
    pub s_size: usize,
    pub edges: usize,
    pub cubic_energy: u128,
}

pub fn graph_summary(g: &BipartiteGraph) -> Result<GraphSummary> {
    Ok(GraphSummary {
        p_size: g.left.len(),
        s_size: g.right.len(),
        edges: g.edge_count(),
        cubic_energy: cubic_energy(g)?,
    })
}

/// `(sum deg)^3 <= |S|^2 sum deg^3` over the right side of `G(P, S)`,
/// with `sum deg^3 / |P|^3` alongside as a ratio.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolderReport {
    pub n: usize,
    pub p_size: usize,
    pub s_size: usize,
    pub edges: usize,
    pub lhs: u128,
    pub rhs: u128,
    pub holds: bool,
    pub cubic_energy: u128,
    pub cubic_over_p_cubed: f64,
}

pub fn holder_chain_check(m: &Matching) -> Result<HolderReport> {
    let g = sp_graph(m)?;
    let cubic = cubic_energy(&g)?;
    let e = g.edge_count() as u128;
    let s = g.right.len() as u128;
    let lhs = e * e * e;
    let rhs = (s * s)
        .checked_mul(cubic)
        .ok_or_else(|| Error::overflow("Hölder right-hand side"))?;
    let p = g.left.len() as f64;
    Ok(HolderReport {
        n: m.len(),
        p_size: g.left.len(),
        s_size: g.right.len(),
        edges: g.edge_count(),
        lhs,
        rhs,
        holds: lhs <= rhs,
        cubic_energy: cubic,
        cubic_over_p_cubed: if p > 0.0 { round_sig12(cubic as f64 / (p * p * p)) } else { 0.0 },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalOptions {
    /// Entries lie in `[-radius, radius]`.
    pub radius: i64,
    pub seed: u64,
    pub restarts: usize,
    pub iterations: u64,
    /// Node budget of the exhaustive search and the cap on
    /// `restarts * iterations`.
    pub budget: u64,
    /// Largest `n` searched exhaustively.
    pub exhaustive_max: usize,
}

impl Default for ExtremalOptions {
    fn default() -> Self {
        ExtremalOptions {
            radius: 3,
            seed: 0,
            restarts: 8,
            iterations: 20_000,
            budget: 1 << 28,
            exhaustive_max: 6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchKind {
    Exhaustive,
    Annealing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub n: usize,
    pub kind: SearchKind,
    pub best: Matching,
    /// `|P| + |S|`
    pub score: usize,
    pub graph: GraphSummary,
}

pub fn score(m: &Matching) -> Result<usize> {
    let sp = sums_products(m)?;
    Ok(sp.s.len() + sp.p.len())
}

/// A matching of `n` distinct pairs with entries in the box minimizing
/// `|P| + |S|`. Exhaustive for `n <= exhaustive_max`, returning the
/// lexicographically first optimum; seeded annealing restarts otherwise.
pub fn extremal_search(n: usize, opts: &ExtremalOptions) -> Result<ExtremalResult> {
    if n == 0 {
        return Err(Error::precondition("n must be >= 1"));
    }
    if opts.radius < 0 || opts.radius > 1 << 30 {
        return Err(Error::precondition("radius must lie in [0, 2^30]"));
    }
    let side = 2 * opts.radius as u128 + 1;
    if (side * side) < n as u128 {
        return Err(Error::precondition(format!(
            "box of radius {} has fewer than {n} pairs",
            opts.radius
        )));
    }
    let (kind, best) = if n <= opts.exhaustive_max {
        (SearchKind::Exhaustive, exhaustive(n, opts)?)
    } else {
        (SearchKind::Annealing, anneal(n, opts)?)
    };
    let g = sp_graph(&best)?;
    Ok(ExtremalResult {
        n,
        kind,
        score: score(&best)?,
        graph: graph_summary(&g)?,
        best,
    })
}

/// Counts of sums and products in a partial matching.
#[derive(Default)]
struct Tally {
    sums: HashMap<i64, u32>,
    products: HashMap<i64, u32>,
}

impl Tally {
    fn score(&self) -> usize {
        self.sums.len() + self.products.len()
    }

    fn add(&mut self, (a, b): (i64, i64)) {
        *self.sums.entry(a + b).or_insert(0) += 1;
        *self.products.entry(a * b).or_insert(0) += 1;
    }

    fn remove(&mut self, (a, b): (i64, i64)) {
        for (map, key) in [(&mut self.sums, a + b), (&mut self.products, a * b)] {
            let c = map.get_mut(&key).unwrap();
            *c -= 1;
            if *c == 0 {
                map.remove(&key);
            }
        }
    }

    /// Score change from adding a pair.
    fn gain(&self, (a, b): (i64, i64)) -> usize {
        usize::from(!self.sums.contains_key(&(a + b)))
            + usize::from(!self.products.contains_key(&(a * b)))
    }
}

fn exhaustive(n: usize, opts: &ExtremalOptions) -> Result<Matching> {
    let r = opts.radius;
    let cells: Vec<(i64, i64)> = (-r..=r).flat_map(|a| (-r..=r).map(move |b| (a, b))).collect();
    struct Search<'a> {
        cells: &'a [(i64, i64)],
        n: usize,
        budget: u64,
        nodes: u64,
        chosen: Vec<(i64, i64)>,
        tally: Tally,
        best: Option<(usize, Vec<(i64, i64)>)>,
    }
    impl Search<'_> {
        fn go(&mut self, from: usize) -> Result<()> {
            let current = self.tally.score();
            if self.best.as_ref().is_some_and(|b| current >= b.0) {
                return Ok(());
            }
            if self.chosen.len() == self.n {
                self.best = Some((current, self.chosen.clone()));
                return Ok(());
            }
            for i in from..self.cells.len() {
                if self.cells.len() - i < self.n - self.chosen.len() {
                    break;
                }
                self.nodes += 1;
                check_budget("extremal search nodes", self.nodes as u128, self.budget)?;
                let c = self.cells[i];
                self.tally.add(c);
                self.chosen.push(c);
                self.go(i + 1)?;
                self.chosen.pop();
                self.tally.remove(c);
            }
            Ok(())
        }
    }
    let mut s = Search {
        cells: &cells,
        n,
        budget: opts.budget,
        nodes: 0,
        chosen: Vec::new(),
        tally: Tally::default(),
        best: None,
    };
    s.go(0)?;
    Matching::new(s.best.expect("box holds n pairs").1)
}

/// Structured starting points: a grid, pairs from a set of the form
/// `2^i 3^j`, and uniform random pairs.
fn seed_matching(n: usize, radius: i64, restart: usize, rng: &mut ChaCha8Rng) -> Vec<(i64, i64)> {
    let mut out = BTreeSet::new();
    match restart % 3 {
        0 => {
            let w = (n as f64).sqrt().ceil() as i64;
            'grid: for a in 1..=radius {
                for b in 1..=w.min(radius) {
                    if out.len() == n {
                        break 'grid;
                    }
                    out.insert((a, b));
                }
            }
        }
        1 => {
            let mut smooth = Vec::new();
            let mut p2 = 1i64;
            while p2 <= radius {
                let mut v = p2;
                while v <= radius {
                    smooth.push(v);
                    v *= 3;
                }
                p2 *= 2;
            }
            smooth.sort_unstable();
            'geo: for &a in &smooth {
                for &b in &smooth {
                    if out.len() == n {
                        break 'geo;
                    }
                    out.insert((a, b));
                }
            }
        }
        _ => {}
    }
    while out.len() < n {
        out.insert((rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius)));
    }
    out.into_iter().collect()
}

fn anneal(n: usize, opts: &ExtremalOptions) -> Result<Matching> {
    check_budget(
        "annealing steps",
        opts.restarts as u128 * opts.iterations as u128,
        opts.budget,
    )?;
    let runs = (0..opts.restarts.max(1))
        .into_par_iter()
        .map(|restart| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(restart as u64);
            anneal_once(n, opts, restart, &mut rng)
        })
        .collect::<Vec<_>>();
    let best = runs
        .into_iter()
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
        .unwrap();
    Matching::new(best.1)
}

fn anneal_once(
    n: usize,
    opts: &ExtremalOptions,
    restart: usize,
    rng: &mut ChaCha8Rng,
) -> (usize, Vec<(i64, i64)>) {
    let r = opts.radius;
    let mut cur = seed_matching(n, r, restart, rng);
    let mut present: BTreeSet<(i64, i64)> = cur.iter().copied().collect();
    let mut tally = Tally::default();
    for &p in &cur {
        tally.add(p);
    }
    let mut score = tally.score();
    let mut best = (score, cur.clone());
    let t0 = 2.0f64;
    for step in 0..opts.iterations {
        let temp = t0 * (1.0 - step as f64 / opts.iterations as f64) + 1e-3;
        let idx = rng.gen_range(0..n);
        let old = cur[idx];
        // proposals reuse an existing sum or product half the time
        let cand = if rng.gen_bool(0.5) {
            let other = cur[rng.gen_range(0..n)];
            let a = rng.gen_range(-r..=r);
            if rng.gen_bool(0.5) {
                (a, other.0 + other.1 - a)
            } else {
                let p = other.0 * other.1;
                match a {
                    0 => (0, rng.gen_range(-r..=r)),
                    a if p % a == 0 => (a, p / a),
                    _ => (a, rng.gen_range(-r..=r)),
                }
            }
        } else {
            (rng.gen_range(-r..=r), rng.gen_range(-r..=r))
        };
        if cand.1.abs() > r || present.contains(&cand) {
            continue;
        }
        tally.remove(old);
        let new_score = tally.score() + tally.gain(cand);
        let delta = new_score as f64 - score as f64;
        if delta <= 0.0 || rng.gen::<f64>() < (-delta / temp).exp() {
            tally.add(cand);
            present.remove(&old);
            present.insert(cand);
            cur[idx] = cand;
            score = new_score;
            if score < best.0 || (score == best.0 && sorted(&cur) < best.1) {
                best = (score, sorted(&cur));
            }
        } else {
            tally.add(old);
        }
    }
    best.1.sort_unstable();
    best
}

fn sorted(v: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[(i64, i64)]) -> Matching {
        Matching::new(v.to_vec()).unwrap()
    }

    #[test]
    fn sums_products_examples() {
        let sp = sums_products(&m(&[(1, 2), (3, 4)])).unwrap();
        assert_eq!(sp.s, IntSet::from([3, 7]));
        assert_eq!(sp.p, IntSet::from([2, 12]));
        let sp = sums_products(&m(&[(1, 2), (2, 1)])).unwrap();
        assert_eq!((sp.s.len(), sp.p.len()), (1, 1));
        let diag: Vec<_> = (1..=10).map(|i| (i, i)).collect();
        let sp = sums_products(&m(&diag)).unwrap();
        assert_eq!(sp.s, (1..=10).map(|i| 2 * i).collect());
        assert_eq!(sp.p, (1..=10).map(|i| i * i).collect());
        assert!(sums_products(&m(&[(i64::MAX, 2)])).is_err());
        assert!(Matching::new(vec![(1, 2), (1, 2)]).is_err());
    }

    #[test]
    fn graph_examples() {
        let g = sp_graph(&m(&[(1, 2), (2, 1)])).unwrap();
        assert_eq!(g.edge_count(), 1);
        let g = sp_graph(&m(&[(0, 1), (1, 0), (0, 2)])).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2)]);
        assert!(discriminants_are_squares(&g));
    }

    #[test]
    fn kst_examples() {
        let k33 = BipartiteGraph::from_edges((0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect());
        assert!(!kst_free(&k33, 2, 2, 1 << 20).unwrap());
        assert!(!kst_free_naive(&k33, 2, 2));
        let matching = BipartiteGraph::from_edges((0..10).map(|i| (i, i)).collect());
        assert!(kst_free(&matching, 2, 2, 1 << 20).unwrap());
        assert!(kst_free(&matching, 2, 3, 1 << 20).unwrap());
        let b = kst_bound(&matching, 2, 2, 1 << 20).unwrap();
        assert!(b.holds);
        let tiny = BipartiteGraph::from_edges(vec![(0, 0)]);
        assert!(kst_bound(&tiny, 2, 2, 1 << 20).unwrap().holds);
        assert!(kst_bound(&k33, 2, 2, 1 << 20).is_err());
        let empty = BipartiteGraph::from_edges(Vec::new());
        assert!(kst_bound(&empty, 2, 2, 1 << 20).unwrap().holds);
    }

    #[test]
    fn biclique_sizes() {
        let k43 = BipartiteGraph::from_edges((0..4).flat_map(|a| (0..3).map(move |b| (a, b))).collect());
        let r = largest_biclique(&k43, 3, 1 << 20).unwrap();
        assert_eq!((r.s, r.left.len(), r.right.len()), (4, 4, 3));
        let r = largest_biclique(&k43, 4, 1 << 20).unwrap();
        assert_eq!(r.s, 0);
    }

    #[test]
    fn cubic_energy_examples() {
        let matching = BipartiteGraph::from_edges((0..7).map(|i| (i, i)).collect());
        assert_eq!(cubic_energy(&matching).unwrap(), 7);
        let star = BipartiteGraph::from_edges((0..5).map(|i| (i, 100)).collect());
        assert_eq!(cubic_energy(&star).unwrap(), 125);
    }

    #[test]
    fn holder_examples() {
        let diag: Vec<_> = (1..=9).map(|i| (i, i)).collect();
        let r = holder_chain_check(&m(&diag)).unwrap();
        assert_eq!(r.lhs, r.rhs);
        assert!(r.holds);
    }

    #[test]
    fn extremal_small() {
        let r = extremal_search(1, &ExtremalOptions::default()).unwrap();
        assert_eq!(r.score, 2);
        let r = extremal_search(2, &ExtremalOptions::default()).unwrap();
        assert_eq!(r.score, 2);
        assert_eq!(r.kind, SearchKind::Exhaustive);
        let opts = ExtremalOptions { radius: 6, iterations: 2000, restarts: 3, ..Default::default() };
        let a = extremal_search(9, &opts).unwrap();
        let b = extremal_search(9, &opts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.best.len(), 9);
        assert_eq!(a.score, score(&a.best).unwrap());
    }
}
