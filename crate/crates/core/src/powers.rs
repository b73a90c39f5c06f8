//! k-th powers inside progressions: membership, counts in APs and GAPs,
//! the `Q_k(N)` box scanner with its record store, power-set energy
//! trends and the `[d^l]·Z ⊆ 2A - 2A` inclusion check.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow_i128, exact_root_i128, floor_root_u128, round_sig12};
use crate::error::{check_budget, Error, Result};
use crate::gap::Gap;
use crate::intset::{energy, signed_sumset, ExactRational, IntSet};
use crate::Budgets;

pub const SCHEMA_VERSION: u32 = 1;

/// Cells between two checkpoints of a box scan.
pub const CHECKPOINT_CELLS: u64 = 1_000_000;

fn check_exponent(k: u32) -> Result<()> {
    if k < 2 {
        Err(Error::precondition(format!("exponent must be >= 2, got {k}")))
    } else {
        Ok(())
    }
}

/// Largest `m` with `m^k <= n` for odd `k` and any sign of `n`.
fn floor_root_signed(n: i128, k: u32) -> i128 {
    if n >= 0 {
        floor_root_u128(n as u128, k) as i128
    } else {
        let r = floor_root_u128(n.unsigned_abs(), k) as i128;
        if checked_pow_i128(r, k) == Some(-n) {
            -r
        } else {
            -r - 1
        }
    }
}

/// All k-th powers in `[lo, hi]`.
pub fn kth_powers_in(lo: i64, hi: i64, k: u32) -> Result<IntSet> {
    kth_powers_in_with(lo, hi, k, &Budgets::default())
}

pub fn kth_powers_in_with(lo: i64, hi: i64, k: u32, budgets: &Budgets) -> Result<IntSet> {
    check_exponent(k)?;
    if lo > hi {
        return Err(Error::precondition(format!("empty range [{lo}, {hi}]")));
    }
    let lo = if k.is_multiple_of(2) { lo.max(0) } else { lo };
    if lo > hi {
        return Ok(IntSet::empty());
    }
    let top = floor_root_signed(hi as i128, k);
    let bottom = {
        let r = floor_root_signed(lo as i128, k);
        if checked_pow_i128(r, k) == Some(lo as i128) {
            r
        } else {
            r + 1
        }
    };
    if bottom > top {
        return Ok(IntSet::empty());
    }
    check_budget("k-th powers", (top - bottom + 1) as u128, budgets.enumeration)?;
    let values = (bottom..=top)
        .map(|m| checked_pow_i128(m, k).unwrap() as i64)
        .collect();
    Ok(IntSet::from_sorted(values))
}

fn ap_last(p: i64, r: i64, n: u64) -> Result<i64> {
    let last = p as i128 + r as i128 * (n as i128 - 1);
    i64::try_from(last).map_err(|_| Error::overflow(format!("{p} + {r} * ({n} - 1)")))
}

/// `#{j in [0, N) : p + r j is a k-th power}`.
pub fn count_in_ap(k: u32, p: i64, r: i64, n: u64) -> Result<u64> {
    check_exponent(k)?;
    if r < 1 || n < 1 {
        return Err(Error::precondition("progression needs r >= 1 and N >= 1"));
    }
    ap_last(p, r, n)?;
    Ok((0..n as i128)
        .filter(|&j| exact_root_i128(p as i128 + r as i128 * j, k).is_some())
        .count() as u64)
}

/// k-th power membership, tabulated for small values.
struct PowerTest {
    k: u32,
    table: Vec<bool>,
}

impl PowerTest {
    const TABLE_LIMIT: i64 = 1 << 26;

    fn new(k: u32, max_value: i64) -> Self {
        let mut table = Vec::new();
        if (0..=Self::TABLE_LIMIT).contains(&max_value) {
            table = vec![false; max_value as usize + 1];
            let mut m: i128 = 0;
            while let Some(v) = checked_pow_i128(m, k).filter(|&v| v <= max_value as i128) {
                table[v as usize] = true;
                m += 1;
            }
        }
        PowerTest { k, table }
    }

    fn test(&self, v: i64) -> bool {
        if v >= 0 && (v as usize) < self.table.len() {
            self.table[v as usize]
        } else {
            exact_root_i128(v as i128, self.k).is_some()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub p: i64,
    pub r: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub pmax: i64,
    pub rmax: i64,
}

/// One persisted scan result. `witness` names the AP
/// `p, p + r, ..., p + (n-1) r` that contains `best_count` k-th powers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub schema_version: u32,
    pub k: u32,
    pub n: u64,
    pub best_count: u64,
    pub witness: Witness,
    /// Exponent `e` of the comparison `best_count / N^e`.
    pub bound_exponent: String,
    pub bound_ratio: f64,
    /// `best_count^q / N^p` for `e = p/q`, exact.
    pub bound_ratio_power: ExactRational,
    /// The box a maximum was taken over; absent for a single AP count.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_bounds: Option<SearchBounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

/// `(p, q)` with `Q_k(N)` compared against `N^{p/q}`: `2/3` for squares
/// and cubes, `1/2` beyond.
pub fn ap_bound_exponent(k: u32) -> (u32, u32) {
    if k <= 3 {
        (2, 3)
    } else {
        (1, 2)
    }
}

impl ScanRecord {
    pub fn new(k: u32, n: u64, best_count: u64, witness: Witness, bounds: Option<SearchBounds>) -> Self {
        let (num, den) = ap_bound_exponent(k);
        let ratio = best_count as f64 / (n as f64).powf(num as f64 / den as f64);
        let power = BigRational::new(
            num_traits::pow(BigInt::from(best_count), den as usize),
            num_traits::pow(BigInt::from(n), num as usize),
        );
        ScanRecord {
            schema_version: SCHEMA_VERSION,
            k,
            n,
            best_count,
            witness,
            bound_exponent: format!("{num}/{den}"),
            bound_ratio: round_sig12(ratio),
            bound_ratio_power: ExactRational(power),
            search_bounds: bounds,
            timestamp: None,
        }
    }

    /// Recounts the witness progression.
    pub fn replay(&self) -> Result<u64> {
        count_in_ap(self.k, self.witness.p, self.witness.r, self.n)
    }

    pub fn verify(&self) -> Result<bool> {
        Ok(self.replay()? == self.best_count)
    }
}

/// A single AP count as a record.
pub fn scan_ap(k: u32, p: i64, r: i64, n: u64) -> Result<ScanRecord> {
    let count = count_in_ap(k, p, r, n)?;
    Ok(ScanRecord::new(k, n, count, Witness { p, r }, None))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QkParams {
    pub k: u32,
    pub n: u64,
    pub pmax: i64,
    pub rmax: i64,
}

/// Best `(count, p, r)` so far; ties keep the smaller `r`, then `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Best {
    pub count: u64,
    pub p: i64,
    pub r: i64,
}

impl Best {
    fn better(self, other: Best) -> Best {
        if other.count > self.count
            || (other.count == self.count && (other.r, other.p) < (self.r, self.p))
        {
            other
        } else {
            self
        }
    }
}

/// Resumable state of a `Q_k(N)` scan: cells `0..next_cell` (r-major,
/// then p) have been visited.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QkCheckpoint {
    pub schema_version: u32,
    pub params: QkParams,
    pub next_cell: u64,
    pub best: Option<Best>,
}

impl QkCheckpoint {
    pub fn start(params: QkParams) -> Self {
        QkCheckpoint {
            schema_version: SCHEMA_VERSION,
            params,
            next_cell: 0,
            best: None,
        }
    }

    pub fn load(path: &Path) -> Result<Option<QkCheckpoint>> {
        match std::fs::read_to_string(path) {
            Ok(s) => Ok(Some(serde_json::from_str(&s)?)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes through a temporary file so a crash never leaves a torn
    /// checkpoint.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec(self)?)?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }
}

/// Exhaustive `max count_in_ap(k, p, r, N)` over `0 <= p <= pmax`,
/// `1 <= r <= rmax`.
pub fn qk_oracle(k: u32, n: u64, pmax: i64, rmax: i64) -> Result<ScanRecord> {
    qk_scan(QkParams { k, n, pmax, rmax }, None, &Budgets::default(), |_| Ok(()))
}

/// Scans the box in chunks of [`CHECKPOINT_CELLS`] cells, calling
/// `on_checkpoint` after each chunk. Each chunk is split into tiles that
/// run in parallel; the merge order makes the result independent of the
/// thread count.
pub fn qk_scan(
    params: QkParams,
    resume: Option<QkCheckpoint>,
    budgets: &Budgets,
    mut on_checkpoint: impl FnMut(&QkCheckpoint) -> Result<()>,
) -> Result<ScanRecord> {
    let QkParams { k, n, pmax, rmax } = params;
    check_exponent(k)?;
    if n < 1 || pmax < 0 || rmax < 1 {
        return Err(Error::precondition("Q_k scan needs N >= 1, pmax >= 0, rmax >= 1"));
    }
    let max_value = ap_last(pmax, rmax, n)?;
    let width = pmax as u64 + 1;
    let cells = width
        .checked_mul(rmax as u64)
        .ok_or_else(|| Error::overflow("scan box size"))?;
    check_budget("Q_k scan work", cells as u128 * n as u128, budgets.work)?;

    let mut state = match resume {
        Some(c) if c.params == params => c,
        Some(c) => {
            return Err(Error::precondition(format!(
                "checkpoint is for {:?}, not {:?}",
                c.params, params
            )))
        }
        None => QkCheckpoint::start(params),
    };
    let test = PowerTest::new(k, max_value);
    let count_cell = |cell: u64| -> Best {
        let r = 1 + (cell / width) as i64;
        let p = (cell % width) as i64;
        let count = (0..n as i64).filter(|&j| test.test(p + r * j)).count() as u64;
        Best { count, p, r }
    };
    const TILE: u64 = 4096;
    while state.next_cell < cells {
        let end = (state.next_cell + CHECKPOINT_CELLS).min(cells);
        let tiles: Vec<(u64, u64)> = (state.next_cell..end)
            .step_by(TILE as usize)
            .map(|s| (s, (s + TILE).min(end)))
            .collect();
        let chunk_best = tiles
            .par_iter()
            .map(|&(s, e)| (s..e).map(count_cell).reduce(Best::better).unwrap())
            .collect::<Vec<_>>()
            .into_iter()
            .reduce(Best::better);
        state.best = match (state.best, chunk_best) {
            (Some(a), Some(b)) => Some(a.better(b)),
            (a, b) => a.or(b),
        };
        state.next_cell = end;
        on_checkpoint(&state)?;
    }
    let best = state.best.expect("nonempty box");
    Ok(ScanRecord::new(
        k,
        n,
        best.count,
        Witness { p: best.p, r: best.r },
        Some(SearchBounds { pmax, rmax }),
    ))
}

/// Append-only JSON-lines file of [`ScanRecord`]s.
pub struct RecordStore {
    path: PathBuf,
    records: Vec<ScanRecord>,
}

impl RecordStore {
    /// Loads an existing store (or starts an empty one). A corrupt final
    /// line, the trace of an interrupted append, is truncated away; a
    /// corrupt line elsewhere is an error.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut records = Vec::new();
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                return Ok(RecordStore { path, records })
            }
            Err(e) => return Err(e.into()),
        };
        let mut reader = BufReader::new(file);
        let mut offset = 0u64;
        let mut line = String::new();
        let mut bad: Option<(u64, usize)> = None;
        let mut lineno = 0usize;
        loop {
            line.clear();
            let read = reader.read_line(&mut line)?;
            if read == 0 {
                break;
            }
            lineno += 1;
            if let Some((_, at)) = bad {
                return Err(Error::Parse(format!(
                    "record store {}: corrupt line {at} is not the last",
                    path.display()
                )));
            }
            let trimmed = line.trim();
            if !trimmed.is_empty() {
                match serde_json::from_str::<ScanRecord>(trimmed) {
                    Ok(r) if line.ends_with('\n') => records.push(r),
                    _ => bad = Some((offset, lineno)),
                }
            }
            offset += read as u64;
        }
        if let Some((at, _)) = bad {
            let f = OpenOptions::new().write(true).open(&path)?;
            f.set_len(at)?;
        }
        Ok(RecordStore { path, records })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn records(&self) -> &[ScanRecord] {
        &self.records
    }

    pub fn append(&mut self, record: &ScanRecord) -> Result<()> {
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        f.seek(SeekFrom::End(0))?;
        let mut line = serde_json::to_vec(record)?;
        line.push(b'\n');
        f.write_all(&line)?;
        f.flush()?;
        self.records.push(record.clone());
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapScan {
    pub k: u32,
    pub dimension: usize,
    /// `|H|`, the number of distinct values.
    pub size: usize,
    pub count: usize,
    /// `8^d |H|^{3/4 - 3/(32d+4)}`
    pub bound: f64,
    pub bound_ratio: f64,
}

/// k-th powers among the values of `g`.
pub fn scan_gap(k: u32, g: &Gap, budgets: &Budgets) -> Result<GapScan> {
    check_exponent(k)?;
    let values = g.enumerate(budgets)?;
    let count = values
        .iter()
        .filter(|&v| exact_root_i128(v as i128, k).is_some())
        .count();
    let d = g.dimension() as f64;
    let exponent = 0.75 - 3.0 / (32.0 * d + 4.0);
    let bound = 8f64.powf(d) * (values.len() as f64).powf(exponent);
    Ok(GapScan {
        k,
        dimension: g.dimension(),
        size: values.len(),
        count,
        bound: round_sig12(bound),
        bound_ratio: round_sig12(count as f64 / bound),
    })
}

/// One row of the energy trend for `A = {m^k : m^k <= N}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyTrendRow {
    pub k: u32,
    pub n: i64,
    pub set_size: usize,
    pub energy: u128,
    pub exponent: String,
    /// `E(A) / |A|^exponent`
    pub ratio: f64,
}

/// Comparison exponent for `E(A)` of k-th powers: `8/3`, `5/2`, then `2`.
pub fn energy_exponent(k: u32) -> (u32, u32) {
    match k {
        2 => (8, 3),
        3 => (5, 2),
        _ => (2, 1),
    }
}

pub fn energy_experiment(k: u32, ns: &[i64]) -> Result<Vec<EnergyTrendRow>> {
    check_exponent(k)?;
    let (num, den) = energy_exponent(k);
    ns.iter()
        .map(|&n| {
            let a = kth_powers_in(1, n.max(1), k)?;
            let e = energy(&a, &a)?;
            let reference = (a.len() as f64).powf(num as f64 / den as f64);
            Ok(EnergyTrendRow {
                k,
                n,
                set_size: a.len(),
                energy: e,
                exponent: if den == 1 { num.to_string() } else { format!("{num}/{den}") },
                ratio: round_sig12(e as f64 / reference),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionReport {
    pub holds: bool,
    /// `d^l`
    pub multiplier_bound: u64,
    pub checked: u64,
    pub failures: u64,
    /// The first failing products `m z`, at most ten.
    pub witnesses: Vec<i64>,
}

const MAX_WITNESSES: usize = 10;

/// Whether `m z in 2A - 2A` for all `m in [1, d^l]`, `z in Z`.
pub fn multiplicative_inclusion_check(
    a: &IntSet,
    z: &IntSet,
    d: u64,
    l: u32,
    budgets: &Budgets,
) -> Result<InclusionReport> {
    if d < 2 || l < 1 {
        return Err(Error::precondition("inclusion check needs d >= 2 and l >= 1"));
    }
    let bound = d
        .checked_pow(l)
        .ok_or_else(|| Error::overflow(format!("{d}^{l}")))?;
    check_budget("inclusion products", bound as u128 * z.len() as u128, budgets.pairs)?;
    let target = signed_sumset(a, 2, 2)?;
    let mut failures = 0u64;
    let mut witnesses = Vec::new();
    for zv in z.iter() {
        for m in 1..=bound {
            let prod = m as i128 * zv as i128;
            if !target.contains_wide(prod) {
                failures += 1;
                if witnesses.len() < MAX_WITNESSES {
                    witnesses.push(i64::try_from(prod).unwrap_or(if prod < 0 {
                        i64::MIN
                    } else {
                        i64::MAX
                    }));
                }
            }
        }
    }
    Ok(InclusionReport {
        holds: failures == 0,
        multiplier_bound: bound,
        checked: bound * z.len() as u64,
        failures,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kth_powers_examples() {
        assert_eq!(kth_powers_in(1, 25, 2).unwrap(), IntSet::from([1, 4, 9, 16, 25]));
        assert_eq!(kth_powers_in(-8, 8, 3).unwrap(), IntSet::from([-8, -1, 0, 1, 8]));
        assert_eq!(kth_powers_in(1, 100, 5).unwrap(), IntSet::from([1, 32]));
        assert_eq!(kth_powers_in(-9, -1, 2).unwrap(), IntSet::empty());
        assert_eq!(kth_powers_in(-7, -2, 3).unwrap(), IntSet::empty());
        assert_eq!(kth_powers_in(-27, -27, 3).unwrap(), IntSet::from([-27]));
        assert!(kth_powers_in(3, 2, 2).is_err());
        assert!(kth_powers_in(0, 10, 1).is_err());
        let top = kth_powers_in(i64::MAX - 10, i64::MAX, 2).unwrap();
        assert!(top.is_empty());
    }

    #[test]
    fn count_in_ap_examples() {
        assert_eq!(count_in_ap(2, 1, 1, 25).unwrap(), 5);
        assert_eq!(count_in_ap(2, 1, 24, 8).unwrap(), 5);
        assert_eq!(count_in_ap(3, 0, 7, 10).unwrap(), 1);
        assert!(count_in_ap(2, 0, 0, 10).is_err());
        assert!(matches!(count_in_ap(2, i64::MAX, 1, 2), Err(Error::Overflow(_))));
    }

    #[test]
    fn qk_small_box() {
        let rec = qk_oracle(2, 3, 100, 100).unwrap();
        assert_eq!(rec.best_count, 3);
        assert!(rec.verify().unwrap());
        let rec = qk_oracle(3, 1, 5, 5).unwrap();
        assert_eq!((rec.best_count, rec.witness), (1, Witness { p: 0, r: 1 }));
    }

    #[test]
    fn qk_ties_prefer_small_r_then_p() {
        // N = 2 in [0,3] x [1,3]: (0,1) already gives 0 and 1.
        let rec = qk_oracle(2, 2, 3, 3).unwrap();
        assert_eq!((rec.best_count, rec.witness), (2, Witness { p: 0, r: 1 }));
    }

    #[test]
    fn qk_resume_matches_uninterrupted() {
        let params = QkParams { k: 2, n: 4, pmax: 999, rmax: 2500 };
        let full = qk_scan(params, None, &Budgets::default(), |_| Ok(())).unwrap();
        let mut first: Option<QkCheckpoint> = None;
        let interrupted = qk_scan(params, None, &Budgets::default(), |c| {
            first = Some(c.clone());
            Err(Error::precondition("stop"))
        });
        assert!(interrupted.is_err());
        let cp = first.unwrap();
        assert_eq!(cp.next_cell, CHECKPOINT_CELLS);
        let resumed = qk_scan(params, Some(cp), &Budgets::default(), |_| Ok(())).unwrap();
        assert_eq!(resumed, full);
        let other = QkParams { n: 5, ..params };
        assert!(qk_scan(other, Some(QkCheckpoint::start(params)), &Budgets::default(), |_| Ok(())).is_err());
    }

    #[test]
    fn record_ratio_fields() {
        let rec = scan_ap(2, 1, 24, 8).unwrap();
        assert_eq!(rec.best_count, 5);
        assert_eq!(rec.bound_exponent, "2/3");
        assert_eq!(rec.bound_ratio_power.0.to_string(), "125/64");
        assert_eq!(rec.bound_ratio, round_sig12(5.0 / 4.0));
    }

    #[test]
    fn scan_gap_examples() {
        let g = Gap::progression(1, 1, 25).unwrap();
        assert_eq!(scan_gap(2, &g, &Budgets::default()).unwrap().count, 5);
        let improper = Gap::new(0, vec![1, 2], vec![5, 5]).unwrap();
        let s = scan_gap(2, &improper, &Budgets::default()).unwrap();
        assert_eq!((s.size, s.count), (13, 4));
    }

    #[test]
    fn energy_trend_singleton() {
        let rows = energy_experiment(3, &[7]).unwrap();
        assert_eq!((rows[0].set_size, rows[0].energy), (1, 1));
        assert_eq!(rows[0].exponent, "5/2");
        assert_eq!(energy_experiment(5, &[31]).unwrap()[0].exponent, "2");
    }

    #[test]
    fn inclusion_examples() {
        let b = Budgets::default();
        let r = multiplicative_inclusion_check(&IntSet::interval(0, 20), &IntSet::from([0]), 3, 4, &b).unwrap();
        assert!(r.holds);
        let r = multiplicative_inclusion_check(&IntSet::from([0, 1]), &IntSet::from([1]), 2, 3, &b).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witnesses, vec![3, 4, 5, 6, 7, 8]);
        let r = multiplicative_inclusion_check(&IntSet::interval(0, 99), &IntSet::from([1, 2]), 2, 5, &b).unwrap();
        assert!(r.holds);
        assert_eq!(r.checked, 64);
        assert!(multiplicative_inclusion_check(&IntSet::from([0]), &IntSet::from([1]), 1, 1, &b).is_err());
    }

    #[test]
    fn record_store_truncates_torn_tail() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("records.jsonl");
        let mut store = RecordStore::open(&path).unwrap();
        let rec = scan_ap(2, 1, 24, 8).unwrap();
        store.append(&rec).unwrap();
        store.append(&rec).unwrap();
        let mut f = OpenOptions::new().append(true).open(&path).unwrap();
        f.write_all(b"{\"schema_version\":1,\"k\":").unwrap();
        drop(f);
        let mut store = RecordStore::open(&path).unwrap();
        assert_eq!(store.records().len(), 2);
        store.append(&rec).unwrap();
        let store = RecordStore::open(&path).unwrap();
        assert_eq!(store.records().len(), 3);
        assert!(store.records().iter().all(|r| r.verify().unwrap()));
    }

    #[test]
    fn record_store_rejects_corrupt_middle() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("records.jsonl");
        let rec = serde_json::to_string(&scan_ap(2, 0, 1, 4).unwrap()).unwrap();
        std::fs::write(&path, format!("{rec}\nnot json\n{rec}\n")).unwrap();
        assert!(matches!(RecordStore::open(&path), Err(Error::Parse(_))));
    }
}
