//! The batch command surface: argument parsing, report rows and the
//! record store.
//!
//! Every run prints one header line and then one JSON object per result
//! row. Each row carries the full [`RunConfig`], so a row can be replayed
//! on its own. Scan commands append their [`ScanRecord`]s to the record
//! store; stdout never contains timestamps.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::curve::{self, CliqueOptions, CurveSpec, SearchMode};
use crate::error::{Error, Result};
use crate::gap::{self, Gap};
use crate::incidence::{self, PointSet2D};
use crate::intset::{self, IntSet, Method};
use crate::powers::{self, QkCheckpoint, QkParams, RecordStore, ScanRecord};
use crate::sumproduct::{self, ExtremalOptions, Matching};
use crate::Budgets;

/// Environment variable that overrides the default record-store path.
pub const STORE_ENV: &str = "ADDITIVE_POWERS_STORE";
pub const DEFAULT_STORE: &str = "scan_records.jsonl";

#[derive(Clone, Debug, Parser, Serialize)]
#[command(name = "additive-powers", version, about = "Exact additive combinatorics of powers")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub shards: usize,
    #[command(flatten)]
    pub budgets: BudgetArgs,
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    /// Record store path; overrides the environment variable.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub store: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Args, Serialize)]
pub struct BudgetArgs {
    /// Maximum number of enumerated elements.
    #[arg(id = "budget_enumeration", long = "budget-enumeration", global = true, default_value_t = Budgets::default().enumeration)]
    pub enumeration: u64,
    /// Maximum number of pairs formed.
    #[arg(id = "budget_pairs", long = "budget-pairs", global = true, default_value_t = Budgets::default().pairs)]
    pub pairs: u64,
    /// Maximum number of elementary steps.
    #[arg(id = "budget_work", long = "budget-work", global = true, default_value_t = Budgets::default().work)]
    pub work: u64,
}

impl From<BudgetArgs> for Budgets {
    fn from(b: BudgetArgs) -> Self {
        Budgets {
            enumeration: b.enumeration,
            pairs: b.pairs,
            work: b.work,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Naive,
    Convolution,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Naive => Method::Naive,
            MethodArg::Convolution => Method::Convolution,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Integer,
    Rational,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Integer => SearchMode::Integer,
            ModeArg::Rational => SearchMode::Rational,
        }
    }
}

#[derive(Clone, Debug, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// E(A, B), E_k(A), or the trend over sets of k-th powers.
    Energy {
        /// JSON array, e.g. "[0,1,4]".
        #[arg(long)]
        set: Option<IntSet>,
        /// Second set for E(A, B).
        #[arg(long)]
        other: Option<IntSet>,
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Comma-separated N for the trend over {m^k <= N}.
        #[arg(long = "n-values", value_delimiter = ',')]
        n_values: Option<Vec<i64>>,
        #[arg(long, value_enum, default_value_t = MethodArg::Convolution)]
        method: MethodArg,
        /// Add the E_4 decomposition and the ratios K and M.
        #[arg(long)]
        structure: bool,
    },
    /// E_{k,l}(A).
    MixedEnergy {
        #[arg(long)]
        set: IntSet,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Convolution)]
        method: MethodArg,
    },
    /// |nA - mA| against (|A+A|/|A|)^{n+m}|A|; every n + m <= 4 when
    /// n and m are omitted.
    Pluennecke {
        #[arg(long)]
        set: IntSet,
        #[arg(long, requires = "m")]
        n: Option<u32>,
        #[arg(long, requires = "n")]
        m: Option<u32>,
    },
    /// Popular differences and the sum of E_k over them.
    Popular {
        #[arg(long)]
        set: IntSet,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// k-th powers in p, p + r, ..., p + (n-1) r.
    ScanAp {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        n: u64,
    },
    /// k-th powers among the values of a GAP.
    ScanGap {
        #[arg(long)]
        k: u32,
        /// JSON {"base":..,"steps":[..],"lengths":[..]}.
        #[arg(long)]
        gap: Gap,
    },
    /// max over the box of k-th powers in an AP of length n.
    Qk {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        pmax: i64,
        #[arg(long)]
        rmax: i64,
        /// Resumable checkpoint file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Points of bounded height on y^k = f(x).
    CurvePoints {
        /// JSON {"k":..,"coeffs":[..]} with ascending coefficients.
        #[arg(long)]
        curve: CurveSpec,
        #[arg(long)]
        height: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Integer)]
        mode: ModeArg,
    },
    /// Integer points of y^2 = (x^2+α)(x^2+β)(x^2+γ) over a range of
    /// triples.
    ProbeQuadruples {
        #[arg(long)]
        lo: i64,
        #[arg(long)]
        hi: i64,
        #[arg(long)]
        height: u64,
    },
    /// Sets in [1, height] with all pairwise sums square.
    Clique {
        #[arg(long)]
        height: i64,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Solutions of a = bc + d, or the instance built from a GAP.
    Incidence {
        #[arg(long)]
        a: IntSet,
        #[arg(long, required_unless_present = "gap")]
        c: Option<IntSet>,
        /// JSON array of [b,d] pairs.
        #[arg(long, required_unless_present = "gap")]
        l: Option<PointSet2D>,
        /// Declare that the first coordinates are squares.
        #[arg(long)]
        squares_b: bool,
        #[arg(long, conflicts_with_all = ["c", "l"], requires = "m")]
        gap: Option<Gap>,
        /// Shrink factor for the GAP construction.
        #[arg(long)]
        m: Option<u64>,
    },
    /// S, P and G(P, S) of a matching.
    Matching {
        /// JSON array of [a,b] pairs.
        #[arg(long)]
        pairs: Matching,
        /// Check K_{s,t}-freeness and the edge bound.
        #[arg(long, requires = "t")]
        s: Option<usize>,
        #[arg(long, requires = "s")]
        t: Option<usize>,
        /// Report the largest K_{x,t} for this t.
        #[arg(long)]
        biclique_t: Option<usize>,
    },
    /// Search for n pairs with few sums and products.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        radius: i64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 20_000)]
        iterations: u64,
        #[arg(long, default_value_t = 6)]
        exhaustive_max: usize,
    },
    /// Class counts of gcd over I × H'' against the Möbius transform.
    MobiusCheck {
        #[arg(long)]
        i: IntSet,
        #[arg(long)]
        gap: Gap,
        #[arg(long, default_value_t = 12)]
        lmax: u64,
    },
    /// Whether m z lies in 2A - 2A for all m <= d^l, z in Z.
    InclusionCheck {
        #[arg(long)]
        a: IntSet,
        #[arg(long)]
        z: IntSet,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        l: u32,
    },
    /// Replays every record in the store.
    Verify,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Energy { .. } => "energy",
            Command::MixedEnergy { .. } => "mixed-energy",
            Command::Pluennecke { .. } => "pluennecke",
            Command::Popular { .. } => "popular",
            Command::ScanAp { .. } => "scan-ap",
            Command::ScanGap { .. } => "scan-gap",
            Command::Qk { .. } => "qk",
            Command::CurvePoints { .. } => "curve-points",
            Command::ProbeQuadruples { .. } => "probe-quadruples",
            Command::Clique { .. } => "clique",
            Command::Incidence { .. } => "incidence",
            Command::Matching { .. } => "matching",
            Command::Extremal { .. } => "extremal",
            Command::MobiusCheck { .. } => "mobius-check",
            Command::InclusionCheck { .. } => "inclusion-check",
            Command::Verify => "verify",
        }
    }
}

/// Process exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => 3,
        Error::Overflow(_) => 4,
        Error::Precondition(_) | Error::Parse(_) | Error::Unsupported(_) => 5,
        Error::Io(_) | Error::Json(_) => 1,
    }
}

impl RunConfig {
    /// `--store`, then the environment variable, then the default.
    pub fn store_path(&self) -> PathBuf {
        self.store
            .clone()
            .or_else(|| std::env::var_os(STORE_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_STORE))
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

struct Ctx<'a> {
    config: &'a RunConfig,
    budgets: Budgets,
    rows: Vec<Value>,
}

impl Ctx<'_> {
    fn push<T: Serialize>(&mut self, v: &T) -> Result<()> {
        let v = to_value(v)?;
        self.rows.push(match v {
            Value::Object(_) => v,
            other => json!({ "value": other }),
        });
        Ok(())
    }

    fn persist(&mut self, record: &ScanRecord) -> Result<()> {
        let mut store = RecordStore::open(self.config.store_path())?;
        let mut stamped = record.clone();
        stamped.timestamp = Some(now());
        store.append(&stamped)?;
        self.push(record)
    }
}

/// Runs one command, writing the header and rows to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.shards)
        .build()
        .map_err(|e| Error::precondition(format!("thread pool: {e}")))?;
    let mut ctx = Ctx {
        config,
        budgets: config.budgets.into(),
        rows: Vec::new(),
    };
    let outcome = pool.install(|| execute(&mut ctx));
    write_rows(config, &ctx.rows, out)?;
    outcome
}

fn execute(ctx: &mut Ctx) -> Result<()> {
    let budgets = ctx.budgets;
    match ctx.config.command.clone() {
        Command::Energy {
            set,
            other,
            k,
            n_values,
            method,
            structure,
        } => {
            if let Some(ns) = n_values {
                for row in powers::energy_experiment(k, &ns)? {
                    ctx.push(&row)?;
                }
                return Ok(());
            }
            let a = set.ok_or_else(|| Error::precondition("energy needs --set or --n-values"))?;
            let value = match (&other, k) {
                (Some(b), 2) => intset::energy_with(&a, b, method.into())?,
                (Some(_), _) => {
                    return Err(Error::precondition("--other is only defined for k = 2"))
                }
                (None, _) => intset::higher_energy_with(&a, k, method.into())?,
            };
            let mut row = json!({
                "k": k,
                "set_size": a.len(),
                "energy": to_value(&value)?,
                "method": to_value(&Method::from(method))?,
            });
            if structure {
                row["structure"] = to_value(&intset::structure_ratios(&a)?)?;
                row["e4_decomposition"] = to_value(&intset::e4_decomposition(&a)?)?;
            }
            ctx.push(&row)
        }
        Command::MixedEnergy { set, k, l, method } => {
            let r = intset::energy_report(&set, k, l, method.into(), budgets.work)?;
            ctx.push(&r)
        }
        Command::Pluennecke { set, n, m } => {
            let pairs: Vec<(u32, u32)> = match (n, m) {
                (Some(n), Some(m)) => vec![(n, m)],
                _ => (1..=4u32)
                    .flat_map(|s| (0..=s).map(move |n| (n, s - n)))
                    .collect(),
            };
            for (n, m) in pairs {
                ctx.push(&intset::pluennecke_check(&set, n, m)?)?;
            }
            Ok(())
        }
        Command::Popular { set, k } => {
            let mut row = to_value(&intset::popular_energy_sum(&set, k)?)?;
            row["popular"] = to_value(&intset::popular_differences(&set)?)?;
            row["difference_triples"] = to_value(&intset::count_difference_triples(&set)?)?;
            ctx.push(&row)
        }
        Command::ScanAp { k, p, r, n } => {
            let rec = powers::scan_ap(k, p, r, n)?;
            ctx.persist(&rec)
        }
        Command::ScanGap { k, gap } => ctx.push(&powers::scan_gap(k, &gap, &budgets)?),
        Command::Qk {
            k,
            n,
            pmax,
            rmax,
            checkpoint,
        } => {
            let params = QkParams { k, n, pmax, rmax };
            let resume = match &checkpoint {
                Some(path) => QkCheckpoint::load(path)?,
                None => None,
            };
            let rec = powers::qk_scan(params, resume, &budgets, |state| match &checkpoint {
                Some(path) => state.save(path),
                None => Ok(()),
            })?;
            ctx.persist(&rec)
        }
        Command::CurvePoints { curve, height, mode } => {
            let list = curve::point_search(&curve, height, mode.into())?;
            let genus = match curve.genus() {
                Ok(g) => json!(g),
                Err(Error::Unsupported(why)) => json!({ "unsupported": why }),
                Err(e) => return Err(e),
            };
            ctx.push(&json!({
                "curve": to_value(&curve)?,
                "genus": genus,
                "height": height,
                "mode": to_value(&list.mode)?,
                "count": list.points.len(),
                "points": to_value(&list.points)?,
            }))
        }
        Command::ProbeQuadruples { lo, hi, height } => {
            let census = curve::probe_quadruple_family(lo, hi, height, &budgets)?;
            for row in &census.rows {
                ctx.push(row)?;
            }
            ctx.push(&json!({
                "summary": true,
                "height": census.height,
                "total_triples": census.total_triples,
                "histogram": to_value(&census.histogram)?,
                "max_count": census.max_count,
                "argmax": to_value(&census.argmax)?,
            }))
        }
        Command::Clique { height, size, cap } => {
            let opts = CliqueOptions {
                cap,
                node_budget: budgets.work,
            };
            let found = curve::square_sum_clique_search(height, size, opts)?;
            ctx.push(&json!({
                "height": height,
                "size": size,
                "count": found.len(),
                "cliques": to_value(&found)?,
            }))
        }
        Command::Incidence {
            a,
            c,
            l,
            squares_b,
            gap,
            m,
        } => {
            if let Some(gap) = gap {
                let inst = incidence::gap_incidence(&a, &gap, m.unwrap_or(1), &budgets)?;
                let sigma = incidence::count_solutions(&inst.a, &inst.c, &inst.l);
                let report = incidence::bound_report(&inst.a, &inst.c, &inst.l, false);
                ctx.push(&json!({
                    "lambda": inst.lambda,
                    "m": inst.m,
                    "a_in_gap": inst.a.len(),
                    "q_size": inst.c.len(),
                    "i_size": inst.i.len(),
                    "expected": inst.expected,
                    "sigma": sigma,
                    "exact": sigma == inst.expected,
                    "report": to_value(&report)?,
                }))?;
                for row in incidence::gap_incidence_classes(&inst) {
                    ctx.push(&row)?;
                }
                return Ok(());
            }
            let (c, l) = (c.unwrap_or_default(), l.unwrap_or_default());
            ctx.push(&incidence::bound_report(&a, &c, &l, squares_b))
        }
        Command::Matching {
            pairs,
            s,
            t,
            biclique_t,
        } => {
            let sp = sumproduct::sums_products(&pairs)?;
            let g = sumproduct::sp_graph(&pairs)?;
            let mut row = json!({
                "n": pairs.len(),
                "S": to_value(&sp.s)?,
                "P": to_value(&sp.p)?,
                "graph": to_value(&sumproduct::graph_summary(&g)?)?,
                "edges_at_least_half_n": 2 * g.edge_count() >= pairs.len(),
                "discriminants_square": sumproduct::discriminants_are_squares(&g),
                "holder": to_value(&sumproduct::holder_chain_check(&pairs)?)?,
            });
            if let (Some(s), Some(t)) = (s, t) {
                let free = sumproduct::kst_free(&g, s, t, budgets.work)?;
                row["kst_free"] = json!(free);
                if free {
                    row["kst_bound"] = to_value(&sumproduct::kst_bound(&g, s, t, budgets.work)?)?;
                }
            }
            if let Some(t) = biclique_t {
                row["biclique"] = to_value(&sumproduct::largest_biclique(&g, t, budgets.work)?)?;
            }
            ctx.push(&row)
        }
        Command::Extremal {
            n,
            radius,
            restarts,
            iterations,
            exhaustive_max,
        } => {
            let opts = ExtremalOptions {
                radius,
                seed: ctx.config.seed,
                restarts,
                iterations,
                budget: budgets.work,
                exhaustive_max,
            };
            ctx.push(&sumproduct::extremal_search(n, &opts)?)
        }
        Command::MobiusCheck { i, gap, lmax } => {
            for row in gap::mobius_identity_range(&i, &gap, lmax, &budgets)? {
                ctx.push(&row)?;
            }
            Ok(())
        }
        Command::InclusionCheck { a, z, d, l } => {
            ctx.push(&powers::multiplicative_inclusion_check(&a, &z, d, l, &budgets)?)
        }
        Command::Verify => {
            let store = RecordStore::open(ctx.config.store_path())?;
            let mut failed = 0;
            for (index, rec) in store.records().iter().enumerate() {
                let replayed = rec.replay()?;
                failed += usize::from(replayed != rec.best_count);
                ctx.push(&json!({
                    "index": index,
                    "k": rec.k,
                    "n": rec.n,
                    "witness": to_value(&rec.witness)?,
                    "best_count": rec.best_count,
                    "replayed": replayed,
                    "ok": replayed == rec.best_count,
                }))?;
            }
            if failed > 0 {
                return Err(Error::precondition(format!("{failed} records did not replay")));
            }
            Ok(())
        }
    }
}

fn write_rows(config: &RunConfig, rows: &[Value], out: &mut dyn Write) -> Result<()> {
    let cfg = to_value(config)?;
    let command = config.command.name();
    let decorate = |row: &Value| {
        let mut m = Map::new();
        m.insert("command".into(), json!(command));
        m.insert("seed".into(), json!(config.seed));
        if let Value::Object(fields) = row {
            for (k, v) in fields {
                m.insert(k.clone(), v.clone());
            }
        }
        m.insert("config".into(), cfg.clone());
        m
    };
    match config.format {
        Format::Jsonl => {
            let header = json!({
                "header": {
                    "tool": env!("CARGO_PKG_NAME"),
                    "version": env!("CARGO_PKG_VERSION"),
                    "seed": config.seed,
                    "config": cfg,
                }
            });
            writeln!(out, "{header}")?;
            for row in rows {
                writeln!(out, "{}", Value::Object(decorate(row)))?;
            }
        }
        Format::Csv => {
            let decorated: Vec<Map<String, Value>> = rows.iter().map(decorate).collect();
            let mut columns: Vec<String> = vec!["command".into(), "seed".into()];
            let mut seen: BTreeSet<String> = columns.iter().cloned().collect();
            for row in &decorated {
                for k in row.keys() {
                    if seen.insert(k.clone()) {
                        columns.push(k.clone());
                    }
                }
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&columns).map_err(csv_error)?;
            for row in &decorated {
                let cells = columns.iter().map(|c| match row.get(c) {
                    None | Some(Value::Null) => String::new(),
                    Some(Value::String(s)) => s.clone(),
                    Some(v) => v.to_string(),
                });
                w.write_record(cells).map_err(csv_error)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            out.write_all(&bytes)?;
        }
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Parses process arguments and runs; returns the exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // help and version requests are not usage errors
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return e.exit_code();
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match run(&config, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
