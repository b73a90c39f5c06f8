// Counting squares in progressions, a resumable Q_2 scan with a
// checkpoint file, and the record store.

use additive_powers::gap::Gap;
use additive_powers::powers::{self, QkCheckpoint, QkParams, RecordStore};
use additive_powers::Budgets;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("squares in 1 + 24j, j < 8: {}", powers::count_in_ap(2, 1, 24, 8)?);

    let dir = std::env::temp_dir().join(format!("additive-powers-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let ckpt = dir.join("qk.ckpt");
    let params = QkParams { k: 2, n: 5, pmax: 1500, rmax: 1500 };
    let resume = QkCheckpoint::load(&ckpt)?;
    let rec = powers::qk_scan(params, resume, &Budgets::default(), |state| {
        println!("  checkpoint at cell {}", state.next_cell);
        state.save(&ckpt)
    })?;
    println!(
        "Q_2(5) over the box: {} at p = {}, r = {} (ratio to N^{} = {})",
        rec.best_count, rec.witness.p, rec.witness.r, rec.bound_exponent, rec.bound_ratio
    );

    let mut store = RecordStore::open(dir.join("records.jsonl"))?;
    store.append(&rec)?;
    store.append(&powers::scan_ap(3, 1, 7, 20)?)?;
    for r in store.records() {
        println!("record k = {}, N = {}, replays: {}", r.k, r.n, r.verify()?);
    }

    let g = Gap::new(1, vec![3, 8], vec![40, 25])?;
    let scan = powers::scan_gap(2, &g, &Budgets::default())?;
    println!("{} squares among {} GAP values", scan.count, scan.size);

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
