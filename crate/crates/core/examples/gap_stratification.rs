// A two-dimensional GAP: properness, residues modulo l, and the gcd
// classes of I × H'' against their Möbius sums.

use additive_powers::gap::{self, Gap};
use additive_powers::intset::IntSet;
use additive_powers::Budgets;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let budgets = Budgets::default();
    let h = Gap::new(6, vec![4, 34], vec![12, 6])?;
    println!("H = {h:?}, proper: {}", h.is_proper(&budgets)?);

    let parts = h.split_for_double_properness(&budgets)?;
    let good = parts.iter().filter(|p| p.doubling_proper).count();
    println!("{} parts, {good} with H + H proper", parts.len());

    let norm = h.gcd_normalize();
    println!("λ = {}, H'' = {:?}", norm.lambda, norm.primed);

    for l in [2, 3, 6, 7] {
        let r = norm.primed.residue_error_report(l)?;
        println!(
            "l = {l}: {} solutions, main term {}, error {}",
            r.count, r.main_term, r.error
        );
    }

    let i: IntSet = (1..=9).map(|m: i64| m * m).collect();
    let strat = gap::stratify(&i, &h, &budgets)?;
    println!("classes: {:?}", strat.classes);
    for row in gap::mobius_identity_range(&i, &h, 6, &budgets)? {
        println!("|L_{}| = {} = {}", row.l, row.direct, row.transformed);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
