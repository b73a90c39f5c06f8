// Solutions of a = bc + d with A a set of squares, and the instance
// obtained from a GAP.

use additive_powers::gap::Gap;
use additive_powers::incidence::{self, PointSet2D};
use additive_powers::intset::IntSet;
use additive_powers::powers::kth_powers_in;
use additive_powers::Budgets;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = kth_powers_in(1, 10_000, 2)?;
    let c = IntSet::interval(1, 30);
    let l = PointSet2D::product(&IntSet::interval(1, 12), &IntSet::interval(-20, 20));
    let r = incidence::bound_report(&a, &c, &l, false);
    println!(
        "σ = {}, τ = {}, σ / bound56 = {}, σ / bound34 = {}",
        r.sigma, r.tau, r.ratio56, r.ratio34
    );

    let h = Gap::new(0, vec![6, 20], vec![60, 30])?;
    let inst = incidence::gap_incidence(&kth_powers_in(0, 4_000, 2)?, &h, 5, &Budgets::default())?;
    let sigma = incidence::count_solutions(&inst.a, &inst.c, &inst.l);
    println!(
        "λ = {}: σ = {} = |A'||Q||I| = {}",
        inst.lambda, sigma, inst.expected
    );
    for row in incidence::gap_incidence_classes(&inst).iter().take(5) {
        println!("  class l = {}: {} pairs, σ = {}, ratio {}", row.l, row.size, row.sigma, row.ratio34);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
