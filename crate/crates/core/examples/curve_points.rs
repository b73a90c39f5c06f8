// Genus and bounded-height points for a few curves y^k = f(x), and a
// census of the sextic family built from three shifts.

use additive_powers::curve::{self, CurveSpec, SearchMode};
use additive_powers::Budgets;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let quintic = CurveSpec::product_of_linear(2, &[1, 2, 3, 4, 5])?;
    println!("y^2 = {:?}: genus {}", quintic.coeffs(), quintic.genus()?);
    let pts = curve::point_search(&quintic, 20, SearchMode::Rational)?;
    println!("{} rational points of height <= 20", pts.points.len());
    for p in pts.points.iter().take(6) {
        println!("  ({}, {})", p.x.0, p.y.0);
    }

    let fermat = CurveSpec::fermat(5, 1)?;
    let pts = curve::point_search(&fermat, 50, SearchMode::Integer)?;
    println!("y^5 = x^5 + 1, genus {}: {} integer points", fermat.genus()?, pts.points.len());

    let census = curve::probe_quadruple_family(-6, 6, 300, &Budgets::default())?;
    println!(
        "{} sextics, most integer points {} at {:?}",
        census.total_triples, census.max_count, census.argmax
    );
    println!("histogram {:?}", census.histogram);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
