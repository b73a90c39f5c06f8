// Sets whose pairwise sums are all squares, and square sums across two
// sets.

use additive_powers::curve::{self, CliqueOptions};
use additive_powers::intset::IntSet;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let triples = curve::square_sum_clique_search(60, 3, CliqueOptions::default())?;
    println!("{} triples up to 60, first {:?}", triples.len(), triples.first());
    let quads = curve::square_sum_clique_search(
        300,
        4,
        CliqueOptions { cap: Some(3), ..Default::default() },
    )?;
    for q in &quads {
        println!("quadruple {q}");
    }

    let a = IntSet::interval(1, 200);
    let b: IntSet = (1..=200).map(|m| 3 * m).collect();
    let e = curve::pair_square_edges(&a, &b);
    println!("{} square sums in A × B, bound {} (ratio {})", e.count, e.bound, e.ratio);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
