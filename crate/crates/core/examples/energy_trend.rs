// E(A) for the sets of squares, cubes and fourth powers up to N.

use additive_powers::powers;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for k in 2..=4 {
        for row in powers::energy_experiment(k, &[1_000, 10_000, 100_000])? {
            println!(
                "k = {k}, N = {:>6}: |A| = {:>3}, E(A) = {:>8}, E / |A|^{} = {}",
                row.n, row.set_size, row.energy, row.exponent, row.ratio
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
