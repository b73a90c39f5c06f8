// Representation functions, energies and the Plünnecke-Ruzsa check on a
// small set.

use additive_powers::intset::{self, IntSet, Method, Sign};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a: IntSet = (0..12).map(|m: i64| m * m).collect();
    println!("A = {a}");

    let r = intset::rep_function(&a, &a, Sign::Minus)?;
    println!("|A - A| = {}, r(0) = {}, r(24) = {}", r.len(), r.get(0), r.get(24));

    println!("E(A) = {}", intset::energy(&a, &a)?);
    for k in 3..=4 {
        println!("E_{k}(A) = {}", intset::higher_energy(&a, k)?);
    }
    println!(
        "E_{{3,4}}(A) = {} = E_{{4,3}}(A) = {}",
        intset::mixed_energy(&a, 3, 4)?,
        intset::mixed_energy_with(&a, 4, 3, Method::Naive, 1 << 30)?
    );

    let d = intset::e4_decomposition(&a)?;
    println!(
        "E_4 = {} = triples {} + 6 * pairs {} + 7 * singles {} + |A|^2 {}",
        d.e4, d.triples, d.pairs, d.singles, d.diagonal
    );

    let ratios = intset::structure_ratios(&a)?;
    println!("K = {}, M = {}", ratios.k_ratio, ratios.m_ratio);

    for (n, m) in [(2, 0), (1, 1), (2, 2)] {
        let p = intset::pluennecke_check(&a, n, m)?;
        println!("|{n}A - {m}A| = {} <= {} : {}", p.lhs, p.rhs_decimal, p.holds);
    }

    let popular = intset::popular_energy_sum(&a, 2)?;
    println!(
        "{} popular differences carry E-sum {} against |A|^4/|A-A| = {}",
        popular.popular_size, popular.sum, popular.reference
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
