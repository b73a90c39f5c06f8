// Sums and products along a matching, K_{s,t} checks, and a seeded
// search for matchings with few sums and products.

use additive_powers::sumproduct::{self, ExtremalOptions, Matching};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pairs: Vec<(i64, i64)> = (1..=6)
        .flat_map(|a| (1..=6).map(move |b| (1 << a, 1 << b)))
        .collect();
    let m = Matching::new(pairs)?;
    let sp = sumproduct::sums_products(&m)?;
    println!("n = {}, |S| = {}, |P| = {}", m.len(), sp.s.len(), sp.p.len());

    let g = sumproduct::sp_graph(&m)?;
    println!("{:?}", sumproduct::graph_summary(&g)?);
    println!("discriminants square: {}", sumproduct::discriminants_are_squares(&g));
    let h = sumproduct::holder_chain_check(&m)?;
    println!("Hölder: {} <= {} ({})", h.lhs, h.rhs, h.holds);

    let biclique = sumproduct::largest_biclique(&g, 3, 1 << 30)?;
    println!("largest K_{{s,3}}: s = {}", biclique.s);
    if sumproduct::kst_free(&g, 2, 2, 1 << 30)? {
        let b = sumproduct::kst_bound(&g, 2, 2, 1 << 30)?;
        println!("K_{{2,2}}-free, {} edges <= {}", b.edges, b.bound);
    }

    for n in [3, 12] {
        let opts = ExtremalOptions { radius: 12, seed: 7, iterations: 5_000, ..Default::default() };
        let r = sumproduct::extremal_search(n, &opts)?;
        println!("n = {n} ({:?}): |P| + |S| = {} with {:?}", r.kind, r.score, r.best.pairs());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
