mod energies {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/energies.rs"));
}

mod gap_stratification {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gap_stratification.rs"));
}

mod powers_in_progressions {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/powers_in_progressions.rs"));
}

mod energy_trend {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/energy_trend.rs"));
}

mod curve_points {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/curve_points.rs"));
}

mod square_sums {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/square_sums.rs"));
}

mod incidences {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/incidences.rs"));
}

mod sum_product {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sum_product.rs"));
}

mod batch_cli {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/batch_cli.rs"));
}

#[test]
fn energies_example_runs() {
    energies::run_example().unwrap();
}

#[test]
fn gap_stratification_example_runs() {
    gap_stratification::run_example().unwrap();
}

#[test]
fn powers_in_progressions_example_runs() {
    powers_in_progressions::run_example().unwrap();
}

#[test]
fn energy_trend_example_runs() {
    energy_trend::run_example().unwrap();
}

#[test]
fn curve_points_example_runs() {
    curve_points::run_example().unwrap();
}

#[test]
fn square_sums_example_runs() {
    square_sums::run_example().unwrap();
}

#[test]
fn incidences_example_runs() {
    incidences::run_example().unwrap();
}

#[test]
fn sum_product_example_runs() {
    sum_product::run_example().unwrap();
}

#[test]
fn batch_cli_example_runs() {
    batch_cli::run_example().unwrap();
}
