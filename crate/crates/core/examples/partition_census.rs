// List the decomposition terms for small N and print the growth table of
// term and coefficient counts.
//
// cargo run --example partition_census

use omega_disentangle::partitions::{enumerate_partitions, growth_table, term_count};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 2..=4 {
        let catalog = enumerate_partitions(n)?;
        let names: Vec<String> = catalog.iter().map(|p| p.to_string()).collect();
        println!("n={n}: {} terms: {}", catalog.len(), names.join(" "));
    }
    for n in 5..=10 {
        let catalog = enumerate_partitions(n)?;
        assert_eq!(num_bigint::BigUint::from(catalog.len()), term_count(n));
    }
    println!();
    print!("{}", growth_table(12, 12)?.to_csv_string()?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
