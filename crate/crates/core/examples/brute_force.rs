// Recover a tiny instance's coefficients through an equality oracle, then
// print how the search space grows with N.
//
// cargo run --example brute_force

use omega_disentangle::instance::build_instance;
use omega_disentangle::omega::parse_bits_text;
use omega_disentangle::partitions::CoefficientPolicy;
use omega_disentangle::solver::{
    brute_force, growth_benchmark, write_growth_csv, BenchSource, EqualityOracle, SearchOptions,
};
use omega_disentangle::Dovetailer;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inst = build_instance(
        3,
        CoefficientPolicy::TermsOnly,
        &parse_bits_text(b"00001110")?,
    )?;
    let oracle = EqualityOracle::new(inst.coefficients.clone());
    let sol = brute_force(inst.s, inst.t, &oracle, &SearchOptions::default())?;
    println!(
        "found {:?} after {} of {} candidates",
        sol.coefficients, sol.stats.candidates_tested, sol.stats.space_size
    );

    let approx = Dovetailer::new(2, 100).run()?;
    let rows = growth_benchmark(
        2,
        8,
        CoefficientPolicy::TermsOnly,
        &BenchSource::Approx(approx),
        &SearchOptions::default(),
    )?;
    for r in &rows {
        println!(
            "n={} s={} t={} bits={} space=2^{} {}",
            r.n,
            r.s,
            r.t,
            r.bits_read,
            r.space_exponent,
            r.searched.as_str()
        );
    }
    let mut csv = Vec::new();
    write_growth_csv(&rows[..3], &mut csv)?;
    print!("{}", String::from_utf8(csv)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
