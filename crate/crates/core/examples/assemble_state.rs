// Mix the canonical term states of a three-qubit decomposition with
// instance weights and check the result.
//
// cargo run --example assemble_state

use omega_disentangle::instance::build_instance;
use omega_disentangle::omega::parse_bits_text;
use omega_disentangle::partitions::{enumerate_partitions, CoefficientPolicy};
use omega_disentangle::quantum::{assemble_state, check_state, partial_trace};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inst = build_instance(
        3,
        CoefficientPolicy::TermsOnly,
        &parse_bits_text(b"00001110")?,
    )?;
    let catalog = enumerate_partitions(3)?;
    let assembled = assemble_state(&inst, &catalog)?;
    for term in &assembled.terms {
        let purities = term.block_purities()?;
        println!(
            "{:<12} weight {:<4} block purities {:?}",
            term.partition.to_string(),
            term.weight.to_string(),
            purities
        );
    }
    println!(
        "min pairwise term distance {:.6}",
        assembled.min_term_distance()
    );
    let marginal = partial_trace(&assembled.gamma, &[1])?;
    println!("qubit-1 marginal purity {:.6}", marginal.purity());
    let report = check_state(&assembled.gamma.to_document())?;
    for c in &report.checks {
        println!(
            "{:<20} {:>12.3e} {} {}",
            c.name,
            c.value,
            c.condition,
            if c.pass { "ok" } else { "FAIL" }
        );
    }
    assert!(report.pass);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
