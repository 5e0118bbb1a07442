// Concurrence, entanglement of formation and the partial-transpose test
// along the Werner family `(1-p) I/4 + p |Phi+><Phi+|`.
//
// cargo run --example two_qubit_entanglement

use omega_disentangle::quantum::{concurrence, eof_two_qubit, ppt_min_eigenvalue, DensityMatrix};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>5} {:>12} {:>12} {:>12}",
        "p", "ppt_min", "concurrence", "eof"
    );
    for i in 0..=12 {
        let p = f64::from(i) / 12.0;
        let rho = DensityMatrix::mixture(&[
            (1.0 - p, &DensityMatrix::maximally_mixed(2)),
            (p, &DensityMatrix::bell_phi_plus()),
        ])?;
        println!(
            "{p:>5.3} {:>12.6} {:>12.6} {:>12.6}",
            ppt_min_eigenvalue(&rho, &[2])?,
            concurrence(&rho)?,
            eof_two_qubit(&rho)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
