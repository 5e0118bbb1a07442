// Bound the toy machine's halting probability from below at a few
// frontiers and show how many leading bits are certified at each.
//
// cargo run --example omega_bounds

use omega_disentangle::machine::{kraft_check, Dovetailer};
use omega_disentangle::omega::extract_bits;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>3} {:>5} {:>8} {:>8}  {:<32} stable",
        "K", "S", "halted", "pending", "bits"
    );
    for (level, steps) in [(1, 10), (2, 10), (2, 100), (3, 100), (4, 200)] {
        let approx = Dovetailer::new(level, steps).workers(2).run()?;
        assert!(kraft_check(&approx));
        let bits = extract_bits(&approx, 32)?;
        println!(
            "{level:>3} {steps:>5} {:>8} {:>8}  {:<32} {}",
            approx.halted_count, approx.pending_count, bits.bits, bits.stable_prefix_len
        );
    }
    let approx = Dovetailer::new(1, 10).run()?;
    println!("\nK=1, S=10 lower bound = {}", approx.lower_bound);
    println!("{}", approx.to_json()?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
