// Turn bits into a coefficient instance, once from a literal bit string
// and once from the halting-probability lower bound.
//
// cargo run --example build_instance

use omega_disentangle::instance::{build_instance, instance_shape};
use omega_disentangle::omega::{extract_bits, parse_bits_text};
use omega_disentangle::partitions::CoefficientPolicy;
use omega_disentangle::Dovetailer;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let src = parse_bits_text(b"00001110")?;
    let inst = build_instance(3, CoefficientPolicy::TermsOnly, &src)?;
    println!(
        "s={} t={} B={:?} K_b={}",
        inst.s, inst.t, inst.coefficients, inst.k_b
    );
    let weights: Vec<String> = inst.weights.iter().map(|w| w.to_string()).collect();
    println!("b = ({})", weights.join(", "));

    let approx = Dovetailer::new(3, 200).run()?;
    for (n, policy) in [
        (3, CoefficientPolicy::TermsOnly),
        (4, CoefficientPolicy::TermsOnly),
        (2, CoefficientPolicy::UniformCaratheodory),
    ] {
        let (s, t) = instance_shape(n, policy)?;
        let bits = extract_bits(&approx, s * t as usize)?;
        match build_instance(n, policy, &bits) {
            Ok(inst) => println!(
                "n={n} {policy}: s={s} t={t} certified={} K_b={}",
                inst.bits_certified, inst.k_b
            ),
            Err(e) => println!("n={n} {policy}: {e}"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
