use num_traits::One;
use omega_disentangle::bits::BitString;
use omega_disentangle::instance::{
    build_instance, chunk, chunk_width, concat_chunks, ChaitinInstance,
};
use omega_disentangle::omega::parse_bits_text;
use omega_disentangle::partitions::CoefficientPolicy;
use omega_disentangle::Error;
use proptest::prelude::*;

fn bitstring(bits: &[bool]) -> BitString {
    BitString::from_bools(bits.to_vec())
}

proptest! {
    #[test]
    fn chunking_round_trips(
        (t, bits) in (prop::sample::select(vec![2usize, 4, 8]), 1u32..=4)
            .prop_flat_map(|(s, t)| (Just(t), prop::collection::vec(any::<bool>(), s * t as usize)))
    ) {
        let b = bitstring(&bits);
        let values = chunk(&b, t);
        prop_assert_eq!(values.len() * t as usize, bits.len());
        prop_assert!(values.iter().all(|&v| v < (1 << t)));
        prop_assert_eq!(concat_chunks(&values, t), b);
    }

    #[test]
    fn built_instances_satisfy_invariants(bits in prop::collection::vec(any::<bool>(), 8..40)) {
        let text: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        let src = parse_bits_text(text.as_bytes()).unwrap();
        match build_instance(3, CoefficientPolicy::TermsOnly, &src) {
            Ok(inst) => {
                prop_assert_eq!(inst.bits.len(), 8);
                prop_assert_eq!(inst.bits.clone(), src.bits.prefix(8));
                prop_assert_eq!(concat_chunks(&inst.coefficients, inst.t), inst.bits.clone());
                prop_assert!(inst.weight_sum().is_one());
                prop_assert_eq!(inst.k_b, inst.coefficients.iter().sum::<u64>());
                let again = build_instance(3, CoefficientPolicy::TermsOnly, &src).unwrap();
                prop_assert_eq!(&again, &inst);
                prop_assert_eq!(ChaitinInstance::from_json(&inst.to_json().unwrap()).unwrap(), inst);
            }
            Err(Error::AllZeroCoefficients) => prop_assert!(bits[..8].iter().all(|&b| !b)),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

#[test]
fn chunk_width_is_ceiling_log2() {
    for s in 1u64..=4096 {
        let t = chunk_width(s).unwrap();
        let expected = if s == 1 {
            1
        } else {
            (s as f64).log2().ceil() as u32
        };
        assert_eq!(t, expected, "s={s}");
        assert!((1u64 << t) >= s);
    }
}

#[test]
fn shapes_for_growing_n() {
    let approx = omega_disentangle::dovetail(2, 100).unwrap();
    for (n, policy, s, t) in [
        (2, CoefficientPolicy::TermsOnly, 1, 1),
        (4, CoefficientPolicy::TermsOnly, 14, 4),
        (5, CoefficientPolicy::TermsOnly, 51, 6),
        (3, CoefficientPolicy::UniformCaratheodory, 256, 8),
    ] {
        let need = s * t as usize;
        let bits = omega_disentangle::extract_bits(&approx, need).unwrap();
        match build_instance(n, policy, &bits) {
            Ok(inst) => {
                assert_eq!((inst.s, inst.t, inst.bits.len()), (s, t, need));
                assert!(inst.coefficients.iter().all(|&b| b < (1 << t)));
            }
            Err(Error::AllZeroCoefficients) => {}
            Err(e) => panic!("n={n}: {e}"),
        }
    }
}
