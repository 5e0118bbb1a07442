mod common;

use num_complex::Complex64;
use omega_disentangle::instance::build_instance;
use omega_disentangle::omega::parse_bits_text;
use omega_disentangle::partitions::{enumerate_partitions, CoefficientPolicy};
use omega_disentangle::quantum::{
    assemble_state, canonical_term_ket, canonical_term_state, concurrence, eof_two_qubit,
    partial_trace, partial_transpose, ppt_min_eigenvalue, pure_trace_distance, tensor,
    DensityMatrix,
};

#[test]
fn jacobi_matches_oracle_and_has_small_residuals() {
    let mut rng = common::rng(11);
    for n in 1..=6 {
        for _ in 0..3 {
            let a = common::random_matrix(&mut rng, 1 << n);
            let h = &a + &a.adjoint();
            let eig = h.eigh().unwrap();
            let oracle = common::oracle_eigenvalues(&h);
            for (x, y) in eig.values.iter().zip(&oracle) {
                assert!((x - y).abs() < 1e-10, "n={n}: {x} vs {y}");
            }
            for (k, &lambda) in eig.values.iter().enumerate() {
                let v = eig.vectors.column(k);
                let hv = h.mul_vec(&v);
                let res: f64 = hv
                    .iter()
                    .zip(&v)
                    .map(|(a, b)| (a - b * lambda).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(res <= 1e-9, "residual {res}");
            }
        }
    }
}

#[test]
fn bell_partial_transpose_spectrum() {
    let bell = DensityMatrix::bell_phi_plus();
    let pt = partial_transpose(bell.matrix(), &[2]).unwrap();
    let oracle = common::oracle_eigenvalues(&pt);
    assert!((oracle[0] + 0.5).abs() < 1e-12);
    assert!((pt.min_eigenvalue().unwrap() + 0.5).abs() < 1e-12);
    let mine = pt.eigh().unwrap().values;
    for (a, b) in mine.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn partial_transpose_is_an_involution() {
    let mut rng = common::rng(7);
    for i in 0..100 {
        let n = 2 + i % 3;
        let rho = common::random_density(&mut rng, n);
        let subs: Vec<usize> = (1..=n).filter(|q| (i >> q) & 1 == 1).collect();
        let twice =
            partial_transpose(&partial_transpose(rho.matrix(), &subs).unwrap(), &subs).unwrap();
        assert!(twice.max_abs_diff(rho.matrix()) <= 1e-10);
    }
}

#[test]
fn partial_transpose_of_product_is_product_of_transposes() {
    let mut rng = common::rng(3);
    let a = common::random_density(&mut rng, 1);
    let b = common::random_density(&mut rng, 1);
    let ab = tensor(&a, &b).unwrap();
    let pt = partial_transpose(ab.matrix(), &[2]).unwrap();
    let bt = partial_transpose(b.matrix(), &[1]).unwrap();
    assert!(pt.max_abs_diff(&a.matrix().kron(&bt)) < 1e-15);
    assert!(pt.min_eigenvalue().unwrap() >= -1e-9);
}

#[test]
fn tensor_trace_and_associativity() {
    let mut rng = common::rng(5);
    for _ in 0..20 {
        let a = common::random_density(&mut rng, 1);
        let b = common::random_density(&mut rng, 2);
        let c = common::random_density(&mut rng, 1);
        let ab = tensor(&a, &b).unwrap();
        let tr = ab.matrix().trace();
        assert!((tr - a.matrix().trace() * b.matrix().trace()).norm() < 1e-12);
        let left = tensor(&ab, &c).unwrap();
        let right = tensor(&a, &tensor(&b, &c).unwrap()).unwrap();
        assert!(left.matrix().max_abs_diff(right.matrix()) <= 1e-12);
        assert!(
            partial_trace(&ab, &[1])
                .unwrap()
                .matrix()
                .max_abs_diff(a.matrix())
                < 1e-12
        );
        assert!(
            partial_trace(&left, &[2, 3])
                .unwrap()
                .matrix()
                .max_abs_diff(b.matrix())
                < 1e-12
        );
    }
}

#[test]
fn partial_trace_preserves_trace() {
    let mut rng = common::rng(9);
    for _ in 0..10 {
        let rho = common::random_density(&mut rng, 4);
        for keep in [vec![1], vec![2, 4], vec![1, 3, 4]] {
            let r = partial_trace(&rho, &keep).unwrap();
            assert!((r.matrix().trace().re - 1.0).abs() < 1e-12);
            assert!(DensityMatrix::new(r.into_matrix()).is_ok());
        }
    }
}

#[test]
fn concurrence_is_local_unitary_invariant() {
    let mut rng = common::rng(13);
    for _ in 0..50 {
        let rho = common::random_density(&mut rng, 2);
        let u = common::random_unitary_1q(&mut rng).kron(&common::random_unitary_1q(&mut rng));
        let rotated = DensityMatrix::new(&(&u * rho.matrix()) * &u.adjoint()).unwrap();
        let (c1, c2) = (concurrence(&rho).unwrap(), concurrence(&rotated).unwrap());
        assert!((c1 - c2).abs() <= 1e-8, "{c1} vs {c2}");
        assert!((0.0..=1.0).contains(&c1));
    }
}

#[test]
fn concurrence_matches_pure_state_formula() {
    // For a pure state a|00> + b|01> + c|10> + d|11>, C = 2|ad - bc|.
    let mut rng = common::rng(17);
    for _ in 0..30 {
        let v: Vec<Complex64> = common::random_matrix(&mut rng, 2).entries().to_vec();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let v: Vec<Complex64> = v.iter().map(|z| z / norm).collect();
        let expected = 2.0 * (v[0] * v[3] - v[1] * v[2]).norm();
        let rho = DensityMatrix::from_pure(&v).unwrap();
        assert!((concurrence(&rho).unwrap() - expected).abs() < 1e-7);
    }
}

#[test]
fn separable_mixtures_have_zero_entanglement() {
    let mut rng = common::rng(19);
    for _ in 0..20 {
        let parts: Vec<DensityMatrix> = (0..4)
            .map(|_| {
                let a = DensityMatrix::from_pure(&unit(&mut rng)).unwrap();
                let b = DensityMatrix::from_pure(&unit(&mut rng)).unwrap();
                tensor(&a, &b).unwrap()
            })
            .collect();
        let mix =
            DensityMatrix::mixture(&parts.iter().map(|p| (0.25, p)).collect::<Vec<_>>()).unwrap();
        assert!(ppt_min_eigenvalue(&mix, &[1]).unwrap() >= -1e-9);
        assert!(eof_two_qubit(&mix).unwrap() <= 1e-6);
    }
}

fn unit(rng: &mut rand_chacha::ChaCha8Rng) -> Vec<Complex64> {
    let v = common::random_matrix(rng, 2).column(0);
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter().map(|z| z / norm).collect()
}

#[test]
fn canonical_terms_are_pure_per_block() {
    for n in 2..=5 {
        for p in enumerate_partitions(n).unwrap().iter() {
            let rho = canonical_term_state(&p, n).unwrap();
            assert!((rho.purity() - 1.0).abs() <= 1e-9);
            for block in p.blocks() {
                let r = partial_trace(&rho, block).unwrap();
                assert!((r.purity() - 1.0).abs() <= 1e-9, "{p} block {block:?}");
                if block.len() > 1 {
                    // Entangled inside the block: every single-site marginal is mixed.
                    let single = partial_trace(&rho, &block[..1]).unwrap();
                    assert!((single.purity() - 0.5).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn three_qubit_terms_pairwise_distinct() {
    let catalog = enumerate_partitions(3).unwrap();
    let kets: Vec<_> = catalog
        .iter()
        .map(|p| canonical_term_ket(&p, 3).unwrap())
        .collect();
    assert_eq!(kets.len(), 4);
    for i in 0..4 {
        for j in i + 1..4 {
            assert!(pure_trace_distance(&kets[i], &kets[j]) > 1e-6);
        }
    }
}

#[test]
fn every_three_qubit_instance_assembles_valid_state() {
    let catalog = enumerate_partitions(3).unwrap();
    for v in 1u64..256 {
        let mut b = omega_disentangle::BitString::new();
        b.push_uint(v, 8);
        let src = parse_bits_text(b.to_string().as_bytes()).unwrap();
        let inst = build_instance(3, CoefficientPolicy::TermsOnly, &src).unwrap();
        let st = assemble_state(&inst, &catalog).unwrap();
        let m = st.gamma.matrix();
        assert!(m.hermiticity_error() <= 1e-12);
        assert!((m.trace() - 1.0).norm() <= 1e-12);
        assert!(m.min_eigenvalue().unwrap() >= -1e-9);
    }
}

#[test]
fn larger_assemblies_stay_valid() {
    let approx = omega_disentangle::dovetail(3, 100).unwrap();
    for n in 4..=6 {
        let (s, t) =
            omega_disentangle::instance::instance_shape(n, CoefficientPolicy::TermsOnly).unwrap();
        let bits = omega_disentangle::extract_bits(&approx, s * t as usize).unwrap();
        let inst = build_instance(n, CoefficientPolicy::TermsOnly, &bits).unwrap();
        let st = assemble_state(&inst, &enumerate_partitions(n).unwrap()).unwrap();
        let report = omega_disentangle::quantum::check_state(&st.gamma.to_document()).unwrap();
        assert!(report.pass, "n={n}: {report:?}");
    }
}
