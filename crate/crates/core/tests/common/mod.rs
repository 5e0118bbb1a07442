#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use omega_disentangle::quantum::{ComplexMatrix, DensityMatrix};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_ish(rng: &mut ChaCha8Rng) -> f64 {
    // Sum of uniforms; plenty for generating generic test matrices.
    (0..4).map(|_| rng.gen::<f64>() - 0.5).sum()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let data = (0..dim * dim)
        .map(|_| Complex64::new(gaussian_ish(rng), gaussian_ish(rng)))
        .collect();
    ComplexMatrix::from_vec(dim, data).unwrap()
}

/// `A A^dagger / tr(A A^dagger)`, generically full rank.
pub fn random_density(rng: &mut ChaCha8Rng, n: usize) -> DensityMatrix {
    let a = random_matrix(rng, 1 << n);
    let m = &a * &a.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale(1.0 / tr)).unwrap()
}

pub fn random_unitary_1q(rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let (a, b, c) = (
        rng.gen::<f64>() * std::f64::consts::TAU,
        rng.gen::<f64>() * std::f64::consts::TAU,
        rng.gen::<f64>() * std::f64::consts::FRAC_PI_2,
    );
    let (cos, sin) = (c.cos(), c.sin());
    let e = |t: f64| Complex64::from_polar(1.0, t);
    ComplexMatrix::from_vec(2, vec![e(a) * cos, e(b) * sin, -e(-b) * sin, e(-a) * cos]).unwrap()
}

/// Eigenvalues from nalgebra's Hermitian solver, ascending.
pub fn oracle_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let d = m.dim();
    let na = DMatrix::from_fn(d, d, |i, j| m[(i, j)]);
    let mut v: Vec<f64> = na.symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}
