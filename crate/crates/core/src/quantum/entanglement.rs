//! Two-qubit entanglement measures and the partial-transpose test.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::state::{partial_transpose, DensityMatrix};
use crate::error::{Error, Result};

/// Smallest eigenvalue of `rho` partially transposed on `split`.
///
/// For two qubits this is nonnegative (to numerical tolerance) exactly when
/// the state is separable.
pub fn ppt_min_eigenvalue(rho: &DensityMatrix, split: &[usize]) -> Result<f64> {
    if split.is_empty() || split.len() >= rho.n() {
        return Err(Error::InvalidSubsystem(format!(
            "{split:?} is not one side of a bipartition of {} qubits",
            rho.n()
        )));
    }
    partial_transpose(rho.matrix(), split)?.min_eigenvalue()
}

fn sigma_y_sigma_y() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    m[(0, 3)] = Complex64::new(-1.0, 0.0);
    m[(1, 2)] = Complex64::new(1.0, 0.0);
    m[(2, 1)] = Complex64::new(1.0, 0.0);
    m[(3, 0)] = Complex64::new(-1.0, 0.0);
    m
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.n() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "expected a two-qubit state, got {} qubits",
            rho.n()
        )));
    }
    Ok(())
}

/// Wootters concurrence. The `lambda_i` are the square roots of the
/// eigenvalues of `sqrt(rho) rho~ sqrt(rho)`, which equal those of
/// `rho rho~` but come from a Hermitian problem.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let yy = sigma_y_sigma_y();
    let flipped = &(&yy * &rho.matrix().conj()) * &yy;
    let sqrt_rho = rho.matrix().eigh()?.map(|x| x.max(0.0).sqrt());
    let r = &(&sqrt_rho * &flipped) * &sqrt_rho;
    let mut lambdas: Vec<f64> = r
        .eigh()?
        .values
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0))
}

/// Binary entropy in bits, with `0 log 0 = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy((1.0 + (1.0 - c * c).sqrt()) / 2.0)
}

/// Entanglement of formation of a two-qubit state.
pub fn eof_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence(rho)?))
}

/// `1/2 sum |eig(a - b)|`.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(
            "trace distance of different sizes".into(),
        ));
    }
    Ok(0.5 * (a - b).eigh()?.values.iter().map(|x| x.abs()).sum::<f64>())
}

/// Trace distance between pure states, `sqrt(1 - |<psi|phi>|^2)`.
pub fn pure_trace_distance(psi: &[Complex64], phi: &[Complex64]) -> f64 {
    let overlap: Complex64 = psi.iter().zip(phi).map(|(a, b)| a.conj() * b).sum();
    (1.0 - overlap.norm_sqr()).max(0.0).sqrt()
}
