//! Density matrices on `n` qubits. Qubit 1 is the leftmost tensor factor,
//! i.e. the most significant bit of a basis index.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Largest qubit count any operation here will build.
pub const DEFAULT_QUBIT_CAP: usize = 6;

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let n = matrix
            .qubits()
            .ok_or_else(|| Error::InvalidState(format!("dimension {} is not 2^n", matrix.dim())))?;
        if n > DEFAULT_QUBIT_CAP {
            return Err(Error::cap("qubits", n, DEFAULT_QUBIT_CAP));
        }
        let herm = matrix.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("hermiticity error {herm:e}")));
        }
        let tr = (matrix.trace() - 1.0).norm();
        if tr > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace error {tr:e}")));
        }
        let min = matrix.min_eigenvalue()?;
        if min < -PSD_TOL {
            return Err(Error::InvalidState(format!("minimum eigenvalue {min:e}")));
        }
        Ok(Self { n, matrix })
    }

    pub(crate) fn new_unchecked(n: usize, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.dim(), 1 << n);
        Self { n, matrix }
    }

    /// `|psi><psi|` for a normalized state vector.
    pub fn from_pure(ket: &[Complex64]) -> Result<Self> {
        let norm: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "state vector norm^2 is {norm}"
            )));
        }
        Self::new(ComplexMatrix::outer(ket))
    }

    /// Computational basis projector `|i><i|` on `n` qubits.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        let mut ket = vec![Complex64::new(0.0, 0.0); 1 << n];
        *ket.get_mut(index)
            .ok_or_else(|| Error::InvalidArgument(format!("basis index {index} out of range")))? =
            Complex64::new(1.0, 0.0);
        Self::from_pure(&ket)
    }

    /// `(|00> + |11>) / sqrt 2`.
    pub fn bell_phi_plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        let a = Complex64::new(h, 0.0);
        Self::new_unchecked(2, ComplexMatrix::outer(&[a, z, z, a]))
    }

    pub fn maximally_mixed(n: usize) -> Self {
        Self::new_unchecked(
            n,
            ComplexMatrix::identity(1 << n).scale(1.0 / (1 << n) as f64),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Convex combination `sum w_i rho_i`, accumulated in order.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
        let mut acc = ComplexMatrix::zeros(first.1.dim());
        for (w, rho) in parts {
            if rho.n != first.1.n {
                return Err(Error::DimensionMismatch(
                    "mixture of different sizes".into(),
                ));
            }
            acc = &acc + &rho.matrix.scale(*w);
        }
        Self::new(acc)
    }

    pub fn to_document(&self) -> StateDocument {
        StateDocument::from_matrix(&self.matrix)
    }
}

pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    tensor_capped(a, b, DEFAULT_QUBIT_CAP)
}

pub fn tensor_capped(a: &DensityMatrix, b: &DensityMatrix, cap: usize) -> Result<DensityMatrix> {
    let n = a.n + b.n;
    if n > cap {
        return Err(Error::cap("qubits", n, cap));
    }
    Ok(DensityMatrix::new_unchecked(n, a.matrix.kron(&b.matrix)))
}

fn check_subsystems(n: usize, subsystems: &[usize]) -> Result<Vec<usize>> {
    let mut s = subsystems.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != subsystems.len() {
        return Err(Error::InvalidSubsystem(format!(
            "repeated subsystem in {subsystems:?}"
        )));
    }
    if let Some(bad) = s.iter().find(|&&q| q == 0 || q > n) {
        return Err(Error::InvalidSubsystem(format!(
            "subsystem {bad} outside 1..={n}"
        )));
    }
    Ok(s)
}

/// Bit position (from the least significant end) of 1-based qubit `q`.
fn shift(n: usize, q: usize) -> usize {
    n - q
}

/// Reduced state on `keep`; kept qubits stay in ascending order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n;
    let keep = check_subsystems(n, keep)?;
    if keep.is_empty() {
        return Err(Error::InvalidSubsystem(
            "must keep at least one subsystem".into(),
        ));
    }
    let traced: Vec<usize> = (1..=n).filter(|q| !keep.contains(q)).collect();
    let embed = |kept: usize, env: usize| -> usize {
        let mut idx = 0usize;
        for (i, &q) in keep.iter().enumerate() {
            let bit = (kept >> (keep.len() - 1 - i)) & 1;
            idx |= bit << shift(n, q);
        }
        for (i, &q) in traced.iter().enumerate() {
            let bit = (env >> (traced.len() - 1 - i)) & 1;
            idx |= bit << shift(n, q);
        }
        idx
    };
    let dk = 1usize << keep.len();
    let de = 1usize << traced.len();
    let mut out = ComplexMatrix::zeros(dk);
    for r in 0..dk {
        for c in 0..dk {
            let mut acc = Complex64::new(0.0, 0.0);
            for e in 0..de {
                acc += rho.matrix[(embed(r, e), embed(c, e))];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(DensityMatrix::new_unchecked(keep.len(), out))
}

/// Transpose the chosen tensor factors of an `n`-qubit operator.
pub fn partial_transpose(m: &ComplexMatrix, subsystems: &[usize]) -> Result<ComplexMatrix> {
    let n = m
        .qubits()
        .ok_or_else(|| Error::DimensionMismatch(format!("dimension {} is not 2^n", m.dim())))?;
    let subs = check_subsystems(n, subsystems)?;
    let mask: usize = subs.iter().map(|&q| 1usize << shift(n, q)).sum();
    let d = m.dim();
    let mut out = ComplexMatrix::zeros(d);
    for r in 0..d {
        for c in 0..d {
            // Swap the masked bits between row and column index.
            let swap = (r ^ c) & mask;
            out[(r ^ swap, c ^ swap)] = m[(r, c)];
        }
    }
    Ok(out)
}

/// Serialized operator: `entries` is row-major `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDocument {
    pub n: usize,
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl StateDocument {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            n: m.qubits().unwrap_or(0),
            dim: m.dim(),
            entries: m.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// Rebuild the matrix without checking density-matrix invariants.
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.dim != 1usize.checked_shl(self.n as u32).unwrap_or(0) {
            return Err(Error::schema(
                "dim",
                format!("{} is not 2^{}", self.dim, self.n),
            ));
        }
        if self.entries.len() != self.dim * self.dim {
            return Err(Error::schema(
                "entries",
                format!("{} entries for dim {}", self.entries.len(), self.dim),
            ));
        }
        ComplexMatrix::from_vec(
            self.dim,
            self.entries
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::schema("document", e.to_string()))
    }
}
