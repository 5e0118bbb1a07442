//! Canonical decomposition terms and assembly of the mixed state whose
//! weights come from a coefficient instance.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::entanglement::{
    concurrence, eof_from_concurrence, ppt_min_eigenvalue, pure_trace_distance,
};
use super::matrix::ComplexMatrix;
use super::state::{
    partial_trace, DensityMatrix, StateDocument, DEFAULT_QUBIT_CAP, HERMITIAN_TOL, PSD_TOL,
    TRACE_TOL,
};
use crate::error::{Error, Result};
use crate::instance::ChaitinInstance;
use crate::partitions::{CoefficientPolicy, PartitionCatalog, SetPartition};

/// Minimum pairwise trace distance required between term states.
pub const DISTINCTNESS_TOL: f64 = 1e-6;
/// Purity tolerance for a term state and its block reductions.
pub const PURITY_TOL: f64 = 1e-9;
/// Largest two-qubit entanglement of formation accepted for an assembled state.
pub const EOF_TOL: f64 = 1e-6;

/// State vector of the canonical representative for `partition`: `|0>` on
/// every singleton, `(|0..0> + |1..1>)/sqrt 2` on every larger block.
pub fn canonical_term_ket(partition: &SetPartition, n: usize) -> Result<Vec<Complex64>> {
    if partition.n() != n {
        return Err(Error::InvalidPartition(format!(
            "{partition} is not a partition of 1..={n}"
        )));
    }
    if n > DEFAULT_QUBIT_CAP {
        return Err(Error::cap("qubits", n, DEFAULT_QUBIT_CAP));
    }
    let masks: Vec<(usize, usize)> = partition
        .blocks()
        .iter()
        .map(|b| (b.iter().map(|&q| 1usize << (n - q)).sum(), b.len()))
        .collect();
    let amplitude: f64 = masks
        .iter()
        .filter(|(_, len)| *len > 1)
        .map(|_| std::f64::consts::FRAC_1_SQRT_2)
        .product();
    Ok((0..1usize << n)
        .map(|idx| {
            let allowed = masks.iter().all(|&(mask, len)| {
                let bits = idx & mask;
                bits == 0 || (len > 1 && bits == mask)
            });
            Complex64::new(if allowed { amplitude } else { 0.0 }, 0.0)
        })
        .collect())
}

pub fn canonical_term_state(partition: &SetPartition, n: usize) -> Result<DensityMatrix> {
    DensityMatrix::from_pure(&canonical_term_ket(partition, n)?)
}

#[derive(Debug, Clone)]
pub struct DecompositionTerm {
    pub partition: SetPartition,
    pub ket: Vec<Complex64>,
    pub state: DensityMatrix,
    pub weight: BigRational,
}

impl DecompositionTerm {
    /// Reduction onto each block is pure.
    pub fn block_purities(&self) -> Result<Vec<f64>> {
        self.partition
            .blocks()
            .iter()
            .map(|b| Ok(partial_trace(&self.state, b)?.purity()))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct AssembledState {
    pub instance: ChaitinInstance,
    pub terms: Vec<DecompositionTerm>,
    pub gamma: DensityMatrix,
}

impl AssembledState {
    pub fn weight_sum(&self) -> BigRational {
        self.terms.iter().map(|t| &t.weight).sum()
    }

    /// Smallest pairwise trace distance among the term states.
    pub fn min_term_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.terms.iter().enumerate() {
            for b in &self.terms[i + 1..] {
                best = best.min(pure_trace_distance(&a.ket, &b.ket));
            }
        }
        best
    }
}

pub fn assemble_state(
    instance: &ChaitinInstance,
    catalog: &PartitionCatalog,
) -> Result<AssembledState> {
    if instance.policy != CoefficientPolicy::TermsOnly {
        return Err(Error::PolicyUnsupported(format!(
            "assembly needs one weight per term; {} assigns several",
            instance.policy
        )));
    }
    if catalog.n() != instance.n || catalog.len() != instance.s {
        return Err(Error::DimensionMismatch(format!(
            "instance has n={} s={}, catalog has n={} with {} terms",
            instance.n,
            instance.s,
            catalog.n(),
            catalog.len()
        )));
    }
    if instance.n > DEFAULT_QUBIT_CAP {
        return Err(Error::cap("qubits", instance.n, DEFAULT_QUBIT_CAP));
    }
    let n = instance.n;
    let terms = catalog
        .iter()
        .zip(&instance.weights)
        .map(|(partition, weight)| {
            let ket = canonical_term_ket(&partition, n)?;
            Ok(DecompositionTerm {
                state: DensityMatrix::from_pure(&ket)?,
                ket,
                partition,
                weight: weight.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let parts: Vec<(f64, &DensityMatrix)> = terms
        .iter()
        .map(|t| (t.weight.to_f64().unwrap_or(0.0), &t.state))
        .collect();
    let gamma = DensityMatrix::mixture(&parts)?;
    let assembled = AssembledState {
        instance: instance.clone(),
        terms,
        gamma,
    };
    if !assembled.weight_sum().is_one() {
        return Err(Error::InvalidState("term weights do not sum to one".into()));
    }
    let dmin = assembled.min_term_distance();
    if dmin <= DISTINCTNESS_TOL {
        return Err(Error::InvalidState(format!(
            "two term states coincide (distance {dmin:e})"
        )));
    }
    Ok(assembled)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    /// Human-readable acceptance condition, e.g. `<= 1e-12`.
    pub condition: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateReport {
    pub n: usize,
    pub checks: Vec<Check>,
    pub pass: bool,
}

fn at_most(name: &'static str, value: f64, limit: f64) -> Check {
    Check {
        name,
        value,
        condition: format!("<= {limit:e}"),
        pass: value <= limit,
    }
}

fn at_least(name: &'static str, value: f64, limit: f64) -> Check {
    Check {
        name,
        value,
        condition: format!(">= {limit:e}"),
        pass: value >= limit,
    }
}

/// Measure every density-matrix invariant of a serialized state, plus the
/// two-qubit separability checks when `n = 2`.
pub fn check_state(doc: &StateDocument) -> Result<StateReport> {
    let m: ComplexMatrix = doc.to_matrix()?;
    if doc.n > DEFAULT_QUBIT_CAP {
        return Err(Error::cap("qubits", doc.n, DEFAULT_QUBIT_CAP));
    }
    let eig = m.eigh()?;
    let min_eig = eig.values.first().copied().unwrap_or(0.0);
    let mut checks = vec![
        at_most("hermiticity_error", m.hermiticity_error(), HERMITIAN_TOL),
        at_most("trace_error", (m.trace() - 1.0).norm(), TRACE_TOL),
        at_least("min_eigenvalue", min_eig, -PSD_TOL),
    ];
    let structurally_valid = checks.iter().all(|c| c.pass);
    if doc.n == 2 && structurally_valid {
        let rho = DensityMatrix::new_unchecked(2, m);
        checks.push(at_least(
            "ppt_min_eigenvalue",
            ppt_min_eigenvalue(&rho, &[2])?,
            -PSD_TOL,
        ));
        let c = concurrence(&rho)?;
        checks.push(at_most("eof_two_qubit", eof_from_concurrence(c), EOF_TOL));
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(StateReport {
        n: doc.n,
        checks,
        pass,
    })
}
