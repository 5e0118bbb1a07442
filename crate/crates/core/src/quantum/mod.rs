//! Dense small-dimension quantum state algebra.

pub mod assembly;
pub mod entanglement;
pub mod matrix;
pub mod state;

pub use assembly::{
    assemble_state, canonical_term_ket, canonical_term_state, check_state, AssembledState,
    DecompositionTerm, StateReport,
};
pub use entanglement::{
    binary_entropy, concurrence, eof_from_concurrence, eof_two_qubit, ppt_min_eigenvalue,
    pure_trace_distance, trace_distance,
};
pub use matrix::{ComplexMatrix, HermitianEigen};
pub use state::{partial_trace, partial_transpose, tensor, DensityMatrix, StateDocument};
