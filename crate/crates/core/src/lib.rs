//! Exact lower bounds on a toy machine's halting probability, the term
//! structure of N-way disentangled decompositions, coefficient instances
//! built from halting-probability bits, brute-force solving of those
//! instances, and small dense quantum states assembled from them.
//!
//! The pipeline, end to end:
//!
//! 1. [`machine::dovetail`] bounds the halting probability from below.
//! 2. [`omega::extract_bits`] reads its binary expansion and marks which
//!    bits are certified.
//! 3. [`partitions::enumerate_partitions`] lists the decomposition terms.
//! 4. [`instance::build_instance`] chunks bits into coefficients `B_i` and
//!    normalizes them to weights `b_i`.
//! 5. [`solver::brute_force`] recovers `B` from an equality oracle.
//! 6. [`quantum::assemble_state`] mixes canonical term states with the
//!    weights and [`quantum::check_state`] validates the result.

pub mod bits;
pub mod cli;
pub mod config;
pub mod error;
pub mod instance;
pub mod machine;
pub mod omega;
pub mod partitions;
pub mod quantum;
pub mod solver;

pub use bits::BitString;
pub use error::{Error, Result};
pub use instance::{build_instance, ChaitinInstance};
pub use machine::{dovetail, Dovetailer, OmegaApproximation};
pub use omega::{extract_bits, load_bits_file, CertifiedBits};
pub use partitions::{enumerate_partitions, CoefficientPolicy, PartitionCatalog, SetPartition};
