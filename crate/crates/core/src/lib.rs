//! Maximizing the weighted number of spanning trees of a connected graph by
//! adding at most k edges from a candidate set.
//!
//! The crate is organized around the chain Laplacian -> effective resistance
//! -> Schur complement -> greedy selection:
//!
//! - [`graph`]: weighted multigraphs and Laplacian assembly
//! - [`spectral`]: minor factorization, solves, log tree counts, and the
//!   determinant-lemma update
//! - [`resistance`]: exact and batched (1 ± eps) effective resistances
//! - [`schur`]: exact and sparsified Schur complements onto terminal sets
//! - [`maximizer`]: exact greedy, threshold greedy, sequential
//!   addition-above-threshold, and the divide-and-conquer maximizer
//! - [`oracle`]: exact arbitrary-precision ground truth for verification
//! - [`instances`]: deterministic generators for test families and fuzzing
//! - [`verify`]: the pinned acceptance checks behind `spantree verify`

pub mod error;
pub mod graph;
pub mod instances;
pub mod maximizer;
pub mod oracle;
pub mod resistance;
pub mod rng;
pub mod schur;
pub mod spectral;
pub mod verify;

mod elim;

pub use error::{Error, Result};
pub use graph::{CandidateSet, Edge, Graph, IncidenceVector};
pub use instances::InstanceSpec;
pub use maximizer::{Selection, ThresholdSchedule};
pub use oracle::{ExactCount, PathCover};
pub use resistance::ResistanceEstimate;
pub use schur::TerminalSet;
pub use spectral::LaplacianFactor;
