//! Entanglement monotones for pure multi-qubit states built from the Plücker
//! coordinates of each single-qubit bipartition, together with the 2×2×2
//! hyperdeterminant and randomized SLOCC/LOCC validation harnesses.
//!
//! ```
//! use plucker_core::{total_monotone, NamedState, PureState};
//!
//! let w = PureState::named(NamedState::W, 3).unwrap();
//! let report = total_monotone(&w, 1.0).unwrap();
//! assert!((report.total - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
//! ```

pub mod batch;
pub mod error;
pub mod exact;
pub mod grassmann;
pub mod harness;
pub mod hyperdet;
pub mod io;
pub mod oracles;
pub mod rng;
pub mod slocc;
pub mod state;
pub mod tolerance;

pub use error::{Error, Result};
pub use grassmann::{
    bipartition_matrix, partial_monotone, partial_monotones, plucker_coordinates,
    plucker_relation_residuals, separability_witness, total_monotone, BipartitionMatrix,
    MonotoneReport, PluckerSet,
};
pub use hyperdet::{
    hyperdet_222, hyperdet_via_diophantine, hyperdet_via_levay, pauli_decompose, three_tangle,
    PauliVectorPair,
};
pub use num_complex::Complex64;
pub use state::{DensityMatrix, NamedState, PureState};
