//! Numerical tolerances shared by the library, the CLI and the test suites.
//!
//! Residual and oracle checks are absolute at unit norm. Invariance checks are
//! relative, since random SL(2,C) factors inflate the amplitudes.

/// Normalization test `|Σ|α|² − 1|`.
pub const NORM: f64 = 1e-12;

/// Plücker relation residuals and oracle agreement at unit norm.
pub const RESIDUAL: f64 = 1e-12;

/// Relative deviation allowed for local-unitary and cut-qubit SL(2,C) trials.
pub const INVARIANCE: f64 = 1e-10;

/// Relative deviation allowed for |Det| under SL(2,C)^{⊗3}.
pub const HYPERDET_INVARIANCE: f64 = 1e-9;

/// Unitarity `‖M†M − I‖` and `|det M − 1|` checks on local operators.
pub const OPERATOR: f64 = 1e-12;

/// Hermiticity of density matrices, entrywise.
pub const HERMITIAN: f64 = 1e-12;

/// Smallest eigenvalue accepted as positive semidefinite.
pub const PSD: f64 = 1e-10;

/// Outcome probabilities below this are reported without a post-state.
pub const NULL_OUTCOME: f64 = 1e-14;

/// Condition-number cap for random SL(2,C) samples.
pub const SL2_CONDITION_CAP: f64 = 1e3;

/// Maximum redraws for a condition-bounded SL(2,C) sample.
pub const SL2_MAX_REDRAWS: usize = 100;

/// Overridable bundle of the tolerances above.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub residual: f64,
    pub invariance: f64,
    pub hyperdet_invariance: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            residual: RESIDUAL,
            invariance: INVARIANCE,
            hyperdet_invariance: HYPERDET_INVARIANCE,
        }
    }
}
