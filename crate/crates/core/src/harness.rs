//! Batch invariance and monotonicity runs over seeded random trials.

use crate::batch::map_trials;
use crate::error::Result;
use crate::rng;
use crate::slocc::{
    invariance_trial, monotonicity_trial, partial_vector_trial, plucker_invariance_trial,
    random_kraus_pair_with, random_sl2_matrix, random_unitary_matrix, KrausPair, LocalOperator,
    MonotonicityRecord, OperatorKind, Quantity,
};
use crate::state::{NamedState, PureState};
use crate::tolerance::{self, Tolerances};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Nearest-rank quantiles of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantiles {
    pub min: f64,
    pub p50: f64,
    pub p90: f64,
    pub p99: f64,
    pub max: f64,
    pub mean: f64,
}

impl Quantiles {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let rank = |q: f64| v[((q * v.len() as f64).ceil() as usize).clamp(1, v.len()) - 1];
        Some(Self {
            min: v[0],
            p50: rank(0.5),
            p90: rank(0.9),
            p99: rank(0.99),
            max: v[v.len() - 1],
            mean: v.iter().sum::<f64>() / v.len() as f64,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceConfig {
    pub num_qubits: usize,
    pub trials: u64,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub condition_cap: f64,
}

impl InvarianceConfig {
    pub fn new(num_qubits: usize, trials: u64, seed: u64) -> Self {
        Self {
            num_qubits,
            trials,
            seed,
            tolerances: Tolerances::default(),
            condition_cap: tolerance::SL2_CONDITION_CAP,
        }
    }
}

/// Relative deviations seen in one trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvarianceRecord {
    pub trial: u64,
    /// Local unitary: worst of the entrywise `(E_1, …, E_m)` change and the total.
    pub local_unitary: f64,
    /// SL(2,C) on the cut qubit: worst Plücker-coordinate change.
    pub sl2_plucker: f64,
    /// SL(2,C) on the cut qubit: change of `E_j`.
    pub sl2_partial: f64,
    /// SL(2,C)^{⊗3}: change of `|Det|` (3-qubit runs only).
    pub sl2_hyperdet: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceSummary {
    pub local_unitary: Quantiles,
    pub sl2_plucker: Quantiles,
    pub sl2_partial: Quantiles,
    pub sl2_hyperdet: Option<Quantiles>,
    pub tolerance: f64,
    pub hyperdet_tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub num_qubits: usize,
    pub trials: u64,
    pub seed: u64,
    pub condition_cap: f64,
    pub records: Vec<InvarianceRecord>,
    pub summary: InvarianceSummary,
}

fn random_qubit<R: Rng + ?Sized>(rng: &mut R, m: usize) -> usize {
    rng.random_range(1..=m)
}

/// One trial, fully determined by `(seed, index)`.
pub fn invariance_record(cfg: &InvarianceConfig, index: u64) -> Result<InvarianceRecord> {
    let m = cfg.num_qubits;
    let mut r = rng::stream(cfg.seed, index);
    let state = PureState::haar_random_with(m, &mut r)?;

    let u = LocalOperator::new(
        random_qubit(&mut r, m),
        random_unitary_matrix(&mut r),
        OperatorKind::Unitary,
    )?;
    let local_unitary =
        partial_vector_trial(&state, &u)?.max(invariance_trial(&state, &[u], Quantity::ETotal)?);

    let cut = random_qubit(&mut r, m);
    let g = LocalOperator::new(
        cut,
        random_sl2_matrix(&mut r, cfg.condition_cap)?,
        OperatorKind::SpecialLinear,
    )?;
    let sl2_plucker = plucker_invariance_trial(&state, &g)?;
    let sl2_partial = invariance_trial(&state, &[g], Quantity::EJ(cut))?;

    let sl2_hyperdet = if m == 3 {
        let ops = (1..=3)
            .map(|t| {
                LocalOperator::new(
                    t,
                    random_sl2_matrix(&mut r, cfg.condition_cap)?,
                    OperatorKind::SpecialLinear,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Some(invariance_trial(&state, &ops, Quantity::AbsDet)?)
    } else {
        None
    };
    Ok(InvarianceRecord {
        trial: index,
        local_unitary,
        sl2_plucker,
        sl2_partial,
        sl2_hyperdet,
    })
}

pub fn run_invariance(cfg: &InvarianceConfig) -> Result<InvarianceReport> {
    let records = map_trials(cfg.trials, |i| invariance_record(cfg, i))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let column = |f: fn(&InvarianceRecord) -> f64| records.iter().map(f).collect::<Vec<_>>();
    let lu = column(|r| r.local_unitary);
    let pl = column(|r| r.sl2_plucker);
    let ej = column(|r| r.sl2_partial);
    let det: Vec<f64> = records.iter().filter_map(|r| r.sl2_hyperdet).collect();
    let tol = cfg.tolerances.invariance;
    let det_tol = cfg.tolerances.hyperdet_invariance;
    let worst = |v: &[f64]| v.iter().copied().fold(0.0f64, f64::max);
    let passed = worst(&lu) < tol && worst(&pl) < tol && worst(&ej) < tol && worst(&det) < det_tol;
    let summary = InvarianceSummary {
        local_unitary: Quantiles::of(&lu).expect("at least one trial"),
        sl2_plucker: Quantiles::of(&pl).expect("at least one trial"),
        sl2_partial: Quantiles::of(&ej).expect("at least one trial"),
        sl2_hyperdet: Quantiles::of(&det),
        tolerance: tol,
        hyperdet_tolerance: det_tol,
        passed,
    };
    Ok(InvarianceReport {
        num_qubits: cfg.num_qubits,
        trials: cfg.trials,
        seed: cfg.seed,
        condition_cap: cfg.condition_cap,
        records,
        summary,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityConfig {
    pub num_qubits: usize,
    pub trials: u64,
    pub seed: u64,
    pub normalization: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityTrial {
    pub trial: u64,
    pub target: usize,
    #[serde(flatten)]
    pub record: MonotonicityRecord,
}

/// Deterministic sub-cases run alongside the random trials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityControls {
    /// Worst violation over unitary-mixture Kraus pairs (one per trial, capped at 1000).
    pub unitary_pair_max_violation: f64,
    /// Computational-basis measurement of qubit 1 of the GHZ state.
    pub ghz_projective: MonotonicityRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub num_qubits: usize,
    pub trials: u64,
    pub seed: u64,
    pub normalization: f64,
    pub violation: Quantiles,
    pub relative_violation: Quantiles,
    /// Trials whose violation exceeds the invariance tolerance.
    pub violating_trials: u64,
    pub controls: MonotonicityControls,
    pub records: Vec<MonotonicityTrial>,
}

pub fn monotonicity_record(cfg: &MonotonicityConfig, index: u64) -> Result<MonotonicityTrial> {
    let mut r = rng::stream(cfg.seed, index);
    let state = PureState::haar_random_with(cfg.num_qubits, &mut r)?;
    let target = random_qubit(&mut r, cfg.num_qubits);
    let kraus = random_kraus_pair_with(&mut r, target)?;
    Ok(MonotonicityTrial {
        trial: index,
        target,
        record: monotonicity_trial(&state, &kraus, cfg.normalization)?,
    })
}

fn unitary_pair_violation(cfg: &MonotonicityConfig, index: u64) -> Result<f64> {
    // distinct stream family from the random trials
    let mut r = rng::stream(cfg.seed ^ 0x9e37_79b9_7f4a_7c15, index);
    let state = PureState::haar_random_with(cfg.num_qubits, &mut r)?;
    let target = random_qubit(&mut r, cfg.num_qubits);
    let pair = KrausPair::unitary_mixture(
        target,
        random_unitary_matrix(&mut r),
        random_unitary_matrix(&mut r),
    )?;
    Ok(monotonicity_trial(&state, &pair, cfg.normalization)?.violation)
}

pub fn run_monotonicity(cfg: &MonotonicityConfig) -> Result<MonotonicityReport> {
    let records = map_trials(cfg.trials, |i| monotonicity_record(cfg, i))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let violations: Vec<f64> = records.iter().map(|t| t.record.violation).collect();
    let relative: Vec<f64> = records
        .iter()
        .map(|t| t.record.violation / t.record.e_before.max(1e-300))
        .collect();
    let unitary_pair_max_violation =
        map_trials(cfg.trials.min(1000), |i| unitary_pair_violation(cfg, i))
            .into_iter()
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0f64, f64::max);
    let ghz = PureState::named(NamedState::Ghz, cfg.num_qubits.max(2))?;
    let ghz_projective = monotonicity_trial(&ghz, &KrausPair::projective(1)?, cfg.normalization)?;
    Ok(MonotonicityReport {
        num_qubits: cfg.num_qubits,
        trials: cfg.trials,
        seed: cfg.seed,
        normalization: cfg.normalization,
        violation: Quantiles::of(&violations).expect("at least one trial"),
        relative_violation: Quantiles::of(&relative).expect("at least one trial"),
        violating_trials: violations
            .iter()
            .filter(|&&v| v > tolerance::INVARIANCE)
            .count() as u64,
        controls: MonotonicityControls {
            unitary_pair_max_violation,
            ghz_projective,
        },
        records,
    })
}
