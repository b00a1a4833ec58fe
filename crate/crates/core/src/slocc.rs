//! Local operators, one-step LOCC measurements, and the invariance and
//! monotonicity trials built on them.

use crate::error::{Error, Result};
use crate::grassmann::{
    bipartition_matrix, partial_monotones, plucker_coordinates, total_monotone,
};
use crate::hyperdet::hyperdet_222;
use crate::rng;
use crate::state::PureState;
use crate::tolerance;
use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

pub type Mat2 = Matrix2<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    Unitary,
    SpecialLinear,
    General,
}

/// A 2×2 operator acting on qubit `target` (1-based).
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator {
    target: usize,
    matrix: Mat2,
    kind: OperatorKind,
}

pub fn unitarity_error(m: &Mat2) -> f64 {
    (m.adjoint() * m - Mat2::identity())
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max)
}

pub fn det_one_error(m: &Mat2) -> f64 {
    (m.determinant() - Complex64::new(1.0, 0.0)).norm()
}

/// Ratio of singular values.
pub fn condition_number(m: &Mat2) -> f64 {
    let fro = m.iter().map(Complex64::norm_sqr).sum::<f64>();
    let det = m.determinant().norm_sqr();
    let disc = (fro * fro - 4.0 * det).max(0.0).sqrt();
    let (hi, lo) = ((fro + disc) / 2.0, (fro - disc) / 2.0);
    if lo <= 0.0 {
        return f64::INFINITY;
    }
    (hi / lo).sqrt()
}

impl LocalOperator {
    /// Checks the tag: unitary within 1e-12, or det 1 within 1e-12.
    pub fn new(target: usize, matrix: Mat2, kind: OperatorKind) -> Result<Self> {
        if target == 0 {
            return Err(Error::Argument("qubit labels start at 1".into()));
        }
        let check = |dev: f64, name: &'static str| {
            if dev > tolerance::OPERATOR {
                Err(Error::OperatorKind {
                    kind: name,
                    deviation: dev,
                })
            } else {
                Ok(())
            }
        };
        match kind {
            OperatorKind::Unitary => check(unitarity_error(&matrix), "unitary")?,
            OperatorKind::SpecialLinear => check(det_one_error(&matrix), "special-linear")?,
            OperatorKind::General => {}
        }
        Ok(Self {
            target,
            matrix,
            kind,
        })
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn on(&self, target: usize) -> Result<Self> {
        Self::new(target, self.matrix, self.kind)
    }
}

/// Applies `M` to index `k_j`. The result may be unnormalized.
pub fn apply_local(state: &PureState, op: &LocalOperator) -> Result<PureState> {
    apply_matrix(state, op.target(), op.matrix())
}

fn apply_matrix(state: &PureState, target: usize, m: &Mat2) -> Result<PureState> {
    PureState::new(state.num_qubits(), transform(state, target, m)?)
}

fn transform(state: &PureState, target: usize, m: &Mat2) -> Result<Vec<Complex64>> {
    let n = state.num_qubits();
    if target == 0 || target > n {
        return Err(Error::Argument(format!(
            "operator target {target} outside 1..={n}"
        )));
    }
    let bit = 1usize << (n - target);
    let mut out = state.amplitudes().to_vec();
    for k in (0..out.len()).filter(|k| k & bit == 0) {
        let (x0, x1) = (out[k], out[k | bit]);
        out[k] = m[(0, 0)] * x0 + m[(0, 1)] * x1;
        out[k | bit] = m[(1, 0)] * x0 + m[(1, 1)] * x1;
    }
    Ok(out)
}

/// Haar-random SU(2) matrix from a uniformly random unit quaternion.
pub fn random_su2_matrix<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let (a, b) = (rng::complex_gaussian(rng), rng::complex_gaussian(rng));
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    Mat2::new(a, -b.conj(), b, a.conj())
}

/// Haar-random U(2) matrix.
pub fn random_unitary_matrix<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let phase = Complex64::from_polar(1.0, std::f64::consts::TAU * rng.random::<f64>());
    random_su2_matrix(rng) * phase
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    Mat2::from_fn(|_, _| rng::complex_gaussian(rng))
}

/// Ginibre draw rescaled by `det^{−1/2}` (principal branch), redrawn while its
/// condition number exceeds `cap`.
pub fn random_sl2_matrix<R: Rng + ?Sized>(rng: &mut R, cap: f64) -> Result<Mat2> {
    for _ in 0..=tolerance::SL2_MAX_REDRAWS {
        let g = ginibre(rng);
        let det = g.determinant();
        if det.norm() == 0.0 {
            continue;
        }
        let s = g / det.sqrt();
        if condition_number(&s) <= cap {
            return Ok(s);
        }
    }
    Err(Error::Sampling(format!(
        "no SL(2,C) sample with condition number ≤ {cap} after {} redraws",
        tolerance::SL2_MAX_REDRAWS
    )))
}

pub fn random_su2(seed: u64, target: usize) -> Result<LocalOperator> {
    LocalOperator::new(
        target,
        random_su2_matrix(&mut rng::from_seed(seed)),
        OperatorKind::Unitary,
    )
}

pub fn random_sl2(seed: u64, target: usize) -> Result<LocalOperator> {
    let m = random_sl2_matrix(&mut rng::from_seed(seed), tolerance::SL2_CONDITION_CAP)?;
    LocalOperator::new(target, m, OperatorKind::SpecialLinear)
}

/// Square root of a 2×2 positive semidefinite Hermitian matrix.
pub fn psd_sqrt(m: &Mat2) -> Mat2 {
    let det = m.determinant().re.max(0.0);
    let s = det.sqrt();
    let t = (m.trace().re + 2.0 * s).max(0.0).sqrt();
    if t == 0.0 {
        return Mat2::zeros();
    }
    (m + Mat2::identity() * Complex64::new(s, 0.0)) / Complex64::new(t, 0.0)
}

/// Two-outcome local measurement `{A0, A1}` on qubit `target`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausPair {
    target: usize,
    a0: Mat2,
    a1: Mat2,
}

impl KrausPair {
    /// Checks `A0†A0 + A1†A1 = I` within 1e-12.
    pub fn new(target: usize, a0: Mat2, a1: Mat2) -> Result<Self> {
        if target == 0 {
            return Err(Error::Argument("qubit labels start at 1".into()));
        }
        let dev = completeness_error(&a0, &a1);
        if dev > tolerance::OPERATOR {
            return Err(Error::OperatorKind {
                kind: "a complete Kraus pair",
                deviation: dev,
            });
        }
        Ok(Self { target, a0, a1 })
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn operators(&self) -> [&Mat2; 2] {
        [&self.a0, &self.a1]
    }

    /// `A_i = U_i / √2` for two unitaries.
    pub fn unitary_mixture(target: usize, u0: Mat2, u1: Mat2) -> Result<Self> {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new(target, u0 * h, u1 * h)
    }

    /// Computational-basis projective measurement.
    pub fn projective(target: usize) -> Result<Self> {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self::new(target, Mat2::new(o, z, z, z), Mat2::new(z, z, z, o))
    }
}

pub fn completeness_error(a0: &Mat2, a1: &Mat2) -> f64 {
    (a0.adjoint() * a0 + a1.adjoint() * a1 - Mat2::identity())
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max)
}

/// `A0 = G/s` with `‖A0‖² = t` uniform in (0, 1), and `A1 = U (I − A0†A0)^{1/2}`.
pub fn random_kraus_pair_with<R: Rng + ?Sized>(rng: &mut R, target: usize) -> Result<KrausPair> {
    let g = ginibre(rng);
    let top = g.adjoint() * g;
    let fro = top.trace().re;
    let sigma_max_sq = (fro + (fro * fro - 4.0 * top.determinant().re).max(0.0).sqrt()) / 2.0;
    let t: f64 = rng.random_range(0.05..0.95);
    let a0 = g * Complex64::new((t / sigma_max_sq).sqrt(), 0.0);
    let rest = Mat2::identity() - a0.adjoint() * a0;
    let a1 = random_unitary_matrix(rng) * psd_sqrt(&rest);
    KrausPair::new(target, a0, a1)
}

pub fn random_kraus_pair(seed: u64, target: usize) -> Result<KrausPair> {
    random_kraus_pair_with(&mut rng::from_seed(seed), target)
}

/// One measurement outcome; `state` is `None` when `probability < 1e-14`.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub probability: f64,
    pub state: Option<PureState>,
}

pub fn locc_step(state: &PureState, kraus: &KrausPair) -> Result<[Outcome; 2]> {
    if !state.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let branch = |a: &Mat2| -> Result<Outcome> {
        let amps = transform(state, kraus.target(), a)?;
        let p: f64 = amps.iter().map(Complex64::norm_sqr).sum();
        if p < tolerance::NULL_OUTCOME {
            return Ok(Outcome {
                probability: p,
                state: None,
            });
        }
        Ok(Outcome {
            probability: p,
            state: Some(PureState::new(state.num_qubits(), amps)?.normalize()?),
        })
    };
    Ok([branch(&kraus.a0)?, branch(&kraus.a1)?])
}

/// Quantity tracked by an invariance trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// Total monotone with `N = 1`.
    ETotal,
    /// Partial monotone `E_j` of one qubit (1-based).
    EJ(usize),
    /// `|Det|` of a 3-qubit state.
    AbsDet,
}

impl Quantity {
    /// Homogeneity degree in `|c|` for `ψ → cψ`.
    pub fn degree(self) -> i32 {
        match self {
            Self::ETotal => 2,
            Self::EJ(_) | Self::AbsDet => 4,
        }
    }

    pub fn evaluate(self, state: &PureState) -> Result<f64> {
        match self {
            Self::ETotal => Ok(total_monotone(state, 1.0)?.total),
            Self::EJ(j) => {
                let pset = plucker_coordinates(&bipartition_matrix(state, j)?)?;
                Ok(crate::grassmann::partial_monotone(&pset))
            }
            Self::AbsDet => Ok(hyperdet_222(state)?.norm()),
        }
    }

    /// Value on a possibly unnormalized state, evaluated on its unit-norm
    /// representative and scaled back by `‖ψ‖^degree`.
    pub fn evaluate_homogeneous(self, state: &PureState) -> Result<f64> {
        if state.is_normalized() {
            return self.evaluate(state);
        }
        let norm = state.norm();
        Ok(self.evaluate(&state.normalize()?)? * norm.powi(self.degree()))
    }
}

fn relative(after: f64, before: f64) -> f64 {
    (after - before).abs() / before.abs().max(1e-300)
}

/// Relative change of `quantity` when every operator in `ops` is applied.
pub fn invariance_trial(
    state: &PureState,
    ops: &[LocalOperator],
    quantity: Quantity,
) -> Result<f64> {
    let before = quantity.evaluate_homogeneous(state)?;
    let after_state = ops
        .iter()
        .try_fold(state.clone(), |s, op| apply_local(&s, op))?;
    Ok(relative(
        quantity.evaluate_homogeneous(&after_state)?,
        before,
    ))
}

/// Largest change of any `P^j_{c1,c2}` under `op` on the cut qubit `j`,
/// relative to the largest coordinate magnitude of the original set.
pub fn plucker_invariance_trial(state: &PureState, op: &LocalOperator) -> Result<f64> {
    let j = op.target();
    let before = plucker_coordinates(&bipartition_matrix(state, j)?)?;
    let after = plucker_coordinates(&bipartition_matrix(&apply_local(state, op)?, j)?)?;
    let scale = before
        .coords()
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max);
    let worst = before
        .coords()
        .iter()
        .zip(after.coords())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0f64, f64::max);
    Ok(worst / scale.max(1e-300))
}

/// Per-qubit vector `(E_1, …, E_m)` deviation under an operator: entrywise
/// maximum of relative changes.
pub fn partial_vector_trial(state: &PureState, op: &LocalOperator) -> Result<f64> {
    let before = partial_monotones(state)?;
    let after = partial_monotones(&apply_local(state, op)?)?;
    Ok(before
        .iter()
        .zip(&after)
        .map(|(b, a)| relative(*a, *b))
        .fold(0.0f64, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityRecord {
    pub e_before: f64,
    pub expected_e_after: f64,
    pub violation: f64,
    pub probabilities: [f64; 2],
}

/// Average total monotone over the two outcomes of one LOCC step.
pub fn monotonicity_trial(
    state: &PureState,
    kraus: &KrausPair,
    normalization: f64,
) -> Result<MonotonicityRecord> {
    let e_before = total_monotone(state, normalization)?.total;
    let outcomes = locc_step(state, kraus)?;
    let mut expected = 0.0;
    for o in &outcomes {
        if let Some(post) = &o.state {
            expected += o.probability * total_monotone(post, normalization)?.total;
        }
    }
    Ok(MonotonicityRecord {
        e_before,
        expected_e_after: expected,
        violation: (expected - e_before).max(0.0),
        probabilities: [outcomes[0].probability, outcomes[1].probability],
    })
}
