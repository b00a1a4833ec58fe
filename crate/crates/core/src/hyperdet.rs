//! Cayley's 2×2×2 hyperdeterminant by three independent routes: the explicit
//! twelve-term polynomial, the Diophantine quartic, and the antisymmetric
//! products of the Pauli-vector decomposition.
//!
//! The polynomial routes are generic over any commutative ring with negation,
//! so the same expressions run on `Complex64` and on exact Gaussian rationals.

use crate::error::{Error, Result};
use crate::rng;
use crate::state::PureState;
use num_complex::Complex64;
use num_traits::Num;
use serde::{Deserialize, Serialize};
use std::ops::Neg;
use std::sync::OnceLock;

/// Commutative ring with negation.
pub trait Ring: Clone + Num + Neg<Output = Self> {}
impl<T: Clone + Num + Neg<Output = T>> Ring for T {}

fn small<T: Ring>(k: u8) -> T {
    (0..k).fold(T::zero(), |acc, _| acc + T::one())
}

/// The eight amplitudes of a 3-qubit state, `α_{1,1,1}` through `α_{2,2,2}`.
pub fn three_qubit_amplitudes(state: &PureState) -> Result<[Complex64; 8]> {
    if state.num_qubits() != 3 {
        return Err(Error::UnsupportedFormat {
            expected: 3,
            got: state.num_qubits(),
        });
    }
    let mut a = [Complex64::default(); 8];
    a.copy_from_slice(state.amplitudes());
    Ok(a)
}

/// Hyperdeterminant polynomial on amplitudes in flat order
/// (`a[0] = α_{1,1,1}`, `a[1] = α_{1,1,2}`, …, `a[7] = α_{2,2,2}`).
pub fn cayley_polynomial<T: Ring>(a: &[T; 8]) -> T {
    let [a111, a112, a121, a122, a211, a212, a221, a222] = a.clone();
    let sq = |x: &T| x.clone() * x.clone();
    let squares = sq(&a111) * sq(&a222)
        + sq(&a112) * sq(&a221)
        + sq(&a121) * sq(&a212)
        + sq(&a211) * sq(&a122);
    let cross = a111.clone() * a112.clone() * a221.clone() * a222.clone()
        + a111.clone() * a121.clone() * a212.clone() * a222.clone()
        + a111.clone() * a211.clone() * a122.clone() * a222.clone()
        + a112.clone() * a121.clone() * a212.clone() * a221.clone()
        + a112.clone() * a211.clone() * a122.clone() * a221.clone()
        + a121.clone() * a211.clone() * a122.clone() * a212.clone();
    let quartic = a111 * a221.clone() * a212.clone() * a122.clone() + a222 * a211 * a121 * a112;
    squares - small::<T>(2) * cross + small::<T>(4) * quartic
}

/// `P(γ, δ) = (γ₁δ₁ + γ₂δ₂ − γ₃δ₃ − γ₄δ₄)² − 4(γ₁γ₂ + δ₃δ₄)(γ₃γ₄ + δ₁δ₂)`.
pub fn diophantine_p<T: Ring>(gamma: &[T; 4], delta: &[T; 4]) -> T {
    let [g1, g2, g3, g4] = gamma.clone();
    let [d1, d2, d3, d4] = delta.clone();
    let lin = g1.clone() * d1.clone() + g2.clone() * d2.clone()
        - g3.clone() * d3.clone()
        - g4.clone() * d4.clone();
    lin.clone() * lin - small::<T>(4) * (g1 * g2 + d3 * d4) * (g3 * g4 + d1 * d2)
}

/// Argument substitution
/// `(−α_{1,1,1}, α_{2,2,1}, α_{2,1,2}, α_{1,2,2}; −α_{2,2,2}, α_{1,1,2}, α_{1,2,1}, α_{2,1,1})`.
pub fn diophantine_arguments<T: Ring>(a: &[T; 8]) -> ([T; 4], [T; 4]) {
    let [a111, a112, a121, a122, a211, a212, a221, a222] = a.clone();
    ([-a111, a221, a212, a122], [-a222, a112, a121, a211])
}

pub fn hyperdet_222(state: &PureState) -> Result<Complex64> {
    Ok(cayley_polynomial(&three_qubit_amplitudes(state)?))
}

pub fn hyperdet_via_diophantine(state: &PureState) -> Result<Complex64> {
    let (gamma, delta) = diophantine_arguments(&three_qubit_amplitudes(state)?);
    Ok(diophantine_p(&gamma, &delta))
}

/// Three-tangle `4·|Det|` of a normalized 3-qubit state.
pub fn three_tangle(state: &PureState) -> Result<f64> {
    let det = hyperdet_222(state)?;
    if !state.is_normalized() {
        return Err(Error::NotNormalized);
    }
    Ok(4.0 * det.norm())
}

/// Basis `Σ^s = −iσ_s` for `s = 1, 2, 3` and `Σ^4 = I`, row-major.
pub fn sigma_basis() -> [[Complex64; 4]; 4] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        [z, -i, -i, z],
        [z, -one, one, z],
        [-i, z, z, i],
        [one, z, z, one],
    ]
}

/// Coefficients `α_p`, `β_p` of the two amplitude slices in the `Σ` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliVectorPair {
    pub alpha: [Complex64; 4],
    pub beta: [Complex64; 4],
}

impl PauliVectorPair {
    /// `α_{r,k1,k2} = (1/√2) Σ_p v_p Σ^{p}_{k1,k2}` with `v = α` for `r = 1`, `β` for `r = 2`.
    pub fn recompose(&self) -> [Complex64; 8] {
        let basis = sigma_basis();
        let mut out = [Complex64::default(); 8];
        for (r, v) in [self.alpha, self.beta].iter().enumerate() {
            for k in 0..4 {
                let s: Complex64 = (0..4).map(|p| v[p] * basis[p][k]).sum();
                out[4 * r + k] = s * std::f64::consts::FRAC_1_SQRT_2;
            }
        }
        out
    }
}

/// Inverts the `Σ` expansion via `Tr(Σ^p (Σ^q)†) = 2δ_{pq}`.
pub fn pauli_decompose(state: &PureState) -> Result<PauliVectorPair> {
    let a = three_qubit_amplitudes(state)?;
    let basis = sigma_basis();
    let coeff = |slice: &[Complex64]| -> [Complex64; 4] {
        std::array::from_fn(|q| {
            let tr: Complex64 = (0..4).map(|k| slice[k] * basis[q][k].conj()).sum();
            tr * std::f64::consts::FRAC_1_SQRT_2
        })
    };
    Ok(PauliVectorPair {
        alpha: coeff(&a[..4]),
        beta: coeff(&a[4..]),
    })
}

/// `P_{p,q} = α_p β_q − α_q β_p`.
pub fn levay_plucker(pair: &PauliVectorPair) -> [[Complex64; 4]; 4] {
    let (a, b) = (&pair.alpha, &pair.beta);
    std::array::from_fn(|p| std::array::from_fn(|q| a[p] * b[q] - a[q] * b[p]))
}

/// `Σ_{p<q} P_{p,q}²` with Euclidean index raising.
pub fn levay_square_sum(pair: &PauliVectorPair) -> Complex64 {
    let pm = levay_plucker(pair);
    (0..4)
        .flat_map(|p| (p + 1..4).map(move |q| (p, q)))
        .map(|(p, q)| pm[p][q] * pm[p][q])
        .sum()
}

/// Frozen scalar relating `Σ_{p<q} P_{p,q}²` to the hyperdeterminant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevayConvention {
    pub kappa: f64,
    pub summation: String,
    pub raising: String,
    pub sigma: String,
    /// Worst relative deviation seen while calibrating.
    pub calibration_deviation: f64,
    pub calibration_samples: usize,
}

pub const KAPPA_CANDIDATES: [f64; 6] = [1.0, 0.5, 2.0, -1.0, -0.5, -2.0];
const CALIBRATION_SEED: u64 = 0x5eed_1e7a;
const CALIBRATION_SAMPLES: usize = 50;
const CALIBRATION_TOL: f64 = 1e-10;

/// Picks the candidate `κ` with the least worst-case relative deviation from
/// the polynomial route over `samples` random states.
pub fn calibrate_levay(seed: u64, samples: usize) -> Result<LevayConvention> {
    if samples == 0 {
        return Err(Error::Argument(
            "calibration needs at least one sample".into(),
        ));
    }
    let mut draws = Vec::with_capacity(samples);
    for i in 0..samples {
        let state = PureState::haar_random_with(3, &mut rng::stream(seed, i as u64))?;
        draws.push((
            hyperdet_222(&state)?,
            levay_square_sum(&pauli_decompose(&state)?),
        ));
    }
    let worst = |kappa: f64| {
        draws
            .iter()
            .map(|(det, s)| (s * kappa - det).norm() / det.norm().max(f64::MIN_POSITIVE))
            .fold(0.0f64, f64::max)
    };
    let (kappa, deviation) = KAPPA_CANDIDATES
        .iter()
        .map(|&k| (k, worst(k)))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("candidate list is nonempty");
    if deviation > CALIBRATION_TOL {
        return Err(Error::Convention(format!(
            "no candidate scalar matches the polynomial route; best κ = {kappa} deviates by {deviation:e}"
        )));
    }
    Ok(LevayConvention {
        kappa,
        summation: "sum over p<q of P_pq^2".into(),
        raising: "euclidean".into(),
        sigma: "Sigma^s = -i sigma_s (s=1,2,3), Sigma^4 = I".into(),
        calibration_deviation: deviation,
        calibration_samples: samples,
    })
}

/// Process-wide convention, calibrated on first use and immutable afterwards.
pub fn levay_convention() -> Result<&'static LevayConvention> {
    static FROZEN: OnceLock<Result<LevayConvention>> = OnceLock::new();
    FROZEN
        .get_or_init(|| calibrate_levay(CALIBRATION_SEED, CALIBRATION_SAMPLES))
        .as_ref()
        .map_err(Clone::clone)
}

pub fn hyperdet_via_levay_with(
    state: &PureState,
    convention: &LevayConvention,
) -> Result<Complex64> {
    Ok(levay_square_sum(&pauli_decompose(state)?) * convention.kappa)
}

pub fn hyperdet_via_levay(state: &PureState) -> Result<Complex64> {
    hyperdet_via_levay_with(state, levay_convention()?)
}
