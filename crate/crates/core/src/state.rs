//! Pure multi-qubit states and their reduced density matrices.
//!
//! Amplitude labels follow the `{1,2}` convention: `α_{k_1,…,k_m}` sits at flat
//! index `Σ_j (k_j − 1)·2^{m−j}`, so qubit 1 is the most significant bit.
//! Qubits are numbered from 1 throughout the public API.

use crate::error::{Error, Result};
use crate::rng;
use crate::tolerance;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

/// Largest register handled; keeps `2^m` well inside `usize`.
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
    normalized: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedState {
    Ghz,
    W,
}

impl FromStr for NamedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GHZ" => Ok(Self::Ghz),
            "W" => Ok(Self::W),
            _ => Err(Error::UnsupportedState(s.to_string())),
        }
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ghz => f.write_str("GHZ"),
            Self::W => f.write_str("W"),
        }
    }
}

fn check_qubits(m: usize) -> Result<()> {
    if m == 0 || m > MAX_QUBITS {
        return Err(Error::Argument(format!(
            "number of qubits must be in 1..={MAX_QUBITS}, got {m}"
        )));
    }
    Ok(())
}

/// Flat index of a `{1,2}`-valued multi-index.
pub fn flat_index(multi_index: &[u8]) -> Result<usize> {
    multi_index.iter().try_fold(0usize, |acc, &k| match k {
        1 | 2 => Ok((acc << 1) | usize::from(k - 1)),
        _ => Err(Error::Index(format!("index digit {k} is not in {{1,2}}"))),
    })
}

/// Inverse of [`flat_index`] for an `m`-qubit register.
pub fn multi_index(flat: usize, m: usize) -> Vec<u8> {
    (0..m)
        .map(|j| 1 + ((flat >> (m - 1 - j)) & 1) as u8)
        .collect()
}

impl PureState {
    /// Builds a state from `2^m` amplitudes in flat-index order.
    pub fn new(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubits(num_qubits)?;
        let expected = 1usize << num_qubits;
        if amplitudes.len() != expected {
            return Err(Error::Dimension {
                expected,
                got: amplitudes.len(),
            });
        }
        let norm_sqr: f64 = amplitudes.iter().map(Complex64::norm_sqr).sum();
        if norm_sqr == 0.0 {
            return Err(Error::DegenerateState);
        }
        Ok(Self {
            num_qubits,
            amplitudes,
            normalized: (norm_sqr - 1.0).abs() <= tolerance::NORM,
        })
    }

    /// Tensor product of single-qubit factors, normalized.
    pub fn product(factors: &[[Complex64; 2]]) -> Result<Self> {
        check_qubits(factors.len())?;
        let mut amps = vec![Complex64::new(1.0, 0.0)];
        for f in factors {
            let n = (f[0].norm_sqr() + f[1].norm_sqr()).sqrt();
            if n == 0.0 {
                return Err(Error::DegenerateState);
            }
            let (a, b) = (f[0] / n, f[1] / n);
            amps = amps.iter().flat_map(|&x| [x * a, x * b]).collect();
        }
        Self::new(factors.len(), amps)
    }

    pub fn named(name: NamedState, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Argument(format!(
                "{name} state needs at least 2 qubits, got {m}"
            )));
        }
        check_qubits(m)?;
        let dim = 1usize << m;
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        match name {
            NamedState::Ghz => {
                let c = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                amps[0] = c;
                amps[dim - 1] = c;
            }
            NamedState::W => {
                let c = Complex64::new(1.0 / (m as f64).sqrt(), 0.0);
                for j in 0..m {
                    amps[1 << j] = c;
                }
            }
        }
        Self::new(m, amps)
    }

    /// Normalized vector of `2^m` i.i.d. standard complex Gaussians drawn from `seed`.
    pub fn haar_random(m: usize, seed: u64) -> Result<Self> {
        Self::haar_random_with(m, &mut rng::from_seed(seed))
    }

    pub fn haar_random_with<R: rand::Rng + ?Sized>(m: usize, rng: &mut R) -> Result<Self> {
        check_qubits(m)?;
        let amps: Vec<Complex64> = (0..1usize << m)
            .map(|_| rng::complex_gaussian(rng))
            .collect();
        Self::new(m, amps)?.normalize()
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    /// `α_{k_1,…,k_m}` for a `{1,2}`-valued multi-index.
    pub fn amplitude(&self, multi: &[u8]) -> Result<Complex64> {
        if multi.len() != self.num_qubits {
            return Err(Error::Index(format!(
                "multi-index has length {}, state has {} qubits",
                multi.len(),
                self.num_qubits
            )));
        }
        Ok(self.amplitudes[flat_index(multi)?])
    }

    /// Copy rescaled to unit norm.
    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm();
        Self::new(
            self.num_qubits,
            self.amplitudes.iter().map(|a| a / n).collect(),
        )
    }

    pub fn scale(&self, c: Complex64) -> Result<Self> {
        Self::new(
            self.num_qubits,
            self.amplitudes.iter().map(|a| a * c).collect(),
        )
    }

    /// Validates a 1-based qubit label.
    pub(crate) fn check_qubit(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.num_qubits {
            return Err(Error::Argument(format!(
                "qubit index {j} outside 1..={}",
                self.num_qubits
            )));
        }
        Ok(())
    }

    /// Partial trace over every qubit not listed in `keep` (1-based labels).
    ///
    /// The kept qubits index the result in increasing order, lowest label most
    /// significant.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let m = self.num_qubits;
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if kept.len() != keep.len() {
            return Err(Error::Argument("repeated qubit in keep set".into()));
        }
        if kept.is_empty() || kept.len() == m {
            return Err(Error::Argument(format!(
                "keep set must be a nonempty proper subset of 1..={m}"
            )));
        }
        for &j in &kept {
            self.check_qubit(j)?;
        }
        let traced: Vec<usize> = (1..=m).filter(|j| !kept.contains(j)).collect();
        let gather = |labels: &[usize], k: usize| {
            labels
                .iter()
                .fold(0usize, |acc, &j| (acc << 1) | ((k >> (m - j)) & 1))
        };
        let (dk, dt) = (1usize << kept.len(), 1usize << traced.len());
        let mut split = DMatrix::<Complex64>::zeros(dk, dt);
        for (k, &a) in self.amplitudes.iter().enumerate() {
            split[(gather(&kept, k), gather(&traced, k))] = a;
        }
        Ok(DensityMatrix {
            entries: &split * split.adjoint(),
        })
    }
}

/// Square complex matrix used for reduced states.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn from_entries(entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::Argument("density matrix must be square".into()));
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    pub fn determinant(&self) -> Complex64 {
        self.entries.determinant()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        (&self.entries * &self.entries).trace().re
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.entries - self.entries.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0);
        herm.symmetric_eigenvalues().min()
    }

    pub fn is_valid(&self) -> bool {
        self.hermiticity_error() <= tolerance::HERMITIAN && self.min_eigenvalue() >= -tolerance::PSD
    }
}
