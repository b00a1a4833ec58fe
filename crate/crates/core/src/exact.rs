//! Exact Gaussian-rational states for zero-tolerance identity checks.

use crate::error::{Error, Result};
use crate::state::PureState;
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

/// `a + b i` with `a, b` arbitrary-precision rationals.
pub type GaussianRational = Complex<BigRational>;

#[derive(Debug, Clone, PartialEq)]
pub struct ExactState {
    num_qubits: usize,
    amplitudes: Vec<GaussianRational>,
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    BigRational::new(
        BigInt::from(rng.random_range(-9i64..=9)),
        BigInt::from(rng.random_range(1i64..=9)),
    )
}

impl ExactState {
    pub fn new(num_qubits: usize, amplitudes: Vec<GaussianRational>) -> Result<Self> {
        if num_qubits == 0 || num_qubits > crate::state::MAX_QUBITS {
            return Err(Error::Argument(format!("invalid qubit count {num_qubits}")));
        }
        let expected = 1usize << num_qubits;
        if amplitudes.len() != expected {
            return Err(Error::Dimension {
                expected,
                got: amplitudes.len(),
            });
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Real and imaginary parts drawn as `n/q` with `|n| ≤ 9`, `1 ≤ q ≤ 9`.
    pub fn random_small<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Result<Self> {
        let amps = (0..1usize << num_qubits)
            .map(|_| Complex::new(small_rational(rng), small_rational(rng)))
            .collect();
        Self::new(num_qubits, amps)
    }

    /// Exact image of a floating-point state; every finite double is a dyadic rational.
    pub fn from_state(state: &PureState) -> Result<Self> {
        let conv = |x: f64| {
            BigRational::from_float(x)
                .ok_or_else(|| Error::Argument(format!("non-finite amplitude {x}")))
        };
        let amps = state
            .amplitudes()
            .iter()
            .map(|z| Ok(Complex::new(conv(z.re)?, conv(z.im)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(state.num_qubits(), amps)
    }

    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::new(
            num_qubits,
            vec![GaussianRational::zero(); 1usize << num_qubits],
        )
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[GaussianRational] {
        &self.amplitudes
    }
}

/// Integer-valued Gaussian rational.
pub fn int(re: i64, im: i64) -> GaussianRational {
    Complex::new(
        BigRational::from_integer(BigInt::from(re)),
        BigRational::from_integer(BigInt::from(im)),
    )
}
