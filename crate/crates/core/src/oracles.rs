//! Independent reference computations and the audit that runs them against
//! the main code paths.
//!
//! Nothing here reuses the reshaping or minor-enumeration code it checks.

use crate::error::{Error, Result};
use crate::exact::{ExactState, GaussianRational};
use crate::grassmann::{
    bipartition_matrix, max_relation_residual, partial_monotones, plucker_coordinates,
    total_monotone, BipartitionMatrix, PluckerSet,
};
use crate::hyperdet::{
    cayley_polynomial, diophantine_arguments, diophantine_p, hyperdet_222,
    hyperdet_via_diophantine, hyperdet_via_levay,
};
use crate::state::PureState;
use crate::tolerance;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// `det ρ_j` from an explicit single-qubit partial trace.
pub fn detrho_oracle(state: &PureState, j: usize) -> Result<f64> {
    let m = state.num_qubits();
    if j == 0 || j > m {
        return Err(Error::Argument(format!("qubit index {j} outside 1..={m}")));
    }
    let bit = 1usize << (m - j);
    let amps = state.amplitudes();
    let (mut r00, mut r11, mut r01) = (0.0, 0.0, Complex64::default());
    for k in 0..amps.len() {
        if k & bit != 0 {
            continue;
        }
        let (lo, hi) = (amps[k], amps[k | bit]);
        r00 += lo.norm_sqr();
        r11 += hi.norm_sqr();
        r01 += lo * hi.conj();
    }
    Ok(r00 * r11 - r01.norm_sqr())
}

/// `det(A A†)` of the 2×2 Gram matrix of a bipartition matrix.
pub fn gram_determinant(mat: &BipartitionMatrix) -> f64 {
    let (top, bottom) = (mat.row(0), mat.row(1));
    let g00: f64 = top.iter().map(Complex64::norm_sqr).sum();
    let g11: f64 = bottom.iter().map(Complex64::norm_sqr).sum();
    let g01: Complex64 = top.iter().zip(bottom).map(|(x, y)| x * y.conj()).sum();
    g00 * g11 - g01.norm_sqr()
}

/// Same contract as [`plucker_coordinates`], traversed column-major with the
/// cofactor written out in the opposite order.
pub fn naive_minors(mat: &BipartitionMatrix) -> Result<PluckerSet> {
    let d = mat.cols();
    if d < 2 {
        return Err(Error::NoMinors { cols: d });
    }
    let mut by_pair = Vec::with_capacity(d * (d - 1) / 2);
    for c2 in (2..=d).rev() {
        for c1 in (1..c2).rev() {
            let cofactor =
                -(mat.entry(2, c1) * mat.entry(1, c2)) + mat.entry(2, c2) * mat.entry(1, c1);
            by_pair.push(((c1, c2), cofactor));
        }
    }
    by_pair.sort_by_key(|&(pair, _)| pair);
    PluckerSet::from_coords(
        mat.qubit(),
        d,
        by_pair.into_iter().map(|(_, p)| p).collect(),
    )
}

/// `C = 2|α_{1,1}α_{2,2} − α_{1,2}α_{2,1}|` for a normalized two-qubit state.
pub fn two_qubit_concurrence(state: &PureState) -> Result<f64> {
    if state.num_qubits() != 2 {
        return Err(Error::UnsupportedFormat {
            expected: 2,
            got: state.num_qubits(),
        });
    }
    let a = state.amplitudes();
    Ok(2.0 * (a[0] * a[3] - a[1] * a[2]).norm())
}

fn exact_amplitudes(state: &ExactState) -> Result<[GaussianRational; 8]> {
    if state.num_qubits() != 3 {
        return Err(Error::UnsupportedFormat {
            expected: 3,
            got: state.num_qubits(),
        });
    }
    Ok(std::array::from_fn(|k| state.amplitudes()[k].clone()))
}

/// Exact value of the twelve-term hyperdeterminant polynomial.
pub fn exact_hyperdet(state: &ExactState) -> Result<GaussianRational> {
    Ok(cayley_polynomial(&exact_amplitudes(state)?))
}

/// Exact value of the Diophantine route.
pub fn exact_hyperdet_diophantine(state: &ExactState) -> Result<GaussianRational> {
    let (g, d) = diophantine_arguments(&exact_amplitudes(state)?);
    Ok(diophantine_p(&g, &d))
}

/// True iff both polynomial routes agree exactly.
pub fn exact_hyperdet_identity(state: &ExactState) -> Result<bool> {
    Ok(exact_hyperdet(state)? == exact_hyperdet_diophantine(state)?)
}

/// Outcome of one audit check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
}

impl CheckResult {
    fn new(name: &str, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            passed: residual < tolerance,
            residual,
            tolerance,
        }
    }
}

/// Audit knobs; `corrupt_plucker` perturbs one coordinate before the
/// relation check as a negative control.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditOptions {
    pub tol: f64,
    pub corrupt_plucker: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        Self {
            tol: tolerance::RESIDUAL,
            corrupt_plucker: false,
        }
    }
}

const MINOR_AGREEMENT: f64 = 1e-14;

/// Runs every oracle applicable to `state` (rescaled to unit norm first).
pub fn audit(state: &PureState, opts: AuditOptions) -> Result<Vec<CheckResult>> {
    let m = state.num_qubits();
    if m < 2 {
        return Err(Error::NoBipartition);
    }
    let state = state.normalize()?;
    let per_qubit = partial_monotones(&state)?;
    let mut checks = Vec::new();

    let (mut detrho, mut gram, mut minors, mut relations) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (idx, e_j) in per_qubit.iter().enumerate() {
        let j = idx + 1;
        let mat = bipartition_matrix(&state, j)?;
        detrho = detrho.max((detrho_oracle(&state, j)? - e_j).abs());
        gram = gram.max((gram_determinant(&mat) - e_j).abs());
        let mut pset = plucker_coordinates(&mat)?;
        let naive = naive_minors(&mat)?;
        let diff = pset
            .coords()
            .iter()
            .zip(naive.coords())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0f64, f64::max);
        minors = minors.max(diff);
        if opts.corrupt_plucker && j == 1 {
            for (k, p) in pset.coords_mut().iter_mut().enumerate() {
                *p += Complex64::new(0.25 * (k + 1) as f64, 0.0);
            }
        }
        relations = relations.max(max_relation_residual(&pset));
    }
    checks.push(CheckResult::new("detrho_oracle", detrho, opts.tol));
    checks.push(CheckResult::new("cauchy_binet_gram", gram, opts.tol));
    checks.push(CheckResult::new(
        "naive_minors",
        minors,
        MINOR_AGREEMENT.max(opts.tol * 1e-2),
    ));
    checks.push(CheckResult::new("plucker_relations", relations, opts.tol));
    let bound = per_qubit
        .iter()
        .map(|e| (-e).max(e - 0.25).max(0.0))
        .fold(0.0f64, f64::max);
    checks.push(CheckResult::new("monotone_bounds", bound, opts.tol));

    if m == 2 {
        // E_1 = E_2 = (C/2)², so E² = 2 (C/2)² at N = 1
        let c = two_qubit_concurrence(&state)?;
        let e = total_monotone(&state, 1.0)?.total;
        checks.push(CheckResult::new(
            "concurrence_bridge",
            (e * e - 2.0 * (c / 2.0).powi(2)).abs(),
            opts.tol,
        ));
    }
    if m == 3 {
        let d9 = hyperdet_222(&state)?;
        let d11 = hyperdet_via_diophantine(&state)?;
        let dl = hyperdet_via_levay(&state)?;
        let spread = [(d9 - d11).norm(), (d9 - dl).norm(), (d11 - dl).norm()]
            .into_iter()
            .fold(0.0f64, f64::max);
        checks.push(CheckResult::new(
            "hyperdet_triple_agreement",
            spread,
            opts.tol,
        ));
        let exact = ExactState::from_state(&state)?;
        let same = exact_hyperdet_identity(&exact)?;
        checks.push(CheckResult {
            name: "exact_hyperdet_identity".into(),
            passed: same,
            residual: if same { 0.0 } else { 1.0 },
            tolerance: 0.0,
        });
    }
    Ok(checks)
}
