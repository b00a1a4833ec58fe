//! Bipartition matrices, their Plücker coordinates, and the Plücker-coordinate
//! entanglement monotone.
//!
//! `Mat^j` is the `2 × 2^{m−1}` reshaping of the amplitude tensor with the
//! value of `k_j` selecting the row. Its 2×2 minors are the Plücker coordinates
//! of a point of `Gr(2, d)`; they all vanish exactly when qubit `j` factors out.

use crate::error::{Error, Result};
use crate::state::PureState;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// `Mat^j`: row `r` holds the amplitudes with `k_j = r`, columns run
/// lexicographically over the remaining indices.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartitionMatrix {
    qubit: usize,
    rows: [Vec<Complex64>; 2],
}

impl BipartitionMatrix {
    pub fn from_rows(qubit: usize, top: Vec<Complex64>, bottom: Vec<Complex64>) -> Result<Self> {
        if top.len() != bottom.len() || top.is_empty() {
            return Err(Error::Argument(format!(
                "bipartition rows must have equal nonzero length, got {} and {}",
                top.len(),
                bottom.len()
            )));
        }
        Ok(Self {
            qubit,
            rows: [top, bottom],
        })
    }

    pub fn qubit(&self) -> usize {
        self.qubit
    }

    pub fn cols(&self) -> usize {
        self.rows[0].len()
    }

    /// Row `r ∈ {0, 1}` (amplitude label `r + 1`).
    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.rows[r]
    }

    /// Entry with 1-based row and column labels.
    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.rows[r - 1][c - 1]
    }
}

/// Reshapes `state` into `Mat^j` (qubit `j` is 1-based).
pub fn bipartition_matrix(state: &PureState, j: usize) -> Result<BipartitionMatrix> {
    state.check_qubit(j)?;
    let m = state.num_qubits();
    let amps = state.amplitudes();
    let shift = m - j;
    let low_mask = (1usize << shift) - 1;
    let d = 1usize << (m - 1);
    let row = |r: usize| -> Vec<Complex64> {
        (0..d)
            .map(|c| amps[((c >> shift) << (shift + 1)) | (r << shift) | (c & low_mask)])
            .collect()
    };
    Ok(BipartitionMatrix {
        qubit: j,
        rows: [row(0), row(1)],
    })
}

/// Position of the 0-based pair `a < b` in lexicographic pair order.
#[inline]
fn pair_slot(a: usize, b: usize, d: usize) -> usize {
    a * (2 * d - a - 1) / 2 + (b - a - 1)
}

/// All 2×2 minors `P_{c1,c2}`, `c1 < c2`, of one bipartition matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PluckerSet {
    qubit: usize,
    cols: usize,
    coords: Vec<Complex64>,
}

impl PluckerSet {
    /// Builds a set from coordinates listed in lexicographic `(c1, c2)` order.
    pub fn from_coords(qubit: usize, cols: usize, coords: Vec<Complex64>) -> Result<Self> {
        let expected = cols * cols.saturating_sub(1) / 2;
        if coords.len() != expected {
            return Err(Error::Dimension {
                expected,
                got: coords.len(),
            });
        }
        Ok(Self {
            qubit,
            cols,
            coords,
        })
    }

    pub fn qubit(&self) -> usize {
        self.qubit
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Raw coordinates in lexicographic pair order.
    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn coords_mut(&mut self) -> &mut [Complex64] {
        &mut self.coords
    }

    /// `P_{c1,c2}` for 1-based labels `c1 < c2`.
    pub fn get(&self, c1: usize, c2: usize) -> Option<Complex64> {
        (1 <= c1 && c1 < c2 && c2 <= self.cols)
            .then(|| self.coords[pair_slot(c1 - 1, c2 - 1, self.cols)])
    }

    /// Antisymmetric extension: `P_{a,b} = −P_{b,a}`, `P_{a,a} = 0`.
    pub fn antisym(&self, a: usize, b: usize) -> Complex64 {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Less => self.get(a, b).unwrap_or_default(),
            Greater => -self.get(b, a).unwrap_or_default(),
            Equal => Complex64::default(),
        }
    }

    /// `(c1, c2, P_{c1,c2})` with 1-based labels.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        let d = self.cols;
        (0..d)
            .flat_map(move |a| (a + 1..d).map(move |b| (a, b)))
            .zip(self.coords.iter())
            .map(|((a, b), &p)| (a + 1, b + 1, p))
    }

    /// Dense `d × d` antisymmetric table, row-major.
    fn dense(&self) -> Vec<Complex64> {
        let d = self.cols;
        let mut table = vec![Complex64::default(); d * d];
        for (c1, c2, p) in self.iter() {
            table[(c1 - 1) * d + (c2 - 1)] = p;
            table[(c2 - 1) * d + (c1 - 1)] = -p;
        }
        table
    }
}

/// Every 2×2 minor of `mat`.
pub fn plucker_coordinates(mat: &BipartitionMatrix) -> Result<PluckerSet> {
    let d = mat.cols();
    if d < 2 {
        return Err(Error::NoMinors { cols: d });
    }
    let (top, bottom) = (mat.row(0), mat.row(1));
    let mut coords = Vec::with_capacity(d * (d - 1) / 2);
    for a in 0..d {
        for b in a + 1..d {
            coords.push(top[a] * bottom[b] - top[b] * bottom[a]);
        }
    }
    Ok(PluckerSet {
        qubit: mat.qubit(),
        cols: d,
        coords,
    })
}

/// One quadratic Plücker relation `P_{I,J}` evaluated on a coordinate set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationResidual {
    /// `I = (i1)`, 1-based.
    pub i: usize,
    /// Increasing `J = (j1, j2, j3)`, 1-based.
    pub j: [usize; 3],
    pub residual: Complex64,
}

#[inline]
fn three_term(p: &[Complex64], d: usize, i: usize, [a, b, c]: [usize; 3]) -> Complex64 {
    let at = |x: usize, y: usize| p[x * d + y];
    -at(i, a) * at(b, c) + at(i, b) * at(a, c) - at(i, c) * at(a, b)
}

/// Residuals `Σ_t (−1)^t P_{i1,j_t} P_{J∖j_t}` for every `i1` and every
/// increasing triple `J`. Empty when `d < 4`.
pub fn plucker_relation_residuals(pset: &PluckerSet) -> Vec<RelationResidual> {
    let d = pset.cols();
    if d < 4 {
        return Vec::new();
    }
    let p = pset.dense();
    let mut out = Vec::with_capacity(d * d * (d - 1) * (d - 2) / 6);
    for i in 0..d {
        for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    out.push(RelationResidual {
                        i: i + 1,
                        j: [a + 1, b + 1, c + 1],
                        residual: three_term(&p, d, i, [a, b, c]),
                    });
                }
            }
        }
    }
    out
}

/// `max |P_{I,J}|` over all relations, without materializing them.
///
/// Relations with `i1 ∈ J` cancel identically and are skipped.
pub fn max_relation_residual(pset: &PluckerSet) -> f64 {
    let d = pset.cols();
    if d < 4 {
        return 0.0;
    }
    let p = pset.dense();
    let mut worst = 0.0f64;
    for a in 0..d {
        for b in a + 1..d {
            let pab = p[a * d + b];
            for c in b + 1..d {
                let (pbc, pac) = (p[b * d + c], p[a * d + c]);
                for (i, row) in p.chunks_exact(d).enumerate() {
                    if i == a || i == b || i == c {
                        continue;
                    }
                    let r = -row[a] * pbc + row[b] * pac - row[c] * pab;
                    worst = worst.max(r.norm_sqr());
                }
            }
        }
    }
    worst.sqrt()
}

/// `E_j = Σ_{c1<c2} |P_{c1,c2}|²`, each column pair counted once.
pub fn partial_monotone(pset: &PluckerSet) -> f64 {
    pset.coords.iter().map(Complex64::norm_sqr).sum()
}

/// Per-qubit monotones `E_j`, the normalization constant, and the total
/// `E = (N Σ_j E_j)^{1/2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneReport {
    pub per_qubit: Vec<f64>,
    pub normalization: f64,
    pub total: f64,
}

/// `E_j` for every qubit of `state`, in qubit order.
pub fn partial_monotones(state: &PureState) -> Result<Vec<f64>> {
    if state.num_qubits() < 2 {
        return Err(Error::NoBipartition);
    }
    (1..=state.num_qubits())
        .map(|j| {
            Ok(partial_monotone(&plucker_coordinates(
                &bipartition_matrix(state, j)?,
            )?))
        })
        .collect()
}

pub fn total_monotone(state: &PureState, normalization: f64) -> Result<MonotoneReport> {
    if !(normalization > 0.0 && normalization.is_finite()) {
        return Err(Error::Argument(format!(
            "normalization must be a positive finite number, got {normalization}"
        )));
    }
    let per_qubit = partial_monotones(state)?;
    let total = (normalization * per_qubit.iter().sum::<f64>()).sqrt();
    Ok(MonotoneReport {
        per_qubit,
        normalization,
        total,
    })
}

/// True iff `E_j < tol`, i.e. qubit `j` factors out of the state at tolerance `tol`.
pub fn separability_witness(state: &PureState, j: usize, tol: f64) -> Result<bool> {
    if state.num_qubits() < 2 {
        return Err(Error::NoBipartition);
    }
    let pset = plucker_coordinates(&bipartition_matrix(state, j)?)?;
    Ok(partial_monotone(&pset) < tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::NamedState;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn labelled_state() -> PureState {
        // amplitude at flat index k is k + 1 (+ k i), so entries identify themselves
        let amps = (0..8)
            .map(|k| Complex64::new(k as f64 + 1.0, k as f64))
            .collect();
        PureState::new(3, amps).unwrap()
    }

    #[test]
    fn mat1_matches_printed_layout() {
        let s = labelled_state();
        let mat = bipartition_matrix(&s, 1).unwrap();
        let top = [[1, 1, 1], [1, 1, 2], [1, 2, 1], [1, 2, 2]];
        let bottom = [[2, 1, 1], [2, 1, 2], [2, 2, 1], [2, 2, 2]];
        for col in 0..4 {
            assert_eq!(mat.entry(1, col + 1), s.amplitude(&top[col]).unwrap());
            assert_eq!(mat.entry(2, col + 1), s.amplitude(&bottom[col]).unwrap());
        }
    }

    #[test]
    fn mat_j_row_selects_kj() {
        let s = PureState::haar_random(4, 3).unwrap();
        for j in 1..=4 {
            let mat = bipartition_matrix(&s, j).unwrap();
            for r in 1..=2u8 {
                for col in 0..8usize {
                    let rest: Vec<u8> = (0..3).map(|t| 1 + ((col >> (2 - t)) & 1) as u8).collect();
                    let mut idx = rest.clone();
                    idx.insert(j - 1, r);
                    assert_eq!(mat.entry(r as usize, col + 1), s.amplitude(&idx).unwrap());
                }
            }
        }
    }

    #[test]
    fn w_state_mat1() {
        let w = PureState::named(NamedState::W, 3).unwrap();
        let mat = bipartition_matrix(&w, 1).unwrap();
        let a = 1.0 / 3f64.sqrt();
        let want = [[0.0, a, a, 0.0], [a, 0.0, 0.0, 0.0]];
        for r in 0..2 {
            for col in 0..4 {
                assert!((mat.entry(r + 1, col + 1) - c(want[r][col])).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn single_qubit_matrix_has_no_minors() {
        let s = PureState::new(1, vec![c(0.6), c(0.8)]).unwrap();
        let mat = bipartition_matrix(&s, 1).unwrap();
        assert_eq!(mat.cols(), 1);
        assert_eq!((mat.entry(1, 1), mat.entry(2, 1)), (c(0.6), c(0.8)));
        assert_eq!(plucker_coordinates(&mat), Err(Error::NoMinors { cols: 1 }));
        assert!(matches!(bipartition_matrix(&s, 2), Err(Error::Argument(_))));
        assert!(matches!(bipartition_matrix(&s, 0), Err(Error::Argument(_))));
    }

    #[test]
    fn ghz_coordinates() {
        let g = PureState::named(NamedState::Ghz, 3).unwrap();
        let pset = plucker_coordinates(&bipartition_matrix(&g, 1).unwrap()).unwrap();
        assert_eq!(pset.len(), 6);
        for (c1, c2, p) in pset.iter() {
            let want = if (c1, c2) == (1, 4) { 0.5 } else { 0.0 };
            assert!((p - c(want)).norm() < 1e-15, "P_{c1},{c2} = {p}");
        }
        assert!(plucker_relation_residuals(&pset)
            .iter()
            .all(|r| r.residual == Complex64::default()));
    }

    #[test]
    fn rank_one_matrix_has_zero_coordinates() {
        let u = [Complex64::new(0.3, -0.2), Complex64::new(1.1, 0.4)];
        let v: Vec<Complex64> = (0..5)
            .map(|k| Complex64::new(k as f64, 1.0 - k as f64))
            .collect();
        let mat = BipartitionMatrix::from_rows(
            1,
            v.iter().map(|x| u[0] * x).collect(),
            v.iter().map(|x| u[1] * x).collect(),
        )
        .unwrap();
        let pset = plucker_coordinates(&mat).unwrap();
        assert_eq!(pset.len(), 10);
        assert!(pset.coords().iter().all(|p| p.norm() < 1e-14));
    }

    #[test]
    fn hand_built_non_minor_set_violates_relation() {
        // lexicographic order: 12, 13, 14, 23, 24, 34
        let coords = vec![c(1.0), c(0.0), c(0.0), c(0.0), c(0.0), c(1.0)];
        let pset = PluckerSet::from_coords(1, 4, coords).unwrap();
        let res = plucker_relation_residuals(&pset);
        assert_eq!(res.len(), 4 * 4);
        let r = res.iter().find(|r| r.i == 1 && r.j == [2, 3, 4]).unwrap();
        assert_eq!(r.residual, c(-1.0));
        assert_eq!(max_relation_residual(&pset), 1.0);
    }

    #[test]
    fn relation_set_is_empty_below_four_columns() {
        let s = PureState::haar_random(2, 9).unwrap();
        let pset = plucker_coordinates(&bipartition_matrix(&s, 1).unwrap()).unwrap();
        assert!(plucker_relation_residuals(&pset).is_empty());
        assert_eq!(max_relation_residual(&pset), 0.0);
    }

    #[test]
    fn antisymmetric_access() {
        let s = PureState::haar_random(3, 11).unwrap();
        let pset = plucker_coordinates(&bipartition_matrix(&s, 2).unwrap()).unwrap();
        for a in 1..=4 {
            assert_eq!(pset.antisym(a, a), Complex64::default());
            for b in 1..=4 {
                assert_eq!(pset.antisym(a, b), -pset.antisym(b, a));
            }
        }
        assert_eq!(pset.get(2, 1), None);
        assert_eq!(pset.get(1, 5), None);
    }

    #[test]
    fn w_state_monotones() {
        let w = PureState::named(NamedState::W, 3).unwrap();
        let per = partial_monotones(&w).unwrap();
        for e in &per {
            assert!((e - 2.0 / 9.0).abs() < 1e-15);
        }
        let report = total_monotone(&w, 1.0).unwrap();
        assert!((report.total - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ghz_and_bell_totals() {
        let g = PureState::named(NamedState::Ghz, 3).unwrap();
        assert!((total_monotone(&g, 1.0).unwrap().total - 0.75f64.sqrt()).abs() < 1e-15);
        let bell = PureState::named(NamedState::Ghz, 2).unwrap();
        let r = total_monotone(&bell, 1.0).unwrap();
        assert!((r.per_qubit[0] - 0.25).abs() < 1e-15);
        assert!((r.per_qubit[1] - 0.25).abs() < 1e-15);
        assert!((r.total - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn total_monotone_errors() {
        let s = PureState::new(1, vec![c(1.0), c(0.0)]).unwrap();
        assert_eq!(total_monotone(&s, 1.0), Err(Error::NoBipartition));
        let w = PureState::named(NamedState::W, 3).unwrap();
        assert!(matches!(total_monotone(&w, 0.0), Err(Error::Argument(_))));
        assert!(matches!(
            total_monotone(&w, f64::NAN),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn witness_on_product_ghz_and_bell_pair() {
        let prod = PureState::product(&[
            [c(1.0), c(2.0)],
            [Complex64::new(0.0, 1.0), c(1.0)],
            [c(0.3), c(-0.7)],
        ])
        .unwrap();
        for j in 1..=3 {
            assert!(separability_witness(&prod, j, 1e-10).unwrap());
        }
        let g = PureState::named(NamedState::Ghz, 3).unwrap();
        assert!(!separability_witness(&g, 1, 1e-10).unwrap());
        // |1⟩ ⊗ Bell
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = PureState::new(
            3,
            vec![c(h), c(0.0), c(0.0), c(h), c(0.0), c(0.0), c(0.0), c(0.0)],
        )
        .unwrap();
        assert!(separability_witness(&s, 1, 1e-10).unwrap());
        assert!(!separability_witness(&s, 2, 1e-10).unwrap());
        assert!(matches!(
            separability_witness(&s, 4, 1e-10),
            Err(Error::Argument(_))
        ));
    }
}
