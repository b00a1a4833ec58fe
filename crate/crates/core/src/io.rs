//! State files, 17-significant-digit JSON, and Plücker CSV tables.

use crate::error::{Error, Result};
use crate::grassmann::PluckerSet;
use crate::state::PureState;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use std::io;

/// `{"num_qubits": m, "amplitudes": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub num_qubits: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl From<&PureState> for StateFile {
    fn from(state: &PureState) -> Self {
        Self {
            num_qubits: state.num_qubits(),
            amplitudes: state.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<StateFile> for PureState {
    type Error = Error;

    fn try_from(file: StateFile) -> Result<Self> {
        let amps = file
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        PureState::new(file.num_qubits, amps)
    }
}

pub fn parse_state(json: &str) -> Result<PureState> {
    let file: StateFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.try_into()
}

pub fn state_to_json(state: &PureState) -> String {
    to_json(&StateFile::from(state))
}

/// Formats a double with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Pretty printer that writes every double at 17 significant digits.
#[derive(Default)]
struct FullPrecision<'a> {
    inner: PrettyFormatter<'a>,
}

impl Formatter for FullPrecision<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

/// Pretty JSON with full-precision doubles.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision::default());
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization of plain data cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// `j,c1,c2,re,im` rows, header first.
pub fn plucker_csv(sets: &[PluckerSet]) -> String {
    let mut out = String::from("j,c1,c2,re,im\n");
    for set in sets {
        for (c1, c2, p) in set.iter() {
            out.push_str(&format!(
                "{},{c1},{c2},{},{}\n",
                set.qubit(),
                fmt_f64(p.re),
                fmt_f64(p.im)
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{bipartition_matrix, plucker_coordinates};
    use crate::state::NamedState;

    #[test]
    fn state_json_round_trip_is_bit_exact() {
        let s = PureState::haar_random(3, 5).unwrap();
        let json = state_to_json(&s);
        assert_eq!(parse_state(&json).unwrap(), s);
    }

    #[test]
    fn doubles_carry_17_digits() {
        let json = to_json(&[std::f64::consts::FRAC_1_SQRT_2]);
        assert!(json.contains("7.0710678118654757e-1"), "{json}");
    }

    #[test]
    fn malformed_and_mismatched_input() {
        assert!(matches!(parse_state("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_state(r#"{"num_qubits": 2, "amplitudes": [[1, 0]]}"#),
            Err(Error::Dimension {
                expected: 4,
                got: 1
            })
        ));
        assert!(matches!(
            parse_state(r#"{"num_qubits": 1, "amplitudes": [[1, 0], [0, 0]], "x": 1}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn csv_rows() {
        let g = PureState::named(NamedState::Ghz, 3).unwrap();
        let pset = plucker_coordinates(&bipartition_matrix(&g, 2).unwrap()).unwrap();
        let csv = plucker_csv(&[pset]);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0], "j,c1,c2,re,im");
        let fields: Vec<_> = lines[3].split(',').collect();
        assert_eq!(&fields[..3], &["2", "1", "4"]);
        assert!((fields[3].parse::<f64>().unwrap() - 0.5).abs() < 1e-15);
    }
}
