//! JSON encoding of matrices and operator tuples.
//!
//! A matrix is a list of rows, each row a list of `[re, im]` pairs:
//!
//! ```json
//! {"matrices": [[[[1.0, 0.0], [0.0, -2.5]], [[0.0, 0.0], [3.0, 0.0]]]]}
//! ```
//!
//! `serde_json` prints the shortest decimal that round-trips each `f64`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::matcore::{c, ComplexMatrix};
use crate::tuple::OperatorTuple;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixJson(pub Vec<Vec<[f64; 2]>>);

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self((0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect())
    }

    /// Panics on ragged rows; use [`MatrixJson::try_to_matrix`] for untrusted input.
    pub fn to_matrix(&self) -> ComplexMatrix {
        self.try_to_matrix().expect("rectangular matrix")
    }

    pub fn try_to_matrix(&self) -> Result<ComplexMatrix> {
        let rows = self.0.len();
        let cols = self.0.first().map_or(0, Vec::len);
        if self.0.iter().any(|r| r.len() != cols) {
            return input("ragged matrix rows");
        }
        Ok(ComplexMatrix::from_fn(rows, cols, |i, j| c(self.0[i][j][0], self.0[i][j][1])))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TupleFile {
    pub matrices: Vec<MatrixJson>,
}

impl TupleFile {
    pub fn from_tuple(t: &OperatorTuple) -> Self {
        Self { matrices: t.matrices().iter().map(MatrixJson::from_matrix).collect() }
    }

    pub fn to_tuple(&self) -> Result<OperatorTuple> {
        OperatorTuple::new(self.matrices.iter().map(MatrixJson::try_to_matrix).collect::<Result<_>>()?)
    }
}

pub fn parse_tuple(text: &str) -> Result<OperatorTuple> {
    serde_json::from_str::<TupleFile>(text)?.to_tuple()
}

pub fn read_tuple(path: &Path) -> Result<OperatorTuple> {
    parse_tuple(&std::fs::read_to_string(path)?)
}

pub fn write_tuple(path: &Path, t: &OperatorTuple) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(&TupleFile::from_tuple(t))?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::from_real_rows;

    #[test]
    fn parses_documented_layout() {
        let t = parse_tuple(r#"{"matrices": [[[[1.0, 0.0], [0.0, -2.5]], [[0.0, 0.0], [3.0, 0.0]]]]}"#).unwrap();
        assert_eq!(t.n(), 1);
        assert_eq!(t.get(0)[(0, 1)], c(0.0, -2.5));
        assert_eq!(t.get(0)[(1, 1)], c(3.0, 0.0));
    }

    #[test]
    fn rejects_ragged_and_rectangular() {
        assert!(parse_tuple(r#"{"matrices": [[[[1.0, 0.0]], [[0.0, 0.0], [3.0, 0.0]]]]}"#).is_err());
        assert!(parse_tuple(r#"{"matrices": [[[[1.0, 0.0], [2.0, 0.0]]]]}"#).is_err());
        assert!(parse_tuple("not json").is_err());
    }

    #[test]
    fn doubles_round_trip_exactly() {
        let m = from_real_rows(2, &[0.1, 1.0 / 3.0, -7e-300, std::f64::consts::PI]);
        let t = OperatorTuple::new(vec![m]).unwrap();
        let text = serde_json::to_string(&TupleFile::from_tuple(&t)).unwrap();
        assert_eq!(parse_tuple(&text).unwrap(), t);
    }
}
