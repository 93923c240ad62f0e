//! Shared matrix file format: a JSON document with an integer `n` and `data`,
//! n rows of n entries, each entry a 2-element `[re, im]` array.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::ComplexMatrix;

#[derive(Debug, Serialize, Deserialize)]
struct MatrixDoc {
    n: usize,
    data: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Error)]
pub enum MatFileError {
    #[error("invalid matrix document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("matrix data is not {n}x{n}")]
    Shape { n: usize },
    #[error("matrix entries must be finite")]
    NonFinite,
}

/// Parses the shared matrix format, rejecting non-square data and non-finite
/// numbers.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, MatFileError> {
    let doc: MatrixDoc = serde_json::from_str(text)?;
    if doc.data.len() != doc.n || doc.data.iter().any(|row| row.len() != doc.n) {
        return Err(MatFileError::Shape { n: doc.n });
    }
    let entries: Vec<Complex64> = doc
        .data
        .iter()
        .flatten()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(MatFileError::NonFinite);
    }
    ComplexMatrix::new(doc.n, entries).map_err(|_| MatFileError::Shape { n: doc.n })
}

/// Serializes a matrix into the shared format.
pub fn matrix_to_string(m: &ComplexMatrix) -> String {
    let n = m.dim();
    let data: Vec<Vec<[f64; 2]>> = (0..n)
        .map(|i| (0..n).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
        .collect();
    serde_json::to_string_pretty(&MatrixDoc { n, data }).expect("matrix document serializes")
}
