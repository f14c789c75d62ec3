//! The matrix interchange format: a JSON object with "rows", "cols" and a
//! row-major "data" array of [re, im] pairs. Families of matrices are JSON
//! arrays of these objects, ordered by ascending power of the parameter.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use projpair_core::perturbation::MatrixFamily;
use projpair_core::{Complex64, ComplexMatrix};

use crate::error::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn into_matrix(self, path: &Path) -> Result<ComplexMatrix, CliError> {
        if self.data.len() != self.rows * self.cols {
            return Err(CliError::Parse {
                path: path.to_owned(),
                message: format!(
                    "data carries {} entries for a {}x{} matrix",
                    self.data.len(),
                    self.rows,
                    self.cols
                ),
            });
        }
        let entries = self
            .data
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::new(self.rows, self.cols, entries).map_err(|e| CliError::Parse {
            path: path.to_owned(),
            message: e.to_string(),
        })
    }
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Read {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    let parsed: MatrixJson = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    parsed.into_matrix(path)
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<(), CliError> {
    let body = serde_json::to_string_pretty(&MatrixJson::from_matrix(m))
        .expect("matrix serialization cannot fail");
    fs::write(path, body + "\n").map_err(|e| CliError::Write {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

/// Reads a polynomial family `A(z) = Σ zʲ Cⱼ` given as an array of matrix
/// objects, constant coefficient first.
pub fn read_family(path: &Path) -> Result<MatrixFamily, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Read {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    let parsed: Vec<MatrixJson> = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    let mut coefficients = Vec::with_capacity(parsed.len());
    for entry in parsed {
        coefficients.push(entry.into_matrix(path)?);
    }
    MatrixFamily::from_coefficients(coefficients).map_err(|e| CliError::Parse {
        path: path.to_owned(),
        message: e.to_string(),
    })
}
