//! JSON file formats.
//!
//! A matrix is `{"rows": r, "cols": c, "data": [[re, im], ...]}` in row-major
//! order. Companion and KMS specs embed matrices in that form.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use sdlab_core::companion::GeneralizedCompanionSpec;
use sdlab_core::kms::KmsSpec;
use sdlab_core::ComplexMatrix;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        if self.rows == 0 || self.cols == 0 {
            return Err(CliError::Dimension(
                "matrix must have at least one row and column".into(),
            ));
        }
        if self.data.len() != self.rows * self.cols {
            return Err(CliError::Dimension(format!(
                "{}x{} matrix needs {} entries, file has {}",
                self.rows,
                self.cols,
                self.rows * self.cols,
                self.data.len()
            )));
        }
        let data = self
            .data
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::from_vec(self.rows, self.cols, data)
            .map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompanionFile {
    pub m: usize,
    pub n: usize,
    pub diag_blocks: Vec<MatrixFile>,
    pub bottom_blocks: Vec<MatrixFile>,
}

impl CompanionFile {
    pub fn to_spec(&self) -> Result<GeneralizedCompanionSpec, CliError> {
        let conv = |blocks: &[MatrixFile]| {
            blocks
                .iter()
                .map(MatrixFile::to_matrix)
                .collect::<Result<Vec<_>, _>>()
        };
        Ok(GeneralizedCompanionSpec::new(
            self.m,
            self.n,
            conv(&self.diag_blocks)?,
            conv(&self.bottom_blocks)?,
        )?)
    }

    pub fn from_spec(spec: &GeneralizedCompanionSpec) -> Self {
        Self {
            m: spec.m(),
            n: spec.n(),
            diag_blocks: spec
                .diag_blocks()
                .iter()
                .map(MatrixFile::from_matrix)
                .collect(),
            bottom_blocks: spec
                .bottom_blocks()
                .iter()
                .map(MatrixFile::from_matrix)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KmsFile {
    pub m: usize,
    pub a: MatrixFile,
}

impl KmsFile {
    pub fn to_spec(&self) -> Result<KmsSpec, CliError> {
        Ok(KmsSpec::new(self.m, self.a.to_matrix()?)?)
    }
}

/// A numerical-range input: either a bare matrix or a KMS spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RangeInput {
    Kms(KmsFile),
    Matrix(MatrixFile),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn load<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|e| match e {
        CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn load_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    load::<MatrixFile>(path)?.to_matrix()
}

/// Canonical formatting: pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
