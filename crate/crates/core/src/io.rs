//! JSON tensor documents.
//!
//! ```json
//! {"row_dims": [2], "col_dims": [2], "entries": [[1, 0], [0, 0], [0, 0], [1, 0]]}
//! ```
//!
//! `entries` holds `[re, im]` pairs in row-major order over the row tuple
//! followed by the column tuple, last index fastest. Numbers are written
//! with 17 significant digits, so a write-then-read round trip reproduces
//! every finite double bit for bit.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use crate::tensor::{DenseTensor, ModeShape};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("[{}] {message}", Self::MALFORMED)]
    Malformed {
        message: String,
        /// Offending entry, when the problem is local to one.
        index: Option<usize>,
    },
    #[error(
        "[{}] shape needs {expected} entries, document has {got}",
        Self::LENGTH_MISMATCH
    )]
    LengthMismatch { expected: usize, got: usize },
    #[error("[{}] entry {index} has a non-finite component", Self::NON_FINITE)]
    NonFinite { index: usize },
    #[error("[invalid-shape] {0}")]
    InvalidShape(String),
    #[error("[{}] {path}: {message}", Self::IO)]
    Io { path: String, message: String },
}

impl FormatError {
    pub const MALFORMED: &'static str = "malformed-json";
    pub const LENGTH_MISMATCH: &'static str = "length-mismatch";
    pub const NON_FINITE: &'static str = "non-finite";
    pub const INVALID_SHAPE: &'static str = "invalid-shape";
    pub const IO: &'static str = "io";

    pub fn code(&self) -> &'static str {
        match self {
            Self::Malformed { .. } => Self::MALFORMED,
            Self::LengthMismatch { .. } => Self::LENGTH_MISMATCH,
            Self::NonFinite { .. } => Self::NON_FINITE,
            Self::InvalidShape(_) => Self::INVALID_SHAPE,
            Self::Io { .. } => Self::IO,
        }
    }

    /// Entry index the error points at, if any.
    pub fn index(&self) -> Option<usize> {
        match self {
            Self::Malformed { index, .. } => *index,
            Self::NonFinite { index } => Some(*index),
            _ => None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorDocument {
    row_dims: Vec<usize>,
    col_dims: Vec<usize>,
    entries: Vec<Value>,
}

pub fn parse_tensor(text: &str) -> Result<DenseTensor, FormatError> {
    let doc: TensorDocument = serde_json::from_str(text).map_err(|e| FormatError::Malformed {
        message: e.to_string(),
        index: None,
    })?;
    let shape = ModeShape::new(&doc.row_dims, &doc.col_dims)
        .map_err(|e| FormatError::InvalidShape(e.to_string()))?;
    if doc.entries.len() != shape.len() {
        return Err(FormatError::LengthMismatch {
            expected: shape.len(),
            got: doc.entries.len(),
        });
    }
    let entries = doc
        .entries
        .iter()
        .enumerate()
        .map(|(index, v)| parse_entry(index, v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DenseTensor::new(shape, entries).expect("length and finiteness checked above"))
}

fn parse_entry(index: usize, value: &Value) -> Result<Complex64, FormatError> {
    let malformed = |what: &str| FormatError::Malformed {
        message: format!("entry {index}: {what}"),
        index: Some(index),
    };
    let pair = match value.as_array() {
        Some(p) if p.len() == 2 => p,
        _ => return Err(malformed("expected a [re, im] pair")),
    };
    let mut parts = [0.0f64; 2];
    for (slot, component) in parts.iter_mut().zip(pair) {
        let x = match component {
            // Raw decimal text, parsed here so out-of-range literals surface
            // as non-finite values instead of JSON syntax errors.
            Value::Number(n) => n
                .to_string()
                .parse::<f64>()
                .map_err(|_| malformed("unparseable number"))?,
            Value::String(s) => match s.to_ascii_lowercase().as_str() {
                "nan" | "inf" | "+inf" | "-inf" | "infinity" | "+infinity" | "-infinity" => {
                    f64::NAN
                }
                _ => return Err(malformed("string component")),
            },
            _ => return Err(malformed("components must be numbers")),
        };
        if !x.is_finite() {
            return Err(FormatError::NonFinite { index });
        }
        *slot = x;
    }
    Ok(Complex64::new(parts[0], parts[1]))
}

pub fn read_tensor(path: impl AsRef<Path>) -> Result<DenseTensor, FormatError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_tensor(&text)
}

/// Serializes with 17 significant digits per component.
pub fn to_json(t: &DenseTensor) -> String {
    let dims = |d: &[usize]| {
        d.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut s = String::new();
    s.push_str("{\n");
    let _ = writeln!(s, "  \"row_dims\": [{}],", dims(t.shape().row_dims()));
    let _ = writeln!(s, "  \"col_dims\": [{}],", dims(t.shape().col_dims()));
    s.push_str("  \"entries\": [\n");
    let n = t.entries().len();
    for (k, z) in t.entries().iter().enumerate() {
        let sep = if k + 1 == n { "" } else { "," };
        let _ = writeln!(s, "    [{:.16e}, {:.16e}]{sep}", z.re, z.im);
    }
    s.push_str("  ]\n}\n");
    s
}

pub fn write_tensor(path: impl AsRef<Path>, t: &DenseTensor) -> Result<(), FormatError> {
    let path = path.as_ref();
    fs::write(path, to_json(t)).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
