//! The JSON interchange format for configurations.
//!
//! ```json
//! {"p": 2, "d": 2, "vectors": [["1/2", "3"], ["1", "0"]]}
//! ```
//!
//! Rationals are strings matching `[+-]?digits(/digits)?` with a nonzero
//! denominator; rendering always uses the reduced form with the sign on the
//! numerator.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{FrameConfig, Vector};
use crate::prime::Prime;
use crate::rational::Rational;

/// A parse or validation failure, located by JSON path and, for syntax
/// errors, by line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub field: Option<String>,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn at(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError { field: Some(field.into()), line: None, column: None, message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Some(line), Some(column)) = (self.line, self.column) {
            write!(f, "line {line}, column {column}: ")?;
        }
        if let Some(field) = &self.field {
            write!(f, "{field}: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    p: u64,
    d: usize,
    vectors: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct RenderedConfig<'a> {
    p: u64,
    d: usize,
    vectors: Vec<&'a [Rational]>,
}

/// Parses and validates a configuration document.
pub fn parse_config(document: &str) -> Result<FrameConfig, ConfigError> {
    let raw: RawConfig = serde_json::from_str(document).map_err(|e| ConfigError {
        field: None,
        line: Some(e.line()),
        column: Some(e.column()),
        message: e.to_string(),
    })?;
    let p = Prime::new(raw.p).map_err(|_| ConfigError::at("p", format!("{} is not prime", raw.p)))?;
    if raw.d == 0 {
        return Err(ConfigError::at("d", "dimension must be positive"));
    }
    if raw.vectors.is_empty() {
        return Err(ConfigError::at("vectors", "at least one vector is required"));
    }
    let mut vectors = Vec::with_capacity(raw.vectors.len());
    for (j, row) in raw.vectors.iter().enumerate() {
        if row.len() != raw.d {
            return Err(ConfigError::at(
                format!("vectors[{j}]"),
                format!("has {} coordinates, expected d = {}", row.len(), raw.d),
            ));
        }
        let coords = row
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.parse::<Rational>()
                    .map_err(|e| ConfigError::at(format!("vectors[{j}][{i}]"), e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        vectors.push(Vector::new(p, coords));
    }
    FrameConfig::new(p, raw.d, vectors).map_err(|e| ConfigError::at("vectors", e.to_string()))
}

/// Canonical rendering; [`parse_config`] inverts it exactly.
pub fn render_config(config: &FrameConfig) -> String {
    let rendered = RenderedConfig {
        p: config.prime().get(),
        d: config.dim(),
        vectors: config.vectors().iter().map(Vector::coords).collect(),
    };
    serde_json::to_string(&rendered).expect("plain data serializes")
}
