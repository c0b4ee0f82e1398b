//! Line-based text formats for diagrams, series and matrices.
//!
//! All three share the same lexical rules: `#` starts a comment, blank
//! lines are ignored, and tokens are separated by whitespace.

mod diagram;
mod matrix;
mod series;

pub use diagram::{parse_diagrams, write_diagram, NamedDiagram};
pub use matrix::{parse_matrix, write_matrix};
pub use series::{parse_series, write_series};

use std::fmt;

/// A syntax or validation error at a 1-based line number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Non-empty lines with comments stripped, paired with their line numbers.
pub(crate) fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = l.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

/// Parses `n` or `n/d` with integer `n` and nonzero integer `d`.
pub fn parse_rational_token(s: &str) -> Option<jacobi_core::Rational> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: num_bigint::BigInt = n.parse().ok()?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    (!num_traits::Zero::is_zero(&d)).then(|| jacobi_core::Rational::new(n, d))
}

pub(crate) fn parse_rational(line: usize, s: &str) -> Result<jacobi_core::Rational, ParseError> {
    parse_rational_token(s).ok_or_else(|| {
        let why = if s.ends_with("/0") { "zero denominator in" } else { "expected a rational number, found" };
        ParseError::new(line, format!("{why} {s:?}"))
    })
}
