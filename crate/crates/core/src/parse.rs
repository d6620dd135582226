//! Text format for rational matrices.
//!
//! One row per line, entries separated by whitespace. Entries are integers
//! or fractions `p/q`. Everything after a `#` is a comment; blank lines are
//! skipped.
//!
//! ```text
//! # x1 + x2 - x3 = x3 - x4 - x5 = 0
//! 1 1 -1  0  0
//! 0 0  1 -1 -1
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linear::{kernel_basis, Rational, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: Vec<Vec<Rational>>,
    pub width: usize,
}

/// How the rows of an input matrix describe `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InputMode {
    /// `V` is the common null space of the rows.
    #[default]
    Equations,
    /// `V` is the row span.
    Span,
}

fn parse_entry(token: &str, line: usize) -> Result<Rational> {
    let bad = || Error::BadNumber {
        line,
        token: token.to_string(),
    };
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(Error::ZeroDenominator {
            line,
            token: token.to_string(),
        });
    }
    Ok(Rational::new(num, den))
}

/// Parses the matrix text format. Line numbers in errors are one-based.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut rows = Vec::new();
    let mut width = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let row = tokens
            .iter()
            .map(|t| parse_entry(t, line))
            .collect::<Result<Vec<_>>>()?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::RaggedRow {
                    row: rows.len(),
                    expected: w,
                    found: row.len(),
                })
            }
            Some(_) => {}
        }
        rows.push(row);
    }
    let width = width.ok_or(Error::EmptyMatrix)?;
    Ok(Matrix { rows, width })
}

/// Parses a matrix and interprets it as a subspace, enforcing the
/// ground-set guardrail unless `allow_large` is set.
pub fn parse_subspace(text: &str, mode: InputMode, allow_large: bool) -> Result<Subspace> {
    let m = parse_matrix(text)?;
    check_ground(m.width, allow_large)?;
    match mode {
        InputMode::Equations => kernel_basis(&m.rows, m.width),
        InputMode::Span => Subspace::span(m.width, m.rows),
    }
}

pub fn check_ground(size: usize, allow_large: bool) -> Result<()> {
    if size > crate::MAX_GROUND {
        return Err(Error::GroundSetUnsupported(size));
    }
    if size > crate::DEFAULT_GROUND_LIMIT && !allow_large {
        return Err(Error::GroundSetTooLarge {
            size,
            limit: crate::DEFAULT_GROUND_LIMIT,
        });
    }
    Ok(())
}
