//! DIMACS CNF reader.
//!
//! Accepts `c` comment lines, a single `p cnf <vars> <clauses>` header and
//! whitespace-separated clauses terminated by `0`. Clauses may span lines.
//! DIMACS literal `k` maps to the internal literal with the same code.

use std::fmt;
use std::io::{self, BufRead};

use thiserror::Error;

use super::{CnfFormula, Literal};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: clause data before the `p cnf` header")]
    MissingHeader { line: usize },
    #[error("input has no `p cnf` header")]
    NoHeader,
    #[error("line {line}: expected an integer literal, found `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: literal {literal} exceeds the declared variable count {variables}")]
    LiteralOutOfRange {
        line: usize,
        literal: i64,
        variables: usize,
    },
    #[error("line {line}: clause is not terminated by 0 at end of input")]
    MissingTerminator { line: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl ParseError {
    /// Line number the error refers to, when there is one.
    pub fn line(&self) -> Option<usize> {
        match *self {
            ParseError::MalformedHeader { line, .. }
            | ParseError::MissingHeader { line }
            | ParseError::InvalidToken { line, .. }
            | ParseError::LiteralOutOfRange { line, .. }
            | ParseError::MissingTerminator { line } => Some(line),
            ParseError::NoHeader | ParseError::Io(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// The header's clause count disagrees with the clauses actually read.
    ClauseCountMismatch { declared: usize, found: usize },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::ClauseCountMismatch { declared, found } => {
                write!(
                    f,
                    "header declares {declared} clauses but {found} were read"
                )
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ParsedDimacs {
    pub formula: CnfFormula,
    pub warnings: Vec<ParseWarning>,
}

pub fn parse_dimacs_str(text: &str) -> Result<ParsedDimacs, ParseError> {
    parse_dimacs(text.as_bytes())
}

pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<ParsedDimacs, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw_clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_start = 0;

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(malformed(line_no, "duplicate header"));
            }
            if !raw_clauses.is_empty() || !current.is_empty() {
                return Err(malformed(line_no, "header after clause data"));
            }
            header = Some(parse_header(trimmed, line_no)?);
            continue;
        }
        let Some((variables, _)) = header else {
            return Err(ParseError::MissingHeader { line: line_no });
        };
        for token in trimmed.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| ParseError::InvalidToken {
                line: line_no,
                token: token.to_string(),
            })?;
            if value == 0 {
                raw_clauses.push(std::mem::take(&mut current));
                continue;
            }
            if value.unsigned_abs() > variables as u64 {
                return Err(ParseError::LiteralOutOfRange {
                    line: line_no,
                    literal: value,
                    variables,
                });
            }
            if current.is_empty() {
                current_start = line_no;
            }
            // |value| <= variables <= i32::MAX, enforced by parse_header
            current.push(Literal::from_code(value as i32).unwrap());
        }
    }

    if !current.is_empty() {
        return Err(ParseError::MissingTerminator {
            line: current_start,
        });
    }
    let (variables, declared) = header.ok_or(ParseError::NoHeader)?;
    let mut warnings = Vec::new();
    if declared != raw_clauses.len() {
        warnings.push(ParseWarning::ClauseCountMismatch {
            declared,
            found: raw_clauses.len(),
        });
    }
    let formula =
        CnfFormula::new(variables, raw_clauses).expect("literals were range-checked while parsing");
    Ok(ParsedDimacs { formula, warnings })
}

fn malformed(line: usize, reason: &str) -> ParseError {
    ParseError::MalformedHeader {
        line,
        reason: reason.to_string(),
    }
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, usize), ParseError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
        return Err(malformed(line_no, "expected `p cnf <variables> <clauses>`"));
    }
    let variables: usize = fields[2]
        .parse()
        .map_err(|_| malformed(line_no, "variable count is not a nonnegative integer"))?;
    if variables > i32::MAX as usize {
        return Err(malformed(line_no, "variable count too large"));
    }
    let clauses: usize = fields[3]
        .parse()
        .map_err(|_| malformed(line_no, "clause count is not a nonnegative integer"))?;
    Ok((variables, clauses))
}
