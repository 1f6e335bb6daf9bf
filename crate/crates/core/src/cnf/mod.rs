//! CNF representation: variables, signed-integer literals, normalized clauses
//! and the immutable clause database shared by every search.

mod dimacs;

pub use dimacs::{parse_dimacs, parse_dimacs_str, ParseError, ParseWarning, ParsedDimacs};

use std::collections::HashSet;
use std::fmt;
use std::num::NonZeroI32;
use std::ops::Neg;

use thiserror::Error;

/// A propositional variable, identified by its 0-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(u32);

impl Variable {
    pub const fn new(index: u32) -> Self {
        Variable(index)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Variable {
    /// Variables print 1-based (`x1` is index 0), the same as DIMACS names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", u64::from(self.0) + 1)
    }
}

/// A variable occurrence. Variable `v` appears positively as code `v + 1` and
/// negatively as `-v - 1`, so internal codes coincide with DIMACS literals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(NonZeroI32);

impl Literal {
    /// Encodes `v` with the given polarity.
    pub fn encode(v: Variable, positive: bool) -> Self {
        let magnitude = i32::try_from(v.0)
            .ok()
            .and_then(|i| i.checked_add(1))
            .expect("variable index exceeds literal range");
        let code = if positive { magnitude } else { -magnitude };
        Literal(NonZeroI32::new(code).unwrap())
    }

    /// Builds a literal from its signed code, rejecting 0.
    pub fn from_code(code: i32) -> Option<Self> {
        // i32::MIN has no positive counterpart, so its negation could not be represented.
        if code == i32::MIN {
            return None;
        }
        NonZeroI32::new(code).map(Literal)
    }

    pub fn code(self) -> i32 {
        self.0.get()
    }

    pub fn variable(self) -> Variable {
        Variable(self.0.unsigned_abs().get() - 1)
    }

    pub fn is_positive(self) -> bool {
        self.0.get() > 0
    }

    /// Inverse of [`Literal::encode`].
    pub fn decode(self) -> (Variable, bool) {
        (self.variable(), self.is_positive())
    }

    pub fn negate(self) -> Self {
        Literal(-self.0)
    }
}

impl Neg for Literal {
    type Output = Literal;

    fn neg(self) -> Literal {
        self.negate()
    }
}

impl TryFrom<i32> for Literal {
    type Error = FormulaError;

    fn try_from(code: i32) -> Result<Self, Self::Error> {
        Literal::from_code(code).ok_or(FormulaError::InvalidLiteral(code))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// A normalized clause: nonempty, duplicate-free and not tautological.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    /// Always false for clauses produced by [`normalize_clause`].
    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Literal> + '_ {
        self.literals.iter().copied()
    }
}

impl<'a> IntoIterator for &'a Clause {
    type Item = &'a Literal;
    type IntoIter = std::slice::Iter<'a, Literal>;

    fn into_iter(self) -> Self::IntoIter {
        self.literals.iter()
    }
}

/// Outcome of clause normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Clause(Clause),
    /// Contains some literal together with its negation.
    Tautology,
    Empty,
}

/// Removes duplicate literals (keeping first occurrences in order) and
/// classifies tautological and empty clauses.
pub fn normalize_clause(raw: &[Literal]) -> Normalized {
    let mut seen = HashSet::with_capacity(raw.len());
    let mut literals = Vec::with_capacity(raw.len());
    for &lit in raw {
        if seen.contains(&lit.negate()) {
            return Normalized::Tautology;
        }
        if seen.insert(lit) {
            literals.push(lit);
        }
    }
    if literals.is_empty() {
        Normalized::Empty
    } else {
        Normalized::Clause(Clause { literals })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("invalid literal code {0}")]
    InvalidLiteral(i32),
    #[error("literal {literal} refers to a variable beyond the declared count {variables_count}")]
    VariableOutOfRange {
        literal: i32,
        variables_count: usize,
    },
    #[error("variable count {0} exceeds the supported maximum")]
    TooManyVariables(usize),
}

/// Immutable clause database. Clause indexes stay stable for the life of the
/// formula, which is what the per-clause counters in the solver state rely on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    variables_count: usize,
    clauses: Vec<Clause>,
    trivially_unsat: bool,
    dropped_tautologies: usize,
}

impl CnfFormula {
    /// Normalizes and stores the given raw clauses. Tautologies are dropped and
    /// an empty clause marks the formula trivially unsatisfiable.
    pub fn new<I, C>(variables_count: usize, raw_clauses: I) -> Result<Self, FormulaError>
    where
        I: IntoIterator<Item = C>,
        C: AsRef<[Literal]>,
    {
        if variables_count > i32::MAX as usize {
            return Err(FormulaError::TooManyVariables(variables_count));
        }
        let mut formula = CnfFormula {
            variables_count,
            clauses: Vec::new(),
            trivially_unsat: false,
            dropped_tautologies: 0,
        };
        for raw in raw_clauses {
            formula.add_raw(raw.as_ref())?;
        }
        Ok(formula)
    }

    /// Convenience constructor from DIMACS-style signed codes.
    pub fn from_codes<I, C>(variables_count: usize, raw_clauses: I) -> Result<Self, FormulaError>
    where
        I: IntoIterator<Item = C>,
        C: AsRef<[i32]>,
    {
        let clauses = raw_clauses
            .into_iter()
            .map(|c| {
                c.as_ref()
                    .iter()
                    .map(|&code| Literal::try_from(code))
                    .collect()
            })
            .collect::<Result<Vec<Vec<Literal>>, _>>()?;
        CnfFormula::new(variables_count, clauses)
    }

    fn add_raw(&mut self, raw: &[Literal]) -> Result<(), FormulaError> {
        if let Some(bad) = raw
            .iter()
            .find(|l| l.variable().index() >= self.variables_count)
        {
            return Err(FormulaError::VariableOutOfRange {
                literal: bad.code(),
                variables_count: self.variables_count,
            });
        }
        match normalize_clause(raw) {
            Normalized::Clause(c) => self.clauses.push(c),
            Normalized::Tautology => self.dropped_tautologies += 1,
            Normalized::Empty => self.trivially_unsat = true,
        }
        Ok(())
    }

    pub fn variables_count(&self) -> usize {
        self.variables_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, index: usize) -> &Clause {
        &self.clauses[index]
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Set when the raw input contained an empty clause.
    pub fn is_trivially_unsat(&self) -> bool {
        self.trivially_unsat
    }

    pub fn dropped_tautologies(&self) -> usize {
        self.dropped_tautologies
    }

    /// Renders the formula as DIMACS text. A trivially unsatisfiable formula
    /// gets its empty clause back as a trailing `0` line.
    pub fn to_dimacs(&self) -> String {
        use fmt::Write;

        let count = self.clauses.len() + usize::from(self.trivially_unsat);
        let mut out = format!("p cnf {} {}\n", self.variables_count, count);
        for clause in &self.clauses {
            for lit in clause {
                write!(out, "{} ", lit).unwrap();
            }
            out.push_str("0\n");
        }
        if self.trivially_unsat {
            out.push_str("0\n");
        }
        out
    }
}

impl std::str::FromStr for CnfFormula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_dimacs_str(s).map(|parsed| parsed.formula)
    }
}
