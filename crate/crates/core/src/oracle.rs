//! Brute-force ground truth for testing the solver.
//!
//! Everything here evaluates clauses directly from the literal codes and never
//! touches the solver's counters, occurrence lists or propagation code.

use thiserror::Error;

use crate::cnf::{CnfFormula, Literal};
use crate::state::TruthValue;

pub const DEFAULT_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("model has {found} values but the formula has {expected} variables")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{variables} variables to enumerate exceeds the oracle cap of {cap}")]
    CapExceeded { variables: usize, cap: usize },
}

/// A variable-indexed assignment in which some variables may be unset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAssignment {
    values: Vec<TruthValue>,
}

impl PartialAssignment {
    pub fn unset(variables: usize) -> Self {
        PartialAssignment {
            values: vec![TruthValue::Unset; variables],
        }
    }

    pub fn values(&self) -> &[TruthValue] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// A copy with `literal` made to evaluate to `value`.
    pub fn with_literal(&self, literal: Literal, value: bool) -> Self {
        let mut values = self.values.clone();
        values[literal.variable().index()] = TruthValue::from_bool(literal.is_positive() == value);
        PartialAssignment { values }
    }

    /// `other` agrees with every variable set here.
    pub fn is_extended_by(&self, other: &PartialAssignment) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| !a.is_set() || a == b)
    }
}

impl From<Vec<TruthValue>> for PartialAssignment {
    fn from(values: Vec<TruthValue>) -> Self {
        PartialAssignment { values }
    }
}

impl From<&[TruthValue]> for PartialAssignment {
    fn from(values: &[TruthValue]) -> Self {
        PartialAssignment {
            values: values.to_vec(),
        }
    }
}

impl From<&[bool]> for PartialAssignment {
    fn from(model: &[bool]) -> Self {
        PartialAssignment {
            values: model.iter().map(|&b| TruthValue::from_bool(b)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteForceResult {
    Sat(Vec<bool>),
    Unsat,
}

impl BruteForceResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, BruteForceResult::Sat(_))
    }
}

fn satisfies(formula: &CnfFormula, model: &[bool]) -> bool {
    !formula.is_trivially_unsat()
        && formula.clauses().iter().all(|clause| {
            clause.literals().iter().any(|l| {
                let code = l.code();
                let value = model[(code.unsigned_abs() - 1) as usize];
                if code > 0 {
                    value
                } else {
                    !value
                }
            })
        })
}

/// Every clause has a literal true under `model`.
pub fn check_model(formula: &CnfFormula, model: &[bool]) -> Result<bool, OracleError> {
    if model.len() != formula.variables_count() {
        return Err(OracleError::LengthMismatch {
            expected: formula.variables_count(),
            found: model.len(),
        });
    }
    Ok(satisfies(formula, model))
}

pub fn brute_force(formula: &CnfFormula) -> Result<BruteForceResult, OracleError> {
    brute_force_with_cap(formula, DEFAULT_CAP)
}

/// Enumerates all assignments in lexicographic order (false before true,
/// variable 0 most significant) and returns the first model.
pub fn brute_force_with_cap(
    formula: &CnfFormula,
    cap: usize,
) -> Result<BruteForceResult, OracleError> {
    let tau = PartialAssignment::unset(formula.variables_count());
    Ok(first_extension(formula, &tau, cap)?.map_or(BruteForceResult::Unsat, BruteForceResult::Sat))
}

/// Some completion of `tau` satisfies `formula`.
pub fn is_satisfiable_extend(
    formula: &CnfFormula,
    tau: &PartialAssignment,
) -> Result<bool, OracleError> {
    is_satisfiable_extend_with_cap(formula, tau, DEFAULT_CAP)
}

pub fn is_satisfiable_extend_with_cap(
    formula: &CnfFormula,
    tau: &PartialAssignment,
    cap: usize,
) -> Result<bool, OracleError> {
    Ok(first_extension(formula, tau, cap)?.is_some())
}

fn first_extension(
    formula: &CnfFormula,
    tau: &PartialAssignment,
    cap: usize,
) -> Result<Option<Vec<bool>>, OracleError> {
    let n = formula.variables_count();
    if tau.len() != n {
        return Err(OracleError::LengthMismatch {
            expected: n,
            found: tau.len(),
        });
    }
    let free: Vec<usize> = (0..n).filter(|&i| !tau.values[i].is_set()).collect();
    let cap = cap.min(63);
    if free.len() > cap {
        return Err(OracleError::CapExceeded {
            variables: free.len(),
            cap,
        });
    }
    let mut model: Vec<bool> = tau.values.iter().map(|t| *t == TruthValue::True).collect();
    for bits in 0u64..(1u64 << free.len()) {
        for (k, &var) in free.iter().enumerate() {
            model[var] = (bits >> (free.len() - 1 - k)) & 1 == 1;
        }
        if satisfies(formula, &model) {
            return Ok(Some(model));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> CnfFormula {
        CnfFormula::from_codes(
            7,
            [
                vec![1, 2, 3],
                vec![-1, -2],
                vec![2, -3],
                vec![2, 4, 5],
                vec![5, 6, 7],
            ],
        )
        .unwrap()
    }

    fn contradiction() -> CnfFormula {
        CnfFormula::from_codes(1, [vec![1], vec![-1]]).unwrap()
    }

    #[test]
    fn check_model_examples() {
        let f = example();
        assert_eq!(
            check_model(&f, &[true, false, false, true, true, false, true]),
            Ok(true)
        );
        assert_eq!(check_model(&f, &[false; 7]), Ok(false));
        let empty = CnfFormula::from_codes(2, Vec::<Vec<i32>>::new()).unwrap();
        assert_eq!(check_model(&empty, &[true, false]), Ok(true));
        assert_eq!(
            check_model(&f, &[true]),
            Err(OracleError::LengthMismatch {
                expected: 7,
                found: 1
            })
        );
    }

    #[test]
    fn trivially_unsat_has_no_model() {
        let f = CnfFormula::from_codes(1, [vec![]]).unwrap();
        assert_eq!(check_model(&f, &[true]), Ok(false));
        assert_eq!(brute_force(&f), Ok(BruteForceResult::Unsat));
    }

    #[test]
    fn brute_force_examples() {
        // First model in lexicographic order over (x1..x7), computed by hand:
        // x1=F forces x2|x3 and x2|-x3, so x2=T; then (x2|x4|x5) holds and
        // (x5|x6|x7) first holds at x7=T.
        let f = example();
        let expected = vec![false, true, false, false, false, false, true];
        assert_eq!(brute_force(&f), Ok(BruteForceResult::Sat(expected.clone())));
        assert_eq!(check_model(&f, &expected), Ok(true));

        assert_eq!(brute_force(&contradiction()), Ok(BruteForceResult::Unsat));

        let empty = CnfFormula::from_codes(2, Vec::<Vec<i32>>::new()).unwrap();
        assert_eq!(
            brute_force(&empty),
            Ok(BruteForceResult::Sat(vec![false, false]))
        );
    }

    #[test]
    fn brute_force_respects_cap() {
        let f = CnfFormula::from_codes(21, [vec![21]]).unwrap();
        assert_eq!(
            brute_force(&f),
            Err(OracleError::CapExceeded {
                variables: 21,
                cap: 20
            })
        );
        assert!(brute_force_with_cap(&f, 21).unwrap().is_sat());
    }

    #[test]
    fn satisfiable_extend_examples() {
        use TruthValue::*;
        let f = example();
        let tau = PartialAssignment::from(vec![True, False, False, Unset, Unset, Unset, Unset]);
        assert_eq!(is_satisfiable_extend(&f, &tau), Ok(true));
        // x1=T with x2=T violates (-x1 | -x2)
        let bad = PartialAssignment::from(vec![True, True, Unset, Unset, Unset, Unset, Unset]);
        assert_eq!(is_satisfiable_extend(&f, &bad), Ok(false));

        assert_eq!(
            is_satisfiable_extend(&contradiction(), &PartialAssignment::unset(1)),
            Ok(false)
        );

        let model = [true, false, false, true, true, false, true];
        assert_eq!(
            is_satisfiable_extend(&f, &PartialAssignment::from(&model[..])),
            Ok(true)
        );
    }

    #[test]
    fn with_literal_and_extension() {
        let tau = PartialAssignment::unset(3);
        let lit = Literal::from_code(-2).unwrap();
        let t = tau.with_literal(lit, true);
        assert_eq!(t.values()[1], TruthValue::False);
        assert!(tau.is_extended_by(&t));
        assert!(!t.is_extended_by(&tau));
    }
}
