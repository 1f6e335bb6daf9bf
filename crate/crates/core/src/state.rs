//! Mutable search state over a shared [`CnfFormula`].
//!
//! Besides the truth assignment and the trail, the state keeps for every clause
//! the number of its literals currently true and currently false, plus per
//! variable the ascending list of clauses containing it positively and
//! negatively. Assigning or unassigning a variable only walks that variable's
//! two occurrence lists.
//!
//! In checked mode every mutating operation recomputes all of this from
//! scratch afterwards and panics on the first mismatch.

use std::fmt;

use thiserror::Error;

use crate::cnf::{CnfFormula, Literal, Variable};
use crate::trail::{AssignmentEntry, Trail};

/// Value of a variable or literal under a partial assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TruthValue {
    #[default]
    Unset,
    False,
    True,
}

impl TruthValue {
    pub fn from_bool(value: bool) -> Self {
        if value {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    /// -1 unset, 0 false, 1 true.
    pub fn as_i8(self) -> i8 {
        match self {
            TruthValue::Unset => -1,
            TruthValue::False => 0,
            TruthValue::True => 1,
        }
    }

    pub fn to_bool(self) -> Option<bool> {
        match self {
            TruthValue::Unset => None,
            TruthValue::False => Some(false),
            TruthValue::True => Some(true),
        }
    }

    pub fn is_set(self) -> bool {
        self != TruthValue::Unset
    }

    fn negate(self) -> Self {
        match self {
            TruthValue::Unset => TruthValue::Unset,
            TruthValue::False => TruthValue::True,
            TruthValue::True => TruthValue::False,
        }
    }
}

/// Value of `literal` under `tau`; unset stays unset.
pub fn get_literal_value(tau: &[TruthValue], literal: Literal) -> TruthValue {
    let value = tau[literal.variable().index()];
    if literal.is_positive() {
        value
    } else {
        value.negate()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("formula contains an empty clause")]
    TriviallyUnsat,
}

/// Comparable copy of everything a search must restore on return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSnapshot {
    pub trail: Trail,
    pub truth: Vec<TruthValue>,
    pub true_count: Vec<usize>,
    pub false_count: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SolverState<'f> {
    formula: &'f CnfFormula,
    trail: Trail,
    truth: Vec<TruthValue>,
    true_count: Vec<usize>,
    false_count: Vec<usize>,
    positive_occurrences: Vec<Vec<usize>>,
    negative_occurrences: Vec<Vec<usize>>,
    unset: usize,
    // Derived from the counters so the two flowchart tests are O(1).
    conflicting_clauses: usize,
    satisfied_clauses: usize,
    checked: bool,
    invariant_checks: u64,
}

impl<'f> SolverState<'f> {
    /// Builds the all-unset state: zero counters, complete occurrence lists,
    /// empty trail.
    pub fn new(formula: &'f CnfFormula) -> Result<Self, StateError> {
        if formula.is_trivially_unsat() {
            return Err(StateError::TriviallyUnsat);
        }
        let n = formula.variables_count();
        let (positive_occurrences, negative_occurrences) = occurrence_lists(formula);
        Ok(SolverState {
            formula,
            trail: Trail::new(n),
            truth: vec![TruthValue::Unset; n],
            true_count: vec![0; formula.num_clauses()],
            false_count: vec![0; formula.num_clauses()],
            positive_occurrences,
            negative_occurrences,
            unset: n,
            conflicting_clauses: 0,
            satisfied_clauses: 0,
            checked: false,
            invariant_checks: 0,
        })
    }

    /// Enables full invariant recomputation after every mutation.
    pub fn set_checked(&mut self, checked: bool) {
        self.checked = checked;
        self.checkpoint("set_checked");
    }

    pub fn is_checked(&self) -> bool {
        self.checked
    }

    /// Number of checked-mode validations performed so far.
    pub fn invariant_checks(&self) -> u64 {
        self.invariant_checks
    }

    pub fn formula(&self) -> &'f CnfFormula {
        self.formula
    }

    pub fn trail(&self) -> &Trail {
        &self.trail
    }

    pub fn truth_assignment(&self) -> &[TruthValue] {
        &self.truth
    }

    pub fn value(&self, v: Variable) -> TruthValue {
        self.truth[v.index()]
    }

    pub fn literal_value(&self, literal: Literal) -> TruthValue {
        get_literal_value(&self.truth, literal)
    }

    pub fn true_literals_count(&self) -> &[usize] {
        &self.true_count
    }

    pub fn false_literals_count(&self) -> &[usize] {
        &self.false_count
    }

    /// Ascending indexes of the clauses containing `v` positively.
    pub fn positive_occurrences(&self, v: Variable) -> &[usize] {
        &self.positive_occurrences[v.index()]
    }

    /// Ascending indexes of the clauses containing `v` negatively.
    pub fn negative_occurrences(&self, v: Variable) -> &[usize] {
        &self.negative_occurrences[v.index()]
    }

    /// Clauses in which `literal` occurs.
    pub fn occurrences(&self, literal: Literal) -> &[usize] {
        let v = literal.variable();
        if literal.is_positive() {
            self.positive_occurrences(v)
        } else {
            self.negative_occurrences(v)
        }
    }

    pub fn unset_count(&self) -> usize {
        self.unset
    }

    pub fn snapshot(&self) -> StateSnapshot {
        StateSnapshot {
            trail: self.trail.clone(),
            truth: self.truth.clone(),
            true_count: self.true_count.clone(),
            false_count: self.false_count.clone(),
        }
    }

    pub fn new_layer(&mut self) {
        self.trail.new_layer();
        self.checkpoint("new_layer");
    }

    /// Assigns `v := value`, records it on the current layer and updates the
    /// counters of exactly the clauses in `v`'s occurrence lists.
    pub fn set_variable(&mut self, v: Variable, value: bool) {
        let idx = v.index();
        assert!(idx < self.truth.len(), "set_variable: {v} out of range");
        assert!(
            !self.truth[idx].is_set(),
            "set_variable: {v} is already set"
        );
        assert!(self.trail.size() > 0, "set_variable: no active trail layer");

        self.trail.push_entry(AssignmentEntry::new(v, value));
        self.truth[idx] = TruthValue::from_bool(value);
        self.unset -= 1;

        let (made_true, made_false) = if value {
            (
                &self.positive_occurrences[idx],
                &self.negative_occurrences[idx],
            )
        } else {
            (
                &self.negative_occurrences[idx],
                &self.positive_occurrences[idx],
            )
        };
        for &c in made_true {
            if self.true_count[c] == 0 {
                self.satisfied_clauses += 1;
            }
            self.true_count[c] += 1;
        }
        for &c in made_false {
            self.false_count[c] += 1;
            if self.false_count[c] == self.formula.clause(c).len() {
                self.conflicting_clauses += 1;
            }
        }
        self.checkpoint("set_variable");
    }

    /// Reverts the counters and truth value of `v` without touching the
    /// trail. Callers pair it with [`Trail::pop_layer`]; [`Self::undo_layer`]
    /// does both.
    pub fn unset_variable(&mut self, v: Variable) {
        let idx = v.index();
        assert!(idx < self.truth.len(), "unset_variable: {v} out of range");
        let value = self.truth[idx]
            .to_bool()
            .unwrap_or_else(|| panic!("unset_variable: {v} is not set"));

        self.truth[idx] = TruthValue::Unset;
        self.unset += 1;

        let (was_true, was_false) = if value {
            (
                &self.positive_occurrences[idx],
                &self.negative_occurrences[idx],
            )
        } else {
            (
                &self.negative_occurrences[idx],
                &self.positive_occurrences[idx],
            )
        };
        for &c in was_true {
            self.true_count[c] -= 1;
            if self.true_count[c] == 0 {
                self.satisfied_clauses -= 1;
            }
        }
        for &c in was_false {
            if self.false_count[c] == self.formula.clause(c).len() {
                self.conflicting_clauses -= 1;
            }
            self.false_count[c] -= 1;
        }
        if self.checked {
            // The trail still holds `v` here, so only the counters can be validated.
            assert!(
                self.counters_match(),
                "state invariants violated after unset_variable"
            );
        }
    }

    /// Pops the current layer and unassigns its entries.
    pub fn undo_layer(&mut self) -> Vec<AssignmentEntry> {
        let layer = self.trail.pop_layer();
        for entry in layer.iter().rev() {
            self.unset_variable(entry.variable);
        }
        self.checkpoint("undo_layer");
        layer
    }

    /// Some clause has all of its literals false.
    pub fn has_empty_clause(&self) -> bool {
        self.conflicting_clauses > 0
    }

    /// Every clause has at least one true literal.
    pub fn is_formula_satisfied(&self) -> bool {
        self.satisfied_clauses == self.formula.num_clauses()
    }

    /// Clause `c` has exactly one unset literal and no true literal.
    pub fn is_unit(&self, c: usize) -> bool {
        self.true_count[c] == 0 && self.false_count[c] + 1 == self.formula.clause(c).len()
    }

    /// Recomputes every derived structure from the formula and the trail and
    /// compares it with the stored state.
    pub fn check_state_invariants(&self) -> bool {
        let n = self.formula.variables_count();
        if !self.trail.check_invariants() || self.trail.capacity() != n || self.truth.len() != n {
            return false;
        }

        let mut from_trail = vec![TruthValue::Unset; n];
        for entry in self.trail.entries() {
            from_trail[entry.variable.index()] = TruthValue::from_bool(entry.value);
        }
        if from_trail != self.truth {
            return false;
        }
        if self.truth.iter().filter(|t| !t.is_set()).count() != self.unset {
            return false;
        }

        if !self.counters_match() {
            return false;
        }

        let (positive, negative) = occurrence_lists(self.formula);
        let ascending =
            |lists: &[Vec<usize>]| lists.iter().all(|l| l.windows(2).all(|w| w[0] < w[1]));
        positive == self.positive_occurrences
            && negative == self.negative_occurrences
            && ascending(&self.positive_occurrences)
            && ascending(&self.negative_occurrences)
    }

    fn counters_match(&self) -> bool {
        let clauses = self.formula.clauses();
        if self.true_count.len() != clauses.len() || self.false_count.len() != clauses.len() {
            return false;
        }
        let mut satisfied = 0;
        let mut conflicting = 0;
        for (i, clause) in clauses.iter().enumerate() {
            let trues = clause
                .iter()
                .filter(|&l| self.literal_value(l) == TruthValue::True)
                .count();
            let falses = clause
                .iter()
                .filter(|&l| self.literal_value(l) == TruthValue::False)
                .count();
            if trues != self.true_count[i] || falses != self.false_count[i] {
                return false;
            }
            satisfied += usize::from(trues > 0);
            conflicting += usize::from(falses == clause.len());
        }
        satisfied == self.satisfied_clauses && conflicting == self.conflicting_clauses
    }

    fn checkpoint(&mut self, op: &str) {
        if self.checked {
            self.invariant_checks += 1;
            assert!(
                self.check_state_invariants(),
                "state invariants violated after {op}"
            );
        }
    }
}

impl fmt::Display for SolverState<'_> {
    /// Debug dump: assignment, counters, then the trail layers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tau: Vec<String> = self.truth.iter().map(|t| t.as_i8().to_string()).collect();
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "tau: {}", tau.join(" "))?;
        writeln!(f, "true: {}", join(&self.true_count))?;
        writeln!(f, "false: {}", join(&self.false_count))?;
        write!(f, "{}", self.trail)
    }
}

fn occurrence_lists(formula: &CnfFormula) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = formula.variables_count();
    let mut positive = vec![Vec::new(); n];
    let mut negative = vec![Vec::new(); n];
    for (i, clause) in formula.clauses().iter().enumerate() {
        for lit in clause {
            let list = if lit.is_positive() {
                &mut positive
            } else {
                &mut negative
            };
            list[lit.variable().index()].push(i);
        }
    }
    (positive, negative)
}
