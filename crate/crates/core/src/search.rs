//! Recursive DPLL search.
//!
//! `solve` answers UNSAT on an empty clause, SAT once every clause has a true
//! literal, and otherwise branches on the first unset literal of the first
//! unsatisfied clause, trying `true` before `false`. Each branch (`step`) opens
//! a trail layer, assigns the literal with unit propagation, recurses and
//! undoes the layer again, so every call returns with the state it was given.
//! Variable order is fixed, which makes the whole search deterministic.

use std::collections::VecDeque;
use std::fmt;
use std::time::Instant;

use thiserror::Error;

use crate::cnf::{CnfFormula, Literal, Variable};
use crate::state::{SolverState, TruthValue};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    /// A complete model, indexed by variable.
    Sat(Vec<bool>),
    Unsat,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat(_))
    }

    pub fn model(&self) -> Option<&[bool]> {
        match self {
            SolveResult::Sat(model) => Some(model),
            SolveResult::Unsat => None,
        }
    }
}

/// The search hit its deadline. The state has been fully restored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("time limit reached")]
pub struct Timeout;

/// Events reported to a [`SearchObserver`]. Each event is delivered with the
/// state as it is at that moment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchEvent {
    /// A (possibly nested) `solve` call starts.
    Enter {
        depth: usize,
        unset: usize,
    },
    /// A branch assigns `literal := value` on a fresh layer.
    Decide {
        literal: Literal,
        value: bool,
    },
    /// `clause` is unit and `literal` is about to be forced true.
    Propagate {
        literal: Literal,
        clause: usize,
    },
    Conflict,
    Satisfied,
    /// Both branches on `literal` came back UNSAT.
    BothBranchesFailed {
        literal: Literal,
    },
    /// The layer opened by `Decide { literal, value }` was undone.
    Backtrack {
        literal: Literal,
        value: bool,
    },
}

fn assignment(literal: Literal, value: bool) -> (Variable, char) {
    let v = literal.variable();
    let truth = literal.is_positive() == value;
    (v, if truth { 'T' } else { 'F' })
}

impl fmt::Display for SearchEvent {
    /// Trace format. Clause numbers are 1-based, in input order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SearchEvent::Enter { depth, unset } => write!(f, "enter depth={depth} unset={unset}"),
            SearchEvent::Decide { literal, value } => {
                let (v, t) = assignment(literal, value);
                write!(f, "decide {v}={t}")
            }
            SearchEvent::Propagate { literal, clause } => {
                let (v, t) = assignment(literal, true);
                write!(f, "propagate {v}={t} (clause {})", clause + 1)
            }
            SearchEvent::Conflict => f.write_str("conflict"),
            SearchEvent::Satisfied => f.write_str("sat"),
            SearchEvent::BothBranchesFailed { literal } => {
                write!(f, "exhausted {}", literal.variable())
            }
            SearchEvent::Backtrack { literal, value } => {
                let (v, t) = assignment(literal, value);
                write!(f, "backtrack {v}={t}")
            }
        }
    }
}

pub trait SearchObserver {
    fn on_event(&mut self, state: &SolverState<'_>, event: &SearchEvent);
}

impl<F> SearchObserver for F
where
    F: FnMut(&SolverState<'_>, &SearchEvent),
{
    fn on_event(&mut self, state: &SolverState<'_>, event: &SearchEvent) {
        self(state, event)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub solve_calls: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub max_depth: usize,
}

/// Search driver: carries the optional observer and deadline plus statistics.
#[derive(Default)]
pub struct Search<'o> {
    observer: Option<&'o mut dyn SearchObserver>,
    deadline: Option<Instant>,
    depth: usize,
    stats: SearchStats,
}

impl<'o> Search<'o> {
    pub fn new() -> Self {
        Search::default()
    }

    pub fn with_observer(mut self, observer: &'o mut dyn SearchObserver) -> Self {
        self.observer = Some(observer);
        self
    }

    /// Deadline checked cooperatively before every decision.
    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    fn emit(&mut self, state: &SolverState<'_>, event: SearchEvent) {
        if let Some(observer) = self.observer.as_deref_mut() {
            observer.on_event(state, &event);
        }
    }

    /// Decides satisfiability of the formula under the current assignment.
    /// Returns with the state exactly as it was on entry.
    pub fn solve(&mut self, state: &mut SolverState<'_>) -> Result<SolveResult, Timeout> {
        let n = state.formula().variables_count();
        assert!(
            self.depth <= n,
            "recursion depth {} exceeds variable count {n}",
            self.depth
        );
        self.stats.solve_calls += 1;
        self.stats.max_depth = self.stats.max_depth.max(self.depth);
        self.emit(
            state,
            SearchEvent::Enter {
                depth: self.depth,
                unset: state.unset_count(),
            },
        );

        let entry = state.is_checked().then(|| state.snapshot());
        let result = self.solve_at_node(state);
        if let Some(entry) = entry {
            assert!(state.snapshot() == entry, "solve did not restore the state");
        }
        result
    }

    fn solve_at_node(&mut self, state: &mut SolverState<'_>) -> Result<SolveResult, Timeout> {
        if state.has_empty_clause() {
            self.stats.conflicts += 1;
            self.emit(state, SearchEvent::Conflict);
            return Ok(SolveResult::Unsat);
        }
        if state.is_formula_satisfied() {
            self.emit(state, SearchEvent::Satisfied);
            return Ok(SolveResult::Sat(complete_model(state.truth_assignment())));
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Timeout);
        }

        let literal = choose_literal(state);
        if let sat @ SolveResult::Sat(_) = self.step(state, literal, true)? {
            return Ok(sat);
        }
        let result = self.step(state, literal, false)?;
        if result == SolveResult::Unsat {
            self.emit(state, SearchEvent::BothBranchesFailed { literal });
        }
        Ok(result)
    }

    /// Explores the branch `literal := value` and undoes it before returning.
    pub fn step(
        &mut self,
        state: &mut SolverState<'_>,
        literal: Literal,
        value: bool,
    ) -> Result<SolveResult, Timeout> {
        assert!(
            !state.has_empty_clause(),
            "step: formula has an empty clause"
        );
        assert!(
            !state.is_formula_satisfied(),
            "step: formula is already satisfied"
        );
        assert!(
            !state.literal_value(literal).is_set(),
            "step: literal {literal} is already set"
        );
        assert!(!state.trail().is_full(), "step: trail is full");

        let entry = state.is_checked().then(|| state.snapshot());
        let unset_before = state.unset_count();

        state.new_layer();
        self.stats.decisions += 1;
        self.emit(state, SearchEvent::Decide { literal, value });
        self.set_literal(state, literal, value);
        // Termination variant: every recursive call has strictly fewer unset variables.
        assert!(
            state.unset_count() < unset_before,
            "step: unset count did not decrease"
        );

        self.depth += 1;
        let result = self.solve(state);
        self.depth -= 1;

        state.undo_layer();
        self.emit(state, SearchEvent::Backtrack { literal, value });
        if let Some(entry) = entry {
            assert!(state.snapshot() == entry, "step did not restore the state");
        }
        result
    }

    /// Assigns `literal := value` on the current layer, then propagates unit
    /// clauses until none remain or a clause becomes empty.
    pub fn set_literal(&mut self, state: &mut SolverState<'_>, literal: Literal, value: bool) {
        assert!(
            state.trail().size() > 0,
            "set_literal: no active trail layer"
        );
        assert!(
            !state.literal_value(literal).is_set(),
            "set_literal: literal {literal} is already set"
        );

        let (v, positive) = literal.decode();
        state.set_variable(v, positive == value);

        let formula = state.formula();
        let mut queue = VecDeque::from([v]);
        while let Some(v) = queue.pop_front() {
            // Only clauses where `v` just became false can have turned unit.
            let falsified = Literal::encode(v, state.value(v) == TruthValue::False);
            for k in 0..state.occurrences(falsified).len() {
                if state.has_empty_clause() {
                    return;
                }
                let c = state.occurrences(falsified)[k];
                if !state.is_unit(c) {
                    continue;
                }
                let forced = formula
                    .clause(c)
                    .iter()
                    .find(|&l| !state.literal_value(l).is_set())
                    .expect("unit clause has an unset literal");
                self.stats.propagations += 1;
                self.emit(
                    state,
                    SearchEvent::Propagate {
                        literal: forced,
                        clause: c,
                    },
                );
                state.set_variable(forced.variable(), forced.is_positive());
                queue.push_back(forced.variable());
            }
        }
    }
}

/// First unset literal of the lowest-indexed clause with no true literal.
pub fn choose_literal(state: &SolverState<'_>) -> Literal {
    assert!(
        !state.has_empty_clause(),
        "choose_literal: formula has an empty clause"
    );
    let trues = state.true_literals_count();
    let c = (0..trues.len())
        .find(|&i| trues[i] == 0)
        .expect("choose_literal: every clause is satisfied");
    state
        .formula()
        .clause(c)
        .iter()
        .find(|&l| !state.literal_value(l).is_set())
        .expect("unsatisfied, non-empty clause has an unset literal")
}

/// Total model: unset variables become false.
pub fn complete_model(tau: &[TruthValue]) -> Vec<bool> {
    tau.iter().map(|t| t.to_bool().unwrap_or(false)).collect()
}

pub fn solve(state: &mut SolverState<'_>) -> SolveResult {
    Search::new()
        .solve(state)
        .expect("search without deadline cannot time out")
}

pub fn step(state: &mut SolverState<'_>, literal: Literal, value: bool) -> SolveResult {
    Search::new()
        .step(state, literal, value)
        .expect("search without deadline cannot time out")
}

pub fn set_literal(state: &mut SolverState<'_>, literal: Literal, value: bool) {
    Search::new().set_literal(state, literal, value)
}

/// Solves `formula` from scratch, answering UNSAT directly when the input
/// contained an empty clause.
pub fn solve_formula(formula: &CnfFormula) -> SolveResult {
    match SolverState::new(formula) {
        Ok(mut state) => solve(&mut state),
        Err(_) => SolveResult::Unsat,
    }
}
