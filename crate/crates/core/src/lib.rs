//! A DPLL SAT solver built around a layered assignment trail and per-clause
//! true/false literal counters.
//!
//! The clause database ([`CnfFormula`]) is immutable and can be shared by any
//! number of searches. Each search owns a [`SolverState`] holding the truth
//! assignment, the counters, the occurrence lists and the [`Trail`]. All of
//! the state's structural invariants can be recomputed on demand
//! ([`SolverState::check_state_invariants`]) and, in checked mode, are
//! asserted after every mutation. [`oracle`] provides brute-force ground
//! truth for differential testing.

pub mod cli;
pub mod cnf;
pub mod oracle;
pub mod search;
pub mod state;
pub mod trail;

pub use cnf::{parse_dimacs, parse_dimacs_str, Clause, CnfFormula, Literal, Variable};
pub use search::{solve, solve_formula, Search, SearchEvent, SearchObserver, SolveResult};
pub use state::{get_literal_value, SolverState, TruthValue};
pub use trail::{AssignmentEntry, Trail};
