#![allow(dead_code)]

use dpll_core::CnfFormula;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EXAMPLE_DIMACS: &str = "p cnf 7 5\n1 2 3 0\n-1 -2 0\n2 -3 0\n2 4 5 0\n5 6 7 0\n";

pub fn example() -> CnfFormula {
    EXAMPLE_DIMACS.parse().unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Raw clauses over `vars` variables; literals drawn with replacement, so
/// duplicates and tautologies occur before normalization.
pub fn random_raw_clauses(
    rng: &mut impl Rng,
    vars: usize,
    clauses: std::ops::RangeInclusive<usize>,
    lengths: std::ops::RangeInclusive<usize>,
) -> Vec<Vec<i32>> {
    let count = rng.random_range(clauses);
    (0..count)
        .map(|_| {
            let len = rng.random_range(lengths.clone());
            (0..len)
                .map(|_| {
                    let v = rng.random_range(1..=vars as i32);
                    if rng.random_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect()
}

pub fn random_formula(
    rng: &mut impl Rng,
    vars: std::ops::RangeInclusive<usize>,
    clauses: std::ops::RangeInclusive<usize>,
) -> CnfFormula {
    let n = rng.random_range(vars);
    CnfFormula::from_codes(n, random_raw_clauses(rng, n, clauses, 1..=4)).unwrap()
}

/// Corpus of small random formulas, deterministic in `seed`.
pub fn corpus(seed: u64, count: usize, vars: std::ops::RangeInclusive<usize>) -> Vec<CnfFormula> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| random_formula(&mut rng, vars.clone(), 1..=40))
        .collect()
}
