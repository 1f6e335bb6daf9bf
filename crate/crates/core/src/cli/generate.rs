//! Benchmark instance generators.

use crate::cnf::{CnfFormula, Literal, Variable};

fn lit(index: usize, positive: bool) -> Literal {
    Literal::encode(Variable::new(index as u32), positive)
}

/// Pigeonhole instance with `holes + 1` pigeons. Variable `p * holes + h`
/// means pigeon `p` sits in hole `h`. Unsatisfiable for every `holes >= 1`.
pub fn generate_pigeonhole(holes: usize) -> CnfFormula {
    assert!(holes >= 1, "generate_pigeonhole: need at least one hole");
    let pigeons = holes + 1;
    let var = |p: usize, h: usize| p * holes + h;
    let mut clauses = Vec::new();
    for p in 0..pigeons {
        clauses.push((0..holes).map(|h| lit(var(p, h), true)).collect::<Vec<_>>());
    }
    for h in 0..holes {
        for p in 0..pigeons {
            for q in p + 1..pigeons {
                clauses.push(vec![lit(var(p, h), false), lit(var(q, h), false)]);
            }
        }
    }
    CnfFormula::new(pigeons * holes, clauses).expect("generated literals are in range")
}

/// N-queens on an `n x n` board, variable `r * n + c` for a queen at row `r`,
/// column `c`: one queen per row, pairwise at-most-one per row, column and
/// both diagonal directions.
pub fn generate_queens(n: usize) -> CnfFormula {
    assert!(n >= 1, "generate_queens: board must be at least 1x1");
    let var = |r: usize, c: usize| r * n + c;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let at_most_one = |cells: &[usize], clauses: &mut Vec<Vec<Literal>>| {
        for (i, &a) in cells.iter().enumerate() {
            for &b in &cells[i + 1..] {
                clauses.push(vec![lit(a, false), lit(b, false)]);
            }
        }
    };

    for r in 0..n {
        clauses.push((0..n).map(|c| lit(var(r, c), true)).collect());
    }
    for r in 0..n {
        let row: Vec<usize> = (0..n).map(|c| var(r, c)).collect();
        at_most_one(&row, &mut clauses);
    }
    for c in 0..n {
        let column: Vec<usize> = (0..n).map(|r| var(r, c)).collect();
        at_most_one(&column, &mut clauses);
    }
    // r - c constant
    for d in 0..2 * n - 1 {
        let diagonal: Vec<usize> = (0..n)
            .filter_map(|r| {
                (r + n - 1)
                    .checked_sub(d)
                    .filter(|&c| c < n)
                    .map(|c| var(r, c))
            })
            .collect();
        at_most_one(&diagonal, &mut clauses);
    }
    // r + c constant
    for s in 0..2 * n - 1 {
        let diagonal: Vec<usize> = (0..n)
            .filter_map(|r| s.checked_sub(r).filter(|&c| c < n).map(|c| var(r, c)))
            .collect();
        at_most_one(&diagonal, &mut clauses);
    }
    CnfFormula::new(n * n, clauses).expect("generated literals are in range")
}
