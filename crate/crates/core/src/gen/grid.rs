//! Programs whose incidence graph is complete bipartite while the head
//! occurrences form an `n × n` grid.

use crate::program::{AtomId, Program, Rule};

/// Cell `g = row * n + col` of the grid (zero-based, row-major).
fn cell(g: usize, n: usize) -> (usize, usize) {
    (g / n, g % n)
}

pub fn grid_adjacent(g: usize, h: usize, n: usize) -> bool {
    let ((r1, c1), (r2, c2)) = (cell(g, n), cell(h, n));
    r1.abs_diff(r2) + c1.abs_diff(c2) == 1
}

/// `n²` atoms `a1..` and `n²` rules `r1..`, one of each per grid cell in
/// row-major order. Every atom occurs in every rule. The grid is bipartite,
/// so its cells split into a checkerboard: cells with even `row + col`
/// stand for atoms and the others for rules. Atom `a_g` is in the head of
/// `r_h` exactly when `g` is even, `h` is odd and the two cells are
/// adjacent; otherwise it is in the positive body.
///
/// ```
/// let p = cwasp::gen::gen_grid_program(2);
/// assert_eq!((p.atoms.len(), p.rules.len()), (4, 4));
/// let heads: usize = p.rules.iter().map(|r| r.head.len()).sum();
/// assert_eq!(heads, 4);
/// ```
pub fn gen_grid_program(n: usize) -> Program {
    assert!(n >= 1, "grid size must be positive");
    let cells = n * n;
    let even = |g: usize| {
        let (r, c) = cell(g, n);
        (r + c) % 2 == 0
    };
    let mut p = Program::new();
    for g in 0..cells {
        p.add_atom(format!("a{}", g + 1));
    }
    for h in 0..cells {
        let (head, pos): (Vec<usize>, Vec<usize>) =
            (0..cells).partition(|&g| even(g) && !even(h) && grid_adjacent(g, h, n));
        p.add_rule(Rule::new(format!("r{}", h + 1), head.into_iter().map(AtomId), pos.into_iter().map(AtomId), []));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_cell() {
        let p = gen_grid_program(1);
        assert_eq!(p.to_string(), ":- a1.\n");
    }

    #[test]
    fn head_edges_count() {
        for n in 1..6 {
            let p = gen_grid_program(n);
            let heads: usize = p.rules.iter().map(|r| r.head.len()).sum();
            assert_eq!(heads, 2 * n * (n - 1));
            assert!(p.rules.iter().all(|r| r.head.len() + r.pos.len() == n * n));
            assert!(p.validate().is_ok());
        }
    }
}
