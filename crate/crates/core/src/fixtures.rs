//! Small named instances used across tests, examples and the CLI corpus.

use crate::closure::FiniteClosureSpace;
use crate::order::FiniteLattice;

fn space(n: usize, closed: &[&[&str]]) -> FiniteClosureSpace {
    let points: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let closed: Vec<Vec<&str>> = closed.iter().map(|c| c.to_vec()).collect();
    let points: Vec<&str> = points.iter().map(String::as_str).collect();
    FiniteClosureSpace::from_labels(&points, &closed).expect("fixture is a valid closure space")
}

/// 3 points; ∅, {x1}, {x2}, {x1,x2}, X. Topological and connected.
pub fn e1() -> FiniteClosureSpace {
    space(
        3,
        &[&[], &["x1"], &["x2"], &["x1", "x2"], &["x1", "x2", "x3"]],
    )
}

/// 3 points; ∅, {x1}, {x2,x3}, X. Two components, zero-dimensional.
pub fn e2() -> FiniteClosureSpace {
    space(3, &[&[], &["x1"], &["x2", "x3"], &["x1", "x2", "x3"]])
}

/// 3 points; ∅, {x1}, {x2}, X. Connected, not topological.
pub fn e3() -> FiniteClosureSpace {
    space(3, &[&[], &["x1"], &["x2"], &["x1", "x2", "x3"]])
}

/// Discrete 2-point space.
pub fn e4() -> FiniteClosureSpace {
    space(2, &[&[], &["x1"], &["x2"], &["x1", "x2"]])
}

/// 3 points; ∅, {x1}, {x1,x2}, X. Connected, not zero-dimensional.
pub fn e5() -> FiniteClosureSpace {
    space(3, &[&[], &["x1"], &["x1", "x2"], &["x1", "x2", "x3"]])
}

pub fn one_point() -> FiniteClosureSpace {
    space(1, &[&[], &["x1"]])
}

/// All canonical fixtures with their names.
pub fn named() -> Vec<(&'static str, FiniteClosureSpace)> {
    vec![
        ("e1", e1()),
        ("e2", e2()),
        ("e3", e3()),
        ("e4", e4()),
        ("e5", e5()),
    ]
}

/// `0 < a, b < I` with `a`, `b` incomparable.
pub fn diamond_lattice() -> FiniteLattice {
    FiniteLattice::from_covers(
        &["0", "a", "b", "I"],
        &[("0", "a"), ("0", "b"), ("a", "I"), ("b", "I")],
    )
    .expect("diamond is a lattice")
}
