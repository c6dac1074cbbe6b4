//! Finite combinatorics shared by everything else: point universes, bitmask
//! subsets, canonical set families and explicitly ordered finite lattices.

mod lattice;
mod sets;

pub use lattice::{validate_lattice, FiniteLattice};
pub use sets::{intersection_closure, PointUniverse, SetFamily, Subset, MAX_POINTS};
