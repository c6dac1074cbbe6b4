//! Finite state property systems and finite closure spaces.
//!
//! The crate covers the two categories and the functors between them, the
//! superselection and classicality tests, connection components, and the
//! decomposition of a system into pure nonclassical pieces, a totally
//! classical quotient and a classical part. The [`oracle`] module holds
//! independent brute-force references and the corpus generators used to
//! cross-check all of it.

pub mod closure;
pub mod decomposition;
pub mod equivalence;
mod error;
pub mod fixtures;
pub mod format;
pub mod oracle;
pub mod order;
pub mod report;
pub mod sps;

pub use closure::{ContinuousMap, FiniteClosureSpace, Partition};
pub use decomposition::{Decomposition, TotallyClassical};
pub use equivalence::{functor_f, functor_g, IsoWitness};
pub use error::{Error, Result};
pub use oracle::Instance;
pub use order::{FiniteLattice, PointUniverse, SetFamily, Subset};
pub use report::{Evidence, ValidationReport, Verdict};
pub use sps::{SpsMorphism, StatePropertySystem};
