//! Brute-force reference implementations, instance generators and the
//! cross-checking suite. The reference routines here work on raw masks and
//! do not call the library routines they are compared against.

mod enumerate;
mod random;
mod suite;

use std::collections::HashSet;

pub use enumerate::{
    enumerate_closure_spaces, enumerate_closure_spaces_par, MAX_ENUMERATION_POINTS,
};
pub use random::{random_closure_space, MAX_RANDOM_POINTS};
pub use suite::{run_corpus, theorem_suite, Instance, TheoremReport};

use crate::closure::{FiniteClosureSpace, Partition};
use crate::error::{Error, Result};
use crate::order::Subset;
use crate::sps::StatePropertySystem;

/// Largest space [`brute_components`] will enumerate.
pub const MAX_BRUTE_POINTS: usize = 12;

fn closed_masks(space: &FiniteClosureSpace) -> Vec<u64> {
    space.closed().iter().map(Subset::bits).collect()
}

/// The subspace on `a` has no clopen other than ∅ and `a`.
fn mask_connected(closed: &[u64], a: u64) -> bool {
    let traces: HashSet<u64> = closed.iter().map(|f| f & a).collect();
    !traces
        .iter()
        .any(|&t| t != 0 && t != a && traces.contains(&(a & !t)))
}

/// Components as unions of all connected subsets through each point, by
/// enumerating every subset.
pub fn brute_components(space: &FiniteClosureSpace) -> Result<Partition> {
    let n = space.len();
    if n > MAX_BRUTE_POINTS {
        return Err(Error::SizeCap {
            what: "brute-force components",
            size: n,
            cap: MAX_BRUTE_POINTS,
        });
    }
    let closed = closed_masks(space);
    let mut comp = vec![0u64; n];
    for a in 1u64..(1u64 << n) {
        if mask_connected(&closed, a) {
            for (x, c) in comp.iter_mut().enumerate() {
                if a >> x & 1 == 1 {
                    *c |= a;
                }
            }
        }
    }
    let blocks: HashSet<u64> = comp.into_iter().collect();
    Partition::new(n, blocks.into_iter().map(Subset::from_bits))
}

/// Blocks of "no clopen separates x from y".
pub fn quasi_components(space: &FiniteClosureSpace) -> Partition {
    let n = space.len();
    let full = space.full().bits();
    let closed = closed_masks(space);
    let set: HashSet<u64> = closed.iter().copied().collect();
    let clopens: Vec<u64> = closed
        .iter()
        .copied()
        .filter(|&c| set.contains(&(full & !c)))
        .collect();
    let blocks: HashSet<u64> = (0..n)
        .map(|x| {
            clopens
                .iter()
                .filter(|&&c| c >> x & 1 == 1)
                .fold(full, |acc, &c| acc & c)
        })
        .collect();
    Partition::new(n, blocks.into_iter().map(Subset::from_bits))
        .expect("clopen classes partition the space")
}

/// First complement of `a` found by scanning all properties against the
/// defining conditions, with superselection evaluated state by state.
pub fn brute_classical(sps: &StatePropertySystem, a: usize) -> Option<usize> {
    let l = sps.lattice();
    let xis: Vec<HashSet<usize>> = (0..sps.state_count())
        .map(|p| sps.xi(p).into_iter().collect())
        .collect();
    (0..l.len()).find(|&c| {
        let join = l.join2(a, c);
        join == l.top()
            && l.meet2(a, c) == l.bottom()
            && xis
                .iter()
                .all(|xi| !xi.contains(&join) || xi.contains(&a) || xi.contains(&c))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::functor_g;
    use crate::fixtures::{e2, e3, e4};

    #[test]
    fn brute_component_examples() {
        let s2 = e2();
        assert_eq!(brute_components(&s2).unwrap(), s2.components());
        assert_eq!(brute_components(&e3()).unwrap().blocks(), [e3().full()]);
        assert_eq!(brute_components(&e4()).unwrap().len(), 2);
        let big = FiniteClosureSpace::indiscrete(13).unwrap();
        assert!(matches!(brute_components(&big), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn quasi_component_examples() {
        assert_eq!(quasi_components(&e2()).len(), 2);
        assert_eq!(quasi_components(&e3()).blocks(), [e3().full()]);
        assert_eq!(quasi_components(&e4()).len(), 2);
    }

    #[test]
    fn brute_classical_examples() {
        let s2 = functor_g(&e2());
        let x1 = s2.property("{x1}").unwrap();
        assert_eq!(
            brute_classical(&s2, x1),
            Some(s2.property("{x2,x3}").unwrap())
        );
        let s3 = functor_g(&e3());
        assert_eq!(brute_classical(&s3, s3.property("{x1}").unwrap()), None);
        assert_eq!(
            brute_classical(&s3, s3.lattice().bottom()),
            Some(s3.lattice().top())
        );
    }
}
