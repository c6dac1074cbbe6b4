use rayon::prelude::*;

use crate::closure::FiniteClosureSpace;
use crate::error::{Error, Result};
use crate::order::{PointUniverse, SetFamily, Subset};

pub const MAX_ENUMERATION_POINTS: usize = 4;

struct Plan {
    n: usize,
    proper: Vec<Subset>,
}

impl Plan {
    fn new(n: usize) -> Result<Self> {
        if !(1..=MAX_ENUMERATION_POINTS).contains(&n) {
            return Err(Error::Input(format!(
                "enumeration needs 1 <= n <= {MAX_ENUMERATION_POINTS}, got {n}"
            )));
        }
        let full = Subset::full(n);
        let mut proper: Vec<Subset> = (1..full.bits()).map(Subset::from_bits).collect();
        proper.sort_unstable();
        Ok(Self { n, proper })
    }

    fn family_count(&self) -> u64 {
        1u64 << self.proper.len()
    }

    /// Space whose proper nonempty closed sets are selected by `mask`, if the
    /// selection is intersection-closed.
    fn space(&self, mask: u64) -> Option<FiniteClosureSpace> {
        let chosen: Vec<Subset> = (0..self.proper.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.proper[i])
            .collect();
        let selected = |s: Subset| {
            s.is_empty()
                || self
                    .proper
                    .binary_search(&s)
                    .is_ok_and(|i| mask >> i & 1 == 1)
        };
        for (i, &a) in chosen.iter().enumerate() {
            if chosen[i + 1..]
                .iter()
                .any(|&b| !selected(a.intersection(b)))
            {
                return None;
            }
        }
        let family = SetFamily::new(
            self.n,
            chosen
                .into_iter()
                .chain([Subset::EMPTY, Subset::full(self.n)]),
        )
        .ok()?;
        let universe = PointUniverse::numbered(self.n).ok()?;
        FiniteClosureSpace::new(universe, family).ok()
    }
}

/// Every closure space on `x1..xn`, each exactly once, ordered by the
/// bitmask of its proper nonempty closed sets.
pub fn enumerate_closure_spaces(n: usize) -> Result<impl Iterator<Item = FiniteClosureSpace>> {
    let plan = Plan::new(n)?;
    Ok((0..plan.family_count()).filter_map(move |m| plan.space(m)))
}

/// Same sequence as [`enumerate_closure_spaces`], computed on `threads`
/// workers over contiguous mask ranges.
pub fn enumerate_closure_spaces_par(n: usize, threads: usize) -> Result<Vec<FiniteClosureSpace>> {
    let plan = Plan::new(n)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        (0..plan.family_count())
            .into_par_iter()
            .filter_map(|m| plan.space(m))
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_closure_spaces(1).unwrap().count(), 1);
        assert_eq!(enumerate_closure_spaces(2).unwrap().count(), 4);
    }

    #[test]
    fn out_of_range() {
        assert!(enumerate_closure_spaces(0).is_err());
        assert!(enumerate_closure_spaces(5).is_err());
    }

    #[test]
    fn parallel_matches_sequential() {
        let seq: Vec<_> = enumerate_closure_spaces(3).unwrap().collect();
        assert_eq!(enumerate_closure_spaces_par(3, 4).unwrap(), seq);
    }
}
