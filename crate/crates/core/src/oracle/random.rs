use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::closure::FiniteClosureSpace;
use crate::error::{Error, Result};
use crate::order::{intersection_closure, PointUniverse, SetFamily, Subset};

pub const MAX_RANDOM_POINTS: usize = 12;

/// Seeded random closure space on `x1..xn`.
///
/// The stream is ChaCha8 seeded through `seed_from_u64`. Each nonempty
/// proper subset, in increasing mask order, consumes one `u64`; its top 53
/// bits as a fraction of 2^53 below `density` select the subset. The
/// selection is then closed under intersection.
pub fn random_closure_space(n: usize, density: f64, seed: u64) -> Result<FiniteClosureSpace> {
    if !(1..=MAX_RANDOM_POINTS).contains(&n) {
        return Err(Error::Input(format!(
            "random spaces need 1 <= n <= {MAX_RANDOM_POINTS}, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Input(format!("density {density} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = Subset::full(n).bits();
    let mut chosen = vec![Subset::EMPTY];
    for bits in 1..full {
        let draw = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        if draw < density {
            chosen.push(Subset::from_bits(bits));
        }
    }
    let family = intersection_closure(&SetFamily::new(n, chosen)?);
    FiniteClosureSpace::new(PointUniverse::numbered(n)?, family)
}
