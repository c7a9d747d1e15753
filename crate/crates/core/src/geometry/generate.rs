use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::scan::IncrementalScan;
use super::{validate_generic, Axis, Embedding, Point3, Rational};
use crate::error::{Error, Result};

/// Resamples or perturbations allowed before giving up.
pub const RETRY_BUDGET: usize = 64;

const MAX_BOUND: u64 = 1 << 50;
const PERTURB_STEPS: i64 = 1_000_000;

/// Straight-edge embedding of `K_n` with integer coordinates drawn uniformly
/// from `[-coord_bound, coord_bound]^3`; each vertex is resampled until the
/// Z projection of everything placed so far is generic.
pub fn random_linear_embedding(n: usize, coord_bound: u64, seed: u64) -> Result<Embedding> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n must be at least 3, got {n}")));
    }
    if coord_bound == 0 || coord_bound > MAX_BOUND {
        return Err(Error::InvalidArgument(format!("coord_bound must be in 1..=2^50, got {coord_bound}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = coord_bound as i128;
    let mut scan = IncrementalScan::new();
    let mut coords = Vec::with_capacity(n);
    for _ in 0..n {
        let mut placed = false;
        for _ in 0..RETRY_BUDGET {
            let p = [rng.gen_range(-b..=b), rng.gen_range(-b..=b), rng.gen_range(-b..=b)];
            if scan.try_push(p) {
                coords.push(Point3::from_ints(p[0] as i64, p[1] as i64, p[2] as i64));
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::RetryBudget { what: "vertex resampling", budget: RETRY_BUDGET });
        }
    }
    Embedding::straight(coords)
}

/// Returns `e` unchanged when its Z projection is generic, otherwise moves
/// every vertex by a rational offset smaller than `1/(n * spread)` per
/// coordinate until it is.
pub fn resolve_degeneracy(e: &Embedding, seed: u64) -> Result<Embedding> {
    if validate_generic(e, Axis::Z).is_empty() {
        return Ok(e.clone());
    }
    let spread = e.spread();
    let spread_ceil = spread.ceil().to_integer();
    let den = BigInt::from(2 * PERTURB_STEPS) * BigInt::from(e.n()) * spread_ceil;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_BUDGET {
        let mut offset = || {
            let k: i64 = rng.gen_range(-PERTURB_STEPS..=PERTURB_STEPS);
            Rational::new(BigInt::from(k), den.clone())
        };
        let coords = e
            .coords()
            .iter()
            .map(|p| Point3::new(&p.x + offset(), &p.y + offset(), &p.z + offset()))
            .collect();
        let candidate = e.with_coords(coords)?;
        if validate_generic(&candidate, Axis::Z).is_empty() {
            return Ok(candidate);
        }
    }
    Err(Error::RetryBudget { what: "degeneracy perturbation", budget: RETRY_BUDGET })
}

/// Upper bound on any single perturbation applied by [`resolve_degeneracy`].
#[cfg(test)]
pub(crate) fn perturbation_limit(e: &Embedding) -> Rational {
    use num_traits::One;
    Rational::one() / (Rational::from_integer(BigInt::from(e.n())) * e.spread())
}
