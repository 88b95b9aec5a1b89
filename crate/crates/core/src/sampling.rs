//! Seeded test-input generation.
//!
//! Every randomized run is driven by one master seed. Trial `k` draws from
//! the ChaCha8 stream number `k` of the generator keyed by the master seed,
//! so trials are independent of each other and of evaluation order.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::measure::FinitePointMeasure;
use crate::space::{Point, SpaceDescriptor};

pub fn master_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for trial `trial` under master seed `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Weights `u_i / Σ u` from independent uniform draws on `(0, 1]`.
pub fn random_weights<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..count).map(|_| 1.0 - rng.random::<f64>()).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|u| u / total).collect()
}

/// A measure with `atoms` random atoms (distinct labels on discrete spaces)
/// and [`random_weights`].
pub fn random_measure<R: Rng + ?Sized>(
    space: &SpaceDescriptor,
    atoms: usize,
    rng: &mut R,
) -> Result<FinitePointMeasure> {
    if atoms == 0 {
        return Err(Error::InvalidArgument("a measure needs at least one atom".into()));
    }
    let points: Vec<Point> = if space.is_discrete() {
        if atoms > space.dim {
            return Err(Error::InvalidArgument(format!(
                "cannot place {atoms} distinct atoms on {space}"
            )));
        }
        index::sample(rng, space.dim, atoms)
            .into_iter()
            .map(Point::Label)
            .collect()
    } else {
        (0..atoms).map(|_| space.random_point(rng)).collect::<Result<_>>()?
    };
    let weights = random_weights(atoms, rng);
    FinitePointMeasure::new(*space, points, weights)
}

/// A measure whose atom count is uniform on `1..=max_atoms` (capped by the
/// number of labels on discrete spaces).
pub fn random_measure_upto<R: Rng + ?Sized>(
    space: &SpaceDescriptor,
    max_atoms: usize,
    rng: &mut R,
) -> Result<FinitePointMeasure> {
    let cap = if space.is_discrete() {
        max_atoms.min(space.dim)
    } else {
        max_atoms
    };
    let n = rng.random_range(1..=cap.max(1));
    random_measure(space, n, rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_streams_are_reproducible_and_distinct() {
        let a: u64 = trial_rng(9, 3).random();
        let b: u64 = trial_rng(9, 3).random();
        let c: u64 = trial_rng(9, 4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn random_measures_have_the_requested_size() {
        let mut rng = master_rng(1);
        let d = SpaceDescriptor::discrete(6).unwrap();
        assert_eq!(random_measure(&d, 6, &mut rng).unwrap().len(), 6);
        assert!(random_measure(&d, 7, &mut rng).is_err());
        let s = SpaceDescriptor::sphere(3).unwrap();
        let m = random_measure(&s, 5, &mut rng).unwrap();
        assert_eq!(m.len(), 5);
        assert!((m.weights().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }
}
