//! Seeded random distributions.
//!
//! Float masses are uniform on the simplex: independent `Exp(1)` draws
//! normalized by their sum. Rational masses are integer numerators drawn
//! uniformly from `[0, 2^16)` over the common denominator `2^16`, then
//! normalized exactly (an all-zero draw is redrawn). Each trial of a suite
//! gets its own ChaCha8 stream seeded with `splitmix64(seed + trial)`.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::distribution::{Alphabet, Joint2, Joint3, Var};
use crate::mass::{Mass, Rational};

pub const NUMERATOR_BITS: u32 = 16;

pub trait Sample: Mass {
    /// `n` non-negative masses summing to one.
    fn sample_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<Self>;
}

impl Sample for f64 {
    fn sample_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<Self> {
        let draws: Vec<f64> = (0..n).map(|_| rng.sample(Exp1)).collect();
        let total: f64 = draws.iter().sum();
        draws.into_iter().map(|d| d / total).collect()
    }
}

impl Sample for Rational {
    fn sample_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<Self> {
        loop {
            let numerators: Vec<u64> = (0..n)
                .map(|_| rng.random_range(0..1u64 << NUMERATOR_BITS))
                .collect();
            let total: u64 = numerators.iter().sum();
            if total == 0 {
                continue;
            }
            return numerators
                .into_iter()
                .map(|k| Rational::new(BigInt::from(k), BigInt::from(total)))
                .collect();
        }
    }
}

/// SplitMix64 finalizer, used to decorrelate neighbouring seeds.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    splitmix64(seed.wrapping_add(trial))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_joint2<T: Sample>(seed: u64, nx: usize, ny: usize) -> Joint2<T> {
    assert!(nx > 0 && ny > 0, "shape dimensions must be positive");
    let masses = T::sample_simplex(&mut rng(seed), nx * ny);
    Joint2::from_parts(
        Alphabet::numbered(Var::X, nx).expect("non-empty"),
        Alphabet::numbered(Var::Y, ny).expect("non-empty"),
        masses,
    )
}

pub fn random_joint3<T: Sample>(seed: u64, nx: usize, ny: usize, nz: usize) -> Joint3<T> {
    assert!(nx > 0 && ny > 0 && nz > 0, "shape dimensions must be positive");
    let masses = T::sample_simplex(&mut rng(seed), nx * ny * nz);
    Joint3::from_parts(
        Alphabet::numbered(Var::X, nx).expect("non-empty"),
        Alphabet::numbered(Var::Y, ny).expect("non-empty"),
        Alphabet::numbered(Var::Z, nz).expect("non-empty"),
        masses,
    )
}
