//! Seeded instance generators shared by the benchmarks.

use lightsum_core::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n` values drawn uniformly from `1..=max_value`, target at half the total.
pub fn random_instance(n: usize, max_value: u64, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<u64> = (0..n).map(|_| rng.random_range(1..=max_value)).collect();
    let target = values.iter().sum::<u64>() / 2;
    Instance::new(values, target).expect("values are positive")
}
