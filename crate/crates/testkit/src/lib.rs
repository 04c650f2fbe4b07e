//! Random generators and brute-force oracles shared by the test suites.

pub mod gen;
pub mod oracle;

pub use rand_chacha::ChaCha8Rng;

use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
