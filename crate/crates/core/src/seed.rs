//! The repository-wide randomness contract.
//!
//! Every randomized operation takes a [`Seed`] and draws from a ChaCha8
//! stream: the 64-bit seed selects the key (`seed_from_u64`) and the trial
//! index selects the ChaCha stream. Equal `(seed, trial)` pairs therefore
//! give bit-identical streams on every platform, and distinct trials of one
//! experiment never share a stream.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator handed out by [`Seed::rng`].
pub type SeedRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Seed {
    pub seed: u64,
    pub trial: u64,
}

impl Seed {
    pub const fn new(seed: u64) -> Self {
        Seed { seed, trial: 0 }
    }

    pub const fn with_trial(self, trial: u64) -> Self {
        Seed {
            seed: self.seed,
            trial,
        }
    }

    pub fn rng(&self) -> SeedRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.trial);
        rng
    }
}

impl From<u64> for Seed {
    fn from(seed: u64) -> Self {
        Seed::new(seed)
    }
}
