//! Seeded random streams.
//!
//! Every random draw in the crate comes from ChaCha20 (`rand_chacha`, pinned
//! in the manifest). A [`RandomSeed`] selects the key; independent streams
//! for parallel work are selected with the ChaCha stream counter, so stream
//! `k` under seed `s` is the same no matter which thread consumes it.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

pub type SimRng = ChaCha20Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RandomSeed(pub u64);

impl RandomSeed {
    pub fn rng(self) -> SimRng {
        ChaCha20Rng::seed_from_u64(self.0)
    }

    /// Independent stream `stream` under this seed.
    pub fn stream(self, stream: u64) -> SimRng {
        let mut rng = self.rng();
        rng.set_stream(stream);
        rng
    }
}

impl From<u64> for RandomSeed {
    fn from(s: u64) -> Self {
        RandomSeed(s)
    }
}
