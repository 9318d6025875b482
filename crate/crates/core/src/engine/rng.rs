use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Labels the consumer of a random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    InitialNodes = 0,
    EntryCandidates = 1,
    GrowthCapital = 2,
}

/// Independent generator for one `(month, stream, id)` slot of a run. The
/// four values are packed verbatim into the 256-bit ChaCha key, so distinct
/// slots never share a key and adding draws in one slot cannot shift another.
pub fn rng_for(seed: u64, month: u32, stream: Stream, id: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&u64::from(month).to_le_bytes());
    key[16..24].copy_from_slice(&(stream as u64).to_le_bytes());
    key[24..32].copy_from_slice(&id.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}
