//! Seed-deterministic parallel Monte Carlo.
//!
//! Realizations are split into fixed-size chunks; chunk `i` draws from a
//! ChaCha8 stream seeded with `seed` on stream id `i`. Results are
//! concatenated in chunk order, so output depends only on the seed and the
//! count, never on the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Realizations per chunk.
pub const CHUNK: usize = 256;

/// The random stream used by chunk `stream` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Runs `per_chunk(rng, n)` for each chunk of `count` realizations in parallel
/// and concatenates the outputs in chunk order.
pub fn par_chunks<T, F>(seed: u64, count: usize, per_chunk: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> Vec<T> + Sync,
{
    let chunks = count.div_ceil(CHUNK);
    let parts: Vec<Vec<T>> = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let n = CHUNK.min(count - i * CHUNK);
            let mut rng = stream_rng(seed, i as u64);
            per_chunk(&mut rng, n)
        })
        .collect();
    parts.into_iter().flatten().collect()
}

/// One output per realization.
pub fn par_map<T, F>(seed: u64, count: usize, per_item: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync,
{
    par_chunks(seed, count, |rng, n| (0..n).map(|_| per_item(rng)).collect())
}
