use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent generator for realization `index` of a run seeded with `seed`.
pub(crate) fn realization_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Realizations per parallel work item. Fixed so that reductions see the
/// same partition whatever the thread count.
pub(crate) const CHUNK: u64 = 4096;

pub(crate) fn chunks(n: u64) -> impl Iterator<Item = std::ops::Range<u64>> {
    (0..n.div_ceil(CHUNK)).map(move |c| c * CHUNK..((c + 1) * CHUNK).min(n))
}
