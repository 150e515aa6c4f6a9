use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic per-cell generator: the same seed and cell coordinates
/// always give the same stream, independent of evaluation order.
pub(crate) fn cell_rng(seed: u64, cell: &[u64]) -> ChaCha8Rng {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for &c in cell {
        h = splitmix(h ^ c);
    }
    ChaCha8Rng::seed_from_u64(h)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
