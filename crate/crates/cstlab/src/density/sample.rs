//! Seeded Monte-Carlo sampling of the semicircle trace law.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::Result;

/// Stable sub-seed for a named component and shard index. FNV-1a over the
/// component name, then a splitmix-style finalizer; no platform-dependent
/// hashing is involved, so sharded runs reproduce across builds.
pub fn derive_stream_seed(master: u64, component: &str, shard: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in component.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    let mut z = h ^ master.rotate_left(17) ^ shard.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `n` i.i.d. draws from the semicircle density `(1/2π) sqrt(4 - u²)` on
/// [-2, 2], by rejection from the uniform envelope. Deterministic per seed.
pub fn semicircle_sample(seed: u64, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Domain("sample size must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let peak = 1.0 / std::f64::consts::PI; // density maximum at u = 0
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let u: f64 = rng.gen_range(-2.0..2.0);
        let v: f64 = rng.gen_range(0.0..peak);
        // accept iff v <= sqrt(4 - u^2)/(2 pi)
        if (2.0 * std::f64::consts::PI * v).powi(2) <= 4.0 - u * u {
            out.push(u);
        }
    }
    Ok(out)
}

/// Collapses consecutive pairs into normalized sums `(u1 + u2)/4`, the
/// Monte-Carlo realization of the marginal trace law.
pub fn pair_sums_normalized(draws: &[f64]) -> Vec<f64> {
    draws
        .chunks_exact(2)
        .map(|c| (c[0] + c[1]) / 4.0)
        .collect()
}
