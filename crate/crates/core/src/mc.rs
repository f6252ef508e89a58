//! Seeded Monte-Carlo estimation.
//!
//! Samples are split into fixed-size chunks; chunk `i` draws from the ChaCha
//! stream `i` of the root seed. Chunk sums are reduced in chunk order, so an
//! estimate depends only on (seed, samples), never on the worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::quadrature::NeumaierSum;

/// Samples per independent RNG stream.
pub const CHUNK: usize = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    /// Sample standard deviation / √samples.
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

impl McEstimate {
    /// |value − target| in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        let d = (self.value - target).abs();
        if self.stderr > 0.0 {
            d / self.stderr
        } else if d == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// RNG for chunk `chunk` of the run seeded by `seed`.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Derive an independent root seed for sub-run `index` of a root seed.
pub fn derive_seed(root: u64, index: u64) -> u64 {
    // SplitMix64 finalizer over (root, index).
    let mut z = root ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE5_E4B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Estimate E[f] where `draw` maps a chunk RNG to one sample value.
pub fn estimate<F>(samples: u64, seed: u64, draw: F) -> McEstimate
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let chunks = samples.div_ceil(CHUNK as u64);
    let partials: Vec<(f64, f64, u64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let n = (samples - c * CHUNK as u64).min(CHUNK as u64);
            let mut rng = chunk_rng(seed, c);
            // Shifted accumulation: per-chunk mean first, then squared deviations.
            let values: Vec<f64> = (0..n).map(|_| draw(&mut rng)).collect();
            let mut s = NeumaierSum::default();
            values.iter().for_each(|&v| s.add(v));
            let mean = s.value() / n as f64;
            let mut ss = NeumaierSum::default();
            values.iter().for_each(|&v| ss.add((v - mean) * (v - mean)));
            (mean, ss.value(), n)
        })
        .collect();

    // Chan et al. pairwise merge, in chunk order.
    let (mut mean, mut m2, mut count) = (0.0f64, 0.0f64, 0u64);
    for (cm, cm2, cn) in partials {
        if count == 0 {
            (mean, m2, count) = (cm, cm2, cn);
            continue;
        }
        let total = count + cn;
        let delta = cm - mean;
        mean += delta * cn as f64 / total as f64;
        m2 += cm2 + delta * delta * count as f64 * cn as f64 / total as f64;
        count = total;
    }
    let var = if count > 1 { m2 / (count - 1) as f64 } else { 0.0 };
    McEstimate {
        value: mean,
        stderr: (var / count.max(1) as f64).sqrt(),
        samples: count,
        seed,
    }
}
