//! Seeded sampling of test points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed used by every property sweep in the crate and the CLI.
pub const DEFAULT_SEED: u64 = 0x5EED_0F_2024;

/// Number of points per property sweep.
pub const DEFAULT_SAMPLES: usize = 100;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` uniform points in `[lo, hi]^dim`.
pub fn uniform_points(seed: u64, count: usize, dim: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| (0..dim).map(|_| r.gen_range(lo..=hi)).collect())
        .collect()
}

/// Uniform points in `[lo, hi]^dim` passed through `adjust` and kept only
/// when `accept` holds. Gives up after `50 * count` draws.
pub fn filtered_points<A, F>(
    seed: u64,
    count: usize,
    dim: usize,
    lo: f64,
    hi: f64,
    adjust: A,
    accept: F,
) -> Vec<Vec<f64>>
where
    A: Fn(&mut Vec<f64>),
    F: Fn(&[f64]) -> bool,
{
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    let mut draws = 0;
    while out.len() < count && draws < 50 * count {
        draws += 1;
        let mut p: Vec<f64> = (0..dim).map(|_| r.gen_range(lo..=hi)).collect();
        adjust(&mut p);
        if accept(&p) {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_reproducible() {
        assert_eq!(
            uniform_points(7, 5, 3, -2.0, 2.0),
            uniform_points(7, 5, 3, -2.0, 2.0)
        );
        assert_ne!(
            uniform_points(7, 5, 3, -2.0, 2.0),
            uniform_points(8, 5, 3, -2.0, 2.0)
        );
    }

    #[test]
    fn filtered_points_respect_predicate() {
        let pts = filtered_points(1, 50, 2, -1.0, 1.0, |_| {}, |p| p[0] > 0.0);
        assert_eq!(pts.len(), 50);
        assert!(pts.iter().all(|p| p[0] > 0.0));
    }
}
