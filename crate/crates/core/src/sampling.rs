//! Seeded sampling helpers shared by the verification suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::space::BaseNorm;

/// Deterministic generator used by every randomized check.
pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Log-uniform draw from `[lo, hi]`, `0 < lo < hi`.
pub fn log_uniform(rng: &mut SampleRng, lo: f64, hi: f64) -> f64 {
    let (a, b) = (lo.ln(), hi.ln());
    (a + (b - a) * rng.random::<f64>()).exp()
}

pub fn uniform(rng: &mut SampleRng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// Vector with independent uniform entries in `[-half_width, half_width]`.
pub fn uniform_vector(rng: &mut SampleRng, dim: usize, half_width: f64) -> Vec<f64> {
    (0..dim).map(|_| uniform(rng, -half_width, half_width)).collect()
}

/// Direction of unit length in `norm` (Gaussian draw, then normalized).
pub fn unit_direction(rng: &mut SampleRng, dim: usize, norm: &BaseNorm) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let n = norm.norm(&v);
        if n > 1e-12 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

/// Nonzero vector whose base norm is log-uniform in `[lo, hi]`.
pub fn scaled_vector(rng: &mut SampleRng, dim: usize, norm: &BaseNorm, lo: f64, hi: f64) -> Vec<f64> {
    let r = log_uniform(rng, lo, hi);
    unit_direction(rng, dim, norm).into_iter().map(|c| c * r).collect()
}

/// Nonzero scalar with log-uniform magnitude in `[lo, hi]` and random sign.
pub fn signed_scalar(rng: &mut SampleRng, lo: f64, hi: f64) -> f64 {
    let m = log_uniform(rng, lo, hi);
    if rng.random::<bool>() {
        m
    } else {
        -m
    }
}
