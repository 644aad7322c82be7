//! Seeded random inputs for verification campaigns. Streams are ChaCha8 with
//! per-trial seeds derived from the base seed, so any trial can be replayed
//! in isolation and the whole campaign is reproducible bit for bit.

use num_complex::Complex64;
use popuc_core::circle::TAU;
use popuc_core::ParameterArray;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Angular guard band kept around forbidden values (β = 1).
pub const BETA_GUARD: f64 = 1e-6;

pub fn trial_rng(base_seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(
        base_seed ^ (trial as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15),
    )
}

/// α uniform in the disk of the given radius, b uniform on the circle.
pub fn random_parameters(rng: &mut ChaCha8Rng, n: usize, alpha_radius: f64) -> ParameterArray {
    let alphas = (0..n)
        .map(|_| {
            let r = alpha_radius * rng.gen::<f64>().sqrt();
            let t = TAU * rng.gen::<f64>();
            Complex64::from_polar(r, t)
        })
        .collect();
    let b = unit_complex(rng);
    ParameterArray::new(alphas, b).expect("sampled inside the domain")
}

pub fn unit_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, TAU * rng.gen::<f64>())
}

/// Unimodular β bounded away from 1 by the guard band.
pub fn unit_complex_not_one(rng: &mut ChaCha8Rng) -> Complex64 {
    let t = BETA_GUARD + (TAU - 2.0 * BETA_GUARD) * rng.gen::<f64>();
    Complex64::from_polar(1.0, t)
}
