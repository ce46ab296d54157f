//! Shared helpers for the integration suites.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use susy_modular::FockSpec;

pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Random unit amplitude pair (alpha, beta) with |alpha|^2 + |beta|^2 = 1.
pub fn random_amplitude_pair(rng: &mut ChaCha8Rng) -> (Complex64, Complex64) {
    let alpha = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let beta = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
    (alpha / norm, beta / norm)
}

#[allow(dead_code)]
pub fn random_unit_vector(spec: FockSpec, rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    let dim = spec.total_dim();
    let mut v = DVector::from_fn(dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let norm = v.norm();
    v /= Complex64::new(norm, 0.0);
    v
}

/// Print the one-line verdict the acceptance gate reports per criterion.
#[allow(dead_code)]
pub fn criterion_line(number: u32, ok: bool, description: &str) {
    println!(
        "criterion {number}: {} — {description}",
        if ok { "PASS" } else { "FAIL" }
    );
}
