//! Seeded random inputs for the property suites.
//!
//! Each trial gets its own ChaCha stream keyed by `(seed, trial)`, so a
//! suite produces the same inputs whether it runs sequentially or in parallel.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::cross;
use crate::algebra::vector::Vector7;

/// Independent generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Standard Gaussian vector in ℝ⁷.
pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R) -> Vector7 {
    Vector7(std::array::from_fn(|_| rng.sample(StandardNormal)))
}

/// Uniform point on the unit sphere `S⁶`.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> Vector7 {
    loop {
        if let Some(u) = gaussian_vector(rng).normalized(1e-6) {
            return u;
        }
    }
}

/// Unit vector orthogonal to the orthonormal family `basis`.
pub fn unit_vector_orthogonal_to<R: Rng + ?Sized>(rng: &mut R, basis: &[Vector7]) -> Vector7 {
    assert!(basis.len() < 7, "no room for an orthogonal vector");
    loop {
        if let Some(u) = gaussian_vector(rng).reject_from(basis).normalized(1e-6) {
            // One more pass against rounding drift.
            if let Some(u) = u.reject_from(basis).normalized(1e-6) {
                return u;
            }
        }
    }
}

/// Orthonormal `k`-frame spanning a uniformly random `k`-plane.
pub fn orthonormal_frame<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<Vector7> {
    let mut frame = Vec::with_capacity(k);
    for _ in 0..k {
        let next = unit_vector_orthogonal_to(rng, &frame);
        frame.push(next);
    }
    frame
}

/// A random G2 frame: the images of `e₁,…,e₇` under an element of G2.
///
/// Built from a unit `u`, a unit `v ⟂ u`, `w = u×v`, and a unit `a ⟂ u,v,w`;
/// the frame is `u, v, w, a, u×a, v×a, a×w`.
pub fn g2_frame<R: Rng + ?Sized>(rng: &mut R) -> [Vector7; 7] {
    let u = unit_vector(rng);
    let v = unit_vector_orthogonal_to(rng, &[u]);
    let w = cross(&u, &v);
    let a = unit_vector_orthogonal_to(rng, &[u, v, w]);
    [u, v, w, a, cross(&u, &a), cross(&v, &a), cross(&a, &w)]
}

/// Apply the linear map with columns `frame` to `x`.
pub fn apply_frame(frame: &[Vector7; 7], x: &Vector7) -> Vector7 {
    frame.iter().zip(x.0.iter()).fold(Vector7::zero(), |acc, (col, c)| acc + col.scale(c))
}
