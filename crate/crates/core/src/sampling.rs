//! Seeded sampling used by the experiments and test suites.
//!
//! All randomness flows through [`ChaCha8Rng`], whose output stream is
//! stable across platforms and crate versions.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{symmetrize, SymPoint};
use crate::group::G2Automorphism;
use crate::moebius::DiscAutomorphism;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic sub-seed for worker `index` of a run seeded with `seed`.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn unit_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))
}

/// Uniform (area measure) sample from the disc `|z| <= radius`.
pub fn random_in_disc<R: Rng>(rng: &mut R, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(0.0..TAU))
}

/// Random disc automorphism with uniform rotation and zero `|a| <= max_radius`.
pub fn random_disc_automorphism<R: Rng>(rng: &mut R, max_radius: f64) -> DiscAutomorphism {
    let tau = unit_complex(rng);
    let a = random_in_disc(rng, max_radius);
    DiscAutomorphism::new(tau, a).expect("sampled parameters lie inside the domain")
}

pub fn random_g2_automorphism<R: Rng>(rng: &mut R, max_radius: f64) -> G2Automorphism {
    G2Automorphism::lift(random_disc_automorphism(rng, max_radius))
}

/// `pi(l1, l2)` for two independent roots with `|l| <= radius`.
pub fn random_g2_point<R: Rng>(rng: &mut R, radius: f64) -> SymPoint {
    let l1 = random_in_disc(rng, radius);
    let l2 = random_in_disc(rng, radius);
    symmetrize(l1, l2)
}

/// `(2l, l^2)` with `|l| <= radius`.
pub fn random_royal_point<R: Rng>(rng: &mut R, radius: f64) -> SymPoint {
    let l = random_in_disc(rng, radius);
    symmetrize(l, l)
}
