//! Shared fixtures for the integration and acceptance tests.
#![allow(dead_code)]

use kronecker::numbers::{canonicalize, lattice_params, CanonicalTriple, Triple};
use kronecker::harness::enumerate_canonical;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn canon(a: i64, b: i64, c: i64) -> CanonicalTriple {
    canonicalize(&Triple::new(a, b, c).unwrap())
}

/// `count` distinct canonical classes with `n3 <= max_n3`, drawn with `seed`.
pub fn sample_classes(seed: u64, max_n3: i64, count: usize) -> Vec<CanonicalTriple> {
    let mut all: Vec<CanonicalTriple> = enumerate_canonical(max_n3, false).unwrap().collect();
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count && !all.is_empty() {
        let k = r.random_range(0..all.len());
        out.push(all.swap_remove(k));
    }
    out
}

/// `0 < |n1| < n2 < n3 <= max` with a random sign on `n1`.
pub fn ordered_tuple(r: &mut ChaCha8Rng, max: i64) -> (i64, i64, i64) {
    let n3 = r.random_range(3..=max);
    let n2 = r.random_range(2..n3);
    let a1 = r.random_range(1..n2);
    let n1 = if r.random_bool(0.5) { -a1 } else { a1 };
    (n1, n2, n3)
}

/// Canonical classes with distinct absolute values and `r > 0`.
pub fn sheared_classes(max_n3: i64) -> Vec<CanonicalTriple> {
    enumerate_canonical(max_n3, false)
        .unwrap()
        .filter(|ct| lattice_params(ct).map(|lp| lp.r > 0).unwrap_or(false))
        .collect()
}
