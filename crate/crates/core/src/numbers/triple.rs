use std::fmt;

use serde::{Deserialize, Serialize};

use super::{centered_residue, gcd, mod_inverse, Rational};
use crate::error::{KroneckerError, Result};

/// A raw 3-element set of nonzero integers, in any order and with any signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triple([i64; 3]);

impl Triple {
    pub fn new(n1: i64, n2: i64, n3: i64) -> Result<Self> {
        let v = [n1, n2, n3];
        if v.contains(&0) {
            return Err(KroneckerError::ZeroElement);
        }
        if n1 == n2 || n1 == n3 {
            return Err(KroneckerError::DuplicateElement(n1));
        }
        if n2 == n3 {
            return Err(KroneckerError::DuplicateElement(n2));
        }
        Ok(Triple(v))
    }

    pub fn values(&self) -> [i64; 3] {
        self.0
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// Where a canonical entry came from: `canonical[k] = ±raw[raw_index] / scale`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub raw_index: usize,
    pub negated: bool,
}

/// The representative of a triple's α-equivalence class.
///
/// α is unchanged by dividing out a common factor, by reordering and by
/// negating any single element. The canonical form fixes all of that:
///
/// * `gcd(n1, n2, n3) = 1`;
/// * entries sorted by absolute value, `n2, n3 > 0`;
/// * with distinct absolute values, the sign of `n1` is the one for which
///   the lattice shear `r` lands in `[0, n3/(2m)]` (positive `n1` on ties);
/// * without them, the tied pair is written `(-k, k)` and the rest positive.
///
/// Construction goes through [`canonicalize`] only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalTriple {
    values: [i64; 3],
    scale: i64,
    distinct_abs: bool,
    raw: [i64; 3],
    slots: [Slot; 3],
}

impl CanonicalTriple {
    pub fn n1(&self) -> i64 {
        self.values[0]
    }

    pub fn n2(&self) -> i64 {
        self.values[1]
    }

    pub fn n3(&self) -> i64 {
        self.values[2]
    }

    pub fn values(&self) -> [i64; 3] {
        self.values
    }

    /// The gcd divided out of the raw input.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn distinct_abs(&self) -> bool {
        self.distinct_abs
    }

    pub fn raw(&self) -> [i64; 3] {
        self.raw
    }

    pub fn slots(&self) -> [Slot; 3] {
        self.slots
    }

    /// Canonical positions whose sign differs from the raw input's.
    pub fn sign_flips(&self) -> Vec<usize> {
        (0..3).filter(|&k| self.slots[k].negated).collect()
    }

    /// Inverts the canonicalization for one canonical position.
    pub fn raw_value(&self, slot: usize) -> i64 {
        let s = self.slots[slot];
        let v = self.values[slot] * self.scale;
        if s.negated {
            -v
        } else {
            v
        }
    }

    /// `n3 = |n1| + n2`.
    pub fn is_sum_set(&self) -> bool {
        self.n3() == self.n1().abs() + self.n2()
    }

    /// Sort key used by reports: `(n3, n2, |n1|, n1)`.
    pub fn key(&self) -> (i64, i64, i64, i64) {
        (self.n3(), self.n2(), self.n1().abs(), self.n1())
    }
}

impl fmt::Display for CanonicalTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.values[0], self.values[1], self.values[2])
    }
}

/// Parameters of the lattice `K` generated by `(1/m, 0)` and `(r/n3, m/n3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeParams {
    pub m: i64,
    pub n2p: i64,
    pub n3p: i64,
    pub r: i64,
}

impl LatticeParams {
    /// `r = 0`.
    pub fn rectangular(&self) -> bool {
        self.r == 0
    }

    /// The two generators of `K` in `(x, y)` coordinates.
    pub fn generators(&self) -> [(Rational, Rational); 2] {
        let n3 = self.m * self.n3p;
        [
            (Rational::new(1, self.m as i128), Rational::ZERO),
            (Rational::new(self.r as i128, n3 as i128), Rational::new(self.m as i128, n3 as i128)),
        ]
    }
}

/// `n1 * (n2/m)^{-1} mod n3/m`, centered in `(-n3p/2, n3p/2]`.
fn shear(n1: i64, n2: i64, n3: i64) -> LatticeParams {
    let m = gcd(n2, n3);
    let (n2p, n3p) = (n2 / m, n3 / m);
    // n3p >= 2 whenever n2 < n3, and gcd(n2p, n3p) = 1.
    let inv = mod_inverse(n2p, n3p).expect("n2/m is a unit mod n3/m");
    let r = centered_residue((n1 as i128 * inv as i128).rem_euclid(n3p as i128) as i64, n3p);
    LatticeParams { m, n2p, n3p, r }
}

pub fn canonicalize(t: &Triple) -> CanonicalTriple {
    let raw = t.values();
    let g = gcd(gcd(raw[0], raw[1]), raw[2]);
    let reduced = raw.map(|v| v / g);

    let mut order = [0usize, 1, 2];
    order.sort_by_key(|&i| (reduced[i].abs(), reduced[i]));
    let abs = order.map(|i| reduced[i].abs());
    let distinct_abs = abs[0] < abs[1] && abs[1] < abs[2];

    let values = if distinct_abs {
        let sh = shear(abs[0], abs[1], abs[2]);
        let n1 = if sh.r < 0 { -abs[0] } else { abs[0] };
        [n1, abs[1], abs[2]]
    } else if abs[0] == abs[1] {
        [-abs[0], abs[1], abs[2]]
    } else {
        [abs[0], -abs[1], abs[2]]
    };

    let slots = [0, 1, 2].map(|k| Slot {
        raw_index: order[k],
        negated: values[k].signum() != reduced[order[k]].signum(),
    });

    CanonicalTriple { values, scale: g, distinct_abs, raw, slots }
}

/// Computes `m = gcd(n2, n3)` and the shear `r` of the lattice for a canonical triple.
///
/// `r` is the representative of `n1 * (n2/m)^{-1}` modulo `n3/m` in
/// `(-n3/2m, n3/2m]`. Canonical triples already carry the sign of `n1` that
/// makes it non-negative.
pub fn lattice_params(ct: &CanonicalTriple) -> Result<LatticeParams> {
    if !ct.distinct_abs {
        return Err(KroneckerError::NonDistinct);
    }
    let lp = shear(ct.n1(), ct.n2(), ct.n3());
    debug_assert!(lp.r >= 0, "canonical sign choice violated for {ct}");
    Ok(lp)
}
