//! Exact arithmetic, gcd machinery, set canonicalization and the lattice
//! parameters `(m, r)` of a triple.

mod rational;
mod triple;

pub use rational::{q, Rational};
pub use triple::{canonicalize, lattice_params, CanonicalTriple, LatticeParams, Slot, Triple};

use crate::error::{KroneckerError, Result};

/// Extended Euclid: returns `(g, u, v)` with `u*a + v*b = g = gcd(|a|, |b|) > 0`.
pub fn egcd(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    if a == 0 && b == 0 {
        return Err(KroneckerError::BothZero);
    }
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_u, mut u) = (1i128, 0i128);
    let (mut old_v, mut v) = (0i128, 1i128);
    while r != 0 {
        let quo = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - quo * r);
        (old_u, u) = (u, old_u - quo * u);
        (old_v, v) = (v, old_v - quo * v);
    }
    if old_r < 0 {
        old_r = -old_r;
        old_u = -old_u;
        old_v = -old_v;
    }
    Ok((old_r as i64, old_u as i64, old_v as i64))
}

/// `gcd(|a|, |b|)`, with `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// The inverse of `a` modulo `n`, in `[1, n - 1]`.
pub fn mod_inverse(a: i64, n: i64) -> Result<i64> {
    if n < 2 {
        return Err(KroneckerError::InvalidArgument(format!(
            "modulus must be at least 2, got {n}"
        )));
    }
    let (g, u, _) = egcd(a.rem_euclid(n), n).map_err(|_| KroneckerError::NotInvertible { a, n })?;
    if g != 1 {
        return Err(KroneckerError::NotInvertible { a, n });
    }
    Ok(u.rem_euclid(n))
}

/// Representative of `a mod n` in `(-n/2, n/2]`.
pub fn centered_residue(a: i64, n: i64) -> i64 {
    let r = a.rem_euclid(n);
    if 2 * r > n {
        r - n
    } else {
        r
    }
}

/// Chordal Kronecker constant from the angular one: `|e^{2 pi i alpha} - 1| = 2 sin(pi alpha)`.
pub fn kappa_from_alpha(alpha: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&alpha) {
        return Err(KroneckerError::InvalidArgument(format!(
            "alpha must lie in [0, 1/2], got {alpha}"
        )));
    }
    Ok(2.0 * (std::f64::consts::PI * alpha).sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_bezout(a: i64, b: i64, g: i64) {
        let (gg, u, v) = egcd(a, b).unwrap();
        assert_eq!(gg, g);
        assert_eq!(u * a + v * b, g);
    }

    #[test]
    fn egcd_examples() {
        check_bezout(2, 3, 1);
        check_bezout(6, 9, 3);
        check_bezout(0, 5, 5);
        check_bezout(-4, 6, 2);
        check_bezout(-7, 0, 7);
        assert_eq!(egcd(0, 0), Err(KroneckerError::BothZero));
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(2, 3).unwrap(), 2);
        assert_eq!(mod_inverse(3, 5).unwrap(), 2);
        assert_eq!(mod_inverse(4, 5).unwrap(), 4);
        assert_eq!(mod_inverse(-1, 5).unwrap(), 4);
        assert!(matches!(mod_inverse(2, 4), Err(KroneckerError::NotInvertible { .. })));
        assert!(mod_inverse(1, 1).is_err());
    }

    #[test]
    fn centered_residue_range() {
        assert_eq!(centered_residue(2, 3), -1);
        assert_eq!(centered_residue(1, 2), 1);
        assert_eq!(centered_residue(-2, 4), 2);
        assert_eq!(centered_residue(-3, 7), -3);
        for n in 2..12 {
            for a in -30..30 {
                let r = centered_residue(a, n);
                assert!(-n < 2 * r && 2 * r <= n);
                assert_eq!((a - r).rem_euclid(n), 0);
            }
        }
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa_from_alpha(0.0).unwrap(), 0.0);
        assert!((kappa_from_alpha(0.5).unwrap() - 2.0).abs() < 1e-15);
        assert!((kappa_from_alpha(0.25).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert!(kappa_from_alpha(0.6).is_err());
        assert!(kappa_from_alpha(-0.1).is_err());
    }

    proptest::proptest! {
        #[test]
        fn bezout_identity(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            proptest::prop_assume!(a != 0 || b != 0);
            let (g, u, v) = egcd(a, b).unwrap();
            proptest::prop_assert!(g > 0);
            proptest::prop_assert_eq!(g, gcd(a, b));
            proptest::prop_assert_eq!(u * a + v * b, g);
        }

        #[test]
        fn inverse_is_inverse(a in -500i64..500, n in 2i64..500) {
            proptest::prop_assume!(gcd(a, n) == 1);
            let inv = mod_inverse(a, n).unwrap();
            proptest::prop_assert!((1..n).contains(&inv));
            proptest::prop_assert_eq!((a * inv).rem_euclid(n), 1);
        }
    }
}
