//! Closed-form bounds for angular Kronecker constants.
//!
//! Everything here is exact rational arithmetic on the canonical triple
//! `(n1, n2, n3)` with `0 < |n1| < n2 < n3` and its lattice `(m, r)`.

use serde::{Deserialize, Serialize};

use crate::error::{KroneckerError, Result};
use crate::numbers::{gcd, lattice_params, CanonicalTriple, LatticeParams, Rational};

/// `1/2 - 1/(2d)`, valid for any `d`-element set of nonzero integers.
pub fn trivial_upper_bound(d: u32) -> Result<Rational> {
    if d == 0 {
        return Err(KroneckerError::InvalidArgument("set size must be positive".into()));
    }
    Ok(Rational::new(1, 2) - Rational::new(1, 2 * d as i128))
}

struct Abs {
    a1: i64,
    a2: i64,
    a3: i64,
    r: i64,
    m: i64,
}

fn sheared(ct: &CanonicalTriple, lp: &LatticeParams) -> Result<Abs> {
    if !ct.distinct_abs() {
        return Err(KroneckerError::NonDistinct);
    }
    if lp.r == 0 {
        return Err(KroneckerError::RectangularUnsupported);
    }
    Ok(Abs { a1: ct.n1().abs(), a2: ct.n2().abs(), a3: ct.n3().abs(), r: lp.r, m: lp.m })
}

impl Abs {
    /// `r(|n2|+|n3|) + m(|n1|+|n3|)`
    fn mixed(&self) -> i64 {
        self.r * (self.a2 + self.a3) + self.m * (self.a1 + self.a3)
    }
}

/// Lower bound `|n3| / (2(r(|n2|+|n3|) + m(|n1|+|n3|)))`.
pub fn theorem1_lower(ct: &CanonicalTriple, lp: &LatticeParams) -> Result<Rational> {
    let s = sheared(ct, lp)?;
    Ok(Rational::new(s.a3 as i128, 2 * s.mixed() as i128))
}

/// The sufficient error level `E1`: the largest of
/// `m/(2(|n2|+|n3|))`, `r/(2(|n1|+|n3|))` and `(|n3|+2rm)/(2(r(|n2|+|n3|)+m(|n1|+|n3|)))`.
pub fn compute_e1(ct: &CanonicalTriple, lp: &LatticeParams) -> Result<Rational> {
    let s = sheared(ct, lp)?;
    let first = Rational::new(s.m as i128, 2 * (s.a2 + s.a3) as i128);
    let second = Rational::new(s.r as i128, 2 * (s.a1 + s.a3) as i128);
    let third = Rational::new((s.a3 + 2 * s.r * s.m) as i128, 2 * s.mixed() as i128);
    Ok(first.max(second).max(third))
}

/// Upper bound `E1 (2|n1||n2| + |n3|(|n1|+|n2|)) / (|n3|(|n1|+|n2|))`.
pub fn theorem1_upper(ct: &CanonicalTriple, lp: &LatticeParams) -> Result<Rational> {
    let s = sheared(ct, lp)?;
    let e1 = compute_e1(ct, lp)?;
    Ok(e1 * upper_factor(s.a1, s.a2, s.a3))
}

/// `(2|n1|n2 + n3(|n1|+n2)) / (n3(|n1|+n2))`
fn upper_factor(a1: i64, a2: i64, a3: i64) -> Rational {
    Rational::new((2 * a1 * a2 + a3 * (a1 + a2)) as i128, (a3 * (a1 + a2)) as i128)
}

/// Angular constant of a two-element set, `gcd(|a|,|b|) / (2(|a|+|b|))`.
///
/// Reconstructed from the pairwise interval-intersection argument; the
/// two-element case of the covering problem has this exact solution.
pub fn alpha_pair(a: i64, b: i64) -> Result<Rational> {
    if a == 0 || b == 0 {
        return Err(KroneckerError::ZeroElement);
    }
    if a == b {
        return Err(KroneckerError::DuplicateElement(a));
    }
    let g = gcd(a, b);
    Ok(Rational::new(g as i128, 2 * (a.abs() + b.abs()) as i128))
}

const FIVE_SIXTEENTHS: (i128, i128) = (5, 16);

pub fn five_sixteenths() -> Rational {
    Rational::new(FIVE_SIXTEENTHS.0, FIVE_SIXTEENTHS.1)
}

/// Outcome of one of the auxiliary inequalities used in the 5/16 argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    /// Whether the inequality's hypothesis holds for the input.
    pub hypothesis: bool,
    /// The left-hand side of the conclusion.
    pub value: Rational,
    /// `value <= 5/16`.
    pub conclusion: bool,
}

impl LemmaCheck {
    /// False only when the hypothesis holds and the conclusion fails.
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

fn ordered(n1: i64, n2: i64, n3: i64) -> Result<()> {
    if 0 < n1.abs() && n1.abs() < n2 && n2 < n3 {
        Ok(())
    } else {
        Err(KroneckerError::Ordering(n1, n2, n3))
    }
}

fn positive_rm(r: i64, m: i64) -> Result<()> {
    if r >= 1 && m >= 1 {
        Ok(())
    } else {
        Err(KroneckerError::InvalidArgument(format!("need r, m >= 1, got r={r}, m={m}")))
    }
}

fn lemma(hypothesis: bool, value: Rational) -> LemmaCheck {
    LemmaCheck { hypothesis, value, conclusion: value <= five_sixteenths() }
}

/// If `E1 <= n3/(4(|n1|+n3))` then `E1 (2|n1|n2 + n3(|n1|+n2)) / (n3(|n1|+n2)) <= 5/16`.
pub fn lemma1_i(n1: i64, n2: i64, n3: i64, e1: Rational) -> Result<LemmaCheck> {
    ordered(n1, n2, n3)?;
    let a1 = n1.abs();
    let hypothesis = e1 <= Rational::new(n3 as i128, 4 * (a1 + n3) as i128);
    Ok(lemma(hypothesis, e1 * upper_factor(a1, n2, n3)))
}

/// If `r + m >= 5` then
/// `(2|n1|n2 + n3(|n1|+n2)) / ((|n1|+n2)(r(n2+n3) + m(|n1|+n3))) <= 5/16`.
pub fn lemma1_ii(n1: i64, n2: i64, n3: i64, r: i64, m: i64) -> Result<LemmaCheck> {
    ordered(n1, n2, n3)?;
    positive_rm(r, m)?;
    let a1 = n1.abs() as i128;
    let (n2, n3, r, m) = (n2 as i128, n3 as i128, r as i128, m as i128);
    let value = Rational::new(
        2 * a1 * n2 + n3 * (a1 + n2),
        (a1 + n2) * (r * (n2 + n3) + m * (a1 + n3)),
    );
    Ok(lemma(r + m >= 5, value))
}

/// If `(r, m) != (1, 1)` then
/// `(2|n1|n2 + n3(|n1|+n2)) (2 + min(r, m)) / (4(|n1|+n2)(r(n2+n3) + m(|n1|+n3))) <= 5/16`.
pub fn lemma1_iii(n1: i64, n2: i64, n3: i64, r: i64, m: i64) -> Result<LemmaCheck> {
    ordered(n1, n2, n3)?;
    positive_rm(r, m)?;
    let a1 = n1.abs() as i128;
    let (n2, n3, r, m) = (n2 as i128, n3 as i128, r as i128, m as i128);
    let value = Rational::new(
        (2 * a1 * n2 + n3 * (a1 + n2)) * (2 + r.min(m)),
        4 * (a1 + n2) * (r * (n2 + n3) + m * (a1 + n3)),
    );
    Ok(lemma((r, m) != (1, 1), value))
}

/// `r = m = 1` implies `n1 < 0` and `n3 = |n1| + n2`; vacuously true otherwise.
pub fn lemma4_check(ct: &CanonicalTriple, lp: &LatticeParams) -> bool {
    if (lp.r, lp.m) != (1, 1) {
        return true;
    }
    ct.n1() < 0 && ct.n3() == ct.n1().abs() + ct.n2()
}

/// The closed-form quantities available for a sheared lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Bounds {
    pub lower: Rational,
    pub e1: Rational,
    pub upper: Rational,
    /// `e1 - lower`
    pub lambda: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub trivial: Rational,
    pub lattice: Option<LatticeParams>,
    pub rectangular: bool,
    pub theorem1: Option<Theorem1Bounds>,
}

/// Every closed-form bound that applies to `ct`.
///
/// Non-distinct absolute values yield the trivial bound only; a rectangular
/// lattice additionally reports its parameters.
pub fn bound_report(ct: &CanonicalTriple) -> BoundReport {
    let trivial = trivial_upper_bound(3).expect("d = 3");
    let Ok(lp) = lattice_params(ct) else {
        return BoundReport { trivial, lattice: None, rectangular: false, theorem1: None };
    };
    let theorem1 = (!lp.rectangular()).then(|| {
        let lower = theorem1_lower(ct, &lp).expect("sheared");
        let e1 = compute_e1(ct, &lp).expect("sheared");
        let upper = theorem1_upper(ct, &lp).expect("sheared");
        Theorem1Bounds { lower, e1, upper, lambda: e1 - lower }
    });
    BoundReport { trivial, lattice: Some(lp), rectangular: lp.rectangular(), theorem1 }
}
