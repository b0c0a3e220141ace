//! Batch checks of the upper-bound claims over all classes up to `max_n3`.
//!
//! A claim `α <= B` passes for a class iff its certified upper end (or exact
//! value, when computed) is `<= B + VERIFY_TOL`. The solver runs in decision
//! mode: it stops once the certified upper end clears the screening level
//! `1/4 - EQUALITY_TOL`, and anything that does not clear it is settled by
//! the exact maximizer.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{enumerate_canonical, run_pool, SAFETY_LIMIT};
use crate::bounds::five_sixteenths;
use crate::covering::{certified_alpha_with, exact_alpha, AlphaInterval, CoveringInstance, Method, SolveOptions, StopReason};
use crate::error::{KroneckerError, Result};
use crate::numbers::{CanonicalTriple, Rational};

/// Slack allowed on a certified upper end when checking `α <= B`: `10^-6`.
pub const VERIFY_TOL: (i128, i128) = (1, 1_000_000);
/// Distance from `B` below which a value counts as a tie candidate: `10^-4`.
pub const EQUALITY_TOL: (i128, i128) = (1, 10_000);

fn verify_tol() -> Rational {
    Rational::new(VERIFY_TOL.0, VERIFY_TOL.1)
}

fn equality_tol() -> Rational {
    Rational::new(EQUALITY_TOL.0, EQUALITY_TOL.1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// `α <= 5/16` for every 3-element set other than `{-n, n, 2n}`.
    FiveSixteenths,
    /// `α <= 1/4`, with equality only on multiples of `{1, 2, 3}`.
    QuarterConjecture,
}

impl Claim {
    pub fn bound(&self) -> Rational {
        match self {
            Claim::FiveSixteenths => five_sixteenths(),
            Claim::QuarterConjecture => Rational::new(1, 4),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            Claim::FiveSixteenths => "five-sixteenths",
            Claim::QuarterConjecture => "quarter-conjecture",
        }
    }
}

/// The settled α information for one class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCheck {
    pub set: [i64; 3],
    pub interval: AlphaInterval,
}

impl ClassCheck {
    /// The exact value when known, else the certified upper end.
    pub fn upper(&self) -> Rational {
        self.interval.exact.unwrap_or(self.interval.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutcome {
    pub claim: Claim,
    pub bound: Rational,
    pub tolerance: Rational,
    pub classes: usize,
    pub worst_set: Option<[i64; 3]>,
    pub worst: Option<AlphaInterval>,
    /// Classes whose exact α equals the bound.
    pub maximizers: Vec<[i64; 3]>,
    /// Classes within the equality tolerance of the bound but not equal to it.
    pub near_misses: Vec<[i64; 3]>,
    pub pass: bool,
}

/// Settles one class: certified decision run, then the exact maximum if the
/// certified upper end is not clearly below the screening level.
pub fn check_class(ct: &CanonicalTriple) -> Result<ClassCheck> {
    let inst = CoveringInstance::new(ct)?;
    let screen = Rational::new(1, 4) - equality_tol();
    let opts = SolveOptions {
        tol: equality_tol() / 2,
        stop_below: Some(screen),
        stop_above: Some(five_sixteenths() + verify_tol()),
        ..SolveOptions::with_tol(Rational::ONE)
    };
    let run = certified_alpha_with(&inst, &opts)?;
    let interval = match run.stop {
        StopReason::Below | StopReason::Above => run.interval,
        StopReason::Tolerance if run.interval.hi <= screen => run.interval,
        StopReason::Tolerance => {
            let value = exact_alpha(&inst)?;
            AlphaInterval { exact: Some(value), method: Method::Exact, ..run.interval }
        }
    };
    Ok(ClassCheck { set: ct.values(), interval })
}

/// Decides `claim` from already settled classes.
pub fn evaluate_claim(claim: Claim, checks: &[ClassCheck]) -> VerifyOutcome {
    let bound = claim.bound();
    let tolerance = verify_tol();
    let worst = checks.iter().max_by(|a, b| a.upper().cmp(&b.upper()).then_with(|| b.set.cmp(&a.set)));
    let within = checks.iter().all(|c| c.upper() <= bound + tolerance);

    let near: Vec<&ClassCheck> = checks.iter().filter(|c| (c.upper() - bound).abs() < equality_tol()).collect();
    let maximizers: Vec<[i64; 3]> = near.iter().filter(|c| c.interval.exact == Some(bound)).map(|c| c.set).collect();
    let near_misses: Vec<[i64; 3]> = near.iter().filter(|c| c.interval.exact != Some(bound)).map(|c| c.set).collect();

    let pass = match claim {
        Claim::FiveSixteenths => within,
        Claim::QuarterConjecture => within && near_misses.is_empty() && maximizers.iter().all(|s| *s == [-1, 2, 3]),
    };
    VerifyOutcome {
        claim,
        bound,
        tolerance,
        classes: checks.len(),
        worst_set: worst.map(|c| c.set),
        worst: worst.map(|c| c.interval),
        maximizers,
        near_misses,
        pass,
    }
}

/// Checks `claim` on every class with `n3 <= max_n3`.
pub fn verify_claim(claim: Claim, max_n3: i64, jobs: usize) -> Result<VerifyOutcome> {
    if max_n3 > SAFETY_LIMIT {
        return Err(KroneckerError::InvalidArgument(format!(
            "max_n3 {max_n3} exceeds the safety limit {SAFETY_LIMIT}"
        )));
    }
    let classes: Vec<CanonicalTriple> = enumerate_canonical(max_n3, false)?.collect();
    let checks = run_pool(jobs, || classes.par_iter().map(check_class).collect::<Result<Vec<_>>>())??;
    Ok(evaluate_claim(claim, &checks))
}

pub fn verify_five_sixteenths(max_n3: i64, jobs: usize) -> Result<VerifyOutcome> {
    verify_claim(Claim::FiveSixteenths, max_n3, jobs)
}

pub fn verify_quarter_conjecture(max_n3: i64, jobs: usize) -> Result<VerifyOutcome> {
    verify_claim(Claim::QuarterConjecture, max_n3, jobs)
}
