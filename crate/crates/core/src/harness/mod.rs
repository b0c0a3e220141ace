//! Class enumeration, batch scans, claim verification and reports.

mod report;
mod verify;

pub use report::{emit_report, format_sig, read_json_report, write_report, ReportFormat, CSV_COLUMNS};
pub use verify::{
    check_class, evaluate_claim, verify_claim, verify_five_sixteenths, verify_quarter_conjecture, Claim, ClassCheck,
    VerifyOutcome, EQUALITY_TOL, VERIFY_TOL,
};

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::bound_report;
use crate::covering::{certified_alpha, exact_alpha, CoveringInstance};
use crate::error::{KroneckerError, Result};
use crate::numbers::{canonicalize, gcd, CanonicalTriple, Rational, Triple};

/// Default ceiling on `max_n3` for scans; cost grows roughly cubically.
pub const SAFETY_LIMIT: i64 = 200;

/// One representative per α-class with `0 < |n1| < n2 < n3 <= max_n3` and
/// `gcd = 1`, ordered by `(n3, n2, |n1|)`.
///
/// Every class contains a set of positive integers, so the positive triples
/// are walked and canonicalized. `include_negative_n1` only changes the raw
/// set recorded as provenance: the positive triple when `false`, the signed
/// canonical triple itself when `true`.
pub fn enumerate_canonical(max_n3: i64, include_negative_n1: bool) -> Result<impl Iterator<Item = CanonicalTriple>> {
    if max_n3 < 3 {
        return Err(KroneckerError::InvalidArgument(format!("max_n3 must be at least 3, got {max_n3}")));
    }
    Ok((3..=max_n3).flat_map(move |n3| {
        (2..n3).flat_map(move |n2| {
            (1..n2).filter(move |&a| gcd(gcd(a, n2), n3) == 1).map(move |a| {
                let ct = canonicalize(&Triple::new(a, n2, n3).expect("distinct positive"));
                if include_negative_n1 {
                    canonicalize(&Triple::new(ct.n1(), ct.n2(), ct.n3()).expect("distinct"))
                } else {
                    ct
                }
            })
        })
    }))
}

/// One row of a scan report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub raw: [i64; 3],
    pub n1: i64,
    pub n2: i64,
    pub n3: i64,
    pub m: i64,
    pub r: i64,
    pub rectangular: bool,
    pub trivial: Rational,
    pub lower: Option<Rational>,
    pub e1: Option<Rational>,
    pub upper: Option<Rational>,
    pub alpha_lo: Rational,
    pub alpha_hi: Rational,
    pub alpha_exact: Option<Rational>,
    pub sumset: bool,
    pub time_ms: Option<u64>,
}

impl ScanRecord {
    /// `lower <= alpha_hi` and `alpha_lo <= upper` whenever the closed forms apply.
    pub fn sandwich_holds(&self) -> bool {
        self.lower.is_none_or(|l| l <= self.alpha_hi) && self.upper.is_none_or(|u| self.alpha_lo <= u)
    }

    pub fn key(&self) -> (i64, i64, i64, i64) {
        (self.n3, self.n2, self.n1.abs(), self.n1)
    }
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub max_n3: i64,
    pub tol: Rational,
    pub jobs: usize,
    pub exact: bool,
    /// Fill `time_ms`; off by default so reports are byte-reproducible.
    pub timing: bool,
    pub safety_limit: i64,
}

impl ScanConfig {
    pub fn new(max_n3: i64, tol: Rational) -> Self {
        ScanConfig { max_n3, tol, jobs: 1, exact: false, timing: false, safety_limit: SAFETY_LIMIT }
    }
}

/// Bounds plus certified (and optionally exact) α for one canonical class.
pub fn scan_record(ct: &CanonicalTriple, tol: Rational, exact: bool, timing: bool) -> Result<ScanRecord> {
    let started = Instant::now();
    let report = bound_report(ct);
    let lp = report.lattice.ok_or(KroneckerError::NonDistinct)?;
    let inst = CoveringInstance::new(ct)?;
    let interval = certified_alpha(&inst, tol)?;
    let alpha_exact = if exact { Some(exact_alpha(&inst)?) } else { None };
    let t1 = report.theorem1;
    Ok(ScanRecord {
        raw: ct.raw(),
        n1: ct.n1(),
        n2: ct.n2(),
        n3: ct.n3(),
        m: lp.m,
        r: lp.r,
        rectangular: lp.rectangular(),
        trivial: report.trivial,
        lower: t1.map(|b| b.lower),
        e1: t1.map(|b| b.e1),
        upper: t1.map(|b| b.upper),
        alpha_lo: interval.lo,
        alpha_hi: interval.hi,
        alpha_exact,
        sumset: ct.is_sum_set(),
        time_ms: timing.then(|| started.elapsed().as_millis() as u64),
    })
}

pub(crate) fn run_pool<T: Send>(jobs: usize, work: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| KroneckerError::InvalidArgument(e.to_string()))?;
    Ok(pool.install(work))
}

/// Scans every class up to `max_n3`. Output order is the enumeration order
/// regardless of `jobs`.
pub fn scan(cfg: &ScanConfig) -> Result<Vec<ScanRecord>> {
    if cfg.max_n3 > cfg.safety_limit {
        return Err(KroneckerError::InvalidArgument(format!(
            "max_n3 {} exceeds the safety limit {}",
            cfg.max_n3, cfg.safety_limit
        )));
    }
    let classes: Vec<CanonicalTriple> = enumerate_canonical(cfg.max_n3, false)?.collect();
    let mut records = run_pool(cfg.jobs, || {
        classes
            .par_iter()
            .map(|ct| scan_record(ct, cfg.tol, cfg.exact, cfg.timing))
            .collect::<Result<Vec<_>>>()
    })??;
    records.sort_by_key(ScanRecord::key);
    Ok(records)
}

/// Where an arbitrary 3-element input is answered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Route {
    /// Distinct absolute values: covering solver.
    Covering(CanonicalTriple),
    /// Repeated absolute values such as `{-n, n, 2n}`: brute-force oracle only.
    Oracle(CanonicalTriple),
}

pub fn route(t: &Triple) -> Route {
    let ct = canonicalize(t);
    if ct.distinct_abs() {
        Route::Covering(ct)
    } else {
        Route::Oracle(ct)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::q;

    #[test]
    fn enumeration_small_cases() {
        let v: Vec<_> = enumerate_canonical(3, false).unwrap().collect();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].values(), [-1, 2, 3]);
        assert_eq!(v[0].raw(), [1, 2, 3]);

        let signed: Vec<_> = enumerate_canonical(3, true).unwrap().collect();
        assert_eq!(signed[0].raw(), [-1, 2, 3]);

        assert!(enumerate_canonical(2, false).is_err());
    }

    #[test]
    fn enumeration_count_matches_brute_force() {
        for max_n3 in 3..=12 {
            let mut count = 0;
            for c in 1..=max_n3 {
                for b in 1..c {
                    for a in 1..b {
                        if gcd(gcd(a, b), c) == 1 {
                            count += 1;
                        }
                    }
                }
            }
            let got: Vec<_> = enumerate_canonical(max_n3, false).unwrap().collect();
            assert_eq!(got.len(), count, "max_n3 = {max_n3}");
            assert!(got.iter().all(|ct| ct.values() != [2, 4, 6]));
            let mut keys: Vec<_> = got.iter().map(|c| c.key()).collect();
            let sorted = keys.clone();
            keys.dedup();
            assert_eq!(keys, sorted);
        }
        assert_eq!(enumerate_canonical(5, false).unwrap().count(), 10);
    }

    #[test]
    fn scan_small_is_deterministic_and_sandwiched() {
        let mut cfg = ScanConfig::new(8, q(1, 1000));
        let a = scan(&cfg).unwrap();
        cfg.jobs = 3;
        let b = scan(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(ScanRecord::sandwich_holds));
        let top = a.iter().max_by_key(|r| r.alpha_hi).unwrap();
        assert_eq!((top.n1, top.n2, top.n3), (-1, 2, 3));
    }

    #[test]
    fn scan_respects_safety_limit() {
        let cfg = ScanConfig::new(201, q(1, 100));
        assert!(scan(&cfg).is_err());
    }

    #[test]
    fn routing() {
        assert!(matches!(route(&Triple::new(-2, 2, 4).unwrap()), Route::Oracle(_)));
        assert!(matches!(route(&Triple::new(1, 2, 3).unwrap()), Route::Covering(_)));
    }

    #[test]
    fn record_for_one_two_three() {
        let ct = canonicalize(&Triple::new(1, 2, 3).unwrap());
        let rec = scan_record(&ct, q(1, 1000), true, false).unwrap();
        assert_eq!(rec.lower, Some(q(1, 6)));
        assert_eq!(rec.e1, Some(q(5, 18)));
        assert_eq!(rec.upper, Some(q(65, 162)));
        assert_eq!(rec.alpha_exact, Some(q(1, 4)));
        assert!(rec.sumset);
        assert_eq!(rec.time_ms, None);
    }
}
