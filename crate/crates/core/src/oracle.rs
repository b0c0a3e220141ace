//! Brute-force α straight from the definition,
//!
//! ```text
//! α(S) = sup over targets t ∈ [0,1)^S of inf over x ∈ [0,1) of max_j ‖n_j x - t_j‖
//! ```
//!
//! where `‖u‖` is the distance from `u` to the nearest integer. This module
//! shares nothing with the lattice machinery; it is the ground truth the
//! covering solver is checked against.
//!
//! Shifting `x` by `δ` moves every target `t_j` by `n_j δ`, which leaves the
//! inner infimum unchanged. Choosing `δ` with `n_last δ ≡ -t_last` shows the
//! targets with `t_last = 0` already reach every value, so the outer search
//! runs over the first `|S| - 1` coordinates only.
//!
//! The inner value is 1-Lipschitz in each target coordinate (max-norm), so a
//! grid cell of half-width `h` around a sample `v` has sup at most `v + h`.
//! The outer search grids the targets, then repeatedly subdivides the cells
//! that could still beat the best sample.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::covering::{AlphaInterval, Method};
use crate::error::{KroneckerError, Result};
use crate::numbers::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Samples per free target coordinate on the initial grid (>= 8).
    pub target_grid: u32,
    /// `0` selects exact breakpoint enumeration for the inner infimum;
    /// otherwise the number of x samples (>= 8) before golden-section polish.
    pub x_grid: u32,
    pub refine_rounds: u32,
    /// Child half-width relative to its parent; must be `1/k` for an integer `k >= 2`.
    pub shrink: Rational,
    /// Cap on the cells carried into each refinement round.
    pub max_cells: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { target_grid: 64, x_grid: 0, refine_rounds: 6, shrink: Rational::new(1, 3), max_cells: 512 }
    }
}

impl OracleConfig {
    fn validate(&self) -> Result<usize> {
        if self.target_grid < 8 {
            return Err(KroneckerError::InvalidArgument("target_grid must be at least 8".into()));
        }
        if self.x_grid != 0 && self.x_grid < 8 {
            return Err(KroneckerError::InvalidArgument("x_grid must be 0 or at least 8".into()));
        }
        let inv = self.shrink.recip();
        if !(self.shrink.is_positive() && self.shrink < Rational::ONE && inv.denom() == 1) {
            return Err(KroneckerError::InvalidArgument("shrink must be 1/k for an integer k >= 2".into()));
        }
        if self.max_cells == 0 {
            return Err(KroneckerError::InvalidArgument("max_cells must be positive".into()));
        }
        Ok(inv.numer() as usize)
    }
}

fn validate_set(set: &[i64]) -> Result<()> {
    if !(2..=3).contains(&set.len()) {
        return Err(KroneckerError::UnsupportedSize(set.len()));
    }
    if set.contains(&0) {
        return Err(KroneckerError::ZeroElement);
    }
    for (i, a) in set.iter().enumerate() {
        if set[i + 1..].contains(a) {
            return Err(KroneckerError::DuplicateElement(*a));
        }
    }
    Ok(())
}

/// `‖u‖`
fn dist_to_int(u: f64) -> f64 {
    (u - u.round()).abs()
}

fn sup_error(set: &[i64], targets: &[f64], x: f64) -> f64 {
    set.iter().zip(targets).map(|(&n, &t)| dist_to_int(n as f64 * x - t)).fold(0.0, f64::max)
}

/// Every `x ∈ [0, 1]` where the inner max can attain a local minimum: zeros
/// of a single term and crossings of two linear pieces of opposite slope.
fn breakpoints(set: &[i64], targets: &[f64]) -> Vec<f64> {
    let mut xs = vec![0.0];
    let mut push_family = |num: f64, den: i64| {
        // x = (num + q)/den for integers q with x in [0, 1].
        let d = den as f64;
        let (lo, hi) = if den > 0 { (-num, d - num) } else { (d - num, -num) };
        for q in lo.floor() as i64..=hi.ceil() as i64 {
            let x = (num + q as f64) / d;
            if (0.0..=1.0).contains(&x) {
                xs.push(x);
            }
        }
    };
    for (i, (&ni, &ti)) in set.iter().zip(targets).enumerate() {
        push_family(ti, ni);
        for (&nj, &tj) in set[i + 1..].iter().zip(&targets[i + 1..]) {
            // ni x - ti - k = ±(nj x - tj - l)
            if ni != nj {
                push_family(ti - tj, ni - nj);
            }
            if ni != -nj {
                push_family(ti + tj, ni + nj);
            }
        }
    }
    xs
}

fn inner_exact(set: &[i64], targets: &[f64]) -> f64 {
    breakpoints(set, targets).into_iter().map(|x| sup_error(set, targets, x)).fold(f64::INFINITY, f64::min)
}

fn inner_grid(set: &[i64], targets: &[f64], x_grid: u32) -> f64 {
    let n = x_grid as usize;
    let vals: Vec<f64> = (0..n).map(|i| sup_error(set, targets, i as f64 / n as f64)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b)));
    let step = 1.0 / n as f64;
    let mut best = vals[order[0]];
    for &i in order.iter().take(4) {
        let centre = i as f64 * step;
        best = best.min(golden_min(|x| sup_error(set, targets, x), centre - step, centre + step));
    }
    best
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..60 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = f(d);
        }
    }
    fc.min(fd)
}

/// `inf over x of max_j ‖n_j x - t_j‖` for fixed targets.
///
/// With `x_grid = 0` the infimum is exact up to float rounding; otherwise it
/// is the best of a grid search and local golden-section polish (an upper
/// estimate of the infimum).
pub fn oracle_distance(set: &[i64], targets: &[f64], x_grid: u32) -> Result<f64> {
    if set.is_empty() || set.len() != targets.len() {
        return Err(KroneckerError::InvalidArgument("one target per element required".into()));
    }
    if set.contains(&0) {
        return Err(KroneckerError::ZeroElement);
    }
    if x_grid != 0 && x_grid < 8 {
        return Err(KroneckerError::InvalidArgument("x_grid must be 0 or at least 8".into()));
    }
    Ok(if x_grid == 0 { inner_exact(set, targets) } else { inner_grid(set, targets, x_grid) })
}

/// Same infimum in exact arithmetic for rational targets, by breakpoint
/// enumeration. The reference for [`oracle_distance`].
pub fn oracle_distance_exact(set: &[i64], targets: &[Rational]) -> Result<Rational> {
    if set.is_empty() || set.len() != targets.len() {
        return Err(KroneckerError::InvalidArgument("one target per element required".into()));
    }
    if set.contains(&0) {
        return Err(KroneckerError::ZeroElement);
    }
    let dist = |u: Rational| (u - Rational::from_int(u.round_half_up() as i64)).abs();
    let eval = |x: Rational| {
        set.iter().zip(targets).map(|(&n, &t)| dist(x * n - t)).max().unwrap()
    };
    let mut best = eval(Rational::ZERO);
    let mut family = |num: Rational, den: i64| {
        let d = Rational::from_int(den);
        let (lo, hi) = if den > 0 { (-num, d - num) } else { (d - num, -num) };
        for q in lo.floor()..=hi.ceil() {
            let x = (num + Rational::new(q, 1)) / d;
            if Rational::ZERO <= x && x <= Rational::ONE {
                best = best.min(eval(x));
            }
        }
    };
    for (i, (&ni, &ti)) in set.iter().zip(targets).enumerate() {
        family(ti, ni);
        for (&nj, &tj) in set[i + 1..].iter().zip(&targets[i + 1..]) {
            if ni != nj {
                family(ti - tj, ni - nj);
            }
            if ni != -nj {
                family(ti + tj, ni + nj);
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone)]
struct Cell {
    centre: Vec<f64>,
    value: f64,
}

/// Detailed oracle output.
#[derive(Debug, Clone)]
pub struct OracleRun {
    pub lo: f64,
    pub hi: f64,
    /// Free target coordinates of the best sample (the last target is 0).
    pub witness: Vec<f64>,
    pub evaluations: usize,
    /// Whether the cell cap ever discarded a cell that could still improve.
    pub capped: bool,
}

/// Heuristic enclosure of α for a 2- or 3-element set.
///
/// `lo` is an attained value. `hi` adds the Lipschitz slack of every cell
/// not yet ruled out, so with exact inner evaluation it is an upper bound
/// unless `capped` is set.
pub fn oracle_alpha(set: &[i64], cfg: &OracleConfig) -> Result<AlphaInterval> {
    let run = oracle_run(set, cfg)?;
    Ok(AlphaInterval {
        lo: Rational::from_f64_floor(run.lo, 60),
        hi: Rational::from_f64_ceil(run.hi, 60),
        exact: None,
        method: Method::Oracle,
    })
}

pub fn oracle_run(set: &[i64], cfg: &OracleConfig) -> Result<OracleRun> {
    validate_set(set)?;
    let split = cfg.validate()?;
    let dim = set.len() - 1;
    let inner = |free: &[f64]| {
        let mut targets = free.to_vec();
        targets.push(0.0);
        if cfg.x_grid == 0 {
            inner_exact(set, &targets)
        } else {
            inner_grid(set, &targets, cfg.x_grid)
        }
    };

    let g = cfg.target_grid as usize;
    let mut half = 0.5 / g as f64;
    let mut cells: Vec<Cell> = grid_offsets(g, dim)
        .into_iter()
        .map(|idx| {
            let centre: Vec<f64> = idx.iter().map(|&i| (i as f64 + 0.5) / g as f64).collect();
            let value = inner(&centre);
            Cell { centre, value }
        })
        .collect();
    let mut evaluations = cells.len();
    let mut best = best_cell(&cells).clone();
    // Upper bound contributed by cells dropped at the cap.
    let mut dropped = f64::NEG_INFINITY;
    let mut capped = false;

    for _ in 0..cfg.refine_rounds {
        cells.retain(|c| c.value + half > best.value);
        cells.sort_by(|a, b| b.value.total_cmp(&a.value).then_with(|| lex(&a.centre, &b.centre)));
        if cells.len() > cfg.max_cells {
            capped = true;
            dropped = dropped.max(cells[cfg.max_cells].value + half);
            cells.truncate(cfg.max_cells);
        }
        if cells.is_empty() {
            break;
        }
        let child_half = half / split as f64;
        let offsets = grid_offsets(split, dim);
        let mut next = Vec::with_capacity(cells.len() * offsets.len());
        for c in &cells {
            for off in &offsets {
                let centre: Vec<f64> = c
                    .centre
                    .iter()
                    .zip(off)
                    .map(|(&x, &o)| x - half + (2 * o + 1) as f64 * child_half)
                    .collect();
                let value = inner(&centre);
                next.push(Cell { centre, value });
            }
        }
        evaluations += next.len();
        cells = next;
        half = child_half;
        let b = best_cell(&cells);
        if b.value > best.value {
            best = b.clone();
        }
    }

    let remaining = cells.iter().map(|c| c.value + half).fold(f64::NEG_INFINITY, f64::max);
    let hi = remaining.max(dropped).max(best.value);
    Ok(OracleRun { lo: best.value, hi, witness: best.centre, evaluations, capped })
}

fn lex(a: &[f64], b: &[f64]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

fn best_cell(cells: &[Cell]) -> &Cell {
    cells
        .iter()
        .max_by(|a, b| a.value.total_cmp(&b.value).then_with(|| lex(&b.centre, &a.centre)))
        .expect("non-empty grid")
}

/// All index vectors in `{0, .., n-1}^dim`.
fn grid_offsets(n: usize, dim: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..n).map(move |i| {
                    let mut w = v.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    out
}
