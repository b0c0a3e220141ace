//! Branch-and-bound maximization of `F` over the fundamental cell.
//!
//! Boxes live in cell coordinates `(a, b) ∈ [0, 1]^2`, mapped to the plane by
//! the lattice generators. Each box gets an exact upper bound on `F`:
//!
//! * Lipschitz: each constraint is `|g · (x, y) + c|` with `|g_x| + |g_y| <= 1`,
//!   so `F` is 1-Lipschitz in the max-norm and `F <= F(center) + radius`;
//! * vertex: for the pair `(s, t)` minimizing at the center,
//!   `F <= max over box corners of max_k |f_k|` since `|affine|` is convex.
//!
//! The smaller of the two (and the parent's bound) is kept. A box with only
//! a few live `(s, t)` pairs is closed by the exact local vertex solve
//! instead of being split further.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::exact::{live_pairs, local_max, LOCAL_PAIRS};
use super::{CoveringInstance, EvalPoint};
use crate::error::{KroneckerError, Result};
use crate::numbers::Rational;

/// How an [`AlphaInterval`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Covering,
    Exact,
    Oracle,
    ClosedForm,
}

/// An enclosure `[lo, hi]` of α, optionally with its exact value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub exact: Option<Rational>,
    pub method: Method,
}

impl AlphaInterval {
    pub fn exact(value: Rational, method: Method) -> Self {
        AlphaInterval { lo: value, hi: value, exact: Some(value), method }
    }

    pub fn width(&self) -> Rational {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (self.lo + self.hi) / 2
    }

    pub fn contains(&self, v: Rational) -> bool {
        self.lo <= v && v <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    /// `hi - lo <= tol`.
    Tolerance,
    /// `hi` fell to or below `stop_below`.
    Below,
    /// `lo` rose strictly above `stop_above`.
    Above,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub tol: Rational,
    /// Stop as soon as the certified upper end is `<=` this.
    pub stop_below: Option<Rational>,
    /// Stop as soon as the best sample is `>` this.
    pub stop_above: Option<Rational>,
    pub max_boxes: usize,
}

impl SolveOptions {
    pub fn with_tol(tol: Rational) -> Self {
        SolveOptions { tol, stop_below: None, stop_above: None, max_boxes: 20_000_000 }
    }
}

#[derive(Debug, Clone)]
pub struct CertifiedRun {
    pub interval: AlphaInterval,
    pub stop: StopReason,
    pub boxes: usize,
    /// Cell coordinates `(a, b)` of the best sample.
    pub witness: (Rational, Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) struct CellBox {
    pub a0: Rational,
    pub a1: Rational,
    pub b0: Rational,
    pub b1: Rational,
    pub ub: Rational,
}

impl Ord for CellBox {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap on ub; ties pop the lexicographically smallest corner.
        self.ub
            .cmp(&other.ub)
            .then_with(|| (&other.a0, &other.b0, &other.a1, &other.b1).cmp(&(&self.a0, &self.b0, &self.a1, &self.b1)))
    }
}

impl PartialOrd for CellBox {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl CellBox {
    pub fn unit() -> Self {
        CellBox { a0: Rational::ZERO, a1: Rational::ONE, b0: Rational::ZERO, b1: Rational::ONE, ub: Rational::ONE }
    }

    pub fn center(&self) -> (Rational, Rational) {
        ((self.a0 + self.a1) / 2, (self.b0 + self.b1) / 2)
    }

    pub fn corners(&self) -> [(Rational, Rational); 4] {
        [(self.a0, self.b0), (self.a1, self.b0), (self.a0, self.b1), (self.a1, self.b1)]
    }

    /// Halves the side with the larger extent in the plane.
    pub fn split(&self, inst: &CoveringInstance) -> [CellBox; 2] {
        let lp = inst.lattice();
        let ext_a = (self.a1 - self.a0) / lp.m;
        let ext_b = (self.b1 - self.b0) * Rational::new(lp.r.max(lp.m) as i128, inst.n3 as i128);
        if ext_a >= ext_b {
            let mid = (self.a0 + self.a1) / 2;
            [
                CellBox { a1: mid, ..self.clone() },
                CellBox { a0: mid, ..self.clone() },
            ]
        } else {
            let mid = (self.b0 + self.b1) / 2;
            [
                CellBox { b1: mid, ..self.clone() },
                CellBox { b0: mid, ..self.clone() },
            ]
        }
    }

    /// Max-norm radius in the plane around the center.
    pub fn radius(&self, inst: &CoveringInstance) -> Rational {
        let lp = inst.lattice();
        let ha = (self.a1 - self.a0) / 2;
        let hb = (self.b1 - self.b0) / 2;
        let hx = ha / lp.m + hb * Rational::new(lp.r as i128, inst.n3 as i128);
        let hy = hb * Rational::new(lp.m as i128, inst.n3 as i128);
        hx.max(hy)
    }
}

/// Evaluates the center of `bx`, tightens `bx.ub`, returns the center value.
pub(super) fn bound_box(inst: &CoveringInstance, bx: &mut CellBox) -> (Rational, (Rational, Rational)) {
    let (ac, bc) = bx.center();
    let centre = inst.point(ac, bc);
    let ev = inst.eval_f_detailed(&centre);
    let lipschitz = ev.value + bx.radius(inst);

    let aff = inst.affines(ev.s, ev.t);
    let corners = bx.corners().map(|(a, b)| inst.point(a, b));
    let corner_max = |p: &EvalPoint| aff.iter().map(|f| f.eval(p.x, p.y).abs()).max().unwrap();
    let vertex = corners.iter().map(corner_max).max().unwrap();

    bx.ub = bx.ub.min(lipschitz).min(vertex);
    (ev.value, (ac, bc))
}

/// Certified enclosure of α with `hi - lo <= tol`.
pub fn certified_alpha(inst: &CoveringInstance, tol: Rational) -> Result<AlphaInterval> {
    Ok(certified_alpha_with(inst, &SolveOptions::with_tol(tol))?.interval)
}

pub fn certified_alpha_with(inst: &CoveringInstance, opts: &SolveOptions) -> Result<CertifiedRun> {
    if !opts.tol.is_positive() {
        return Err(KroneckerError::InvalidArgument("tol must be positive".into()));
    }
    let mut root = CellBox::unit();
    let (mut lb, mut witness) = bound_box(inst, &mut root);
    let mut heap = BinaryHeap::new();
    heap.push(root);
    let mut boxes = 1usize;

    loop {
        let hi = heap.peek().map_or(lb, |b| b.ub.max(lb));
        let stop = if hi - lb <= opts.tol {
            Some(StopReason::Tolerance)
        } else if opts.stop_below.is_some_and(|t| hi <= t) {
            Some(StopReason::Below)
        } else if opts.stop_above.is_some_and(|t| lb > t) {
            Some(StopReason::Above)
        } else {
            None
        };
        if let Some(stop) = stop {
            return Ok(CertifiedRun {
                interval: AlphaInterval { lo: lb, hi, exact: None, method: super::Method::Covering },
                stop,
                boxes,
                witness,
            });
        }

        let top = heap.pop().expect("hi > lb implies a live box");
        let live = live_pairs(inst, &top, top.ub);
        if live.len() <= LOCAL_PAIRS {
            let (value, at) = local_max(inst, &top, &live);
            if value > lb {
                lb = value;
                witness = at;
            }
            continue;
        }
        for mut child in top.split(inst) {
            let (value, centre) = bound_box(inst, &mut child);
            if value > lb {
                lb = value;
                witness = centre;
            }
            if child.ub > lb {
                heap.push(child);
            }
        }
        boxes += 2;
        if boxes > opts.max_boxes {
            return Err(KroneckerError::BudgetExhausted(opts.max_boxes));
        }
    }
}
