//! Exact maximum of `F` over the fundamental cell.
//!
//! `F` is piecewise linear. Branch-and-bound localizes the maximum; once a
//! box has only a few `(s, t)` pairs whose constraint maximum can fall below
//! the box's upper bound, `F` on that box is the minimum over just those
//! pairs. Its breaklines are then finite: the zero set of each inner affine
//! form, and `f = ±g` for every two forms that can swap the max or the min.
//! `F` is affine on each face of that arrangement, so the box maximum sits at
//! a vertex: a box corner, a line/edge crossing, or a line/line crossing.
//! All of those are enumerated and evaluated exactly.

use std::collections::{BinaryHeap, HashSet};

use super::certified::{bound_box, CellBox};
use super::{Affine, CoveringInstance};
use crate::error::{KroneckerError, Result};
use crate::numbers::Rational;

/// Local vertex enumeration once at most this many pairs are live.
pub(super) const LOCAL_PAIRS: usize = 10;
/// Float screening margin. Coefficients are small rationals, so float
/// error is far below this.
const SLACK: f64 = 1e-9;
/// Boxes narrower than this are resolved locally regardless.
const MIN_SIDE_LOG2: i128 = 30;

#[derive(Debug, Clone)]
pub struct ExactRun {
    pub value: Rational,
    /// Cell coordinates `(a, b)` of a maximizer.
    pub argmax: (Rational, Rational),
    pub boxes: usize,
    pub local_solves: usize,
}

/// `max F` over the closed fundamental cell, exactly.
pub fn exact_alpha(inst: &CoveringInstance) -> Result<Rational> {
    Ok(exact_alpha_with(inst, 20_000_000)?.value)
}

pub fn exact_alpha_with(inst: &CoveringInstance, max_boxes: usize) -> Result<ExactRun> {
    let mut root = CellBox::unit();
    let (mut lb, mut argmax) = bound_box(inst, &mut root);
    let mut heap = BinaryHeap::new();
    heap.push(root);
    let (mut boxes, mut local_solves) = (1usize, 0usize);
    let min_side = Rational::new(1, 1i128 << MIN_SIDE_LOG2);

    while let Some(top) = heap.pop() {
        if top.ub <= lb {
            break;
        }
        let live = live_pairs(inst, &top, top.ub);
        let tiny = (top.a1 - top.a0) < min_side || (top.b1 - top.b0) < min_side;
        if live.len() <= LOCAL_PAIRS || tiny {
            local_solves += 1;
            let (value, at) = local_max(inst, &top, &live);
            if value > lb {
                lb = value;
                argmax = at;
            }
            continue;
        }
        for mut child in top.split(inst) {
            let (value, centre) = bound_box(inst, &mut child);
            if value > lb {
                lb = value;
                argmax = centre;
            }
            if child.ub > lb {
                heap.push(child);
            }
        }
        boxes += 2;
        if boxes > max_boxes {
            return Err(KroneckerError::BudgetExhausted(max_boxes));
        }
    }
    debug_assert_eq!(inst.eval_f(&inst.point(argmax.0, argmax.1)), lb);
    Ok(ExactRun { value: lb, argmax, boxes, local_solves })
}

/// An affine form in cell coordinates: `ca a + cb b + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct CellAffine {
    ca: Rational,
    cb: Rational,
    c0: Rational,
}

impl CellAffine {
    fn eval(&self, a: Rational, b: Rational) -> Rational {
        self.ca * a + self.cb * b + self.c0
    }

    fn combine(&self, o: &CellAffine, sign: i64) -> CellAffine {
        CellAffine { ca: self.ca + o.ca * sign, cb: self.cb + o.cb * sign, c0: self.c0 + o.c0 * sign }
    }

    /// Scales so the leading nonzero slope is 1; `None` for constant forms.
    fn normalized(&self) -> Option<CellAffine> {
        let lead = if !self.ca.is_zero() {
            self.ca
        } else if !self.cb.is_zero() {
            self.cb
        } else {
            return None;
        };
        Some(CellAffine { ca: self.ca / lead, cb: self.cb / lead, c0: self.c0 / lead })
    }
}

fn to_cell(inst: &CoveringInstance, f: &Affine) -> CellAffine {
    // x = a/m + b r/n3, y = b m/n3
    let lp = inst.lattice();
    let (m, r, n3) = (lp.m as i128, lp.r as i128, inst.n3 as i128);
    CellAffine {
        ca: f.cx / Rational::from_int(lp.m),
        cb: f.cx * Rational::new(r, n3) + f.cy * Rational::new(m, n3),
        c0: f.c0,
    }
}

fn pair_forms(inst: &CoveringInstance, s: i64, t: i64) -> [CellAffine; 3] {
    inst.affines(s, t).map(|f| to_cell(inst, &f))
}

/// Lower bound of `|f|` over the box: zero on a sign change, else the
/// smallest corner magnitude.
fn min_abs_over(f: &CellAffine, bx: &CellBox) -> Rational {
    let vals = bx.corners().map(|(a, b)| f.eval(a, b));
    let lo = vals.iter().min().unwrap();
    let hi = vals.iter().max().unwrap();
    if *lo <= Rational::ZERO && Rational::ZERO <= *hi {
        Rational::ZERO
    } else {
        lo.abs().min(hi.abs())
    }
}

fn min_abs_over_f64(f: &CellAffine, corners: &[(f64, f64); 4]) -> f64 {
    let (ca, cb, c0) = (f.ca.to_f64(), f.cb.to_f64(), f.c0.to_f64());
    let vals = corners.map(|(a, b)| ca * a + cb * b + c0);
    let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo <= 0.0 && 0.0 <= hi {
        0.0
    } else {
        lo.abs().min(hi.abs())
    }
}

/// Pairs `(s, t)` whose constraint maximum can be `<= cap` somewhere in the box.
pub(super) fn live_pairs(inst: &CoveringInstance, bx: &CellBox, cap: Rational) -> Vec<(i64, i64)> {
    let lp = inst.lattice();
    let (m, r, n3) = (lp.m, lp.r, inst.n3);
    let y_lo = bx.b0 * Rational::new(m as i128, n3 as i128);
    let y_hi = bx.b1 * Rational::new(m as i128, n3 as i128);
    let x_lo = bx.a0 / m + bx.b0 * Rational::new(r as i128, n3 as i128);
    let x_hi = bx.a1 / m + bx.b1 * Rational::new(r as i128, n3 as i128);
    let reach_y = cap / inst.w23;
    let reach_x = cap / inst.w13;

    let fcorners = bx.corners().map(|(a, b)| (a.to_f64(), b.to_f64()));
    let fcap = cap.to_f64();
    let mut out = Vec::new();
    let t_min = ((y_lo - reach_y) * n3 / m).ceil() as i64;
    let t_max = ((y_hi + reach_y) * n3 / m).floor() as i64;
    for t in t_min..=t_max {
        let shift = Rational::new((t * r) as i128, n3 as i128);
        let s_min = ((x_lo - shift - reach_x) * m).ceil() as i64;
        let s_max = ((x_hi - shift + reach_x) * m).floor() as i64;
        for s in s_min..=s_max {
            let forms = pair_forms(inst, s, t);
            let fl = forms.iter().map(|f| min_abs_over_f64(f, &fcorners)).fold(0.0, f64::max);
            if fl > fcap + SLACK {
                continue;
            }
            if fl < fcap - SLACK || forms.iter().map(|f| min_abs_over(f, bx)).max().unwrap() <= cap {
                out.push((s, t));
            }
        }
    }
    out
}

/// Exact maximum over the closed box of `min over live pairs of max_k |f_k|`.
pub(super) fn local_max(inst: &CoveringInstance, bx: &CellBox, live: &[(i64, i64)]) -> (Rational, (Rational, Rational)) {
    let forms: Vec<[CellAffine; 3]> = live.iter().map(|&(s, t)| pair_forms(inst, s, t)).collect();
    let local_f = |a: Rational, b: Rational| -> Rational {
        forms
            .iter()
            .map(|fs| fs.iter().map(|f| f.eval(a, b).abs()).max().unwrap())
            .min()
            .expect("live set is never empty")
    };

    let fforms: Vec<[[f64; 3]; 3]> = forms
        .iter()
        .map(|fs| fs.map(|f| [f.ca.to_f64(), f.cb.to_f64(), f.c0.to_f64()]))
        .collect();
    // Breaklines as (form, optional second form with sign), by index.
    type Idx = (usize, usize);
    let mut specs: Vec<(Idx, Option<(Idx, i64)>)> = Vec::new();
    for j in 0..forms.len() {
        for k in 0..3 {
            specs.push(((j, k), None));
            for k2 in k + 1..3 {
                specs.push(((j, k), Some(((j, k2), 1))));
                specs.push(((j, k), Some(((j, k2), -1))));
            }
            for j2 in j + 1..forms.len() {
                for k2 in 0..3 {
                    specs.push(((j, k), Some(((j2, k2), 1))));
                    specs.push(((j, k), Some(((j2, k2), -1))));
                }
            }
        }
    }

    let corners = bx.corners();
    let fcorners = corners.map(|(a, b)| (a.to_f64(), b.to_f64()));
    let mut seen = HashSet::new();
    let mut lines: Vec<CellAffine> = Vec::new();
    for &((j, k), g) in &specs {
        // Skip lines that clearly miss the box before doing exact work.
        let mut fl = fforms[j][k];
        if let Some(((j2, k2), sign)) = g {
            for i in 0..3 {
                fl[i] += fforms[j2][k2][i] * sign as f64;
            }
        }
        let scale = 1.0 + fl[0].abs() + fl[1].abs() + fl[2].abs();
        let vals = fcorners.map(|(a, b)| fl[0] * a + fl[1] * b + fl[2]);
        if vals.iter().all(|v| *v > SLACK * scale) || vals.iter().all(|v| *v < -SLACK * scale) {
            continue;
        }
        let exact = match g {
            Some(((j2, k2), sign)) => forms[j][k].combine(&forms[j2][k2], sign),
            None => forms[j][k],
        };
        let Some(l) = exact.normalized() else { continue };
        if seen.insert(l) {
            lines.push(l);
        }
    }

    // Float screening: a candidate is evaluated exactly only if it lies in
    // the box and its float value is within SLACK of the best exact value.
    let local_f64 = |a: f64, b: f64| -> f64 {
        fforms
            .iter()
            .map(|fs| fs.iter().map(|f| (f[0] * a + f[1] * b + f[2]).abs()).fold(0.0, f64::max))
            .fold(f64::INFINITY, f64::min)
    };
    let (fa0, fa1, fb0, fb1) = (bx.a0.to_f64(), bx.a1.to_f64(), bx.b0.to_f64(), bx.b1.to_f64());
    let near_box = |a: f64, b: f64| fa0 - SLACK <= a && a <= fa1 + SLACK && fb0 - SLACK <= b && b <= fb1 + SLACK;
    let inside = |a: Rational, b: Rational| bx.a0 <= a && a <= bx.a1 && bx.b0 <= b && b <= bx.b1;

    let mut best = (Rational::from_int(-1), corners[0]);
    let consider = |best: &mut (Rational, (Rational, Rational)), a: Rational, b: Rational| {
        let v = local_f(a, b);
        if v > best.0 || (v == best.0 && (a, b) < best.1) {
            *best = (v, (a, b));
        }
    };
    for (a, b) in corners {
        consider(&mut best, a, b);
    }

    // Candidates carry a float estimate of F and are settled exactly in
    // decreasing order of it until the estimate drops below the best value.
    enum Cand {
        Edge { line: usize, on_a: bool, at: Rational },
        Cross(usize, usize),
    }
    let flines: Vec<[f64; 3]> = lines.iter().map(|l| [l.ca.to_f64(), l.cb.to_f64(), l.c0.to_f64()]).collect();
    let mut cands: Vec<(f64, Cand)> = Vec::new();
    for (i, (l, fl)) in lines.iter().zip(&flines).enumerate() {
        if !l.cb.is_zero() {
            for (a, fa) in [(bx.a0, fa0), (bx.a1, fa1)] {
                let fb = -(fl[2] + fl[0] * fa) / fl[1];
                if near_box(fa, fb) {
                    cands.push((local_f64(fa, fb), Cand::Edge { line: i, on_a: true, at: a }));
                }
            }
        }
        if !l.ca.is_zero() {
            for (b, fb) in [(bx.b0, fb0), (bx.b1, fb1)] {
                let fa = -(fl[2] + fl[1] * fb) / fl[0];
                if near_box(fa, fb) {
                    cands.push((local_f64(fa, fb), Cand::Edge { line: i, on_a: false, at: b }));
                }
            }
        }
    }
    for (i, f1) in flines.iter().enumerate() {
        for (j, f2) in flines.iter().enumerate().skip(i + 1) {
            let fdet = f1[0] * f2[1] - f2[0] * f1[1];
            if fdet.abs() <= SLACK {
                // Nearly parallel: the float crossing is unreliable.
                cands.push((f64::INFINITY, Cand::Cross(i, j)));
                continue;
            }
            let fa = (f2[2] * f1[1] - f1[2] * f2[1]) / fdet;
            let fb = (f2[0] * f1[2] - f1[0] * f2[2]) / fdet;
            if near_box(fa, fb) {
                cands.push((local_f64(fa, fb), Cand::Cross(i, j)));
            }
        }
    }
    cands.sort_by(|x, y| y.0.total_cmp(&x.0));

    for (estimate, cand) in cands {
        if estimate < best.0.to_f64() - SLACK {
            break;
        }
        let point = match cand {
            Cand::Edge { line, on_a: true, at } => {
                let l = &lines[line];
                Some((at, -(l.c0 + l.ca * at) / l.cb))
            }
            Cand::Edge { line, on_a: false, at } => {
                let l = &lines[line];
                Some((-(l.c0 + l.cb * at) / l.ca, at))
            }
            Cand::Cross(i, j) => {
                let (l1, l2) = (&lines[i], &lines[j]);
                let det = l1.ca * l2.cb - l2.ca * l1.cb;
                (!det.is_zero())
                    .then(|| ((l2.c0 * l1.cb - l1.c0 * l2.cb) / det, (l2.ca * l1.c0 - l1.ca * l2.c0) / det))
            }
        };
        if let Some((a, b)) = point {
            if inside(a, b) {
                consider(&mut best, a, b);
            }
        }
    }
    best
}
