//! The lattice-covering formulation of α for a 3-element set.
//!
//! For a canonical triple `(n1, n2, n3)` with lattice `(m, r)` and a point
//! `(x, y)`, write `D_t = y - t m/n3` and `X_{s,t} = x - s/m - t r/n3`. The
//! three pairwise constraints are
//!
//! ```text
//! (2,3)  n3/(n2+n3)      |D_t|
//! (1,3)  n3/(|n1|+n3)    |X_{s,t}|
//! (1,2)  |n2 X_{s,t} - n1 D_t| / (|n1|+n2)
//! ```
//!
//! and `F(x, y) = min over (s, t) of the largest of the three`. `F` is
//! periodic under the lattice `K` generated by `(1/m, 0)` and
//! `(r/n3, m/n3)`, and α is its maximum over a fundamental cell.

mod certified;
mod exact;

pub use certified::{certified_alpha, certified_alpha_with, AlphaInterval, CertifiedRun, Method, SolveOptions, StopReason};
pub use exact::{exact_alpha, exact_alpha_with, ExactRun};

use serde::{Deserialize, Serialize};

use crate::error::{KroneckerError, Result};
use crate::numbers::{lattice_params, CanonicalTriple, LatticeParams, Rational};

/// Slack used when a floating-point pass preselects `(s, t)` candidates.
/// Every quantity involved is O(1) and computed in a handful of operations,
/// so the float error is below 1e-12.
const FLOAT_SLACK: f64 = 1e-9;

/// `c_x x + c_y y + c_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Affine {
    pub cx: Rational,
    pub cy: Rational,
    pub c0: Rational,
}

impl Affine {
    pub fn eval(&self, x: Rational, y: Rational) -> Rational {
        self.cx * x + self.cy * y + self.c0
    }

    fn scale(&self, k: Rational) -> Affine {
        Affine { cx: self.cx * k, cy: self.cy * k, c0: self.c0 * k }
    }

    fn add(&self, o: &Affine) -> Affine {
        Affine { cx: self.cx + o.cx, cy: self.cy + o.cy, c0: self.c0 + o.c0 }
    }
}

/// A point `(x, y)` of the covering plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EvalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl EvalPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        EvalPoint { x, y }
    }

    /// `x - r y / m`
    pub fn beta(&self, inst: &CoveringInstance) -> Rational {
        self.x - self.y * inst.lp.r / inst.lp.m
    }

    /// `y - t m / n3`
    pub fn delta(&self, inst: &CoveringInstance, t: i64) -> Rational {
        self.y - Rational::new((t * inst.lp.m) as i128, inst.n3 as i128)
    }
}

/// Result of evaluating `F` at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Evaluation {
    pub value: Rational,
    pub s: i64,
    pub t: i64,
    /// Constraint values `(2,3)`, `(1,3)`, `(1,2)` at the minimizing `(s, t)`.
    pub constraints: [Rational; 3],
}

#[derive(Debug, Clone, Copy)]
struct FloatCoeffs {
    w23: f64,
    w13: f64,
    n1: f64,
    n2: f64,
    d12: f64,
    m: f64,
    r: f64,
    n3: f64,
}

/// A triple prepared for covering computations.
#[derive(Debug, Clone)]
pub struct CoveringInstance {
    ct: CanonicalTriple,
    lp: LatticeParams,
    n1: i64,
    n2: i64,
    n3: i64,
    w23: Rational,
    w13: Rational,
    d12: i64,
    fc: FloatCoeffs,
}

impl CoveringInstance {
    /// Requires distinct absolute values.
    pub fn new(ct: &CanonicalTriple) -> Result<Self> {
        let lp = lattice_params(ct)?;
        let (n1, n2, n3) = (ct.n1(), ct.n2(), ct.n3());
        let w23 = Rational::new(n3 as i128, (n2 + n3) as i128);
        let w13 = Rational::new(n3 as i128, (n1.abs() + n3) as i128);
        let d12 = n1.abs() + n2;
        let fc = FloatCoeffs {
            w23: w23.to_f64(),
            w13: w13.to_f64(),
            n1: n1 as f64,
            n2: n2 as f64,
            d12: d12 as f64,
            m: lp.m as f64,
            r: lp.r as f64,
            n3: n3 as f64,
        };
        Ok(CoveringInstance { ct: ct.clone(), lp, n1, n2, n3, w23, w13, d12, fc })
    }

    pub fn triple(&self) -> &CanonicalTriple {
        &self.ct
    }

    pub fn lattice(&self) -> &LatticeParams {
        &self.lp
    }

    /// Weight of constraint (2,3), `n3/(n2+n3)`.
    pub fn w23(&self) -> Rational {
        self.w23
    }

    /// Weight of constraint (1,3), `n3/(|n1|+n3)`.
    pub fn w13(&self) -> Rational {
        self.w13
    }

    /// Denominator of constraint (1,2), `|n1| + n2`.
    pub fn d12(&self) -> i64 {
        self.d12
    }

    /// Maps cell coordinates to the plane: `a (1/m, 0) + b (r/n3, m/n3)`.
    pub fn point(&self, a: Rational, b: Rational) -> EvalPoint {
        EvalPoint {
            x: a / self.lp.m + b * Rational::new(self.lp.r as i128, self.n3 as i128),
            y: b * Rational::new(self.lp.m as i128, self.n3 as i128),
        }
    }

    /// The three inner affine forms for `(s, t)` in plane coordinates, in the
    /// order (2,3), (1,3), (1,2). Constraint values are their absolute values.
    pub fn affines(&self, s: i64, t: i64) -> [Affine; 3] {
        let (m, r, n3) = (self.lp.m as i128, self.lp.r as i128, self.n3 as i128);
        // D = y - tm/n3, X = x - s/m - tr/n3
        let d = Affine {
            cx: Rational::ZERO,
            cy: Rational::ONE,
            c0: -Rational::new(t as i128 * m, n3),
        };
        let xx = Affine {
            cx: Rational::ONE,
            cy: Rational::ZERO,
            c0: -(Rational::new(s as i128, m) + Rational::new(t as i128 * r, n3)),
        };
        let inv12 = Rational::new(1, self.d12 as i128);
        [
            d.scale(self.w23),
            xx.scale(self.w13),
            xx.scale(Rational::from_int(self.n2) * inv12)
                .add(&d.scale(Rational::from_int(-self.n1) * inv12)),
        ]
    }

    /// Exact constraint values (2,3), (1,3), (1,2) at `p` for `(s, t)`.
    pub fn constraint_values(&self, p: &EvalPoint, s: i64, t: i64) -> [Rational; 3] {
        let d = p.delta(self, t);
        let xx = p.x - Rational::new(s as i128, self.lp.m as i128) - Rational::new((t * self.lp.r) as i128, self.n3 as i128);
        [
            (self.w23 * d).abs(),
            (self.w13 * xx).abs(),
            ((xx * self.n2 - d * self.n1) / self.d12).abs(),
        ]
    }

    fn g_exact(&self, p: &EvalPoint, s: i64, t: i64) -> (Rational, [Rational; 3]) {
        let c = self.constraint_values(p, s, t);
        (c[0].max(c[1]).max(c[2]), c)
    }

    fn g_float(&self, x: f64, y: f64, s: i64, t: i64) -> f64 {
        let fc = &self.fc;
        let d = y - t as f64 * fc.m / fc.n3;
        let xx = x - s as f64 / fc.m - t as f64 * fc.r / fc.n3;
        (fc.w23 * d.abs()).max(fc.w13 * xx.abs()).max((fc.n2 * xx - fc.n1 * d).abs() / fc.d12)
    }

    /// The nearest `(s, t)`: `t` rounds `y n3/m`, then `s` rounds `m (x - t r/n3)`.
    pub fn nearest_pair(&self, p: &EvalPoint) -> (i64, i64) {
        let t = (p.y * self.n3 / self.lp.m).round_half_up() as i64;
        let s = ((p.x - Rational::new((t * self.lp.r) as i128, self.n3 as i128)) * self.lp.m).round_half_up() as i64;
        (s, t)
    }

    /// Every `(s, t)` that could achieve a constraint maximum `<= cap` at `p`:
    /// all `t` with `w23 |D_t| <= cap` and, for each, all `s` with
    /// `w13 |X_{s,t}| <= cap`.
    pub fn candidate_window(&self, p: &EvalPoint, cap: Rational) -> Vec<(i64, i64)> {
        let (m, r, n3) = (self.lp.m, self.lp.r, self.n3);
        // |y n3/m - t| <= cap/w23 * n3/m
        let t_center = p.y * n3 / m;
        let t_reach = cap / self.w23 * n3 / m;
        let mut out = Vec::new();
        for t in (t_center - t_reach).ceil()..=(t_center + t_reach).floor() {
            let t = t as i64;
            // |m (x - t r/n3) - s| <= cap/w13 * m
            let s_center = (p.x - Rational::new((t * r) as i128, n3 as i128)) * m;
            let s_reach = cap / self.w13 * m;
            for s in (s_center - s_reach).ceil()..=(s_center + s_reach).floor() {
                out.push((s as i64, t));
            }
        }
        out
    }

    /// `F` restricted to the given `(s, t)` pairs. Panics on an empty window.
    pub fn eval_f_over(&self, p: &EvalPoint, window: &[(i64, i64)]) -> Evaluation {
        window
            .iter()
            .map(|&(s, t)| {
                let (value, constraints) = self.g_exact(p, s, t);
                Evaluation { value, s, t, constraints }
            })
            .min_by(|a, b| a.value.cmp(&b.value).then((a.t, a.s).cmp(&(b.t, b.s))))
            .expect("non-empty window")
    }

    /// Reference evaluation: seed the cap at the nearest pair, then minimize
    /// over the full candidate window in exact arithmetic.
    pub fn eval_f_reference(&self, p: &EvalPoint) -> Evaluation {
        let (s0, t0) = self.nearest_pair(p);
        let (cap, _) = self.g_exact(p, s0, t0);
        let window = self.candidate_window(p, cap);
        self.eval_f_over(p, &window)
    }

    /// `F(p)` exactly.
    pub fn eval_f(&self, p: &EvalPoint) -> Rational {
        self.eval_f_detailed(p).value
    }

    /// `F(p)` with its minimizing `(s, t)`.
    ///
    /// A float sweep walks `t` and `s` outward from their centers, pruning
    /// with the running minimum; only pairs within [`FLOAT_SLACK`] of the float
    /// minimum are then evaluated exactly.
    pub fn eval_f_detailed(&self, p: &EvalPoint) -> Evaluation {
        let (x, y) = (p.x.to_f64(), p.y.to_f64());
        let fc = self.fc;
        let mut best = f64::INFINITY;
        let mut pool: Vec<(f64, i64, i64)> = Vec::with_capacity(8);

        let t_center = y * fc.n3 / fc.m;
        let t0 = t_center.round() as i64;
        for dir in [1i64, -1] {
            let mut t = if dir == 1 { t0 } else { t0 - 1 };
            loop {
                let d = y - t as f64 * fc.m / fc.n3;
                if fc.w23 * d.abs() > best + FLOAT_SLACK {
                    break;
                }
                let s_center = fc.m * (x - t as f64 * fc.r / fc.n3);
                let s0 = s_center.round() as i64;
                for sdir in [1i64, -1] {
                    let mut s = if sdir == 1 { s0 } else { s0 - 1 };
                    loop {
                        let xx = x - s as f64 / fc.m - t as f64 * fc.r / fc.n3;
                        if fc.w13 * xx.abs() > best + FLOAT_SLACK {
                            break;
                        }
                        let g = self.g_float(x, y, s, t);
                        if g <= best + FLOAT_SLACK {
                            best = best.min(g);
                            pool.push((g, s, t));
                        }
                        s += sdir;
                    }
                }
                t += dir;
            }
        }

        let finalists: Vec<(i64, i64)> =
            pool.into_iter().filter(|&(g, _, _)| g <= best + FLOAT_SLACK).map(|(_, s, t)| (s, t)).collect();
        self.eval_f_over(p, &finalists)
    }

    /// `c(E) = E/|n3| (r/m (|n2|+|n3|) + |n1| + |n3|)`: the half-width
    /// budget that `-beta + s/m` must fit in for the (1,3) and (2,3)
    /// intervals to meet.
    pub fn interval_reach(&self, e: Rational) -> Rational {
        let (m, r) = (self.lp.m, self.lp.r);
        e / self.n3 * (Rational::new(r as i128, m as i128) * (self.n2 + self.n3) + (self.n1.abs() + self.n3))
    }

    /// The intervals `J1(s, E)` and `J2(s, E)` and their overlap.
    pub fn overlap_lengths(&self, e: Rational, s: i64, beta: Rational) -> Result<Overlap> {
        if !e.is_positive() {
            return Err(KroneckerError::InvalidArgument("E must be positive".into()));
        }
        if self.lp.r == 0 {
            return Err(KroneckerError::RectangularUnsupported);
        }
        let (m, r) = (self.lp.m, self.lp.r);
        let half1 = e * (self.n2 + self.n3) / self.n3;
        let j1 = (-half1, half1);
        let m_over_r = Rational::new(m as i128, r as i128);
        let reach13 = e * (self.n1.abs() + self.n3) / self.n3;
        let shift = -beta + Rational::new(s as i128, m as i128);
        let j2 = (m_over_r * (-reach13 + shift), m_over_r * (reach13 + shift));

        let (case, length) = if j2.0 <= j1.0 && j1.1 <= j2.1 {
            (OverlapCase::J1InJ2, j1.1 - j1.0)
        } else if j1.0 <= j2.0 && j2.1 <= j1.1 {
            (OverlapCase::J2InJ1, j2.1 - j2.0)
        } else {
            let len = j1.1.min(j2.1) - j1.0.max(j2.0);
            (OverlapCase::Partial, len.max(Rational::ZERO))
        };
        Ok(Overlap { case, j1, j2, length })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OverlapCase {
    J1InJ2,
    J2InJ1,
    Partial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overlap {
    pub case: OverlapCase,
    pub j1: (Rational, Rational),
    pub j2: (Rational, Rational),
    pub length: Rational,
}
