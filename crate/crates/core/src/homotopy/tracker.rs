use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::solution::{norm_inf, PathStatus, TrackedSolution};
use super::system::{CompiledSystem, Evaluate, SquareSystem};
use crate::error::{Error, Result};
use crate::polyring::eval_complex_with_scale;

/// Step-size control and tolerances for path tracking and refinement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrackerConfig {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// Relative Newton update accepted by the corrector.
    pub corrector_tol: f64,
    pub max_corrector_iters: usize,
    /// Paths whose sup-norm exceeds this are reported as diverged.
    pub divergence_bound: f64,
    /// Paths that stall after this `t` are still refined at `t = 1`.
    pub endgame_start: f64,
    /// Relative backward error required of a nonsingular endpoint.
    pub final_tol: f64,
    pub max_refine_iters: usize,
    pub dedup_distance: f64,
    /// Minimum scaled singular value of a nonsingular endpoint.
    pub rank_threshold: f64,
    pub max_steps: usize,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        TrackerConfig {
            initial_step: 0.01,
            min_step: 1e-13,
            max_step: 0.05,
            corrector_tol: 1e-8,
            max_corrector_iters: 3,
            divergence_bound: 1e12,
            endgame_start: 0.9,
            final_tol: 1e-12,
            max_refine_iters: 20,
            dedup_distance: 1e-6,
            rank_threshold: 1e-8,
            max_steps: 20_000,
        }
    }
}

impl TrackerConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("initial_step", self.initial_step),
            ("min_step", self.min_step),
            ("max_step", self.max_step),
            ("corrector_tol", self.corrector_tol),
            ("divergence_bound", self.divergence_bound),
            ("endgame_start", self.endgame_start),
            ("final_tol", self.final_tol),
            ("dedup_distance", self.dedup_distance),
            ("rank_threshold", self.rank_threshold),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        let counts = [
            ("max_corrector_iters", self.max_corrector_iters),
            ("max_refine_iters", self.max_refine_iters),
            ("max_steps", self.max_steps),
        ];
        for (name, v) in counts {
            if v == 0 {
                return Err(Error::InvalidConfig(format!("{name} must be positive")));
            }
        }
        if self.min_step >= self.initial_step {
            return Err(Error::InvalidConfig("min_step must be smaller than initial_step".into()));
        }
        if self.initial_step > self.max_step {
            return Err(Error::InvalidConfig("initial_step must not exceed max_step".into()));
        }
        if self.endgame_start >= 1.0 {
            return Err(Error::InvalidConfig("endgame_start must lie in (0, 1)".into()));
        }
        if self.dedup_distance <= self.final_tol {
            return Err(Error::InvalidConfig("dedup_distance must exceed final_tol".into()));
        }
        Ok(())
    }
}

/// Largest relative first Newton update accepted by the corrector.
const FIRST_CORRECTION_MAX: f64 = 1e-2;

/// `H(x, t) = (1 - t) gamma G(x) + t F(x)`.
pub(crate) struct Homotopy<'a> {
    pub start: &'a dyn Evaluate,
    pub target: &'a CompiledSystem,
    pub gamma: Complex64,
}

struct Workspace {
    f: Vec<Complex64>,
    g: Vec<Complex64>,
    jf: DMatrix<Complex64>,
    jg: DMatrix<Complex64>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Workspace {
            f: vec![Complex64::default(); n],
            g: vec![Complex64::default(); n],
            jf: DMatrix::zeros(n, n),
            jg: DMatrix::zeros(n, n),
        }
    }
}

impl Homotopy<'_> {
    /// Returns `(H, H_x)` and, when asked, `H_t`.
    fn eval(
        &self,
        x: &[Complex64],
        t: f64,
        ws: &mut Workspace,
        with_dt: bool,
    ) -> (DVector<Complex64>, DMatrix<Complex64>, Option<DVector<Complex64>>) {
        self.start.eval_into(x, &mut ws.g, Some(&mut ws.jg));
        self.target.eval_into(x, &mut ws.f, Some(&mut ws.jf));
        let a = self.gamma * (1.0 - t);
        let tc = Complex64::new(t, 0.0);
        let n = x.len();
        let h = DVector::from_fn(n, |i, _| a * ws.g[i] + tc * ws.f[i]);
        let j = DMatrix::from_fn(n, n, |r, c| a * ws.jg[(r, c)] + tc * ws.jf[(r, c)]);
        let ht = with_dt.then(|| DVector::from_fn(n, |i, _| ws.f[i] - self.gamma * ws.g[i]));
        (h, j, ht)
    }

    /// Tangent `dx/dt = -H_x^{-1} H_t`.
    fn velocity(&self, x: &[Complex64], t: f64, ws: &mut Workspace) -> Option<DVector<Complex64>> {
        let (_, j, ht) = self.eval(x, t, ws, true);
        j.lu().solve(&ht.expect("requested")).map(|v| -v)
    }

    fn rk4(&self, x: &[Complex64], t: f64, h: f64, ws: &mut Workspace) -> Option<Vec<Complex64>> {
        let x0 = DVector::from_column_slice(x);
        let k1 = self.velocity(x, t, ws)?;
        let x1 = &x0 + &k1 * Complex64::new(h / 2.0, 0.0);
        let k2 = self.velocity(x1.as_slice(), t + h / 2.0, ws)?;
        let x2 = &x0 + &k2 * Complex64::new(h / 2.0, 0.0);
        let k3 = self.velocity(x2.as_slice(), t + h / 2.0, ws)?;
        let x3 = &x0 + &k3 * Complex64::new(h, 0.0);
        let k4 = self.velocity(x3.as_slice(), t + h, ws)?;
        let inc = (k1 + (k2 + k3) * Complex64::new(2.0, 0.0) + k4) * Complex64::new(h / 6.0, 0.0);
        let out = x0 + inc;
        out.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then(|| out.as_slice().to_vec())
    }

    /// Newton on `H(., t)`; requires a small first update and monotonically
    /// shrinking updates, so a bad prediction is rejected instead of being
    /// pulled onto a neighbouring path.
    fn correct(&self, x: &mut [Complex64], t: f64, cfg: &TrackerConfig, ws: &mut Workspace) -> bool {
        let mut prev = FIRST_CORRECTION_MAX * (1.0 + norm_inf(x));
        for _ in 0..cfg.max_corrector_iters {
            let (h, j, _) = self.eval(x, t, ws, false);
            let Some(dx) = j.lu().solve(&h) else { return false };
            let step = dx.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if !step.is_finite() || step > prev {
                return false;
            }
            for (xi, d) in x.iter_mut().zip(dx.iter()) {
                *xi -= d;
            }
            if step <= cfg.corrector_tol * (1.0 + norm_inf(x)) {
                return true;
            }
            prev = step;
        }
        false
    }

    /// Follows one path from `t = 0` towards `t = 1`. Returns the last point,
    /// whether `t = 1` was reached (or the path stalled inside the endgame
    /// region), whether it diverged, and the number of accepted steps.
    pub(crate) fn track(&self, start: &[Complex64], cfg: &TrackerConfig) -> PathEnd {
        let n = start.len();
        let mut ws = Workspace::new(n);
        let mut x = start.to_vec();
        let mut t = 0.0f64;
        let mut h = cfg.initial_step;
        let mut streak = 0;
        let mut steps = 0;
        let mut attempts = 0;
        while t < 1.0 {
            attempts += 1;
            if attempts > cfg.max_steps {
                return PathEnd { x, steps, kind: EndKind::Stalled(t) };
            }
            let h_now = h.min(1.0 - t);
            let t_next = if h_now >= 1.0 - t { 1.0 } else { t + h_now };
            let ok = match self.rk4(&x, t, h_now, &mut ws) {
                Some(mut y) => {
                    let good = self.correct(&mut y, t_next, cfg, &mut ws);
                    if good {
                        x = y;
                    }
                    good
                }
                None => false,
            };
            if ok {
                t = t_next;
                steps += 1;
                if norm_inf(&x) > cfg.divergence_bound {
                    return PathEnd { x, steps, kind: EndKind::Diverged };
                }
                streak += 1;
                if streak >= 3 {
                    h = (h * 2.0).min(cfg.max_step);
                    streak = 0;
                }
            } else {
                streak = 0;
                h *= 0.5;
                if h < cfg.min_step {
                    return PathEnd { x, steps, kind: EndKind::Stalled(t) };
                }
            }
        }
        PathEnd { x, steps, kind: EndKind::Reached }
    }
}

#[derive(Debug)]
pub(crate) enum EndKind {
    Reached,
    Diverged,
    Stalled(f64),
}

pub(crate) struct PathEnd {
    pub x: Vec<Complex64>,
    pub steps: usize,
    pub kind: EndKind,
}

/// Smallest singular value of `J` after scaling column `j` by
/// `max(1, |x_j|)` and dividing row `i` by `row_scales[i]` (the sum of the
/// absolute values of the terms of equation `i`; rows with zero scale are
/// normalised to unit length instead).
pub(crate) fn scaled_sigma_min(jac: &DMatrix<Complex64>, x: &[Complex64], row_scales: &[f64]) -> f64 {
    let mut m = jac.clone();
    for (c, xc) in x.iter().enumerate() {
        let s = xc.norm().max(1.0);
        m.column_mut(c).scale_mut(s);
    }
    for (mut row, &s) in m.row_iter_mut().zip(row_scales) {
        let s = if s > 0.0 { s } else { row.norm() };
        if s > 0.0 {
            row.unscale_mut(s);
        }
    }
    if m.nrows() == 0 {
        return 1.0;
    }
    m.singular_values().iter().copied().fold(f64::INFINITY, f64::min)
}

/// Newton refinement on the compiled target followed by classification.
pub(crate) fn refine_and_classify(
    system: &SquareSystem,
    compiled: &CompiledSystem,
    point: &[Complex64],
    cfg: &TrackerConfig,
    path: usize,
    steps: usize,
) -> TrackedSolution {
    let n = point.len();
    let mut x = point.to_vec();
    let mut f = vec![Complex64::default(); n];
    let mut j = DMatrix::zeros(n, n);
    let mut converged = false;
    let mut broke = false;
    for _ in 0..cfg.max_refine_iters {
        compiled.eval_into(&x, &mut f, Some(&mut j));
        let b = DVector::from_column_slice(&f);
        let Some(dx) = j.clone().lu().solve(&b) else {
            broke = true;
            break;
        };
        let step = dx.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !step.is_finite() {
            broke = true;
            break;
        }
        for (xi, d) in x.iter_mut().zip(dx.iter()) {
            *xi -= d;
        }
        if norm_inf(&x) > cfg.divergence_bound {
            break;
        }
        if step <= cfg.final_tol * (1.0 + norm_inf(&x)) {
            if converged {
                break;
            }
            // one more pass to settle the last bits
            converged = true;
        }
    }
    if broke {
        x = point.to_vec();
    }
    let finite = x.iter().all(|z| z.re.is_finite() && z.im.is_finite());
    let (residual, sigma_min) = if finite {
        compiled.eval_into(&x, &mut f, Some(&mut j));
        let vs = system.values_and_scales(&x);
        let residual = vs.iter().map(|&(v, s)| if s == 0.0 { 0.0 } else { v / s }).fold(0.0, f64::max);
        let scales: Vec<f64> = vs.iter().map(|&(_, s)| s).collect();
        (residual, scaled_sigma_min(&j, &x, &scales))
    } else {
        (f64::INFINITY, 0.0)
    };
    let status = if !finite || norm_inf(&x) > cfg.divergence_bound {
        PathStatus::Diverged
    } else if broke {
        PathStatus::Failed
    } else if residual < cfg.final_tol && sigma_min > cfg.rank_threshold {
        PathStatus::Nonsingular
    } else if residual < cfg.final_tol && converges_quadratically(system, compiled, &mut x) {
        // ill-conditioned but simple: Newton still reaches working precision
        PathStatus::Nonsingular
    } else if residual < cfg.corrector_tol {
        PathStatus::Singular
    } else {
        PathStatus::Failed
    };
    TrackedSolution { point: x, residual, sigma_min, status, path, steps }
}

/// Componentwise relative Newton step at which a point counts as a fixed
/// point in double precision.
const FIXED_POINT_STEP: f64 = 1e-13;
/// Absolute floor of the componentwise test, for coordinates near zero.
const FIXED_POINT_FLOOR: f64 = 1e-8;
const FIXED_POINT_ITERS: usize = 4;

/// Newton iteration with compensated residuals. At a simple root it reaches
/// a fixed point within a few steps however large the condition number;
/// at a multiple root the steps only shrink linearly. On success `x` is
/// replaced by the improved point.
fn converges_quadratically(system: &SquareSystem, compiled: &CompiledSystem, x: &mut Vec<Complex64>) -> bool {
    let n = x.len();
    let mut y = x.clone();
    let mut f = vec![Complex64::default(); n];
    let mut j = DMatrix::zeros(n, n);
    for _ in 0..FIXED_POINT_ITERS {
        compiled.eval_into(&y, &mut f, Some(&mut j));
        let fx: Vec<Complex64> = system
            .polys()
            .iter()
            .map(|p| eval_complex_with_scale(p, &y).expect("point length checked").0)
            .collect();
        let Some(dx) = j.clone().lu().solve(&DVector::from_column_slice(&fx)) else {
            return false;
        };
        let fixed = dx
            .iter()
            .zip(&y)
            .all(|(d, yi)| d.norm() <= FIXED_POINT_STEP * (yi.norm() + FIXED_POINT_FLOOR));
        for (yi, d) in y.iter_mut().zip(dx.iter()) {
            *yi -= d;
        }
        if !y.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return false;
        }
        if fixed {
            *x = y;
            return true;
        }
    }
    false
}

/// Polishes `point` by Newton's method on `system` and classifies it. A
/// singular Newton step yields status `Failed`.
pub fn newton_refine(system: &SquareSystem, point: &[Complex64], cfg: &TrackerConfig) -> Result<TrackedSolution> {
    if point.len() != system.size() {
        return Err(Error::DimensionMismatch { expected: system.size(), got: point.len() });
    }
    Ok(refine_and_classify(system, &system.compile(), point, cfg, 0, 0))
}
