//! Homotopy continuation for square polynomial systems over the complex
//! numbers.
//!
//! Paths of `H(x, t) = (1 - t) gamma G(x) + t F(x)` are tracked in the
//! affine chart from the solutions of a start system `G` at `t = 0` to
//! `t = 1` with a fourth-order Runge–Kutta predictor and a Newton corrector,
//! then polished and classified. Paths are independent and run on the
//! current rayon pool; the returned [`SolutionSet`] is sorted canonically, so
//! results do not depend on scheduling or the number of threads.

mod solution;
mod start;
mod system;
mod tracker;

use num_complex::Complex64;
use rayon::prelude::*;

pub use solution::{relative_distance, PathStatus, SolutionSet, StatusCounts, TrackedSolution};
pub use start::{linear_product_start, total_degree_start, total_degree_start_with, LinearProductStart};
pub use system::{bezout_bound, CompiledSystem, Evaluate, SquareSystem};
pub use tracker::{newton_refine, TrackerConfig};

use crate::error::Result;
use crate::polyring::RandomSource;
use tracker::{refine_and_classify, EndKind, Homotopy};

/// Largest relative move of the final Newton refinement from the point
/// where a path stalled inside the endgame region.
const STALL_DRIFT: f64 = 1e-3;
/// A stalled path whose refinement drifted is reported as diverged when it
/// stalled this many times farther out than the refined point.
const ESCAPE_RATIO: f64 = 1e4;

/// Solves `target` by the total-degree homotopy: `bezout_bound(target)`
/// paths.
pub fn track_all(target: &SquareSystem, cfg: &TrackerConfig, rng: RandomSource) -> Result<SolutionSet> {
    cfg.validate()?;
    let (start, points) = total_degree_start(target, rng.split(1));
    track_from(target, &start.compile(), &points, cfg, rng)
}

/// Solves `target` with the linear-product start system for the variable
/// partition `groups`; one path per multihomogeneous Bézout root.
pub fn track_all_multihomogeneous(
    target: &SquareSystem,
    groups: &[usize],
    cfg: &TrackerConfig,
    rng: RandomSource,
) -> Result<SolutionSet> {
    cfg.validate()?;
    let (start, points) = linear_product_start(target, groups, rng.split(1))?;
    track_from(target, &start, &points, cfg, rng)
}

/// Tracks every start point of `start` to `target`. `gamma` is drawn from
/// `rng`; the Bézout field of the result is that of `target`.
pub fn track_from(
    target: &SquareSystem,
    start: &dyn Evaluate,
    points: &[Vec<Complex64>],
    cfg: &TrackerConfig,
    rng: RandomSource,
) -> Result<SolutionSet> {
    cfg.validate()?;
    let compiled = target.compile();
    let gamma = rng.split(0).draws().unit_complex();
    let hom = Homotopy { start, target: &compiled, gamma };
    let ends: Vec<TrackedSolution> = points
        .par_iter()
        .enumerate()
        .map(|(k, p)| {
            let end = hom.track(p, cfg);
            match end.kind {
                EndKind::Diverged => TrackedSolution {
                    point: end.x,
                    residual: f64::INFINITY,
                    sigma_min: 0.0,
                    status: PathStatus::Diverged,
                    path: k,
                    steps: end.steps,
                },
                EndKind::Stalled(t) if t < cfg.endgame_start => TrackedSolution {
                    point: end.x,
                    residual: f64::INFINITY,
                    sigma_min: 0.0,
                    status: PathStatus::Failed,
                    path: k,
                    steps: end.steps,
                },
                EndKind::Stalled(_) => {
                    let sol = refine_and_classify(target, &compiled, &end.x, cfg, k, end.steps);
                    if relative_distance(&sol.point, &end.x) <= STALL_DRIFT {
                        return sol;
                    }
                    // Newton left the neighbourhood of the stalled path: the
                    // point it found belongs to some other path
                    let far = solution::norm_inf(&end.x) >= ESCAPE_RATIO * solution::norm_inf(&sol.point).max(1.0);
                    TrackedSolution {
                        point: end.x,
                        residual: f64::INFINITY,
                        sigma_min: 0.0,
                        status: if far { PathStatus::Diverged } else { PathStatus::Failed },
                        path: k,
                        steps: end.steps,
                    }
                }
                EndKind::Reached => refine_and_classify(target, &compiled, &end.x, cfg, k, end.steps),
            }
        })
        .collect();
    Ok(SolutionSet::canonicalize(ends, cfg.dedup_distance, bezout_bound(target)))
}
