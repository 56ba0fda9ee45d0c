use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

/// How a tracked path ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathStatus {
    /// Residual below the final tolerance, and either `sigma_min` above the
    /// rank threshold or Newton converging quadratically from the endpoint.
    Nonsingular,
    /// Residual below the corrector tolerance only.
    Singular,
    Diverged,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrackedSolution {
    #[serde(serialize_with = "ser_point")]
    pub point: Vec<Complex64>,
    /// Relative backward error with exact coefficients.
    pub residual: f64,
    /// Smallest singular value of the row-normalised, column-scaled Jacobian.
    pub sigma_min: f64,
    pub status: PathStatus,
    /// Index of the start point this path came from.
    pub path: usize,
    pub steps: usize,
}

fn ser_point<S: Serializer>(p: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(|z| [z.re, z.im]))
}

impl TrackedSolution {
    pub fn norm_inf(&self) -> f64 {
        norm_inf(&self.point)
    }
}

pub(crate) fn norm_inf(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max_j |a_j - b_j| / max(1, |a|_inf, |b|_inf)`.
pub fn relative_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let d = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    d / norm_inf(a).max(norm_inf(b)).max(1.0)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StatusCounts {
    pub nonsingular: usize,
    pub singular: usize,
    pub diverged: usize,
    pub failed: usize,
}

/// The outcome of one homotopy solve, in canonical order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionSet {
    pub solutions: Vec<TrackedSolution>,
    pub counts: StatusCounts,
    /// Number of paths tracked.
    pub paths: usize,
    /// Nonsingular endpoints dropped as duplicates of another path.
    pub duplicates: usize,
    pub bezout: u128,
}

fn rounded(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    // eight significant digits
    let e = x.abs().log10().floor() as i32 - 7;
    let scale = 10f64.powi(-e);
    (x * scale).round() / scale + 0.0
}

fn canonical_cmp(a: &TrackedSolution, b: &TrackedSolution) -> Ordering {
    a.status
        .cmp(&b.status)
        .then_with(|| {
            let ka = a.point.iter().flat_map(|z| [rounded(z.re), rounded(z.im)]);
            let kb = b.point.iter().flat_map(|z| [rounded(z.re), rounded(z.im)]);
            ka.zip(kb).map(|(x, y)| x.total_cmp(&y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
        })
        .then_with(|| {
            let ka = a.point.iter().flat_map(|z| [z.re, z.im]);
            let kb = b.point.iter().flat_map(|z| [z.re, z.im]);
            ka.zip(kb).map(|(x, y)| x.total_cmp(&y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
        })
        .then_with(|| a.path.cmp(&b.path))
}

impl SolutionSet {
    /// Sorts canonically and merges nonsingular endpoints closer than
    /// `dedup_distance`, keeping the canonically smallest representative.
    /// The result does not depend on the order of `solutions`.
    pub fn canonicalize(mut solutions: Vec<TrackedSolution>, dedup_distance: f64, bezout: u128) -> Self {
        let paths = solutions.len();
        solutions.sort_by(canonical_cmp);
        let mut kept: Vec<TrackedSolution> = Vec::with_capacity(solutions.len());
        let mut duplicates = 0;
        let first_other = solutions.partition_point(|s| s.status == PathStatus::Nonsingular);
        let others = solutions.split_off(first_other);
        for s in solutions {
            if kept.iter().any(|k| relative_distance(&k.point, &s.point) < dedup_distance) {
                duplicates += 1;
            } else {
                kept.push(s);
            }
        }
        kept.extend(others);
        let mut counts = StatusCounts::default();
        for s in &kept {
            match s.status {
                PathStatus::Nonsingular => counts.nonsingular += 1,
                PathStatus::Singular => counts.singular += 1,
                PathStatus::Diverged => counts.diverged += 1,
                PathStatus::Failed => counts.failed += 1,
            }
        }
        SolutionSet { solutions: kept, counts, paths, duplicates, bezout }
    }

    pub fn nonsingular(&self) -> impl Iterator<Item = &TrackedSolution> {
        self.solutions.iter().filter(|s| s.status == PathStatus::Nonsingular)
    }

    /// Union of two solve results, re-canonicalised.
    pub fn merge(&self, other: &SolutionSet, dedup_distance: f64) -> SolutionSet {
        let all = self.solutions.iter().chain(&other.solutions).cloned().collect();
        let mut merged = SolutionSet::canonicalize(all, dedup_distance, self.bezout.max(other.bezout));
        merged.paths = self.paths + other.paths;
        merged.duplicates += self.duplicates + other.duplicates;
        merged
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sol(path: usize, re: f64, status: PathStatus) -> TrackedSolution {
        TrackedSolution {
            point: vec![Complex64::new(re, 0.5)],
            residual: 0.0,
            sigma_min: 1.0,
            status,
            path,
            steps: 1,
        }
    }

    #[test]
    fn order_independent_and_deduplicated() {
        let a = vec![
            sol(0, 2.0, PathStatus::Nonsingular),
            sol(1, -1.0, PathStatus::Diverged),
            sol(2, 1.0, PathStatus::Nonsingular),
            sol(3, 1.0 + 1e-9, PathStatus::Nonsingular),
        ];
        let mut b = a.clone();
        b.reverse();
        let sa = SolutionSet::canonicalize(a, 1e-6, 4);
        let sb = SolutionSet::canonicalize(b, 1e-6, 4);
        assert_eq!(sa, sb);
        assert_eq!(sa.counts.nonsingular, 2);
        assert_eq!(sa.duplicates, 1);
        assert_eq!(sa.solutions[0].path, 2);
        assert_eq!(sa.solutions.last().unwrap().status, PathStatus::Diverged);
    }

    #[test]
    fn rounding_keeps_eight_digits() {
        assert_eq!(rounded(1.234567891), 1.2345679);
        assert_eq!(rounded(-0.0), 0.0);
    }
}
