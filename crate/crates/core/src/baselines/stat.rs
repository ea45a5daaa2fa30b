use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alpha::{alpha_filtration, AlphaError, PointCloud};
use crate::chain::support_vertices;
use crate::complex::OrderWithLevel;
use crate::dualgraph::{build_dual_graph, compute_tree, optimal_volume_tree};
use crate::optvol::{lp_volume, VolumeMode, DEFAULT_THRESHOLD};
use crate::persistence::{reduce, PersistencePair};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatError {
    #[error("noise half width must be positive and finite, got {0}")]
    BadNoise(f64),
    #[error("at least one trial is needed")]
    NoTrials,
    #[error("target pair must have a finite death")]
    StarTarget,
    #[error(transparent)]
    Alpha(#[from] AlphaError),
}

/// Independent uniform noise on `(-half_width, half_width)` per coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    pub half_width: f64,
    pub seed: u64,
}

impl NoiseModel {
    pub fn new(half_width: f64, seed: u64) -> Result<Self, StatError> {
        if half_width > 0.0 && half_width.is_finite() {
            Ok(NoiseModel { half_width, seed })
        } else {
            Err(StatError::BadNoise(half_width))
        }
    }

    /// Trial `t` draws from its own stream of the seeded generator.
    pub fn perturb(&self, points: &PointCloud, trial: u64) -> PointCloud {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        let h = self.half_width;
        let d = points.dim();
        let moved = points
            .points()
            .iter()
            .map(|p| {
                let mut q = *p;
                for x in q.iter_mut().take(d) {
                    *x += rng.random_range(-h..h);
                }
                q
            })
            .collect();
        PointCloud::new(d, moved).expect("perturbed points stay finite")
    }

    /// Pairs further than this in ℓ∞ from the target are not matched.
    pub fn match_radius(&self) -> f64 {
        (2.0 * self.half_width).max(1e-6)
    }
}

/// The pair being tracked, as birth/death levels of one degree.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TargetPair {
    pub degree: usize,
    pub birth: f64,
    pub death: f64,
}

impl From<&PersistencePair> for TargetPair {
    fn from(p: &PersistencePair) -> Self {
        TargetPair {
            degree: p.degree,
            birth: p.birth_time,
            death: p.death_time,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrequencyStatus {
    Ok,
    /// More than half of the trials found no matching pair.
    MostlyUnmatched,
}

/// Per-point frequency of lying on the boundary of the matched pair's
/// optimal volume, over matched trials.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyMap {
    pub trials: usize,
    pub matched: usize,
    /// Matched trials whose optimal volume could not be recovered.
    pub failed: usize,
    pub counts: Vec<usize>,
    pub status: FrequencyStatus,
}

impl FrequencyMap {
    pub fn frequency(&self, point: usize) -> f64 {
        let used = self.matched - self.failed;
        if used == 0 {
            0.0
        } else {
            self.counts[point] as f64 / used as f64
        }
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.counts.len()).map(|i| self.frequency(i)).collect()
    }

    /// Points with frequency strictly above `cutoff`.
    pub fn above(&self, cutoff: f64) -> Vec<usize> {
        (0..self.counts.len()).filter(|&i| self.frequency(i) > cutoff).collect()
    }
}

enum Trial {
    Unmatched,
    Failed,
    Vertices(Vec<u32>),
}

fn nearest_pair(order: &OrderWithLevel, target: &TargetPair, radius: f64) -> Option<PersistencePair> {
    reduce(order)
        .into_iter()
        .filter(|p| p.degree == target.degree && p.death.is_some() && p.persistence() > 0.0)
        .map(|p| {
            let d = (p.birth_time - target.birth).abs().max((p.death_time - target.death).abs());
            (d, p)
        })
        .filter(|(d, _)| *d <= radius)
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.birth.cmp(&b.1.birth)))
        .map(|(_, p)| p)
}

fn boundary_vertices(order: &OrderWithLevel, pair: &PersistencePair, dim: usize) -> Option<Vec<u32>> {
    let c = order.complex();
    let cells = if pair.degree + 1 == dim {
        let tree = compute_tree(build_dual_graph(order).ok()?, order);
        optimal_volume_tree(&tree, pair).ok()?
    } else {
        lp_volume(order, pair, VolumeMode::Optimal, 0.0, DEFAULT_THRESHOLD).ok()?.cells
    };
    Some(support_vertices(c, &crate::chain::z2_boundary(c, &cells)))
}

/// Resamples the points `trials` times, tracks the nearest pair to
/// `target`, and counts how often each point lies on the boundary of that
/// pair's optimal volume. Trials run in parallel; results do not depend on
/// the thread count.
pub fn statistical_frequencies(
    points: &PointCloud,
    target: TargetPair,
    noise: NoiseModel,
    trials: usize,
) -> Result<FrequencyMap, StatError> {
    if trials == 0 {
        return Err(StatError::NoTrials);
    }
    if !target.death.is_finite() {
        return Err(StatError::StarTarget);
    }
    let radius = noise.match_radius();
    let outcomes: Vec<Result<Trial, StatError>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let moved = noise.perturb(points, t);
            let f = alpha_filtration(&moved)?;
            let Some(pair) = nearest_pair(&f.order, &target, radius) else {
                return Ok(Trial::Unmatched);
            };
            Ok(match boundary_vertices(&f.order, &pair, points.dim()) {
                Some(v) => Trial::Vertices(v),
                None => Trial::Failed,
            })
        })
        .collect();
    let mut counts = vec![0usize; points.len()];
    let (mut matched, mut failed) = (0, 0);
    for o in outcomes {
        match o? {
            Trial::Unmatched => {}
            Trial::Failed => {
                matched += 1;
                failed += 1;
            }
            Trial::Vertices(vs) => {
                matched += 1;
                for v in vs {
                    counts[v as usize] += 1;
                }
            }
        }
    }
    let status = if 2 * matched < trials {
        FrequencyStatus::MostlyUnmatched
    } else {
        FrequencyStatus::Ok
    };
    Ok(FrequencyMap {
        trials,
        matched,
        failed,
        counts,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{five_points, lattice_2d_defects};
    use crate::persistence::reduce;

    fn target_of(points: &PointCloud, pick: impl Fn(&PersistencePair) -> bool) -> PersistencePair {
        let f = alpha_filtration(points).unwrap();
        reduce(&f.order)
            .into_iter()
            .filter(|p| p.degree == 1 && p.death.is_some() && p.persistence() > 0.0)
            .find(pick)
            .unwrap()
    }

    #[test]
    fn tiny_noise_marks_the_unperturbed_boundary() {
        let pts = five_points(1.0);
        let p = target_of(&pts, |p| (p.death_time - 0.5f64.sqrt()).abs() < 1e-9);
        let m = statistical_frequencies(&pts, (&p).into(), NoiseModel::new(1e-9, 3).unwrap(), 10)
            .unwrap();
        assert_eq!(m.matched, 10);
        let on: Vec<usize> = m.above(0.999);
        assert_eq!(on, vec![0, 1, 2, 3]);
        assert_eq!(m.frequency(4), 0.0);
    }

    #[test]
    fn five_points_square_is_robust() {
        let pts = five_points(1.0);
        let p = target_of(&pts, |p| (p.death_time - 0.5f64.sqrt()).abs() < 1e-9);
        let m = statistical_frequencies(&pts, (&p).into(), NoiseModel::new(0.1, 11).unwrap(), 64)
            .unwrap();
        let f = m.frequencies();
        for &sq in &f[..4] {
            assert!(sq > f[4], "{f:?}");
        }
    }

    #[test]
    fn reproducible_and_thread_independent() {
        let pts = lattice_2d_defects(2, 8, 0.5, 0.1);
        let p = target_of(&pts, |_| true);
        let noise = NoiseModel::new(0.03, 5).unwrap();
        let a = statistical_frequencies(&pts, (&p).into(), noise, 12).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| statistical_frequencies(&pts, (&p).into(), noise, 12).unwrap());
        assert_eq!(a, b);
        // cutoff sets nest
        let hi = a.above(0.9);
        assert!(hi.iter().all(|i| a.above(0.7).contains(i)));
    }

    #[test]
    fn invalid_inputs() {
        assert!(NoiseModel::new(0.0, 1).is_err());
        let pts = five_points(1.0);
        let t = TargetPair { degree: 1, birth: 0.5, death: f64::INFINITY };
        assert_eq!(
            statistical_frequencies(&pts, t, NoiseModel::new(0.1, 1).unwrap(), 3),
            Err(StatError::StarTarget)
        );
    }
}
