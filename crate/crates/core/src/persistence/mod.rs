//! Persistence pairs, diagrams and the bottleneck distance.

mod bottleneck;
mod cohomology;
mod reduce;

use serde::{Deserialize, Serialize};

use crate::complex::{OrderWithLevel, SimplexId};

pub use bottleneck::{bottleneck, bottleneck_brute_force};
pub use cohomology::{cohomology_reduce, CohomologyResult};
pub use reduce::{reduce, reduce_plain};
pub(crate) use reduce::add_into as xor_sorted;

/// A birth-death simplices pair. `death == None` is the essential pair
/// `(σ_b, ★)` with death time `+∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PersistencePair {
    pub degree: usize,
    pub birth: SimplexId,
    pub death: Option<SimplexId>,
    pub birth_time: f64,
    pub death_time: f64,
}

impl PersistencePair {
    pub fn new(
        order: &OrderWithLevel,
        degree: usize,
        birth: SimplexId,
        death: Option<SimplexId>,
    ) -> Self {
        PersistencePair {
            degree,
            birth,
            death,
            birth_time: order.level(birth),
            death_time: death.map_or(f64::INFINITY, |d| order.level(d)),
        }
    }

    pub fn persistence(&self) -> f64 {
        self.death_time - self.birth_time
    }

    pub fn is_essential(&self) -> bool {
        self.death.is_none()
    }
}

/// One point of a persistence diagram.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramPoint {
    pub birth: f64,
    /// `+∞` for essential classes.
    #[serde(with = "infinite_as_null")]
    pub death: f64,
    pub birth_simplex: SimplexId,
    pub death_simplex: Option<SimplexId>,
}

impl DiagramPoint {
    pub fn is_essential(&self) -> bool {
        self.death_simplex.is_none()
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }
}

mod infinite_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

/// The degree-`k` persistence diagram, zero-persistence pairs excluded.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagram {
    pub degree: usize,
    pub pairs: Vec<DiagramPoint>,
}

impl Diagram {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Finite `(birth, death)` coordinates.
    pub fn finite_points(&self) -> Vec<(f64, f64)> {
        self.pairs
            .iter()
            .filter(|p| !p.is_essential())
            .map(|p| (p.birth, p.death))
            .collect()
    }

    pub fn essential_births(&self) -> Vec<f64> {
        self.pairs
            .iter()
            .filter(|p| p.is_essential())
            .map(|p| p.birth)
            .collect()
    }

    /// Drops points with persistence at most `tol`, e.g. round-off pairs
    /// from cocircular inputs.
    pub fn significant(&self, tol: f64) -> Diagram {
        Diagram {
            degree: self.degree,
            pairs: self.pairs.iter().filter(|p| p.persistence() > tol).copied().collect(),
        }
    }

    /// Diagram with levels mapped through `f` (e.g. squaring radii).
    pub fn map_levels(&self, f: impl Fn(f64) -> f64) -> Diagram {
        Diagram {
            degree: self.degree,
            pairs: self
                .pairs
                .iter()
                .map(|p| DiagramPoint {
                    birth: f(p.birth),
                    death: if p.death.is_finite() { f(p.death) } else { p.death },
                    ..*p
                })
                .collect(),
        }
    }
}

/// Degree-`k` pairs mapped to levels, sorted by (birth, death, birth rank).
pub fn diagram(pairs: &[PersistencePair], order: &OrderWithLevel, k: usize) -> Diagram {
    let mut pts: Vec<(usize, DiagramPoint)> = pairs
        .iter()
        .filter(|p| p.degree == k && p.birth_time != p.death_time)
        .map(|p| {
            (
                order.rank(p.birth),
                DiagramPoint {
                    birth: p.birth_time,
                    death: p.death_time,
                    birth_simplex: p.birth,
                    death_simplex: p.death,
                },
            )
        })
        .collect();
    pts.sort_by(|(ra, a), (rb, b)| {
        a.birth
            .total_cmp(&b.birth)
            .then(a.death.total_cmp(&b.death))
            .then(ra.cmp(rb))
    });
    Diagram {
        degree: k,
        pairs: pts.into_iter().map(|(_, p)| p).collect(),
    }
}

/// Finds the pair whose death simplex is `death`.
pub fn pair_by_death(pairs: &[PersistencePair], death: SimplexId) -> Option<PersistencePair> {
    pairs.iter().find(|p| p.death == Some(death)).copied()
}

#[cfg(test)]
mod tests;
