//! Deterministic point clouds and small hand-built filtrations.

use std::sync::Arc;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::alpha::PointCloud;
use crate::complex::{build_order, OrderWithLevel, Simplex, SimplexId, SimplicialComplex, TieBreak};

pub const FIXTURE_NAMES: [&str; 5] = [
    "fig1-five-points",
    "lattice-3x3x3",
    "lattice-2d-defects",
    "hexagon",
    "annulus",
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FixtureError {
    #[error("unknown fixture `{0}` (known: {known})", known = FIXTURE_NAMES.join(", "))]
    Unknown(String),
}

/// Generates a named fixture. Fixtures without randomness ignore `seed`.
pub fn generate(name: &str, seed: u64) -> Result<PointCloud, FixtureError> {
    match name {
        "fig1-five-points" => Ok(five_points(1.0)),
        "lattice-3x3x3" => Ok(lattice_3x3x3(seed, 0.05)),
        "lattice-2d-defects" => Ok(lattice_2d_defects(seed, 30, 0.5, 0.1)),
        "hexagon" => Ok(hexagon()),
        "annulus" => Ok(annulus(seed, 60, 0.5, 1.0)),
        other => Err(FixtureError::Unknown(other.to_string())),
    }
}

/// A unit square of side `a` with an equilateral triangle glued to its
/// left side. The triangle's hole and the square's hole are born together
/// at `a/2`.
pub fn five_points(a: f64) -> PointCloud {
    let h = a * 3f64.sqrt() / 2.0;
    PointCloud::planar(&[
        [0.0, 0.0],
        [a, 0.0],
        [a, a],
        [0.0, a],
        [-h, a / 2.0],
    ])
}

fn noise(rng: &mut ChaCha8Rng, half_width: f64) -> f64 {
    if half_width > 0.0 {
        rng.random_range(-half_width..half_width)
    } else {
        0.0
    }
}

/// The 27 points `{0,1,2}^3` with uniform noise of the given half width.
pub fn lattice_3x3x3(seed: u64, half_width: f64) -> PointCloud {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(27);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let p = [i as f64, j as f64, k as f64];
                pts.push(p.map(|x| x + noise(&mut rng, half_width)));
            }
        }
    }
    PointCloud::spatial(&pts)
}

/// A `side x side` unit lattice; interior points are dropped with
/// probability `removal`, the perimeter is kept, and every kept point gets
/// uniform noise of the given half width.
pub fn lattice_2d_defects(seed: u64, side: usize, removal: f64, half_width: f64) -> PointCloud {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::new();
    for i in 0..side {
        for j in 0..side {
            let perimeter = i == 0 || j == 0 || i + 1 == side || j + 1 == side;
            if !perimeter && rng.random_bool(removal) {
                continue;
            }
            let x = i as f64 + noise(&mut rng, half_width);
            let y = j as f64 + noise(&mut rng, half_width);
            pts.push([x, y]);
        }
    }
    PointCloud::planar(&pts)
}

/// Regular hexagon with unit side: one loop born at 0.5, dying at 1.
pub fn hexagon() -> PointCloud {
    let pts: Vec<[f64; 2]> = (0..6)
        .map(|i| {
            let t = std::f64::consts::PI / 3.0 * i as f64;
            [t.cos(), t.sin()]
        })
        .collect();
    PointCloud::planar(&pts)
}

/// `n` points uniform by area in the annulus `inner <= |x| <= outer`.
pub fn annulus(seed: u64, n: usize, inner: f64, outer: f64) -> PointCloud {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<[f64; 2]> = (0..n)
        .map(|_| {
            let u: f64 = rng.random_range(0.0..1.0);
            let r = (inner * inner + u * (outer * outer - inner * inner)).sqrt();
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            [r * t.cos(), r * t.sin()]
        })
        .collect();
    PointCloud::planar(&pts)
}

/// An eight-vertex loop that is gradually thickened until it dies.
///
/// Levels are integer stages. Stage 1 is the path `0-1-...-7`, stage 2
/// closes it with `σ1 = (0,7)`, and later stages add shortcuts that let
/// shorter loops avoid the closing edges `σ1, σ2 = (0,6), σ3 = (0,5)`.
/// The class dies at stage 7.
#[derive(Clone, Debug)]
pub struct LoopThickening {
    pub order: OrderWithLevel,
    pub sigma: [SimplexId; 3],
}

impl LoopThickening {
    /// Rank of the last simplex entering at `stage`.
    pub fn last_rank_of_stage(&self, stage: u32) -> usize {
        self.order
            .last_rank_at_most(stage as f64)
            .expect("stage is non-empty")
    }
}

pub fn loop_thickening() -> LoopThickening {
    let stages: Vec<(u32, Vec<Vec<u32>>)> = vec![
        (1, (0..7).map(|i| vec![i, i + 1]).collect()),
        (2, vec![vec![0, 7]]),
        (
            3,
            vec![
                vec![1, 3],
                vec![3, 5],
                vec![1, 5],
                vec![1, 2, 3],
                vec![3, 4, 5],
                vec![1, 3, 5],
            ],
        ),
        (4, vec![vec![0, 6], vec![0, 6, 7]]),
        (5, vec![vec![0, 5], vec![0, 5, 6]]),
        (7, vec![vec![0, 1, 5]]),
    ];
    let stage_of = |s: &Simplex| -> f64 {
        if s.dim() == 0 {
            return 1.0;
        }
        let st = stages
            .iter()
            .find(|(_, list)| list.iter().any(|v| v.as_slice() == s.vertices()))
            .map(|(st, _)| *st)
            .expect("every simplex is listed");
        st as f64
    };
    let gens = stages
        .iter()
        .flat_map(|(_, l)| l.iter().map(|v| Simplex::new(v.clone()).expect("valid simplex")));
    let c = SimplicialComplex::closure(gens);
    let levels = c.simplices().iter().map(stage_of).collect();
    let find = |v: &[u32]| c.find(v).expect("edge exists");
    let sigma = [find(&[0, 7]), find(&[0, 6]), find(&[0, 5])];
    let order = build_order(Arc::new(c), levels, &TieBreak::DimLex).expect("stages are monotone");
    LoopThickening { order, sigma }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::alpha_filtration;
    use crate::persistence::{cohomology_reduce, diagram, reduce};

    #[test]
    fn five_points_diagram() {
        let f = alpha_filtration(&five_points(1.0)).unwrap();
        let d = diagram(&reduce(&f.order), &f.order, 1);
        let pts = d.finite_points();
        assert_eq!(pts.len(), 2);
        assert!((pts[0].0 - 0.5).abs() < 1e-9 && (pts[0].1 - 1.0 / 3f64.sqrt()).abs() < 1e-9);
        assert!((pts[1].0 - 0.5).abs() < 1e-9 && (pts[1].1 - 0.5f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn lattice_bounds_and_determinism() {
        let a = lattice_3x3x3(3, 0.05);
        assert_eq!(a.len(), 27);
        for p in a.points() {
            assert!(p.iter().all(|&x| (-0.05..=2.05).contains(&x)));
        }
        assert_eq!(a, lattice_3x3x3(3, 0.05));
        assert_ne!(a, lattice_3x3x3(4, 0.05));
        let b = lattice_2d_defects(1, 30, 0.5, 0.1);
        assert!(b.len() >= 4 * 29 && b.len() < 900);
        assert_eq!(b, lattice_2d_defects(1, 30, 0.5, 0.1));
    }

    #[test]
    fn hexagon_pair() {
        let f = alpha_filtration(&hexagon()).unwrap();
        // cocircular points leave round-off pairs behind
        let d = diagram(&reduce(&f.order), &f.order, 1).significant(1e-9);
        let pts = d.finite_points();
        assert_eq!(pts.len(), 1);
        assert!((pts[0].0 - 0.5).abs() < 1e-9 && (pts[0].1 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn loop_thickening_cocycle() {
        let fx = loop_thickening();
        let o = &fx.order;
        let res = cohomology_reduce(o);
        let p = res
            .pairs
            .iter()
            .find(|p| p.degree == 1 && p.persistence() > 0.0)
            .unwrap();
        assert_eq!(p.birth, fx.sigma[0]);
        assert_eq!(p.death_time, 7.0);
        let mut want = fx.sigma.to_vec();
        want.sort_by_key(|&s| o.rank(s));
        assert_eq!(res.cocycle(p.birth).unwrap(), want.as_slice());
    }

    #[test]
    fn unknown_name() {
        assert!(generate("nope", 0).is_err());
        for name in FIXTURE_NAMES {
            assert!(generate(name, 1).unwrap().len() >= 5);
        }
    }
}
