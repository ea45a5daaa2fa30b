use std::sync::Arc;

use proptest::prelude::*;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::alpha::{alpha_filtration, PointCloud};
use crate::complex::{build_order, Simplex, SimplicialComplex, TieBreak};

fn simplex(v: &[u32]) -> Simplex {
    Simplex::new(v.to_vec()).unwrap()
}

fn order_of(gens: &[&[u32]], level: impl Fn(&Simplex) -> f64) -> OrderWithLevel {
    let c = SimplicialComplex::closure(gens.iter().map(|g| simplex(g)));
    let levels = c.simplices().iter().map(&level).collect();
    build_order(Arc::new(c), levels, &TieBreak::DimLex).unwrap()
}

/// Rank of a Z/2 matrix given as rows of bitsets.
fn z2_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let src = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(src) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers of the prefix complex by Gaussian elimination.
fn betti_prefix(order: &OrderWithLevel, len: usize) -> Vec<usize> {
    let c = order.complex();
    let ids: Vec<SimplexId> = order.order()[..len].to_vec();
    let top = ids.iter().map(|&i| c.dim_of(i)).max().unwrap_or(0);
    let of_dim = |k: usize| -> Vec<SimplexId> { ids.iter().copied().filter(|&i| c.dim_of(i) == k).collect() };
    let bd_rank = |k: usize| -> usize {
        if k == 0 {
            return 0;
        }
        let rows = of_dim(k - 1);
        let cols = of_dim(k);
        let m: Vec<Vec<bool>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&col| c.faces(col).any(|f| f == r)).collect())
            .collect();
        z2_rank(m)
    };
    (0..=top)
        .map(|k| of_dim(k).len() - bd_rank(k) - bd_rank(k + 1))
        .collect()
}

fn alive(order: &OrderWithLevel, pairs: &[PersistencePair], len: usize, k: usize) -> usize {
    pairs
        .iter()
        .filter(|p| {
            p.degree == k
                && order.rank(p.birth) < len
                && p.death.is_none_or(|d| order.rank(d) >= len)
        })
        .count()
}

fn random_cloud(seed: u64, n: usize, dim: usize) -> PointCloud {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = (0..n)
        .map(|_| {
            let mut p = [0.0; 3];
            for x in p.iter_mut().take(dim) {
                *x = rng.random_range(0.0..1.0);
            }
            p
        })
        .collect();
    PointCloud::new(dim, pts).unwrap()
}

fn sorted(mut p: Vec<PersistencePair>) -> Vec<(SimplexId, Option<SimplexId>)> {
    p.sort_by_key(|q| q.birth);
    p.into_iter().map(|q| (q.birth, q.death)).collect()
}

#[test]
fn hollow_triangle_has_essential_loop() {
    let o = order_of(&[&[0, 1], &[1, 2], &[0, 2]], |s| s.dim() as f64);
    let pairs = reduce(&o);
    let d1 = diagram(&pairs, &o, 1);
    assert_eq!(d1.len(), 1);
    assert!(d1.pairs[0].is_essential());
    let d0 = diagram(&pairs, &o, 0);
    assert_eq!(d0.len(), 3);
    assert_eq!(d0.essential_births(), vec![0.0]);
}

#[test]
fn filled_triangle_kills_loop() {
    let o = order_of(&[&[0, 1, 2]], |s| s.dim() as f64);
    let pairs = reduce(&o);
    let d1 = diagram(&pairs, &o, 1);
    assert_eq!(d1.finite_points(), vec![(1.0, 2.0)]);
    let c = o.complex();
    assert_eq!(d1.pairs[0].death_simplex, c.find(&[0, 1, 2]));
    assert_eq!(Some(d1.pairs[0].birth_simplex), c.find(&[1, 2]));
}

#[test]
fn zero_persistence_pairs_dropped() {
    let o = order_of(&[&[0, 1, 2]], |_| 0.0);
    let pairs = reduce(&o);
    assert!(diagram(&pairs, &o, 1).is_empty());
    assert_eq!(pairs.iter().filter(|p| p.degree == 1).count(), 1);
}

#[test]
fn betti_numbers_match_gaussian_elimination() {
    for seed in 0..6 {
        let dim = 2 + (seed as usize % 2);
        let f = alpha_filtration(&random_cloud(seed, 14, dim)).unwrap();
        let o = &f.order;
        let pairs = reduce(o);
        for len in (1..=o.len()).step_by(3) {
            let b = betti_prefix(o, len);
            for (k, &bk) in b.iter().enumerate() {
                assert_eq!(alive(o, &pairs, len, k), bk, "seed {seed} len {len} k {k}");
            }
        }
    }
}

#[test]
fn reductions_agree() {
    for seed in 10..16 {
        let dim = 2 + (seed as usize % 2);
        let f = alpha_filtration(&random_cloud(seed, 20, dim)).unwrap();
        let a = sorted(reduce(&f.order));
        let b = sorted(reduce_plain(&f.order));
        let c = sorted(cohomology_reduce(&f.order).pairs);
        assert_eq!(a, b);
        assert_eq!(a, c);
    }
}

#[test]
fn cocycles_are_cocycles_while_alive() {
    let f = alpha_filtration(&random_cloud(3, 25, 2)).unwrap();
    let o = &f.order;
    let c = o.complex();
    let res = cohomology_reduce(o);
    for p in res.pairs.iter().filter(|p| p.degree == 1) {
        let cocycle = res.cocycle(p.birth).unwrap();
        assert!(cocycle.contains(&p.birth));
        let end = p.death.map_or(o.len(), |d| o.rank(d));
        // coboundary vanishes on every triangle before the death
        for r in 0..end {
            let t = o.at(r);
            if c.dim_of(t) != 2 {
                continue;
            }
            let hits = c.faces(t).filter(|f| cocycle.contains(f)).count();
            assert_eq!(hits % 2, 0);
        }
        if let Some(d) = p.death {
            let hits = c.faces(d).filter(|f| cocycle.contains(f)).count();
            assert_eq!(hits % 2, 1);
        }
    }
}

fn diag(points: &[(f64, f64)]) -> Diagram {
    Diagram {
        degree: 1,
        pairs: points
            .iter()
            .enumerate()
            .map(|(i, &(b, d))| DiagramPoint {
                birth: b,
                death: d,
                birth_simplex: i,
                death_simplex: d.is_finite().then_some(i + 100),
            })
            .collect(),
    }
}

#[test]
fn bottleneck_simple_cases() {
    let a = diag(&[(0.0, 1.0)]);
    let empty = diag(&[]);
    assert_eq!(bottleneck(&a, &empty), 0.5);
    assert_eq!(bottleneck(&a, &a), 0.0);
    let b = diag(&[(0.1, 1.2)]);
    assert!((bottleneck(&a, &b) - 0.2).abs() < 1e-15);
    let e1 = diag(&[(0.0, f64::INFINITY)]);
    assert_eq!(bottleneck(&e1, &empty), f64::INFINITY);
    let e2 = diag(&[(0.3, f64::INFINITY)]);
    assert_eq!(bottleneck(&e1, &e2), 0.3);
}

#[test]
fn alpha_diagram_stable_under_perturbation() {
    let base = random_cloud(7, 30, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let eps = 1e-3;
    let moved = PointCloud::new(
        2,
        base.points()
            .iter()
            .map(|p| {
                [
                    p[0] + rng.random_range(-eps..eps),
                    p[1] + rng.random_range(-eps..eps),
                    0.0,
                ]
            })
            .collect(),
    )
    .unwrap();
    let fa = alpha_filtration(&base).unwrap();
    let fb = alpha_filtration(&moved).unwrap();
    let da = diagram(&reduce(&fa.order), &fa.order, 1);
    let db = diagram(&reduce(&fb.order), &fb.order, 1);
    // alpha radii move by at most the largest point displacement
    assert!(bottleneck(&da, &db) <= eps * 2f64.sqrt() + 1e-12);
}

proptest! {
    #[test]
    fn bottleneck_matches_brute_force(
        a in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 0..5),
        b in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 0..5),
    ) {
        let fix = |v: Vec<(f64, f64)>| -> Vec<(f64, f64)> {
            v.into_iter().map(|(x, y)| (x.min(y), x.max(y))).collect()
        };
        let (da, db) = (diag(&fix(a)), diag(&fix(b)));
        let fast = bottleneck(&da, &db);
        let slow = bottleneck_brute_force(&da, &db);
        prop_assert_eq!(fast, slow);
        prop_assert_eq!(fast, bottleneck(&db, &da));
    }
}
