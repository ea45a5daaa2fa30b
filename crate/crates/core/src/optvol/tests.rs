use std::collections::HashSet;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::alpha::{alpha_filtration, AlphaFiltration, PointCloud};
use crate::dualgraph::{build_dual_graph, compute_tree, optimal_volume_tree, stable_volume_tree};
use crate::persistence::reduce;

fn cloud(seed: u64, n: usize, dim: usize) -> AlphaFiltration {
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
    alpha_filtration(&PointCloud::new(dim, pts).unwrap()).unwrap()
}

fn finite_pairs(o: &OrderWithLevel, k: usize) -> Vec<PersistencePair> {
    reduce(o)
        .into_iter()
        .filter(|p| p.degree == k && p.death.is_some() && p.persistence() > 0.0)
        .collect()
}

#[test]
fn counting_one_candidate_one_constraint() {
    let prog = L1Program {
        candidates: vec![7],
        rows: vec![EqualityRow {
            tau: 3,
            coefficients: vec![(0, 1)],
            c_omega0: -1,
            target: 0,
        }],
    };
    assert_eq!(prog.num_variables(), 2);
    assert_eq!(prog.num_constraints(), 3);
    let s = prog.to_standard();
    assert_eq!(s.b, vec![1.0]);
    let sol = solve_standard(&s).unwrap();
    assert!((sol.objective - 1.0).abs() < 1e-12);
}

#[test]
fn rows_match_coface_incidence() {
    let f = cloud(4, 20, 2);
    let o = &f.order;
    let c = o.complex();
    for p in finite_pairs(o, 1) {
        let prob = make_problem(o, &p, VolumeMode::Optimal, 0.0, None).unwrap();
        let lp = to_lp(o, &prob);
        assert_eq!(lp.rows.len(), prob.constraints.len());
        let allowed: HashSet<SimplexId> = prob.candidates.iter().copied().collect();
        for row in &lp.rows {
            let got: HashSet<SimplexId> =
                row.coefficients.iter().map(|&(j, _)| prob.candidates[j]).collect();
            let want: HashSet<SimplexId> =
                c.cofaces(row.tau).iter().copied().filter(|co| allowed.contains(co)).collect();
            assert_eq!(got, want);
            assert!(row.coefficients.iter().all(|&(_, s)| s == 1 || s == -1));
            let touches = c.cofaces(row.tau).contains(&prob.omega0);
            assert_eq!(row.c_omega0 != 0, touches);
        }
    }
}

#[test]
fn stable_sets_at_zero_contain_optimal_sets() {
    let f = cloud(8, 20, 2);
    let o = &f.order;
    for p in finite_pairs(o, 1) {
        let opt = make_problem(o, &p, VolumeMode::Optimal, 0.0, None).unwrap();
        let st = make_problem(o, &p, VolumeMode::Stable, 0.0, None).unwrap();
        assert!(opt.constraints.iter().all(|t| st.constraints.contains(t)));
        assert!(opt.candidates.iter().all(|t| st.candidates.contains(t)));
        let far = make_problem(o, &p, VolumeMode::Stable, p.persistence() + 1.0, None).unwrap();
        assert!(far.candidates.is_empty() && far.constraints.is_empty());
        let v = lp_volume(o, &p, VolumeMode::Stable, p.persistence() + 1.0, DEFAULT_THRESHOLD).unwrap();
        assert_eq!(v.cells, vec![p.death.unwrap()]);
    }
}

#[test]
fn star_pair_rejected() {
    let f = cloud(1, 8, 2);
    let o = &f.order;
    let star = reduce(o).into_iter().find(|p| p.death.is_none()).unwrap();
    assert_eq!(
        make_problem(o, &star, VolumeMode::Optimal, 0.0, None),
        Err(OptVolError::StarPair)
    );
}

#[test]
fn lp_matches_trees_in_the_plane() {
    for seed in 0..15 {
        let f = cloud(200 + seed, 18, 2);
        let o = &f.order;
        let tree = compute_tree(build_dual_graph(o).unwrap(), o);
        for p in finite_pairs(o, 1) {
            let ov = optimal_volume_tree(&tree, &p).unwrap();
            let lp = lp_volume(o, &p, VolumeMode::Optimal, 0.0, DEFAULT_THRESHOLD).unwrap();
            assert_eq!(lp.cells, ov, "seed {seed}");
            for eps in [0.0, 0.03, 0.1] {
                let sv = stable_volume_tree(&tree, o, &p, eps).unwrap();
                let st = lp_volume(o, &p, VolumeMode::Stable, eps, DEFAULT_THRESHOLD).unwrap();
                assert_eq!(st.cells, sv.cells, "seed {seed} eps {eps}");
                let sub = lp_volume(o, &p, VolumeMode::Sub, eps, DEFAULT_THRESHOLD).unwrap();
                assert_eq!(sub.cells, sv.cells);
            }
        }
    }
}

#[test]
fn brute_force_agrees_with_lp_in_the_plane() {
    let mut checked = 0;
    for seed in 0..20 {
        let f = cloud(300 + seed, 12, 2);
        let o = &f.order;
        for p in finite_pairs(o, 1) {
            for mode in [VolumeMode::Optimal, VolumeMode::Stable] {
                let prob = make_problem(o, &p, mode, 0.02, None).unwrap();
                if prob.candidates.len() > 16 {
                    continue;
                }
                let bf = brute_force_volume(o, &prob).unwrap();
                let raw = solve_lp(o, &prob).unwrap();
                let lp = round_support(o, &prob, &raw, DEFAULT_THRESHOLD).unwrap();
                assert_eq!(bf.cells, lp.cells);
                assert_eq!(bf.optima, 1);
                assert!(raw.objective <= bf.cells.len() as f64 + 1e-9);
                checked += 1;
            }
        }
    }
    assert!(checked > 20);
}

#[test]
fn optimal_volume_boundary_laws() {
    for seed in 0..6 {
        let f = cloud(400 + seed, 16, 3);
        let o = &f.order;
        for p in finite_pairs(o, 1) {
            let v = match lp_volume(o, &p, VolumeMode::Optimal, 0.0, DEFAULT_THRESHOLD) {
                Ok(v) => v,
                Err(OptVolError::ApproximationMismatch { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            let t0 = o.rank(p.birth);
            assert!(v.boundary.iter().all(|&t| o.rank(t) <= t0));
            assert!(v.boundary.contains(&p.birth));
            assert!(v.cells.contains(&p.death.unwrap()));
            let sub = lp_volume(o, &p, VolumeMode::Sub, 0.05, DEFAULT_THRESHOLD);
            if let Ok(sub) = sub {
                assert!(sub.cells.iter().all(|c| v.cells.contains(c)));
            }
        }
    }
}

#[test]
fn rounding_threshold() {
    let f = cloud(4, 12, 2);
    let o = &f.order;
    let p = finite_pairs(o, 1)[0];
    let prob = make_problem(o, &p, VolumeMode::Optimal, 0.0, None).unwrap();
    let mut raw = solve_lp(o, &prob).unwrap();
    let exact = round_support(o, &prob, &raw, DEFAULT_THRESHOLD).unwrap();
    for a in raw.alpha.iter_mut() {
        if a.abs() > 0.5 {
            *a = a.signum() * (1.0 - 1e-12);
        }
    }
    assert_eq!(round_support(o, &prob, &raw, DEFAULT_THRESHOLD).unwrap().cells, exact.cells);
    // dropping everything but ω₀ breaks the constraints
    if exact.cells.len() > 1 {
        raw.alpha.iter_mut().for_each(|a| *a = 0.0);
        assert!(matches!(
            round_support(o, &prob, &raw, DEFAULT_THRESHOLD),
            Err(OptVolError::ApproximationMismatch { .. })
        ));
    }
}

#[test]
fn brute_force_limit() {
    let f = cloud(5, 40, 2);
    let o = &f.order;
    let big = finite_pairs(o, 1)
        .into_iter()
        .map(|p| make_problem(o, &p, VolumeMode::Stable, 0.0, None).unwrap())
        .find(|prob| prob.candidates.len() > MAX_BRUTE_FORCE);
    if let Some(prob) = big {
        assert!(matches!(brute_force_volume(o, &prob), Err(OptVolError::TooLarge { .. })));
    }
}
