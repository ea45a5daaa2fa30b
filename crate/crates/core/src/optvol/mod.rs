//! Optimal volumes, stable volumes and stable sub-volumes as sparse
//! optimization problems, solved through their ℓ¹ relaxation.

mod oracle;
mod simplex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::z2_boundary;
use crate::complex::{OrderWithLevel, SimplexId};
use crate::persistence::PersistencePair;

pub use oracle::{brute_force_volume, BruteForceResult, MAX_BRUTE_FORCE};
pub use simplex::{solve_standard, LpError, LpSolution, StandardLp};

pub const DEFAULT_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OptVolError {
    #[error("pair never dies; volumes need a finite death")]
    StarPair,
    #[error("epsilon must be finite and non-negative, got {0}")]
    BadEpsilon(f64),
    #[error("sub-volume mode needs the optimal volume")]
    MissingOptimalVolume,
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("rounded support violates {} constraint(s): {violations:?}", violations.len())]
    ApproximationMismatch { violations: Vec<SimplexId> },
    #[error("{got} candidates exceed the brute-force limit of {limit}")]
    TooLarge { got: usize, limit: usize },
    #[error("no feasible chain exists")]
    Infeasible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VolumeMode {
    Optimal,
    Stable,
    Sub,
}

impl VolumeMode {
    pub fn method_name(self) -> &'static str {
        match self {
            VolumeMode::Optimal => "lp-optimal",
            VolumeMode::Stable => "lp-stable",
            VolumeMode::Sub => "lp-sub",
        }
    }
}

/// Candidate `(k+1)`-simplices, constrained `k`-simplices, and the pair.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeProblem {
    pub pair: PersistencePair,
    pub degree: usize,
    pub tau0: SimplexId,
    pub omega0: SimplexId,
    pub mode: VolumeMode,
    pub epsilon: f64,
    pub candidates: Vec<SimplexId>,
    pub constraints: Vec<SimplexId>,
    /// Optimal mode only: `τ₀` must carry a nonzero boundary coefficient.
    pub birth_row: bool,
}

/// Builds the problem for `pair`.
///
/// Optimal mode uses everything strictly between `τ₀` and `ω₀`. Stable and
/// sub modes keep simplices of level at least `birth + eps` that still come
/// after `τ₀` and before `ω₀`; sub mode further restricts candidates to
/// `optimal_volume`.
pub fn make_problem(
    order: &OrderWithLevel,
    pair: &PersistencePair,
    mode: VolumeMode,
    eps: f64,
    optimal_volume: Option<&[SimplexId]>,
) -> Result<VolumeProblem, OptVolError> {
    let omega0 = pair.death.ok_or(OptVolError::StarPair)?;
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(OptVolError::BadEpsilon(eps));
    }
    let c = order.complex();
    let k = pair.degree;
    let tau0 = pair.birth;
    let (lo, hi) = (order.rank(tau0), order.rank(omega0));
    let threshold = order.level(tau0) + eps;
    let inside = |id: SimplexId| -> bool {
        let r = order.rank(id);
        lo < r && r < hi && (mode == VolumeMode::Optimal || order.level(id) >= threshold)
    };
    let window = &order.order()[lo + 1..hi];
    let mut candidates: Vec<SimplexId> = window
        .iter()
        .copied()
        .filter(|&id| c.dim_of(id) == k + 1 && inside(id))
        .collect();
    let constraints: Vec<SimplexId> = window
        .iter()
        .copied()
        .filter(|&id| c.dim_of(id) == k && inside(id))
        .collect();
    if mode == VolumeMode::Sub {
        let ov = optimal_volume.ok_or(OptVolError::MissingOptimalVolume)?;
        candidates.retain(|id| ov.contains(id));
    }
    candidates.sort_unstable();
    Ok(VolumeProblem {
        pair: *pair,
        degree: k,
        tau0,
        omega0,
        mode,
        epsilon: if mode == VolumeMode::Optimal { 0.0 } else { eps },
        candidates,
        constraints,
        birth_row: mode == VolumeMode::Optimal,
    })
}

/// `c_{ω₀,τ} + Σ c_{ω,τ} α_ω = rhs` for one constrained simplex `τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct EqualityRow {
    pub tau: SimplexId,
    /// `(candidate index, c_{ω,τ})`
    pub coefficients: Vec<(usize, i64)>,
    pub c_omega0: i64,
    /// Target value of `τ*(∂z)`; zero except for the pinned birth row.
    pub target: i64,
}

/// The ℓ¹ program: variables `α_ω` and `ᾱ_ω` per candidate, minimize
/// `Σ ᾱ_ω` with `ᾱ_ω ± α_ω >= 0` and one equality row per constraint.
#[derive(Clone, Debug, PartialEq)]
pub struct L1Program {
    pub candidates: Vec<SimplexId>,
    pub rows: Vec<EqualityRow>,
}

impl L1Program {
    pub fn num_variables(&self) -> usize {
        2 * self.candidates.len()
    }

    pub fn num_constraints(&self) -> usize {
        2 * self.candidates.len() + self.rows.len()
    }

    /// The same program with the birth row pinned to `target`.
    fn pinned(&self, birth_row: Option<EqualityRow>, target: i64) -> L1Program {
        let mut p = self.clone();
        if let Some(mut r) = birth_row {
            r.target = target;
            p.rows.push(r);
        }
        p
    }

    /// Equivalent standard form over `α = α⁺ - α⁻`, both non-negative.
    pub fn to_standard(&self) -> StandardLp {
        let n = self.candidates.len();
        let a = self
            .rows
            .iter()
            .map(|r| {
                let mut row = vec![0.0; 2 * n];
                for &(j, cf) in &r.coefficients {
                    row[j] = cf as f64;
                    row[n + j] = -(cf as f64);
                }
                row
            })
            .collect();
        let b = self.rows.iter().map(|r| (r.target - r.c_omega0) as f64).collect();
        StandardLp {
            a,
            b,
            c: vec![1.0; 2 * n],
        }
    }
}

fn equality_row(
    order: &OrderWithLevel,
    tau: SimplexId,
    omega0: SimplexId,
    index: &std::collections::HashMap<SimplexId, usize>,
) -> EqualityRow {
    let c = order.complex();
    let mut coefficients = Vec::new();
    let mut c_omega0 = 0;
    for &co in c.cofaces(tau) {
        let sign = c
            .signed_faces(co)
            .find(|&(f, _)| f == tau)
            .map(|(_, s)| s as i64)
            .expect("coface relation is symmetric");
        if co == omega0 {
            c_omega0 = sign;
        } else if let Some(&j) = index.get(&co) {
            coefficients.push((j, sign));
        }
    }
    coefficients.sort_unstable();
    EqualityRow {
        tau,
        coefficients,
        c_omega0,
        target: 0,
    }
}

/// The ℓ¹ program of `problem`, without the optimal-mode birth row.
pub fn to_lp(order: &OrderWithLevel, problem: &VolumeProblem) -> L1Program {
    let index = problem
        .candidates
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, i))
        .collect();
    L1Program {
        candidates: problem.candidates.clone(),
        rows: problem
            .constraints
            .iter()
            .map(|&tau| equality_row(order, tau, problem.omega0, &index))
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
}

/// Raw LP output mapped back to candidates.
#[derive(Clone, Debug, PartialEq)]
pub struct RawSolution {
    pub alpha: Vec<f64>,
    pub objective: f64,
    /// Largest equality-row violation of the unrounded solution.
    pub residual: f64,
}

/// A rounded, verified volume.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeSolution {
    pub pair: PersistencePair,
    pub mode: VolumeMode,
    pub epsilon: f64,
    /// Support including `ω₀`, sorted.
    pub cells: Vec<SimplexId>,
    pub boundary: Vec<SimplexId>,
    pub objective: f64,
    pub status: SolveStatus,
    pub residual: f64,
}

/// Solves the program. In optimal mode the birth row is pinned to `+1`
/// and then `-1`; only one sign can be feasible because every feasible
/// chain has the same birth coefficient.
pub fn solve_lp(
    order: &OrderWithLevel,
    problem: &VolumeProblem,
) -> Result<RawSolution, OptVolError> {
    let prog = to_lp(order, problem);
    if !problem.birth_row {
        return solve_program(&prog);
    }
    let index = problem
        .candidates
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, i))
        .collect();
    let row = equality_row(order, problem.tau0, problem.omega0, &index);
    let mut last = None;
    for target in [1, -1] {
        match solve_program(&prog.pinned(Some(row.clone()), target)) {
            Ok(s) => return Ok(s),
            Err(OptVolError::Lp(LpError::Infeasible(r))) => last = Some(r),
            Err(e) => return Err(e),
        }
    }
    Err(OptVolError::Lp(LpError::Infeasible(last.unwrap_or(f64::NAN))))
}

fn solve_program(prog: &L1Program) -> Result<RawSolution, OptVolError> {
    let n = prog.candidates.len();
    let sol = solve_standard(&prog.to_standard())?;
    let alpha: Vec<f64> = (0..n).map(|j| sol.x[j] - sol.x[n + j]).collect();
    let residual = prog
        .rows
        .iter()
        .map(|r| {
            let lhs: f64 = r.c_omega0 as f64
                + r.coefficients.iter().map(|&(j, c)| c as f64 * alpha[j]).sum::<f64>();
            (lhs - r.target as f64).abs()
        })
        .fold(0.0, f64::max);
    Ok(RawSolution {
        alpha,
        objective: sol.objective,
        residual,
    })
}

/// Constraint simplices whose Z/2 boundary coefficient is wrong for the
/// chain `cells` (which includes `ω₀`).
pub fn z2_violations(
    order: &OrderWithLevel,
    problem: &VolumeProblem,
    cells: &[SimplexId],
) -> Vec<SimplexId> {
    let bd = z2_boundary(order.complex(), cells);
    let mut bad: Vec<SimplexId> = problem
        .constraints
        .iter()
        .copied()
        .filter(|t| bd.binary_search(t).is_ok())
        .collect();
    if problem.birth_row && bd.binary_search(&problem.tau0).is_err() {
        bad.push(problem.tau0);
    }
    bad
}

/// Keeps candidates with `|α| > threshold`, adds `ω₀`, and re-checks the
/// constraints exactly over Z/2.
pub fn round_support(
    order: &OrderWithLevel,
    problem: &VolumeProblem,
    raw: &RawSolution,
    threshold: f64,
) -> Result<VolumeSolution, OptVolError> {
    let mut cells: Vec<SimplexId> = problem
        .candidates
        .iter()
        .zip(&raw.alpha)
        .filter(|(_, a)| a.abs() > threshold)
        .map(|(&s, _)| s)
        .collect();
    cells.push(problem.omega0);
    cells.sort_unstable();
    let violations = z2_violations(order, problem, &cells);
    if !violations.is_empty() {
        return Err(OptVolError::ApproximationMismatch { violations });
    }
    let boundary = z2_boundary(order.complex(), &cells);
    Ok(VolumeSolution {
        pair: problem.pair,
        mode: problem.mode,
        epsilon: problem.epsilon,
        cells,
        boundary,
        objective: raw.objective,
        status: SolveStatus::Optimal,
        residual: raw.residual,
    })
}

/// Builds, solves and rounds in one call. Sub mode computes the optimal
/// volume first.
pub fn lp_volume(
    order: &OrderWithLevel,
    pair: &PersistencePair,
    mode: VolumeMode,
    eps: f64,
    threshold: f64,
) -> Result<VolumeSolution, OptVolError> {
    let ov = match mode {
        VolumeMode::Sub => Some(lp_volume(order, pair, VolumeMode::Optimal, 0.0, threshold)?.cells),
        _ => None,
    };
    let problem = make_problem(order, pair, mode, eps, ov.as_deref())?;
    let raw = solve_lp(order, &problem)?;
    round_support(order, &problem, &raw, threshold)
}

#[cfg(test)]
mod tests;
