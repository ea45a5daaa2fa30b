//! Dense two-phase primal simplex with Bland's rule.
//!
//! Solves `min c·x  s.t.  A x = b, x >= 0`.

use thiserror::Error;

const TOL: f64 = 1e-9;
const FEASIBILITY_TOL: f64 = 1e-7;
const MAX_PIVOTS: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("linear program is infeasible (phase one residual {0:.3e})")]
    Infeasible(f64),
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("simplex exceeded {0} pivots")]
    PivotLimit(usize),
}

/// A linear program in equality standard form.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardLp {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub pivots: usize,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    /// reduced-cost row; last entry holds the objective value
    z: Vec<f64>,
    width: usize,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.width]
    }

    fn price(&mut self, cost: &[f64]) {
        let mut z = vec![0.0; self.width + 1];
        for (j, zj) in z.iter_mut().enumerate().take(self.width) {
            *zj = -cost[j];
        }
        for (i, &bi) in self.basis.iter().enumerate() {
            let cb = cost[bi];
            if cb != 0.0 {
                for (zj, t) in z.iter_mut().zip(&self.rows[i]) {
                    *zj += cb * t;
                }
            }
        }
        self.z = z;
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col];
        for t in self.rows[r].iter_mut() {
            *t /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[col];
            if f != 0.0 {
                for (t, pr) in row.iter_mut().zip(&pivot_row) {
                    *t -= f * pr;
                }
                row[col] = 0.0;
            }
        }
        let f = self.z[col];
        if f != 0.0 {
            for (t, pr) in self.z.iter_mut().zip(&pivot_row) {
                *t -= f * pr;
            }
            self.z[col] = 0.0;
        }
        self.basis[r] = col;
        self.pivots += 1;
    }

    /// Runs Bland's rule over columns `< allowed`.
    fn optimize(&mut self, allowed: usize) -> Result<(), LpError> {
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(LpError::PivotLimit(MAX_PIVOTS));
            }
            let Some(col) = (0..allowed).find(|&j| self.z[j] > TOL) else {
                return Ok(());
            };
            let mut best: Option<(f64, usize, usize)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][col];
                if a > TOL {
                    let ratio = self.rhs(i) / a;
                    let better = match best {
                        None => true,
                        Some((br, bb, _)) => {
                            ratio < br - TOL || (ratio <= br + TOL && self.basis[i] < bb)
                        }
                    };
                    if better {
                        best = Some((ratio, self.basis[i], i));
                    }
                }
            }
            let Some((_, _, r)) = best else {
                return Err(LpError::Unbounded);
            };
            self.pivot(r, col);
        }
    }
}

/// Solves the program. Redundant equality rows are detected and dropped
/// after phase one.
pub fn solve_standard(lp: &StandardLp) -> Result<LpSolution, LpError> {
    let m = lp.a.len();
    let n = lp.c.len();
    let width = n + m;
    let rows: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let flip = if lp.b[i] < 0.0 { -1.0 } else { 1.0 };
            let mut row = vec![0.0; width + 1];
            for (j, &v) in lp.a[i].iter().enumerate() {
                row[j] = flip * v;
            }
            row[n + i] = 1.0;
            row[width] = flip * lp.b[i];
            row
        })
        .collect();
    let mut t = Tableau {
        rows,
        basis: (n..width).collect(),
        z: Vec::new(),
        width,
        pivots: 0,
    };

    let mut phase1 = vec![0.0; width];
    for c in phase1.iter_mut().skip(n) {
        *c = 1.0;
    }
    t.price(&phase1);
    t.optimize(width)?;
    let infeasibility = t.z[width];
    if infeasibility > FEASIBILITY_TOL {
        return Err(LpError::Infeasible(infeasibility));
    }

    // drive artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| t.rows[i][j].abs() > TOL) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut phase2 = vec![0.0; width];
    phase2[..n].copy_from_slice(&lp.c);
    t.price(&phase2);
    t.optimize(n)?;

    let mut x = vec![0.0; n];
    for (i, &bi) in t.basis.iter().enumerate() {
        if bi < n {
            x[bi] = t.rhs(i);
        }
    }
    let objective = x.iter().zip(&lp.c).map(|(a, b)| a * b).sum();
    Ok(LpSolution {
        x,
        objective,
        pivots: t.pivots,
    })
}
