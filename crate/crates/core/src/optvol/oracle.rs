//! Exhaustive ℓ⁰ minimization over Z/2 for small problems.

use std::collections::HashMap;

use crate::complex::{OrderWithLevel, SimplexId};

use super::{OptVolError, VolumeProblem};

pub const MAX_BRUTE_FORCE: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct BruteForceResult {
    /// Minimizer including `ω₀`, sorted.
    pub cells: Vec<SimplexId>,
    /// Number of minimizers with the same support size.
    pub optima: usize,
}

type Mask = Vec<u64>;

fn xor_into(a: &mut Mask, b: &Mask) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

/// Smallest Z/2 chain satisfying the problem, by enumerating candidate
/// subsets in increasing size (lexicographic within a size). The first
/// minimizer found is returned.
pub fn brute_force_volume(
    order: &OrderWithLevel,
    problem: &VolumeProblem,
) -> Result<BruteForceResult, OptVolError> {
    let n = problem.candidates.len();
    if n > MAX_BRUTE_FORCE {
        return Err(OptVolError::TooLarge {
            got: n,
            limit: MAX_BRUTE_FORCE,
        });
    }
    let c = order.complex();
    let mut rows: HashMap<SimplexId, usize> = problem
        .constraints
        .iter()
        .enumerate()
        .map(|(i, &t)| (t, i))
        .collect();
    let birth_bit = problem.birth_row.then(|| {
        let b = rows.len();
        rows.insert(problem.tau0, b);
        b
    });
    let words = rows.len().div_ceil(64).max(1);
    let mask_of = |id: SimplexId| -> Mask {
        let mut m = vec![0u64; words];
        for f in c.faces(id) {
            if let Some(&i) = rows.get(&f) {
                m[i / 64] ^= 1 << (i % 64);
            }
        }
        m
    };
    // the chosen candidates must cancel ω₀ on every row, and leave the
    // birth row odd
    let mut target = mask_of(problem.omega0);
    if let Some(b) = birth_bit {
        target[b / 64] ^= 1 << (b % 64);
    }
    let masks: Vec<Mask> = problem.candidates.iter().map(|&s| mask_of(s)).collect();

    for size in 0..=n {
        let mut first: Option<Vec<usize>> = None;
        let mut optima = 0;
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let mut acc = vec![0u64; words];
            for &i in &combo {
                xor_into(&mut acc, &masks[i]);
            }
            if acc == target {
                optima += 1;
                first.get_or_insert_with(|| combo.clone());
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
        if let Some(best) = first {
            let mut cells: Vec<SimplexId> = best.iter().map(|&i| problem.candidates[i]).collect();
            cells.push(problem.omega0);
            cells.sort_unstable();
            return Ok(BruteForceResult { cells, optima });
        }
    }
    Err(OptVolError::Infeasible)
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
