//! Persistent cohomology by reducing coboundary columns in reverse
//! filtration order, with representative cocycles.

use std::collections::{BTreeMap, HashMap};

use crate::complex::{OrderWithLevel, SimplexId};

use super::reduce::{add_into, Column};
use super::PersistencePair;

/// Pairs plus, for every pair, the support of a representative cocycle.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub pairs: Vec<PersistencePair>,
    /// Birth simplex id → cocycle support (simplex ids sorted by rank).
    pub cocycles: BTreeMap<SimplexId, Vec<SimplexId>>,
}

impl CohomologyResult {
    pub fn cocycle(&self, birth: SimplexId) -> Option<&[SimplexId]> {
        self.cocycles.get(&birth).map(Vec::as_slice)
    }
}

/// The cocycle of a finite pair `(σ_b, σ_d)` is `σ_b*` plus duals of
/// simplices after `σ_b`; its coboundary vanishes on every simplex before
/// `σ_d`, so on each `X_j` with `b <= j < d` it evaluates to one on any
/// cycle representing the class born at `σ_b`.
pub fn cohomology_reduce(order: &OrderWithLevel) -> CohomologyResult {
    let c = order.complex();
    let n = order.len();
    let top = c.dim().unwrap_or(0);
    let mut coboundary: Vec<Column> = order
        .order()
        .iter()
        .map(|&id| {
            let mut col: Column = c.cofaces(id).iter().map(|&co| order.rank(co)).collect();
            col.sort_unstable();
            col
        })
        .collect();
    let mut witness: Vec<Column> = (0..n).map(|j| vec![j]).collect();
    let mut pivot_col: HashMap<usize, usize> = HashMap::new();
    let mut cleared = vec![false; n];
    let mut death_of: HashMap<usize, usize> = HashMap::new();

    for dim in 0..=top {
        for j in (0..n).rev() {
            if c.dim_of(order.at(j)) != dim || cleared[j] {
                continue;
            }
            while let Some(&pivot) = coboundary[j].first() {
                match pivot_col.get(&pivot) {
                    Some(&k) => {
                        let src = std::mem::take(&mut coboundary[k]);
                        add_into(&mut coboundary[j], &src);
                        coboundary[k] = src;
                        let w = std::mem::take(&mut witness[k]);
                        add_into(&mut witness[j], &w);
                        witness[k] = w;
                    }
                    None => {
                        pivot_col.insert(pivot, j);
                        death_of.insert(j, pivot);
                        cleared[pivot] = true;
                        break;
                    }
                }
            }
        }
    }

    let mut pairs = Vec::new();
    let mut cocycles = BTreeMap::new();
    for rank in 0..n {
        if cleared[rank] {
            continue;
        }
        let birth = order.at(rank);
        let death = death_of.get(&rank).map(|&d| order.at(d));
        pairs.push(PersistencePair::new(order, c.dim_of(birth), birth, death));
        cocycles.insert(birth, witness[rank].iter().map(|&r| order.at(r)).collect());
    }
    CohomologyResult { pairs, cocycles }
}
