//! Boundary-matrix reduction over Z/2.

use std::collections::HashMap;

use crate::complex::{OrderWithLevel, SimplexId};

use super::PersistencePair;

/// Sorted column of row ranks.
pub(crate) type Column = Vec<usize>;

/// Symmetric difference of two sorted columns.
pub(crate) fn add_into(target: &mut Column, source: &[usize]) {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < source.len() {
        match target[i].cmp(&source[j]) {
            std::cmp::Ordering::Less => {
                out.push(target[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(source[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&target[i..]);
    out.extend_from_slice(&source[j..]);
    *target = out;
}

/// Column `j` is the boundary of the simplex at rank `j`, in ranks.
pub(crate) fn boundary_columns(order: &OrderWithLevel) -> Vec<Column> {
    let c = order.complex();
    order
        .order()
        .iter()
        .map(|&id| {
            let mut col: Column = c.faces(id).map(|f| order.rank(f)).collect();
            col.sort_unstable();
            col
        })
        .collect()
}

/// Low-to-pair mapping from a reduced matrix: `pairs[birth_rank] = death_rank`.
fn collect_pairs(order: &OrderWithLevel, death_of: &HashMap<usize, usize>) -> Vec<PersistencePair> {
    let c = order.complex();
    let negative: std::collections::HashSet<usize> = death_of.values().copied().collect();
    let mut out = Vec::new();
    for rank in 0..order.len() {
        if negative.contains(&rank) {
            continue;
        }
        let birth: SimplexId = order.at(rank);
        let death = death_of.get(&rank).map(|&d| order.at(d));
        out.push(PersistencePair::new(order, c.dim_of(birth), birth, death));
    }
    out
}

/// Standard left-to-right reduction with clearing: dimensions are reduced
/// from the top down, and a column whose simplex already appeared as a
/// pivot is known to reduce to zero and is skipped.
pub fn reduce(order: &OrderWithLevel) -> Vec<PersistencePair> {
    let c = order.complex();
    let mut columns = boundary_columns(order);
    let top = c.dim().unwrap_or(0);
    let mut pivot_col: HashMap<usize, usize> = HashMap::new();
    let mut cleared = vec![false; columns.len()];
    for dim in (1..=top).rev() {
        for j in 0..columns.len() {
            if c.dim_of(order.at(j)) != dim || cleared[j] {
                continue;
            }
            reduce_column(&mut columns, j, &mut pivot_col);
            if let Some(&low) = columns[j].last() {
                cleared[low] = true;
                columns[low].clear();
            }
        }
    }
    let death_of: HashMap<usize, usize> = pivot_col.into_iter().collect();
    collect_pairs(order, &death_of)
}

fn reduce_column(columns: &mut [Column], j: usize, pivot_col: &mut HashMap<usize, usize>) {
    while let Some(&low) = columns[j].last() {
        match pivot_col.get(&low) {
            Some(&k) => {
                let src = std::mem::take(&mut columns[k]);
                add_into(&mut columns[j], &src);
                columns[k] = src;
            }
            None => {
                pivot_col.insert(low, j);
                break;
            }
        }
    }
}

/// Plain reduction of every column in filtration order, no clearing.
pub fn reduce_plain(order: &OrderWithLevel) -> Vec<PersistencePair> {
    let mut columns = boundary_columns(order);
    let mut pivot_col = HashMap::new();
    for j in 0..columns.len() {
        reduce_column(&mut columns, j, &mut pivot_col);
    }
    collect_pairs(order, &pivot_col)
}
