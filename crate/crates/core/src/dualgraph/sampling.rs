//! Random level perturbations that respect the order condition around a
//! death cell, for checking that stable volumes survive them.

use rand::{Rng, RngExt};

use crate::complex::{build_order, OrderError, OrderWithLevel, SimplexId, TieBreak};

use super::{build_dual_graph, compute_tree, DualGraphError};

/// A perturbed order `q` with `|q̂ - r̂| < eps/2` everywhere in which every
/// simplex before `omega0` in `order` stays before it.
///
/// Levels get independent noise, are raised to the max over faces to stay
/// monotone, and everything ranked below `omega0` is capped at the new
/// level of `omega0`. Ties are broken in favour of those simplices.
pub fn admissible_perturbation<R: Rng + ?Sized>(
    order: &OrderWithLevel,
    omega0: SimplexId,
    eps: f64,
    rng: &mut R,
) -> Result<OrderWithLevel, OrderError> {
    let c = order.complex();
    let half = 0.5 * eps * (1.0 - 1e-9);
    let mut q = vec![0.0; c.len()];
    // faces before cofaces
    let mut by_dim: Vec<SimplexId> = (0..c.len()).collect();
    by_dim.sort_by_key(|&id| c.dim_of(id));
    for &id in &by_dim {
        let noise = if half > 0.0 { rng.random_range(-half..half) } else { 0.0 };
        let raised = c.faces(id).map(|f| q[f]).fold(order.level(id) + noise, f64::max);
        q[id] = raised;
    }
    let cap = q[omega0];
    let r0 = order.rank(omega0);
    let mut priority = vec![1u32; c.len()];
    for id in 0..c.len() {
        if order.rank(id) < r0 {
            q[id] = q[id].min(cap);
            priority[id] = 0;
        }
    }
    build_order(order.complex_arc().clone(), q, &TieBreak::Priority(priority))
}

/// The optimal volume of the cell `omega0` in the tree of `q`.
pub fn ov_under(q: &OrderWithLevel, omega0: SimplexId) -> Result<Vec<SimplexId>, DualGraphError> {
    let tree = compute_tree(build_dual_graph(q)?, q);
    let node = tree.graph().index_of(omega0).ok_or(DualGraphError::PairNotFound)?;
    let mut cells: Vec<SimplexId> = tree
        .descendants(node)
        .into_iter()
        .map(|i| tree.graph().cells()[i])
        .collect();
    cells.sort_unstable();
    Ok(cells)
}
