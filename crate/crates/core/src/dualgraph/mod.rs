//! Dual graphs of top-dimensional cells, persistence trees, and tree-based
//! optimal and stable volumes for degree `n-1` in an `n`-dimensional complex.

mod sampling;

use std::collections::HashMap;

use thiserror::Error;

use crate::chain::z2_boundary;
use crate::complex::{OrderWithLevel, SimplexId};
use crate::persistence::PersistencePair;

pub use sampling::{admissible_perturbation, ov_under};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DualGraphError {
    #[error("complex is not a pure embedded {n}-complex: {}", offenders.join(", "))]
    Condition { n: usize, offenders: Vec<String> },
    #[error("the complex is empty")]
    Empty,
    #[error("pair has degree {got}, trees only handle degree {expected}")]
    Degree { expected: usize, got: usize },
    #[error("pair never dies; volumes need a finite death")]
    StarPair,
    #[error("no tree edge is labelled by the requested pair")]
    PairNotFound,
    #[error("epsilon must be finite and non-negative, got {0}")]
    BadEpsilon(f64),
}

/// A node of the dual graph: a top cell, or the cell at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Cell(SimplexId),
    Infinity,
}

/// Vertices are the `n`-simplices plus `ω∞`; each `(n-1)`-simplex is an
/// edge between its two cofaces, faces on the hull joining `ω∞`.
#[derive(Clone, Debug)]
pub struct DualGraph {
    n: usize,
    cells: Vec<SimplexId>,
    index: HashMap<SimplexId, usize>,
    /// `(τ, a, b)` with node indices; `cells.len()` is `ω∞`.
    edges: Vec<(SimplexId, usize, usize)>,
}

impl DualGraph {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn num_nodes(&self) -> usize {
        self.cells.len() + 1
    }

    pub fn infinity(&self) -> usize {
        self.cells.len()
    }

    pub fn node(&self, i: usize) -> Node {
        if i == self.cells.len() {
            Node::Infinity
        } else {
            Node::Cell(self.cells[i])
        }
    }

    pub fn index_of(&self, cell: SimplexId) -> Option<usize> {
        self.index.get(&cell).copied()
    }

    pub fn edges(&self) -> &[(SimplexId, usize, usize)] {
        &self.edges
    }

    pub fn cells(&self) -> &[SimplexId] {
        &self.cells
    }
}

/// Builds the dual graph of the top dimension of `order`'s complex.
///
/// Every simplex must lie in some top cell, and every codimension-one
/// face must have one or two top cofaces.
pub fn build_dual_graph(order: &OrderWithLevel) -> Result<DualGraph, DualGraphError> {
    let c = order.complex();
    let n = c.dim().ok_or(DualGraphError::Empty)?;
    if n == 0 {
        return Err(DualGraphError::Condition {
            n,
            offenders: vec!["complex has no edges".into()],
        });
    }
    let mut covered = vec![false; c.len()];
    let mut stack: Vec<SimplexId> = c.ids_of_dim(n).collect();
    while let Some(id) = stack.pop() {
        if !covered[id] {
            covered[id] = true;
            stack.extend(c.faces(id));
        }
    }
    let mut offenders: Vec<String> = (0..c.len())
        .filter(|&id| !covered[id])
        .map(|id| format!("{} has no {n}-coface", c.simplex(id)))
        .collect();

    let cells: Vec<SimplexId> = c.ids_of_dim(n).collect();
    let index: HashMap<SimplexId, usize> = cells.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let inf = cells.len();
    let mut edges = Vec::new();
    for tau in c.ids_of_dim(n - 1) {
        let co = c.cofaces(tau);
        match co.len() {
            1 => edges.push((tau, index[&co[0]], inf)),
            2 => edges.push((tau, index[&co[0]], index[&co[1]])),
            0 => {}
            k => offenders.push(format!("{} has {k} {n}-cofaces", c.simplex(tau))),
        }
    }
    if !offenders.is_empty() {
        offenders.truncate(crate::complex::MAX_REPORTED_VIOLATIONS);
        return Err(DualGraphError::Condition { n, offenders });
    }
    Ok(DualGraph {
        n,
        cells,
        index,
        edges,
    })
}

/// Merge tree of the dual graph: each non-root node stores its parent and
/// the `(n-1)`-simplex that merged it. The root is `ω∞`.
#[derive(Clone, Debug)]
pub struct PersistenceTree {
    graph: DualGraph,
    parent: Vec<Option<(usize, SimplexId)>>,
    children: Vec<Vec<(usize, SimplexId)>>,
    subtree: Vec<usize>,
    by_label: HashMap<SimplexId, usize>,
}

struct UnionFind {
    up: Vec<usize>,
    /// highest-ranked node of the set, valid at roots
    top: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            up: (0..n).collect(),
            top: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.up[root] != root {
            root = self.up[root];
        }
        while self.up[x] != root {
            let next = self.up[x];
            self.up[x] = root;
            x = next;
        }
        root
    }
}

/// Processes simplices in descending order; an `(n-1)`-simplex joining two
/// components hangs the lower-ranked component top below the higher one.
pub fn compute_tree(graph: DualGraph, order: &OrderWithLevel) -> PersistenceTree {
    let m = graph.num_nodes();
    let inf = graph.infinity();
    // ω∞ is the maximum of the order
    let node_rank = |i: usize| -> usize {
        if i == inf {
            usize::MAX
        } else {
            order.rank(graph.cells[i])
        }
    };
    let edge_of: HashMap<SimplexId, (usize, usize)> =
        graph.edges.iter().map(|&(t, a, b)| (t, (a, b))).collect();
    let mut uf = UnionFind::new(m);
    let mut parent = vec![None; m];
    let mut children = vec![Vec::new(); m];
    let mut by_label = HashMap::new();
    for &tau in order.order().iter().rev() {
        let Some(&(a, b)) = edge_of.get(&tau) else {
            continue;
        };
        let (ra, rb) = (uf.find(a), uf.find(b));
        if ra == rb {
            continue;
        }
        let (ta, tb) = (uf.top[ra], uf.top[rb]);
        let (child, par) = if node_rank(ta) < node_rank(tb) { (ta, tb) } else { (tb, ta) };
        parent[child] = Some((par, tau));
        children[par].push((child, tau));
        by_label.insert(tau, child);
        uf.up[ra] = rb;
        uf.top[rb] = par;
    }
    let mut subtree = vec![1usize; m];
    // children always precede parents in rank, so ascending rank is a
    // valid bottom-up order
    let mut nodes: Vec<usize> = (0..m).collect();
    nodes.sort_by_key(|&i| node_rank(i));
    for &i in &nodes {
        if let Some((p, _)) = parent[i] {
            subtree[p] += subtree[i];
        }
    }
    PersistenceTree {
        graph,
        parent,
        children,
        subtree,
        by_label,
    }
}

impl PersistenceTree {
    pub fn graph(&self) -> &DualGraph {
        &self.graph
    }

    pub fn parent(&self, node: usize) -> Option<(usize, SimplexId)> {
        self.parent[node]
    }

    pub fn children(&self, node: usize) -> &[(usize, SimplexId)] {
        &self.children[node]
    }

    pub fn subtree_size(&self, node: usize) -> usize {
        self.subtree[node]
    }

    /// The degree `n-1` pairs `(τ, ω)` read off the tree edges.
    pub fn pairs(&self, order: &OrderWithLevel) -> Vec<PersistencePair> {
        let mut out: Vec<PersistencePair> = (0..self.graph.cells.len())
            .filter_map(|i| {
                let (_, tau) = self.parent[i]?;
                Some(PersistencePair::new(
                    order,
                    self.graph.n - 1,
                    tau,
                    Some(self.graph.cells[i]),
                ))
            })
            .collect();
        out.sort_by_key(|p| order.rank(p.birth));
        out
    }

    /// Node indices of `node` and all its descendants.
    pub fn descendants(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.subtree[node]);
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend(self.children[x].iter().map(|&(ch, _)| ch));
        }
        out
    }

    fn cells_of(&self, nodes: Vec<usize>) -> Vec<SimplexId> {
        let mut cells: Vec<SimplexId> = nodes.into_iter().map(|i| self.graph.cells[i]).collect();
        cells.sort_unstable();
        cells
    }

    /// The node of the death cell, after checking the pair is a tree edge.
    fn death_node(&self, pair: &PersistencePair) -> Result<usize, DualGraphError> {
        let n = self.graph.n;
        if pair.degree + 1 != n {
            return Err(DualGraphError::Degree {
                expected: n - 1,
                got: pair.degree,
            });
        }
        let death = pair.death.ok_or(DualGraphError::StarPair)?;
        let node = self.graph.index_of(death).ok_or(DualGraphError::PairNotFound)?;
        match self.parent[node] {
            Some((_, tau)) if tau == pair.birth => Ok(node),
            _ => Err(DualGraphError::PairNotFound),
        }
    }

    /// The pair whose death is the given top cell.
    pub fn pair_of_cell(&self, order: &OrderWithLevel, cell: SimplexId) -> Option<PersistencePair> {
        let node = self.graph.index_of(cell)?;
        let (_, tau) = self.parent[node]?;
        Some(PersistencePair::new(order, self.graph.n - 1, tau, Some(cell)))
    }

    /// The pair born at the given `(n-1)`-simplex, if it is a tree label.
    pub fn pair_of_label(&self, order: &OrderWithLevel, tau: SimplexId) -> Option<PersistencePair> {
        let node = *self.by_label.get(&tau)?;
        Some(PersistencePair::new(order, self.graph.n - 1, tau, Some(self.graph.cells[node])))
    }
}

/// A volume: a set of top cells with its Z/2 boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct StableVolumeResult {
    pub pair: PersistencePair,
    pub epsilon: f64,
    pub cells: Vec<SimplexId>,
    pub boundary: Vec<SimplexId>,
    pub size: usize,
}

/// The optimal volume of `pair`: the death cell and all its descendants.
pub fn optimal_volume_tree(
    tree: &PersistenceTree,
    pair: &PersistencePair,
) -> Result<Vec<SimplexId>, DualGraphError> {
    let node = tree.death_node(pair)?;
    Ok(tree.cells_of(tree.descendants(node)))
}

fn check_epsilon(eps: f64) -> Result<(), DualGraphError> {
    if eps.is_finite() && eps >= 0.0 {
        Ok(())
    } else {
        Err(DualGraphError::BadEpsilon(eps))
    }
}

/// Children of the death cell whose merge happened at least `eps` above
/// the birth level.
fn qualifying_children<'a>(
    tree: &'a PersistenceTree,
    order: &'a OrderWithLevel,
    node: usize,
    threshold: f64,
) -> impl Iterator<Item = usize> + 'a {
    tree.children[node]
        .iter()
        .filter(move |&&(_, tau)| order.level(tau) >= threshold)
        .map(|&(ch, _)| ch)
}

/// The stable volume: the death cell plus every child subtree whose edge
/// label has level at least `birth + eps`.
pub fn stable_volume_tree(
    tree: &PersistenceTree,
    order: &OrderWithLevel,
    pair: &PersistencePair,
    eps: f64,
) -> Result<StableVolumeResult, DualGraphError> {
    check_epsilon(eps)?;
    let node = tree.death_node(pair)?;
    let threshold = order.level(pair.birth) + eps;
    let mut nodes = vec![node];
    for ch in qualifying_children(tree, order, node, threshold) {
        nodes.extend(tree.descendants(ch));
    }
    let cells = tree.cells_of(nodes);
    let boundary = z2_boundary(order.complex(), &cells);
    Ok(StableVolumeResult {
        pair: *pair,
        epsilon: eps,
        size: cells.len(),
        cells,
        boundary,
    })
}

/// Stable volume sizes over a grid of `eps`, from subtree sizes only.
pub fn sweep_sizes(
    tree: &PersistenceTree,
    order: &OrderWithLevel,
    pair: &PersistencePair,
    grid: &[f64],
) -> Result<Vec<(f64, usize)>, DualGraphError> {
    let node = tree.death_node(pair)?;
    let birth = order.level(pair.birth);
    grid.iter()
        .map(|&eps| {
            check_epsilon(eps)?;
            let size = 1 + qualifying_children(tree, order, node, birth + eps)
                .map(|ch| tree.subtree[ch])
                .sum::<usize>();
            Ok((eps, size))
        })
        .collect()
}
