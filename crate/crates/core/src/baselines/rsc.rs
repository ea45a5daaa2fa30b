use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};

use thiserror::Error;

use crate::alpha::PointCloud;
use crate::complex::{OrderWithLevel, SimplexId};
use crate::persistence::{cohomology_reduce, PersistencePair};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RscError {
    #[error("shortest cycles need a degree-1 pair, got degree {0}")]
    Degree(usize),
    #[error("k index {k} is outside [{birth}, {death})")]
    KOutOfRange { k: usize, birth: usize, death: usize },
    #[error("pair is not a persistence pair of this filtration")]
    PairNotFound,
    #[error("no cocycle edge has a detour avoiding the cocycle")]
    Disconnected,
    #[error("euclidean weights need coordinates for vertex {0}")]
    MissingCoordinates(u32),
}

#[derive(Clone, Copy, Debug)]
pub enum EdgeWeight<'a> {
    Hops,
    Euclidean(&'a PointCloud),
}

impl EdgeWeight<'_> {
    fn of(&self, a: u32, b: u32) -> Result<f64, RscError> {
        match self {
            EdgeWeight::Hops => Ok(1.0),
            EdgeWeight::Euclidean(p) => {
                for v in [a, b] {
                    if v as usize >= p.len() {
                        return Err(RscError::MissingCoordinates(v));
                    }
                }
                let (x, y) = (p.coords(a as usize), p.coords(b as usize));
                Ok(x.iter().zip(y).map(|(s, t)| (s - t).powi(2)).sum::<f64>().sqrt())
            }
        }
    }
}

/// A closed edge path.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleLoop {
    /// Edges in traversal order.
    pub edges: Vec<SimplexId>,
    /// Vertices in traversal order, first vertex not repeated.
    pub vertices: Vec<u32>,
    pub weight: f64,
    /// The cocycle edge closing the loop.
    pub closing_edge: SimplexId,
}

#[derive(PartialEq)]
struct Entry(f64, u32);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Adjacency = HashMap<u32, Vec<(u32, SimplexId, f64)>>;

/// Dijkstra from `s` to `t`; returns the edge path from `s` and its weight.
fn shortest_path(adj: &Adjacency, s: u32, t: u32) -> Option<(Vec<SimplexId>, Vec<u32>, f64)> {
    let mut dist: HashMap<u32, f64> = HashMap::from([(s, 0.0)]);
    let mut prev: HashMap<u32, (u32, SimplexId)> = HashMap::new();
    let mut heap = BinaryHeap::from([Entry(0.0, s)]);
    let mut done = HashSet::new();
    while let Some(Entry(d, v)) = heap.pop() {
        if !done.insert(v) {
            continue;
        }
        if v == t {
            break;
        }
        for &(w, e, len) in adj.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            let nd = d + len;
            if dist.get(&w).is_none_or(|&old| nd < old) {
                dist.insert(w, nd);
                prev.insert(w, (v, e));
                heap.push(Entry(nd, w));
            }
        }
    }
    let total = *dist.get(&t)?;
    let mut edges = Vec::new();
    let mut verts = vec![t];
    let mut cur = t;
    while cur != s {
        let (p, e) = prev[&cur];
        edges.push(e);
        verts.push(p);
        cur = p;
    }
    edges.reverse();
    verts.reverse();
    Some((edges, verts, total))
}

/// For every cocycle edge present at rank `k_index`, the shortest path
/// between its endpoints that avoids the cocycle, closed by the edge. The
/// lightest such loop is returned; ties go to the earlier cocycle edge.
pub fn reconstructed_shortest_cycle(
    order: &OrderWithLevel,
    pair: &PersistencePair,
    k_index: usize,
    weight: EdgeWeight<'_>,
) -> Result<CycleLoop, RscError> {
    if pair.degree != 1 {
        return Err(RscError::Degree(pair.degree));
    }
    let birth = order.rank(pair.birth);
    let death = pair.death.map_or(order.len(), |d| order.rank(d));
    if k_index < birth || k_index >= death {
        return Err(RscError::KOutOfRange { k: k_index, birth, death });
    }
    let co = cohomology_reduce(order);
    let cocycle: HashSet<SimplexId> = co
        .cocycle(pair.birth)
        .ok_or(RscError::PairNotFound)?
        .iter()
        .copied()
        .collect();
    let c = order.complex();
    let edges: Vec<SimplexId> = order.order()[..=k_index]
        .iter()
        .copied()
        .filter(|&id| c.dim_of(id) == 1)
        .collect();
    let mut adj: Adjacency = HashMap::new();
    for &e in edges.iter().filter(|e| !cocycle.contains(e)) {
        let v = c.simplex(e).vertices();
        let w = weight.of(v[0], v[1])?;
        adj.entry(v[0]).or_default().push((v[1], e, w));
        adj.entry(v[1]).or_default().push((v[0], e, w));
    }
    for list in adj.values_mut() {
        list.sort_by_key(|&(w, e, _)| (w, e));
    }
    let mut best: Option<CycleLoop> = None;
    // edges are in filtration order, so ties resolve to the earliest
    for &sigma in edges.iter().filter(|e| cocycle.contains(e)) {
        let v = c.simplex(sigma).vertices();
        let Some((mut path, verts, len)) = shortest_path(&adj, v[0], v[1]) else {
            continue;
        };
        let total = len + weight.of(v[0], v[1])?;
        if best.as_ref().is_none_or(|b| total < b.weight) {
            path.push(sigma);
            best = Some(CycleLoop {
                edges: path,
                vertices: verts,
                weight: total,
                closing_edge: sigma,
            });
        }
    }
    best.ok_or(RscError::Disconnected)
}

/// The last rank strictly below the death level, kept at or after the
/// birth rank.
pub fn default_k_index(order: &OrderWithLevel, pair: &PersistencePair) -> usize {
    let birth = order.rank(pair.birth);
    let k = order.last_rank_below(pair.death_time).unwrap_or(birth);
    clamp_k(order, pair, k)
}

/// The last rank with level at most `birth + bandwidth`, clamped into the
/// pair's lifetime.
pub fn bandwidth_k_index(order: &OrderWithLevel, pair: &PersistencePair, bandwidth: f64) -> usize {
    let k = order
        .last_rank_at_most(pair.birth_time + bandwidth)
        .unwrap_or(0);
    clamp_k(order, pair, k)
}

fn clamp_k(order: &OrderWithLevel, pair: &PersistencePair, k: usize) -> usize {
    let birth = order.rank(pair.birth);
    let last = pair.death.map_or(order.len() - 1, |d| order.rank(d) - 1);
    k.clamp(birth, last)
}

/// True if the Z/2 1-cycle `edges` is not a boundary of the triangles with
/// rank at most `k_index`.
pub fn is_nontrivial_in_prefix(order: &OrderWithLevel, k_index: usize, edges: &[SimplexId]) -> bool {
    let c = order.complex();
    let mut cols: Vec<Vec<usize>> = order.order()[..=k_index]
        .iter()
        .filter(|&&id| c.dim_of(id) == 2)
        .map(|&t| {
            let mut col: Vec<usize> = c.faces(t).map(|f| order.rank(f)).collect();
            col.sort_unstable();
            col
        })
        .collect();
    let mut target: Vec<usize> = edges.iter().map(|&e| order.rank(e)).collect();
    target.sort_unstable();
    // reduce triangle boundaries to echelon form keyed by lowest entry,
    // then reduce the target against them
    let mut pivots: HashMap<usize, Vec<usize>> = HashMap::new();
    for col in cols.iter_mut() {
        while let Some(&low) = col.last() {
            match pivots.get(&low) {
                Some(p) => crate::persistence::xor_sorted(col, p),
                None => {
                    pivots.insert(low, col.clone());
                    break;
                }
            }
        }
    }
    while let Some(&low) = target.last() {
        match pivots.get(&low) {
            Some(p) => crate::persistence::xor_sorted(&mut target, p),
            None => return true,
        }
    }
    false
}
