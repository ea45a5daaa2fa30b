//! Incremental Bowyer–Watson triangulation in 2D and 3D.
//!
//! The convex hull is closed off with "ghost" cells that share a single
//! vertex at infinity, so point location and cavity growth never special
//! case the hull. Predicates run on jittered coordinates with exact
//! arithmetic.

use std::collections::HashMap;

use super::geometry::Jitter;
use super::{AlphaError, PointCloud};
use crate::complex::{Simplex, SimplicialComplex};

const GHOST: u32 = u32::MAX;
const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
struct Cell {
    v: [u32; 4],
    nbr: [usize; 4],
    alive: bool,
}

struct Triangulation<'a> {
    dim: usize,
    jitter: &'a Jitter,
    cells: Vec<Cell>,
}

impl Cell {
    fn is_ghost(&self, dim: usize) -> bool {
        self.v[..=dim].contains(&GHOST)
    }
}

impl<'a> Triangulation<'a> {
    fn verts<'c>(&self, c: &'c Cell) -> &'c [u32] {
        &c.v[..=self.dim]
    }

    /// Whether inserting `p` destroys cell `c`.
    fn conflicts(&self, c: &Cell, p: u32) -> Result<bool, AlphaError> {
        let v = self.verts(c);
        if let Some(g) = v.iter().position(|&x| x == GHOST) {
            let mut w = [0u32; 4];
            w[..=self.dim].copy_from_slice(v);
            w[g] = p;
            let o = self.jitter.orient(&w[..=self.dim]);
            if o == 0.0 {
                return Err(AlphaError::Degenerate(format!(
                    "point {p} lies on a hull facet"
                )));
            }
            Ok(o > 0.0)
        } else {
            let s = self.jitter.in_sphere(v, p);
            if s == 0.0 {
                return Err(AlphaError::Degenerate(format!(
                    "point {p} is cospherical with cell {v:?}"
                )));
            }
            Ok(s > 0.0)
        }
    }

    fn facet_key(&self, v: &[u32], skip: usize) -> Vec<u32> {
        let mut k: Vec<u32> = v
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &x)| x)
            .collect();
        k.sort_unstable();
        k
    }

    /// Connects the listed cells to each other across shared facets.
    fn wire(&mut self, ids: &[usize], pending: &mut HashMap<Vec<u32>, (usize, usize)>) {
        for &id in ids {
            for j in 0..=self.dim {
                if self.cells[id].nbr[j] != NONE {
                    continue;
                }
                let key = self.facet_key(&self.cells[id].v[..=self.dim], j);
                if let Some((other, oj)) = pending.remove(&key) {
                    self.cells[id].nbr[j] = other;
                    self.cells[other].nbr[oj] = id;
                } else {
                    pending.insert(key, (id, j));
                }
            }
        }
    }

    fn push(&mut self, v: [u32; 4]) -> usize {
        self.cells.push(Cell {
            v,
            nbr: [NONE; 4],
            alive: true,
        });
        self.cells.len() - 1
    }

    fn init(&mut self, first: &[u32]) -> Result<(), AlphaError> {
        let d = self.dim;
        let mut v = [0u32; 4];
        v[..=d].copy_from_slice(first);
        let o = self.jitter.orient(&v[..=d]);
        if o == 0.0 {
            return Err(AlphaError::Degenerate(
                "initial simplex is flat".to_string(),
            ));
        }
        if o < 0.0 {
            v.swap(0, 1);
        }
        let root = self.push(v);
        let mut ids = vec![root];
        for i in 0..=d {
            let mut g = v;
            g[i] = GHOST;
            // flip so that substituting an outside point is positive
            let (a, b) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            g.swap(a, b);
            ids.push(self.push(g));
        }
        let mut pending = HashMap::new();
        self.wire(&ids, &mut pending);
        debug_assert!(pending.is_empty());
        Ok(())
    }

    fn locate(&self, p: u32) -> Result<usize, AlphaError> {
        for (id, c) in self.cells.iter().enumerate().rev() {
            if c.alive && self.conflicts(c, p)? {
                return Ok(id);
            }
        }
        Err(AlphaError::Degenerate(format!(
            "no cell conflicts with point {p}"
        )))
    }

    fn insert(&mut self, p: u32) -> Result<(), AlphaError> {
        let d = self.dim;
        let start = self.locate(p)?;
        let mut in_cavity = HashMap::new();
        in_cavity.insert(start, ());
        let mut stack = vec![start];
        let mut cavity = vec![];
        while let Some(id) = stack.pop() {
            cavity.push(id);
            for j in 0..=d {
                let n = self.cells[id].nbr[j];
                if in_cavity.contains_key(&n) {
                    continue;
                }
                if self.conflicts(&self.cells[n], p)? {
                    in_cavity.insert(n, ());
                    stack.push(n);
                }
            }
        }
        let mut created = Vec::new();
        let mut links = Vec::new();
        for &id in &cavity {
            for j in 0..=d {
                let n = self.cells[id].nbr[j];
                if in_cavity.contains_key(&n) {
                    continue;
                }
                let mut v = self.cells[id].v;
                v[j] = p;
                let new = self.push(v);
                if !self.cells[new].is_ghost(d) && self.jitter.orient(&v[..=d]) <= 0.0 {
                    return Err(AlphaError::Degenerate(format!(
                        "cavity of point {p} is not star-shaped"
                    )));
                }
                self.cells[new].nbr[j] = n;
                links.push((n, id, new));
                created.push(new);
            }
        }
        for (n, old, new) in links {
            let slot = self.cells[n]
                .nbr
                .iter()
                .position(|&x| x == old)
                .expect("neighbour link is symmetric");
            self.cells[n].nbr[slot] = new;
        }
        for &id in &cavity {
            self.cells[id].alive = false;
        }
        let mut pending = HashMap::new();
        self.wire(&created, &mut pending);
        if !pending.is_empty() {
            return Err(AlphaError::Degenerate(format!(
                "cavity of point {p} has an open boundary"
            )));
        }
        Ok(())
    }
}

/// Delaunay triangulation of the convex hull of `points`.
///
/// Vertex labels are point indices. Simplex ids are sorted by dimension
/// then vertex list.
pub fn delaunay(points: &PointCloud) -> Result<SimplicialComplex, AlphaError> {
    let d = points.dim();
    let n = points.len();
    let jitter = Jitter::new(points.points(), d, points.bbox_diagonal());
    if n <= d + 1 {
        // fewer than d+2 points in general position span a single simplex
        if n == 0 {
            return Ok(SimplicialComplex::closure(Vec::<Simplex>::new()));
        }
        let all: Vec<u32> = (0..n as u32).collect();
        if n == d + 1 && jitter.orient(&all) == 0.0 {
            return Err(AlphaError::Degenerate("simplex is flat".to_string()));
        }
        return Ok(SimplicialComplex::closure([Simplex::new(all).unwrap()]));
    }

    let mut insertion: Vec<u32> = (0..n as u32).collect();
    insertion.sort_by(|&a, &b| {
        let pa = jitter.coords(a as usize);
        let pb = jitter.coords(b as usize);
        pa.iter()
            .zip(pb)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });

    // first d+1 affinely independent points in insertion order
    let mut seed = vec![insertion[0]];
    let mut rest = Vec::new();
    for &p in &insertion[1..] {
        if seed.len() == d + 1 {
            rest.push(p);
            continue;
        }
        let mut trial = seed.clone();
        trial.push(p);
        if seed.len() < d || jitter.orient(&trial) != 0.0 {
            seed.push(p);
        } else {
            rest.push(p);
        }
    }
    if seed.len() < d + 1 {
        return Err(AlphaError::Degenerate(
            "all points are affinely dependent".to_string(),
        ));
    }

    let mut tri = Triangulation {
        dim: d,
        jitter: &jitter,
        cells: Vec::new(),
    };
    tri.init(&seed)?;
    for p in rest {
        tri.insert(p)?;
    }

    let tops = tri
        .cells
        .iter()
        .filter(|c| c.alive && !c.is_ghost(d))
        .map(|c| Simplex::new(c.v[..=d].to_vec()).expect("distinct vertices"));
    let complex = SimplicialComplex::closure(tops);
    if complex.num_vertices() != n {
        return Err(AlphaError::Degenerate(format!(
            "triangulation covers {} of {n} points",
            complex.num_vertices()
        )));
    }
    Ok(complex)
}
