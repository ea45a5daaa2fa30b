//! Simplices, finite simplicial complexes and orders with level.
//!
//! A [`SimplicialComplex`] assigns every simplex a dense [`SimplexId`] at
//! construction time. Everything downstream (orders, chains, boundary
//! matrices, dual graphs) refers to simplices by id only.
//!
//! An [`OrderWithLevel`] pairs a face-monotone level function with a total
//! order that refines it and puts every face before its cofaces. Prefixes of
//! the total order are the filtration used by the persistence code.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Dense index of a simplex inside its complex.
pub type SimplexId = usize;

/// Vertex label.
pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error("simplex has no vertices")]
    EmptySimplex,
    #[error("simplex vertex list {0:?} contains a duplicate")]
    DuplicateVertex(Vec<VertexId>),
    #[error("simplex {0} appears twice")]
    DuplicateSimplex(Simplex),
}

/// A simplex stored as its strictly increasing vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Builds a simplex from an arbitrary vertex list; the list is sorted.
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertex(vertices));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The codimension-one faces, `j`-th entry omits the `j`-th vertex.
    /// Empty for vertices.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|j| {
                let mut v = self.0.clone();
                v.remove(j);
                Simplex(v)
            })
            .collect()
    }

    /// Ordering used inside a level: dimension first, then the vertex list.
    pub fn cmp_dim_lex(&self, other: &Simplex) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A missing face found by [`SimplicialComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureViolation {
    pub simplex: Simplex,
    pub missing_face: Simplex,
}

impl fmt::Display for ClosureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "missing face {} of {}", self.missing_face, self.simplex)
    }
}

/// Number of violations reported by [`SimplicialComplex::validate`].
pub const MAX_REPORTED_VIOLATIONS: usize = 16;

/// A finite collection of simplices with codimension-one incidences.
///
/// Construction never fails on missing faces so that unclosed inputs can be
/// diagnosed; call [`validate`](Self::validate) before relying on closure.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, SimplexId>,
    // faces[id][j] is the face omitting vertex j, if present
    faces: Vec<Vec<Option<SimplexId>>>,
    cofaces: Vec<Vec<SimplexId>>,
    violations: Vec<ClosureViolation>,
}

impl SimplicialComplex {
    /// Ids follow the order of `simplices`.
    pub fn new(simplices: Vec<Simplex>) -> Result<Self, ComplexError> {
        let mut index = HashMap::with_capacity(simplices.len());
        for (id, s) in simplices.iter().enumerate() {
            if index.insert(s.clone(), id).is_some() {
                return Err(ComplexError::DuplicateSimplex(s.clone()));
            }
        }
        let mut faces = Vec::with_capacity(simplices.len());
        let mut cofaces = vec![Vec::new(); simplices.len()];
        let mut violations = Vec::new();
        for (id, s) in simplices.iter().enumerate() {
            let mut fs = Vec::with_capacity(s.dim() + 1);
            for facet in s.facets() {
                match index.get(&facet) {
                    Some(&fid) => {
                        cofaces[fid].push(id);
                        fs.push(Some(fid));
                    }
                    None => {
                        violations.push(ClosureViolation {
                            simplex: s.clone(),
                            missing_face: facet,
                        });
                        fs.push(None);
                    }
                }
            }
            faces.push(fs);
        }
        Ok(SimplicialComplex {
            simplices,
            index,
            faces,
            cofaces,
            violations,
        })
    }

    /// The closure of `generators`; ids sorted by (dimension, vertex list).
    pub fn closure<I>(generators: I) -> Self
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut all = std::collections::BTreeSet::new();
        let mut stack: Vec<Simplex> = generators.into_iter().collect();
        while let Some(s) = stack.pop() {
            if all.insert(s.clone()) {
                stack.extend(s.facets());
            }
        }
        let mut simplices: Vec<Simplex> = all.into_iter().collect();
        simplices.sort_by(|a, b| a.cmp_dim_lex(b));
        Self::new(simplices).expect("closure has no duplicates")
    }

    /// Checks closure under faces and that the coface map is the transpose
    /// of the face map. Returns at most [`MAX_REPORTED_VIOLATIONS`] missing
    /// faces.
    pub fn validate(&self) -> Result<(), Vec<ClosureViolation>> {
        if !self.violations.is_empty() {
            return Err(self
                .violations
                .iter()
                .take(MAX_REPORTED_VIOLATIONS)
                .cloned()
                .collect());
        }
        for (id, fs) in self.faces.iter().enumerate() {
            for f in fs.iter().flatten() {
                debug_assert!(self.cofaces[*f].contains(&id));
            }
        }
        let incidences: usize = self.faces.iter().map(|f| f.iter().flatten().count()).sum();
        let transposed: usize = self.cofaces.iter().map(Vec::len).sum();
        assert_eq!(incidences, transposed, "coface map out of sync");
        Ok(())
    }

    pub fn is_closed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplex(&self, id: SimplexId) -> &Simplex {
        &self.simplices[id]
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn id_of(&self, s: &Simplex) -> Option<SimplexId> {
        self.index.get(s).copied()
    }

    /// Looks a simplex up by an unsorted vertex list.
    pub fn find(&self, vertices: &[VertexId]) -> Option<SimplexId> {
        Simplex::new(vertices.to_vec())
            .ok()
            .and_then(|s| self.id_of(&s))
    }

    pub fn dim_of(&self, id: SimplexId) -> usize {
        self.simplices[id].dim()
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    /// Present codimension-one faces of `id`.
    pub fn faces(&self, id: SimplexId) -> impl Iterator<Item = SimplexId> + '_ {
        self.faces[id].iter().flatten().copied()
    }

    /// Faces paired with their incidence sign `(-1)^j` where `j` is the
    /// position of the omitted vertex.
    pub fn signed_faces(&self, id: SimplexId) -> impl Iterator<Item = (SimplexId, i8)> + '_ {
        self.faces[id]
            .iter()
            .enumerate()
            .filter_map(|(j, f)| f.map(|f| (f, if j % 2 == 0 { 1 } else { -1 })))
    }

    pub fn cofaces(&self, id: SimplexId) -> &[SimplexId] {
        &self.cofaces[id]
    }

    /// Ids of all simplices of dimension `k`.
    pub fn ids_of_dim(&self, k: usize) -> impl Iterator<Item = SimplexId> + '_ {
        self.simplices
            .iter()
            .enumerate()
            .filter(move |(_, s)| s.dim() == k)
            .map(|(i, _)| i)
    }

    /// Number of distinct vertex labels used by 0-simplices.
    pub fn num_vertices(&self) -> usize {
        self.ids_of_dim(0).count()
    }

    /// Subcomplex spanned by a subset of ids (ids are renumbered).
    pub fn subcomplex<I>(&self, ids: I) -> SimplicialComplex
    where
        I: IntoIterator<Item = SimplexId>,
    {
        let mut ids: Vec<SimplexId> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        let simplices = ids.into_iter().map(|i| self.simplices[i].clone()).collect();
        SimplicialComplex::new(simplices).expect("ids are distinct")
    }

    /// Vertex labels of the 0-skeleton sorted ascending.
    pub fn vertex_labels(&self) -> Vec<VertexId> {
        let mut v: Vec<VertexId> = self
            .ids_of_dim(0)
            .map(|i| self.simplices[i].vertices()[0])
            .collect();
        v.sort_unstable();
        v
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrderError {
    #[error("level map has {got} entries, complex has {expected} simplices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("level of simplex {simplex} is not finite")]
    NonFinite { simplex: Simplex },
    #[error("level of face {face} ({face_level}) exceeds level of coface {coface} ({coface_level})")]
    Monotonicity {
        face: Simplex,
        coface: Simplex,
        face_level: f64,
        coface_level: f64,
    },
    #[error("tiebreak puts coface {coface} before its face {face}")]
    FaceAfterCoface { face: Simplex, coface: Simplex },
    #[error("complex is not closed: {0}")]
    NotClosed(String),
}

/// How simplices with equal level are ordered.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum TieBreak {
    /// Dimension ascending, then the vertex list lexicographically.
    #[default]
    DimLex,
    /// A per-simplex priority compared right after the level (lower first),
    /// falling back to [`TieBreak::DimLex`].
    Priority(Vec<u32>),
}

/// A level function together with a total order refining it.
///
/// Ranks are 0-based positions in the total order.
#[derive(Clone, Debug)]
pub struct OrderWithLevel {
    complex: Arc<SimplicialComplex>,
    levels: Vec<f64>,
    rank: Vec<usize>,
    order: Vec<SimplexId>,
}

/// Builds the order with level for `levels` (indexed by simplex id).
pub fn build_order(
    complex: Arc<SimplicialComplex>,
    levels: Vec<f64>,
    tiebreak: &TieBreak,
) -> Result<OrderWithLevel, OrderError> {
    if let Err(v) = complex.validate() {
        let msg: Vec<String> = v.iter().map(ToString::to_string).collect();
        return Err(OrderError::NotClosed(msg.join("; ")));
    }
    if levels.len() != complex.len() {
        return Err(OrderError::LengthMismatch {
            expected: complex.len(),
            got: levels.len(),
        });
    }
    if let TieBreak::Priority(p) = tiebreak {
        if p.len() != complex.len() {
            return Err(OrderError::LengthMismatch {
                expected: complex.len(),
                got: p.len(),
            });
        }
    }
    for (id, &l) in levels.iter().enumerate() {
        if !l.is_finite() {
            return Err(OrderError::NonFinite {
                simplex: complex.simplex(id).clone(),
            });
        }
    }
    for id in 0..complex.len() {
        for f in complex.faces(id) {
            if levels[f] > levels[id] {
                return Err(OrderError::Monotonicity {
                    face: complex.simplex(f).clone(),
                    coface: complex.simplex(id).clone(),
                    face_level: levels[f],
                    coface_level: levels[id],
                });
            }
        }
    }

    let mut order: Vec<SimplexId> = (0..complex.len()).collect();
    order.sort_by(|&a, &b| {
        levels[a]
            .total_cmp(&levels[b])
            .then_with(|| match tiebreak {
                TieBreak::DimLex => Ordering::Equal,
                TieBreak::Priority(p) => p[a].cmp(&p[b]),
            })
            .then_with(|| complex.simplex(a).cmp_dim_lex(complex.simplex(b)))
    });
    let mut rank = vec![0; order.len()];
    for (pos, &id) in order.iter().enumerate() {
        rank[id] = pos;
    }
    for id in 0..complex.len() {
        for f in complex.faces(id) {
            if rank[f] > rank[id] {
                return Err(OrderError::FaceAfterCoface {
                    face: complex.simplex(f).clone(),
                    coface: complex.simplex(id).clone(),
                });
            }
        }
    }
    Ok(OrderWithLevel {
        complex,
        levels,
        rank,
        order,
    })
}

impl OrderWithLevel {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn complex_arc(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn level(&self, id: SimplexId) -> f64 {
        self.levels[id]
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn rank(&self, id: SimplexId) -> usize {
        self.rank[id]
    }

    /// Simplex at a 0-based position of the total order.
    pub fn at(&self, rank: usize) -> SimplexId {
        self.order[rank]
    }

    /// Simplex ids in filtration order.
    pub fn order(&self) -> &[SimplexId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `a ≺ b` in the total order.
    pub fn precedes(&self, a: SimplexId, b: SimplexId) -> bool {
        self.rank[a] < self.rank[b]
    }

    /// Simplices whose rank is at most `rank`, in order.
    pub fn prefix(&self, rank: usize) -> &[SimplexId] {
        &self.order[..(rank + 1).min(self.order.len())]
    }

    pub fn max_level(&self) -> Option<f64> {
        self.levels.iter().copied().reduce(f64::max)
    }

    /// Largest rank whose level is `<= t`, if any.
    pub fn last_rank_at_most(&self, t: f64) -> Option<usize> {
        let n = self.order.partition_point(|&id| self.levels[id] <= t);
        n.checked_sub(1)
    }

    /// Largest rank whose level is `< t`, if any.
    pub fn last_rank_below(&self, t: f64) -> Option<usize> {
        let n = self.order.partition_point(|&id| self.levels[id] < t);
        n.checked_sub(1)
    }

    /// Same complex, new levels, default tiebreak.
    pub fn with_levels(&self, levels: Vec<f64>) -> Result<OrderWithLevel, OrderError> {
        build_order(self.complex.clone(), levels, &TieBreak::DimLex)
    }
}

/// The sublevel set `{σ | level(σ) < t}` as a complex of its own.
pub fn sublevel_complex(order: &OrderWithLevel, t: f64) -> SimplicialComplex {
    let ids = (0..order.complex().len()).filter(|&id| order.level(id) < t);
    order.complex().subcomplex(ids)
}

/// Simplex ids of the sublevel set `{σ | level(σ) < t}`.
pub fn sublevel_ids(order: &OrderWithLevel, t: f64) -> Vec<SimplexId> {
    (0..order.complex().len())
        .filter(|&id| order.level(id) < t)
        .collect()
}
