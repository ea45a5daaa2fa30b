//! Chains over Z/2 and over the rationals.

use std::collections::BTreeMap;

use num_rational::Rational64;
use thiserror::Error;

use crate::complex::{SimplexId, SimplicialComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Z2,
    Rational,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChainError {
    #[error("the boundary of a 0-chain is undefined")]
    ZeroChain,
    #[error("simplex {id} has dimension {got}, chain has dimension {expected}")]
    MixedDimension {
        id: SimplexId,
        expected: usize,
        got: usize,
    },
    #[error("simplex id {0} is not in the complex")]
    UnknownSimplex(SimplexId),
}

/// A formal sum of `dim`-simplices. Only nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    field: Field,
    dim: usize,
    support: BTreeMap<SimplexId, Rational64>,
}

impl Chain {
    pub fn zero(field: Field, dim: usize) -> Self {
        Chain {
            field,
            dim,
            support: BTreeMap::new(),
        }
    }

    /// Sum of the given simplices with coefficient one each. Repeated ids
    /// accumulate.
    pub fn from_simplices<I>(
        complex: &SimplicialComplex,
        field: Field,
        dim: usize,
        ids: I,
    ) -> Result<Self, ChainError>
    where
        I: IntoIterator<Item = SimplexId>,
    {
        let mut ch = Chain::zero(field, dim);
        for id in ids {
            ch.add_term(complex, id, Rational64::from_integer(1))?;
        }
        Ok(ch)
    }

    /// Adds `coeff · id` to the chain.
    pub fn add_term(
        &mut self,
        complex: &SimplicialComplex,
        id: SimplexId,
        coeff: Rational64,
    ) -> Result<(), ChainError> {
        if id >= complex.len() {
            return Err(ChainError::UnknownSimplex(id));
        }
        let d = complex.dim_of(id);
        if d != self.dim {
            return Err(ChainError::MixedDimension {
                id,
                expected: self.dim,
                got: d,
            });
        }
        self.accumulate(id, coeff);
        Ok(())
    }

    fn accumulate(&mut self, id: SimplexId, coeff: Rational64) {
        let entry = self.support.entry(id).or_insert_with(|| Rational64::from_integer(0));
        *entry += coeff;
        if self.field == Field::Z2 {
            let n = *entry.numer() % 2;
            debug_assert_eq!(*entry.denom(), 1, "Z/2 coefficients are integers");
            *entry = Rational64::from_integer(n.abs());
        }
        if *entry.numer() == 0 {
            self.support.remove(&id);
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn coefficient(&self, id: SimplexId) -> Rational64 {
        self.support
            .get(&id)
            .copied()
            .unwrap_or_else(|| Rational64::from_integer(0))
    }

    /// Supported simplex ids, ascending.
    pub fn support(&self) -> Vec<SimplexId> {
        self.support.keys().copied().collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (SimplexId, Rational64)> + '_ {
        self.support.iter().map(|(&k, &v)| (k, v))
    }
}

/// The boundary operator. Over the rationals the face omitting the `j`-th
/// vertex of the sorted vertex list carries sign `(-1)^j`.
pub fn boundary(complex: &SimplicialComplex, chain: &Chain) -> Result<Chain, ChainError> {
    if chain.dim == 0 {
        return Err(ChainError::ZeroChain);
    }
    let mut out = Chain::zero(chain.field, chain.dim - 1);
    for (id, c) in chain.terms() {
        for (f, sign) in complex.signed_faces(id) {
            let coeff = match chain.field {
                Field::Z2 => c,
                Field::Rational => c * Rational64::from_integer(sign as i64),
            };
            out.accumulate(f, coeff);
        }
    }
    Ok(out)
}

/// Z/2 boundary of a set of equal-dimensional simplices, as sorted ids.
pub fn z2_boundary(complex: &SimplicialComplex, ids: &[SimplexId]) -> Vec<SimplexId> {
    let mut odd = BTreeMap::<SimplexId, bool>::new();
    for &id in ids {
        for f in complex.faces(id) {
            let e = odd.entry(f).or_insert(false);
            *e = !*e;
        }
    }
    odd.into_iter().filter(|&(_, o)| o).map(|(f, _)| f).collect()
}

/// Distinct vertex labels touched by the given simplices, sorted.
pub fn support_vertices(complex: &SimplicialComplex, ids: &[SimplexId]) -> Vec<u32> {
    let mut vs: Vec<u32> = ids
        .iter()
        .flat_map(|&id| complex.simplex(id).vertices().iter().copied())
        .collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Simplex;
    use proptest::prelude::*;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn triangle_boundary_over_z2() {
        let c = SimplicialComplex::closure([s(&[0, 1, 2])]);
        let t = c.find(&[0, 1, 2]).unwrap();
        let ch = Chain::from_simplices(&c, Field::Z2, 2, [t]).unwrap();
        let b = boundary(&c, &ch).unwrap();
        let mut want = vec![
            c.find(&[0, 1]).unwrap(),
            c.find(&[0, 2]).unwrap(),
            c.find(&[1, 2]).unwrap(),
        ];
        want.sort();
        assert_eq!(b.support(), want);
        assert!(b.terms().all(|(_, v)| v == Rational64::from_integer(1)));
    }

    #[test]
    fn rational_signs_alternate() {
        let c = SimplicialComplex::closure([s(&[0, 1, 2])]);
        let t = c.find(&[0, 1, 2]).unwrap();
        let ch = Chain::from_simplices(&c, Field::Rational, 2, [t]).unwrap();
        let b = boundary(&c, &ch).unwrap();
        assert_eq!(b.coefficient(c.find(&[1, 2]).unwrap()), Rational64::from_integer(1));
        assert_eq!(b.coefficient(c.find(&[0, 2]).unwrap()), Rational64::from_integer(-1));
        assert_eq!(b.coefficient(c.find(&[0, 1]).unwrap()), Rational64::from_integer(1));
    }

    #[test]
    fn zero_chain_has_no_boundary() {
        let c = SimplicialComplex::closure([s(&[0])]);
        let ch = Chain::from_simplices(&c, Field::Z2, 0, [0]).unwrap();
        assert_eq!(boundary(&c, &ch), Err(ChainError::ZeroChain));
    }

    #[test]
    fn mixed_dimensions_are_rejected() {
        let c = SimplicialComplex::closure([s(&[0, 1])]);
        let err = Chain::from_simplices(&c, Field::Z2, 1, [0]).unwrap_err();
        assert!(matches!(err, ChainError::MixedDimension { .. }));
    }

    /// Annulus: outer square 0..3, inner square 4..7, eight triangles.
    fn annulus() -> (SimplicialComplex, Vec<SimplexId>) {
        let tris = [
            [0, 1, 4],
            [1, 4, 5],
            [1, 2, 5],
            [2, 5, 6],
            [2, 3, 6],
            [3, 6, 7],
            [0, 3, 7],
            [0, 4, 7],
        ];
        let c = SimplicialComplex::closure(tris.iter().map(|t| s(t)));
        let ids = tris.iter().map(|t| c.find(t).unwrap()).collect();
        (c, ids)
    }

    #[test]
    fn annulus_boundary_is_two_loops() {
        let (c, tris) = annulus();
        let ch = Chain::from_simplices(&c, Field::Z2, 2, tris.iter().copied()).unwrap();
        let b = boundary(&c, &ch).unwrap();
        // brute-force: an edge is on the boundary iff it lies in an odd
        // number of the triangles
        let mut want: Vec<SimplexId> = c
            .ids_of_dim(1)
            .filter(|&e| {
                let ev = c.simplex(e).vertices();
                let n = tris
                    .iter()
                    .filter(|&&t| ev.iter().all(|v| c.simplex(t).vertices().contains(v)))
                    .count();
                n % 2 == 1
            })
            .collect();
        want.sort();
        assert_eq!(b.support(), want);
        let edges: Vec<Vec<u32>> = want.iter().map(|&e| c.simplex(e).vertices().to_vec()).collect();
        for e in [[0, 1], [1, 2], [2, 3], [0, 3], [4, 5], [5, 6], [6, 7], [4, 7]] {
            assert!(edges.contains(&e.to_vec()));
        }
        assert_eq!(edges.len(), 8);
        assert_eq!(z2_boundary(&c, &tris), want);
    }

    proptest! {
        #[test]
        fn boundary_squares_to_zero(mask in proptest::collection::vec(-3i64..=3, 8), rational in any::<bool>()) {
            let (c, tris) = annulus();
            let field = if rational { Field::Rational } else { Field::Z2 };
            let mut ch = Chain::zero(field, 2);
            for (t, m) in tris.iter().zip(mask) {
                let m = if rational { m } else { m.rem_euclid(2) };
                if m != 0 {
                    ch.add_term(&c, *t, Rational64::from_integer(m)).unwrap();
                }
            }
            let b = boundary(&c, &ch).unwrap();
            let bb = boundary(&c, &b).unwrap();
            prop_assert!(bb.is_zero());
        }
    }
}
