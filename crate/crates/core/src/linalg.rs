//! Exact incremental Gaussian elimination over sparse vectors.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::matrix::ExactMatrix;
use crate::scalar::Gq;

pub type SparseVec = BTreeMap<usize, Gq>;

fn axpy(target: &mut SparseVec, c: Gq, x: &SparseVec) {
    for (&k, &v) in x {
        let e = target.entry(k).or_insert_with(Gq::zero);
        *e -= c * v;
        if e.is_zero() {
            target.remove(&k);
        }
    }
}

pub fn matrix_to_vec(m: &ExactMatrix) -> SparseVec {
    m.flat_entries().collect()
}

/// An echelon basis of the span of the vectors inserted so far.
///
/// Each echelon row remembers how it was obtained from the inserted vectors,
/// so membership queries also return coordinates with respect to the
/// *accepted* (independent) inserted vectors, in insertion order.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivots: HashMap<usize, usize>,
}

pub enum Reduction {
    /// The vector lies in the span; coordinates over the accepted vectors.
    InSpan(SparseVec),
    /// Residual after elimination, plus the partial coordinates that were removed.
    Independent { residual: SparseVec, removed: SparseVec },
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut r = v.clone();
        let mut coords = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let hit = r
                .range(cursor..)
                .find(|(k, _)| self.pivots.contains_key(k))
                .map(|(&k, &c)| (k, c));
            let Some((k, c)) = hit else { break };
            let row = self.pivots[&k];
            axpy(&mut r, c, &self.rows[row]);
            for (&idx, &w) in &self.combos[row] {
                let e = coords.entry(idx).or_insert_with(Gq::zero);
                *e += c * w;
                if e.is_zero() {
                    coords.remove(&idx);
                }
            }
            cursor = k + 1;
        }
        if r.is_empty() {
            Reduction::InSpan(coords)
        } else {
            Reduction::Independent {
                residual: r,
                removed: coords,
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        matches!(self.reduce(v), Reduction::InSpan(_))
    }

    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        match self.reduce(v) {
            Reduction::InSpan(c) => Some(c),
            Reduction::Independent { .. } => None,
        }
    }

    /// Inserts `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        match self.reduce(v) {
            Reduction::InSpan(_) => false,
            Reduction::Independent { residual, removed } => {
                let id = self.rows.len();
                let (&lead_idx, &lead) = residual.iter().next().expect("nonzero residual");
                let inv = lead.inv();
                let row: SparseVec = residual.into_iter().map(|(k, v)| (k, v * inv)).collect();
                // row = (v - Σ removed·accepted) / lead
                let mut combo: SparseVec = removed.into_iter().map(|(k, c)| (k, -c * inv)).collect();
                combo.insert(id, Gq::one() * inv);
                self.pivots.insert(lead_idx, id);
                self.rows.push(row);
                self.combos.push(combo);
                true
            }
        }
    }
}

/// A finite-dimensional subspace of `n × n` matrices with a chosen basis.
#[derive(Debug, Clone)]
pub struct MatrixSpace {
    size: usize,
    basis: Vec<ExactMatrix>,
    echelon: Echelon,
}

impl MatrixSpace {
    pub fn new(size: usize) -> Self {
        MatrixSpace {
            size,
            basis: Vec::new(),
            echelon: Echelon::new(),
        }
    }

    /// Span of `gens`; dependent generators are dropped.
    pub fn spanned_by<'a>(size: usize, gens: impl IntoIterator<Item = &'a ExactMatrix>) -> Self {
        let mut s = Self::new(size);
        for g in gens {
            s.try_push(g.clone());
        }
        s
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ExactMatrix] {
        &self.basis
    }

    pub fn try_push(&mut self, m: ExactMatrix) -> bool {
        assert_eq!(m.dims(), (self.size, self.size), "matrix size does not match space");
        if self.echelon.insert(&matrix_to_vec(&m)) {
            self.basis.push(m);
            true
        } else {
            false
        }
    }

    pub fn contains(&self, m: &ExactMatrix) -> bool {
        m.dims() == (self.size, self.size) && self.echelon.contains(&matrix_to_vec(m))
    }

    /// Coordinates of `m` in this space's basis, if it belongs to the space.
    pub fn coords(&self, m: &ExactMatrix) -> Option<Vec<Gq>> {
        if m.dims() != (self.size, self.size) {
            return None;
        }
        let c = self.echelon.coords(&matrix_to_vec(m))?;
        let mut out = vec![Gq::zero(); self.dim()];
        for (k, v) in c {
            out[k] = v;
        }
        Some(out)
    }

    pub fn combine(&self, coords: &[Gq]) -> ExactMatrix {
        linear_combination(self.size, self.basis.iter().zip(coords.iter().copied()))
    }

    pub fn is_subspace_of(&self, other: &MatrixSpace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn same_space(&self, other: &MatrixSpace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }
}

pub fn linear_combination<'a>(size: usize, terms: impl IntoIterator<Item = (&'a ExactMatrix, Gq)>) -> ExactMatrix {
    let mut acc = SparseVec::new();
    let mut cols = size;
    let mut rows = size;
    for (m, c) in terms {
        (rows, cols) = m.dims();
        if c.is_zero() {
            continue;
        }
        for (k, v) in m.flat_entries() {
            let e = acc.entry(k).or_insert_with(Gq::zero);
            *e += c * v;
            if e.is_zero() {
                acc.remove(&k);
            }
        }
    }
    ExactMatrix::from_flat(rows, cols, acc)
}

/// Rank of a list of matrices (all of one shape).
pub fn rank(ms: &[ExactMatrix]) -> usize {
    let mut e = Echelon::new();
    ms.iter().filter(|m| e.insert(&matrix_to_vec(m))).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_recover_combination() {
        let a = ExactMatrix::from_ints(&[&[1, 1], &[0, 0]]);
        let b = ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let c = ExactMatrix::from_ints(&[&[0, 0], &[0, 1]]);
        let space = MatrixSpace::spanned_by(2, [&a, &b, &c]);
        assert_eq!(space.dim(), 3);
        let target = a.scale(Gq::int(3)).sub(&b.scale(Gq::int(2))).add(&c);
        let coords = space.coords(&target).unwrap();
        assert_eq!(coords, vec![Gq::int(3), Gq::int(-2), Gq::int(1)]);
        assert_eq!(space.combine(&coords), target);
        assert!(space.coords(&ExactMatrix::unit(2, 0, 0)).is_none());
    }

    #[test]
    fn dependent_generators_dropped() {
        let a = ExactMatrix::unit(2, 0, 1);
        let space = MatrixSpace::spanned_by(2, [&a, &a.scale(Gq::i()), &ExactMatrix::zeros(2, 2)]);
        assert_eq!(space.dim(), 1);
    }

    #[test]
    fn rank_counts_independent() {
        let ms = vec![ExactMatrix::identity(2), ExactMatrix::unit(2, 0, 0), ExactMatrix::unit(2, 1, 1)];
        assert_eq!(rank(&ms), 2);
    }
}
