//! Sparse exact complex-rational matrices.
//!
//! Rows are stored as column-sorted lists of nonzero entries, so derived
//! equality is literal matrix equality.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::Gq;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Gq)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("shape mismatch: {op} of {lhs:?} and {rhs:?}")]
    Mismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    #[error("expected a square matrix, got {0:?}")]
    NotSquare((usize, usize)),
    #[error("ragged matrix literal")]
    Ragged,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for (i, row) in m.data.iter_mut().enumerate() {
            row.push((i, Gq::one()));
        }
        m
    }

    /// Matrix unit `e_{ij}` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.data[i].push((j, Gq::one()));
        m
    }

    pub fn diag(entries: &[Gq]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            if !v.is_zero() {
                m.data[i].push((i, *v));
            }
        }
        m
    }

    pub fn from_dense(rows: Vec<Vec<Gq>>) -> Result<Self, ShapeError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ShapeError::Ragged);
        }
        let n = rows.len();
        let data = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Ok(ExactMatrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_dense(
            rows.iter()
                .map(|r| r.iter().map(|&v| Gq::int(v)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    /// Builds from `(row, col, value)` triples; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Gq)>) -> Self {
        let mut dense_rows: Vec<std::collections::BTreeMap<usize, Gq>> = vec![Default::default(); rows];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "triplet out of bounds");
            *dense_rows[i].entry(j).or_insert_with(Gq::zero) += v;
        }
        let data = dense_rows
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        ExactMatrix { rows, cols, data }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Gq {
        self.data[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map_or_else(|_| Gq::zero(), |k| self.data[i][k].1)
    }

    /// Iterates `(row, col, value)` over nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Gq)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&(j, v)| (i, j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Gq>> {
        let mut out = vec![vec![Gq::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v;
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (i, j, v) in self.entries() {
            data[j].push((i, v.conj()));
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn scale(&self, c: Gq) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|r| r.iter().map(|&(j, v)| (j, v * c)).collect())
                .collect(),
        }
    }

    fn merge_rows(a: &[(usize, Gq)], b: &[(usize, Gq)], sign: Gq) -> Vec<(usize, Gq)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            match (a.get(x), b.get(y)) {
                (Some(&(ja, va)), Some(&(jb, vb))) if ja == jb => {
                    let s = va + vb * sign;
                    if !s.is_zero() {
                        out.push((ja, s));
                    }
                    x += 1;
                    y += 1;
                }
                (Some(&(ja, va)), Some(&(jb, _))) if ja < jb => {
                    out.push((ja, va));
                    x += 1;
                }
                (Some(&(ja, va)), None) => {
                    out.push((ja, va));
                    x += 1;
                }
                (_, Some(&(jb, vb))) => {
                    out.push((jb, vb * sign));
                    y += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out
    }

    fn combine(&self, rhs: &Self, sign: Gq, op: &'static str) -> Result<Self, ShapeError> {
        if self.dims() != rhs.dims() {
            return Err(ShapeError::Mismatch {
                op,
                lhs: self.dims(),
                rhs: rhs.dims(),
            });
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| Self::merge_rows(a, b, sign))
                .collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, ShapeError> {
        self.combine(rhs, Gq::one(), "add")
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, ShapeError> {
        self.combine(rhs, -Gq::one(), "sub")
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, ShapeError> {
        if self.cols != rhs.rows {
            return Err(ShapeError::Mismatch {
                op: "mul",
                lhs: self.dims(),
                rhs: rhs.dims(),
            });
        }
        let mut data = Vec::with_capacity(self.rows);
        let mut acc: Vec<Gq> = vec![Gq::zero(); rhs.cols];
        let mut touched: Vec<usize> = Vec::new();
        for row in &self.data {
            for &(k, a) in row {
                for &(j, b) in &rhs.data[k] {
                    if acc[j].is_zero() {
                        touched.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out_row = Vec::with_capacity(touched.len());
            for &j in &touched {
                let v = std::mem::replace(&mut acc[j], Gq::zero());
                if !v.is_zero() {
                    out_row.push((j, v));
                }
            }
            touched.clear();
            data.push(out_row);
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("matrix add")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("matrix sub")
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("matrix mul")
    }

    /// Product of a nonempty chain of matrices.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a ExactMatrix>) -> Option<Self> {
        let mut it = factors.into_iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.mul(m)))
    }

    /// `self` is a projection when it is self-adjoint and idempotent.
    pub fn is_projection(&self) -> bool {
        self.is_square() && *self == self.adjoint() && self.mul(self) == *self
    }

    /// Projection order `self ≤ other`, read as `self·other = self`.
    pub fn projection_le(&self, other: &Self) -> bool {
        self.mul(other) == *self
    }

    /// Places `self` as a block with top-left corner `(r0, c0)` inside a `rows × cols` zero matrix.
    pub fn embed(&self, rows: usize, cols: usize, r0: usize, c0: usize) -> Self {
        assert!(r0 + self.rows <= rows && c0 + self.cols <= cols, "block does not fit");
        let mut data = vec![Vec::new(); rows];
        for (i, r) in self.data.iter().enumerate() {
            data[r0 + i] = r.iter().map(|&(j, v)| (c0 + j, v)).collect();
        }
        ExactMatrix { rows, cols, data }
    }

    /// Compression to the principal submatrix on `indices` (order preserved).
    pub fn compress(&self, indices: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.cols.max(self.rows)];
        for (k, &i) in indices.iter().enumerate() {
            pos[i] = k;
        }
        let data = indices
            .iter()
            .map(|&i| {
                self.data[i]
                    .iter()
                    .filter(|(j, _)| pos[*j] != usize::MAX)
                    .map(|&(j, v)| (pos[j], v))
                    .collect::<Vec<_>>()
            })
            .map(|mut r: Vec<(usize, Gq)>| {
                r.sort_unstable_by_key(|(j, _)| *j);
                r
            })
            .collect();
        ExactMatrix {
            rows: indices.len(),
            cols: indices.len(),
            data,
        }
    }

    /// Inverse of [`compress`](Self::compress): spreads an `indices.len()` square matrix into size `n`.
    pub fn expand(&self, n: usize, indices: &[usize]) -> Self {
        Self::from_triplets(
            n,
            n,
            self.entries().map(|(i, j, v)| (indices[i], indices[j], v)),
        )
    }

    /// Row and column indices touched by a nonzero entry.
    pub fn support(&self) -> std::collections::BTreeSet<usize> {
        self.entries().flat_map(|(i, j, _)| [i, j]).collect()
    }

    /// Row-major flattening used by the linear-algebra kernel.
    pub fn flat_entries(&self) -> impl Iterator<Item = (usize, Gq)> + '_ {
        let cols = self.cols;
        self.entries().map(move |(i, j, v)| (i * cols + j, v))
    }

    pub fn from_flat(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, Gq)>) -> Self {
        Self::from_triplets(rows, cols, entries.into_iter().map(|(k, v)| (k / cols, k % cols, v)))
    }

    pub fn to_f64(&self) -> Vec<Vec<num_complex::Complex64>> {
        let mut out = vec![vec![num_complex::Complex64::new(0.0, 0.0); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            let (re, im) = v.to_f64_pair();
            out[i][j] = num_complex::Complex64::new(re, im);
        }
        out
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.to_dense().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Serialized as a nested array of rational strings.
impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_dense().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Gq>>::deserialize(deserializer)?;
        ExactMatrix::from_dense(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn multiply_units() {
        let e12 = ExactMatrix::unit(2, 0, 1);
        let e21 = ExactMatrix::unit(2, 1, 0);
        assert_eq!(e12.mul(&e21), ExactMatrix::unit(2, 0, 0));
        assert!(e12.mul(&e12).is_zero());
        assert_eq!(e12.adjoint(), e21);
    }

    #[test]
    fn shape_errors() {
        let a = ExactMatrix::zeros(2, 3);
        assert!(a.try_mul(&a).is_err());
        assert!(a.try_add(&ExactMatrix::zeros(3, 2)).is_err());
        assert_eq!(
            ExactMatrix::from_dense(vec![vec![Gq::int(1)], vec![]]),
            Err(ShapeError::Ragged)
        );
    }

    #[test]
    fn compress_expand() {
        let m = ExactMatrix::from_ints(&[&[1, 2, 0], &[3, 4, 0], &[0, 0, 5]]);
        let c = m.compress(&[2, 0]);
        assert_eq!(c, ExactMatrix::from_ints(&[&[5, 0], &[0, 1]]));
        assert_eq!(c.expand(3, &[2, 0]), ExactMatrix::from_ints(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 5]]));
    }

    #[test]
    fn embed_block() {
        let b = ExactMatrix::identity(2).embed(4, 4, 2, 0);
        assert_eq!(b.get(2, 0), Gq::one());
        assert_eq!(b.get(3, 1), Gq::one());
        assert_eq!(b.nnz(), 2);
    }

    #[test]
    fn json_literal() {
        let m = ExactMatrix::from_dense(vec![vec![Gq::i(), Gq::int(0)], vec!["1/2".parse().unwrap(), Gq::int(1)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["i","0"],["1/2","1"]]"#);
        assert_eq!(serde_json::from_str::<ExactMatrix>(&s).unwrap(), m);
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = ExactMatrix> {
        proptest::collection::vec(proptest::collection::vec(-3i64..4, n), n).prop_map(|rows| {
            ExactMatrix::from_dense(rows.into_iter().map(|r| r.into_iter().map(Gq::int).collect()).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn product_adjoint_reverses(a in arb_matrix(3), b in arb_matrix(3)) {
            prop_assert_eq!(a.mul(&b).adjoint(), b.adjoint().mul(&a.adjoint()));
        }

        #[test]
        fn mul_associates_and_distributes(a in arb_matrix(3), b in arb_matrix(3), c in arb_matrix(3)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }
    }
}
