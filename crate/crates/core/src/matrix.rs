//! Dense exact matrices with rank, reduced column echelon form, and
//! Hermitian/symmetric inertia by congruence elimination.
//!
//! The echelon convention: a reduced column echelon form has leading entries
//! 1 at strictly increasing row indices across the nonzero columns, zero
//! columns last, and each pivot row is zero outside its pivot. This is the
//! conjugate of reduced row echelon form applied to the transpose and is
//! deterministic for a fixed input.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is not Hermitian/symmetric")]
    NotHermitian,
    #[error("matrix data has {got} entries, expected {rows}x{cols}")]
    ShapeMismatch { rows: usize, cols: usize, got: usize },
}

/// Signature of a Hermitian matrix: positive, negative, and null counts.
/// Serialized as the triple `[p, q, r]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub pos: usize,
    pub neg: usize,
    pub nul: usize,
}

impl Serialize for Inertia {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (self.pos, self.neg, self.nul).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Inertia {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Inertia, D::Error> {
        let (pos, neg, nul) = <(usize, usize, usize)>::deserialize(deserializer)?;
        Ok(Inertia { pos, neg, nul })
    }
}

impl Inertia {
    pub fn new(pos: usize, neg: usize, nul: usize) -> Self {
        Inertia { pos, neg, nul }
    }

    pub fn dim(&self) -> usize {
        self.pos + self.neg + self.nul
    }

    pub fn rank(&self) -> usize {
        self.pos + self.neg
    }
}

impl fmt::Debug for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.pos, self.neg, self.nul)
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.pos, self.neg, self.nul)
    }
}

/// Row-major dense matrix over the Gaussian rationals. Zero-sized shapes
/// (`0 x k`, `k x 0`) are admitted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch {
                rows,
                cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from integer rows; panics on ragged input.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&v| Scalar::from_int(v)));
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Scalar::is_real)
    }

    pub fn conj_transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && *self == self.conj_transpose()
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc += &(a * rhs.get(k, c));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    /// Stacks `top` over `bottom`; column counts must agree.
    pub fn stack(top: &Matrix, bottom: &Matrix) -> Matrix {
        assert_eq!(top.cols, bottom.cols, "column mismatch in stack");
        let mut data = Vec::with_capacity((top.rows + bottom.rows) * top.cols);
        data.extend_from_slice(&top.data);
        data.extend_from_slice(&bottom.data);
        Matrix {
            rows: top.rows + bottom.rows,
            cols: top.cols,
            data,
        }
    }

    /// Submatrix for the given 0-based row and column index lists.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(row_idx.len(), col_idx.len());
        for (r, &ri) in row_idx.iter().enumerate() {
            for (c, &ci) in col_idx.iter().enumerate() {
                out.set(r, c, self.get(ri, ci).clone());
            }
        }
        out
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub(crate) fn scale_col(&mut self, c: usize, f: &Scalar) {
        for r in 0..self.rows {
            let v = self.get(r, c) * f;
            self.set(r, c, v);
        }
    }

    /// `col_dst += f * col_src`.
    pub(crate) fn col_axpy(&mut self, dst: usize, src: usize, f: &Scalar) {
        for r in 0..self.rows {
            let v = self.get(r, dst) + &(self.get(r, src) * f);
            self.set(r, dst, v);
        }
    }

    /// `row_dst += f * row_src`.
    pub(crate) fn row_axpy(&mut self, dst: usize, src: usize, f: &Scalar) {
        for c in 0..self.cols {
            let v = self.get(dst, c) + &(self.get(src, c) * f);
            self.set(dst, c, v);
        }
    }

    /// Exact rank over the fraction field.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut pivot = 0;
        for r in 0..a.rows {
            if pivot == a.cols {
                break;
            }
            let Some(j) = (pivot..a.cols).find(|&j| !a.get(r, j).is_zero()) else {
                continue;
            };
            a.swap_cols(pivot, j);
            for j2 in (pivot + 1)..a.cols {
                if !a.get(r, j2).is_zero() {
                    let f = -(a.get(r, j2) / a.get(r, pivot));
                    a.col_axpy(j2, pivot, &f);
                }
            }
            pivot += 1;
        }
        pivot
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for c in 0..n {
                    let x = a.get(pivot, c).clone();
                    let y = a.get(col, c).clone();
                    a.set(pivot, c, y);
                    a.set(col, c, x);
                    let x = inv.get(pivot, c).clone();
                    let y = inv.get(col, c).clone();
                    inv.set(pivot, c, y);
                    inv.set(col, c, x);
                }
            }
            let s = a.get(col, col).inv().expect("pivot is nonzero");
            for c in 0..n {
                let v = a.get(col, c) * &s;
                a.set(col, c, v);
                let v = inv.get(col, c) * &s;
                inv.set(col, c, v);
            }
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let f = -a.get(r, col).clone();
                    a.row_axpy(r, col, &f);
                    inv.row_axpy(r, col, &f);
                }
            }
        }
        Some(inv)
    }

    /// Reduced column echelon form: returns `(E, G)` with `E = self * G` and
    /// `G` invertible, together with the 0-based pivot rows.
    fn rcef_with_pivots(&self) -> (Matrix, Matrix, Vec<usize>) {
        let mut e = self.clone();
        let mut g = Matrix::identity(self.cols);
        let mut pivots = Vec::new();
        let mut pc = 0;
        for r in 0..self.rows {
            if pc == self.cols {
                break;
            }
            let Some(j) = (pc..self.cols).find(|&j| !e.get(r, j).is_zero()) else {
                continue;
            };
            e.swap_cols(pc, j);
            g.swap_cols(pc, j);
            let inv = e.get(r, pc).inv().expect("pivot is nonzero");
            e.scale_col(pc, &inv);
            g.scale_col(pc, &inv);
            for j2 in 0..self.cols {
                if j2 != pc && !e.get(r, j2).is_zero() {
                    let f = -e.get(r, j2).clone();
                    e.col_axpy(j2, pc, &f);
                    g.col_axpy(j2, pc, &f);
                }
            }
            pivots.push(r);
            pc += 1;
        }
        (e, g, pivots)
    }

    /// Reduced column echelon form `(E, G)` with `E = self * G`.
    pub fn reduced_column_echelon(&self) -> (Matrix, Matrix) {
        let (e, g, _) = self.rcef_with_pivots();
        (e, g)
    }

    /// Pivot row indices of the reduced column echelon form, 1-based and
    /// ascending. Empty for the zero matrix.
    pub fn ech_set(&self) -> Vec<usize> {
        let (_, _, pivots) = self.rcef_with_pivots();
        pivots.into_iter().map(|r| r + 1).collect()
    }

    /// Exact signature of a Hermitian/symmetric matrix by congruence
    /// elimination. When every remaining diagonal entry is zero but some
    /// off-diagonal entry is not, a hyperbolic pair contributes `(+1, -1)`;
    /// no square roots are ever taken.
    pub fn inertia(&self) -> Result<Inertia, MatrixError> {
        if !self.is_hermitian() {
            return Err(MatrixError::NotHermitian);
        }
        let mut a = self.clone();
        let mut active: Vec<usize> = (0..self.rows).collect();
        let mut sig = Inertia::new(0, 0, 0);
        while !active.is_empty() {
            if let Some(&i) = active.iter().find(|&&i| !a.get(i, i).is_zero()) {
                let d = a.get(i, i).clone();
                if d.real_sign() > 0 {
                    sig.pos += 1;
                } else {
                    sig.neg += 1;
                }
                for &j in active.iter().filter(|&&j| j != i) {
                    let f = a.get(j, i) / &d;
                    if f.is_zero() {
                        continue;
                    }
                    a.row_axpy(j, i, &-&f);
                    a.col_axpy(j, i, &-f.conj());
                }
                active.retain(|&x| x != i);
            } else if let Some((i, j)) = first_off_diagonal(&a, &active) {
                // Hyperbolic block [[0, a_ij], [conj(a_ij), 0]].
                sig.pos += 1;
                sig.neg += 1;
                let aij = a.get(i, j).clone();
                let others: Vec<usize> =
                    active.iter().copied().filter(|&k| k != i && k != j).collect();
                for &k in &others {
                    let x = a.get(k, i) / &aij.conj();
                    let y = a.get(k, j) / &aij;
                    if !x.is_zero() {
                        a.row_axpy(k, j, &-&x);
                    }
                    if !y.is_zero() {
                        a.row_axpy(k, i, &-&y);
                    }
                    if !x.is_zero() {
                        a.col_axpy(k, j, &-x.conj());
                    }
                    if !y.is_zero() {
                        a.col_axpy(k, i, &-y.conj());
                    }
                }
                active.retain(|&x| x != i && x != j);
            } else {
                sig.nul += active.len();
                break;
            }
        }
        Ok(sig)
    }
}

fn first_off_diagonal(a: &Matrix, active: &[usize]) -> Option<(usize, usize)> {
    for (s, &i) in active.iter().enumerate() {
        for &j in &active[s + 1..] {
            if !a.get(i, j).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

// Wire format: {"rows": R, "cols": C, "data": [[...], ...]} with scalar
// entries as in `Scalar`.
impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("rows", &self.rows)?;
        map.serialize_entry("cols", &self.cols)?;
        let data: Vec<&[Scalar]> = self.data.chunks(self.cols.max(1)).collect();
        map.serialize_entry("data", &data)?;
        map.end()
    }
}

#[derive(Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    #[serde(default)]
    data: Vec<Vec<Scalar>>,
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Matrix, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.rows * repr.cols != 0 && repr.data.len() != repr.rows {
            return Err(de::Error::custom(format!(
                "expected {} rows of data, got {}",
                repr.rows,
                repr.data.len()
            )));
        }
        let mut data = Vec::with_capacity(repr.rows * repr.cols);
        for row in &repr.data {
            if row.len() != repr.cols {
                return Err(de::Error::custom(format!(
                    "expected {} entries per row, got {}",
                    repr.cols,
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Matrix::new(repr.rows, repr.cols, data).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn echelon_example() -> Matrix {
        Matrix::from_int_rows(&[
            &[1, 0, 0, 0],
            &[2, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
        ])
    }

    #[test]
    fn ech_set_of_worked_examples() {
        assert_eq!(echelon_example().ech_set(), vec![1, 3, 4]);
        let single_low = Matrix::from_int_rows(&[
            &[0, 0, 0, 0],
            &[0, 0, 0, 0],
            &[1, 0, 0, 0],
            &[0, 0, 0, 0],
        ]);
        assert_eq!(single_low.ech_set(), vec![3]);
        let single_late = Matrix::from_int_rows(&[
            &[0, 0, 0, 0],
            &[0, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, 0, 0],
        ]);
        assert_eq!(single_late.ech_set(), vec![3]);
        assert_eq!(Matrix::zeros(4, 4).ech_set(), Vec::<usize>::new());
    }

    #[test]
    fn rank_of_echelon_example_is_three() {
        assert_eq!(echelon_example().rank(), 3);
        assert_eq!(Matrix::identity(5).rank(), 5);
        assert_eq!(Matrix::zeros(3, 7).rank(), 0);
    }

    #[test]
    fn rank_of_a_product_is_bounded_by_inner_dimension() {
        // 5x3 = (5x2)(2x3): every 3x3 minor must vanish, so rank <= 2.
        let a = Matrix::from_int_rows(&[&[1, 2], &[3, -1], &[0, 4], &[2, 2], &[-5, 1]]);
        let b = Matrix::from_int_rows(&[&[1, 0, 2], &[3, -2, 1]]);
        let m = a.mul(&b);
        assert!(m.rank() <= 2);
        // Independent oracle: cofactor-expansion determinant of all 3x3 minors.
        for r0 in 0..5 {
            for r1 in (r0 + 1)..5 {
                for r2 in (r1 + 1)..5 {
                    let s = m.submatrix(&[r0, r1, r2], &[0, 1, 2]);
                    assert!(det3(&s).is_zero());
                }
            }
        }
        assert_eq!(m.rank(), 2);
    }

    fn det3(m: &Matrix) -> Scalar {
        let e = |r: usize, c: usize| m.get(r, c).clone();
        let term = |c0: usize, c1: usize, c2: usize| e(0, c0) * e(1, c1) * e(2, c2);
        term(0, 1, 2) - term(0, 2, 1) - term(1, 0, 2) + term(1, 2, 0) + term(2, 0, 1)
            - term(2, 1, 0)
    }

    #[test]
    fn echelon_reconstructs_and_preserves_low_entries() {
        let m = echelon_example();
        let (e, g) = m.reduced_column_echelon();
        assert_eq!(m.mul(&g), e);
        // The 2 below the first pivot survives; pivot rows are cleared.
        assert_eq!(e.get(1, 0), &Scalar::from_int(2));
        for &pr in &[0, 2, 3] {
            for c in 0..4 {
                let expected = match (pr, c) {
                    (0, 0) | (2, 1) | (3, 2) => Scalar::from_int(1),
                    _ => Scalar::zero(),
                };
                assert_eq!(e.get(pr, c), &expected);
            }
        }
    }

    #[test]
    fn echelon_of_zero_matrix() {
        let z = Matrix::zeros(3, 3);
        let (e, g) = z.reduced_column_echelon();
        assert!(e.is_zero());
        assert_eq!(g, Matrix::identity(3));
    }

    #[test]
    fn echelon_of_invertible_matrix_is_identity() {
        let m = Matrix::from_int_rows(&[
            &[2, 1, 0, 3],
            &[1, 1, 1, 0],
            &[0, 2, 1, 1],
            &[1, 0, 0, 1],
        ]);
        assert_eq!(m.rank(), 4);
        let (e, g) = m.reduced_column_echelon();
        assert_eq!(e, Matrix::identity(4));
        assert_eq!(m.mul(&g), e);
    }

    #[test]
    fn inertia_of_worked_examples() {
        let arc_and_one = Matrix::from_int_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(arc_and_one.inertia().unwrap(), Inertia::new(2, 1, 0));

        let tau = Matrix::from_int_rows(&[
            &[0, 0, 0, 0],
            &[0, 0, 1, 0],
            &[0, 1, 0, 0],
            &[0, 0, 0, 1],
        ]);
        assert_eq!(tau.inertia().unwrap(), Inertia::new(2, 1, 1));

        let diag = Matrix::from_int_rows(&[&[5, 0, 0], &[0, -3, 0], &[0, 0, 0]]);
        assert_eq!(diag.inertia().unwrap(), Inertia::new(1, 1, 1));
    }

    #[test]
    fn inertia_rejects_non_hermitian() {
        let m = Matrix::from_int_rows(&[&[0, 1], &[2, 0]]);
        assert_eq!(m.inertia(), Err(MatrixError::NotHermitian));
        // i on the diagonal is not Hermitian either.
        let mut g = Matrix::zeros(1, 1);
        g.set(0, 0, Scalar::i());
        assert_eq!(g.inertia(), Err(MatrixError::NotHermitian));
    }

    #[test]
    fn inertia_of_gaussian_hermitian_matrix() {
        // [[2, 1+i], [1-i, 1]] has determinant 2 - |1+i|^2 = 0, trace > 0.
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 0, Scalar::from_int(2));
        m.set(0, 1, Scalar::gauss(1, 1));
        m.set(1, 0, Scalar::gauss(1, -1));
        m.set(1, 1, Scalar::from_int(1));
        assert!(m.is_hermitian());
        assert_eq!(m.inertia().unwrap(), Inertia::new(1, 0, 1));
    }

    #[test]
    fn conj_transpose_is_involutive_and_antimultiplicative() {
        let mut a = Matrix::zeros(2, 3);
        a.set(0, 0, Scalar::gauss(1, 2));
        a.set(0, 2, Scalar::gauss(0, -1));
        a.set(1, 1, Scalar::from_frac(3, 4));
        let b = Matrix::from_int_rows(&[&[1, 0], &[2, -1], &[0, 3]]);
        assert_eq!(a.conj_transpose().conj_transpose(), a);
        assert_eq!(
            a.mul(&b).conj_transpose(),
            b.conj_transpose().mul(&a.conj_transpose())
        );
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_int_rows(&[&[2, 1, 0], &[1, 1, 1], &[0, 2, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        assert_eq!(inv.mul(&m), Matrix::identity(3));
        let singular = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        let mut g = Matrix::zeros(2, 2);
        g.set(0, 0, Scalar::gauss(1, 1));
        g.set(0, 1, Scalar::gauss(0, -2));
        g.set(1, 1, Scalar::from_frac(3, 7));
        let gi = g.inverse().unwrap();
        assert_eq!(g.mul(&gi), Matrix::identity(2));
    }

    #[test]
    fn zero_sized_shapes() {
        let e = Matrix::zeros(0, 0);
        assert_eq!(e.rank(), 0);
        assert_eq!(e.inertia().unwrap(), Inertia::new(0, 0, 0));
        assert_eq!(e.ech_set(), Vec::<usize>::new());
        let tall = Matrix::zeros(3, 0);
        assert_eq!(tall.rank(), 0);
        assert_eq!(tall.conj_transpose().rows(), 0);
    }

    #[test]
    fn inertia_serializes_as_a_triple() {
        let sig = Inertia::new(2, 1, 1);
        assert_eq!(serde_json::to_string(&sig).unwrap(), "[2,1,1]");
        let back: Inertia = serde_json::from_str("[2,1,1]").unwrap();
        assert_eq!(back, sig);
    }

    #[test]
    fn matrix_json_round_trip() {
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 0, Scalar::from_frac(1, 2));
        m.set(0, 1, Scalar::gauss(0, 1));
        m.set(1, 0, Scalar::gauss(0, -1));
        m.set(1, 1, Scalar::from_int(-3));
        let js = serde_json::to_string(&m).unwrap();
        let back: Matrix = serde_json::from_str(&js).unwrap();
        assert_eq!(back, m);
        assert_eq!(serde_json::to_string(&back).unwrap(), js);

        let parsed: Matrix =
            serde_json::from_str(r#"{"rows":1,"cols":2,"data":[["1/2",{"re":"0","im":"2"}]]}"#)
                .unwrap();
        assert_eq!(parsed.get(0, 0), &Scalar::from_frac(1, 2));
        assert_eq!(parsed.get(0, 1), &Scalar::gauss(0, 2));
    }
}
