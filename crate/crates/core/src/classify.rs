//! The classification pipeline: complete orbit invariants for the
//! triangular-congruence action on Hermitian/symmetric matrices,
//! reconstruction of the canonical signed partial involution, reduction
//! witnesses, and end-to-end classification of Lagrangian frames.

use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{Inertia, Matrix, MatrixError};
use crate::params::{
    canonicalize_spi, OmegaPair, SignedPartialInvolution, SignedPartialPermutation,
    ValidationError,
};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("matrix is not Hermitian/symmetric")]
    NotHermitian,
    #[error("profile is not realizable: {0}")]
    UnrealizableProfile(String),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("internal certification failed: {0}")]
    Certification(String),
}

impl From<MatrixError> for ClassifyError {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::NotHermitian => ClassifyError::NotHermitian,
            other => ClassifyError::InvalidFrame(other.to_string()),
        }
    }
}

impl From<ValidationError> for ClassifyError {
    fn from(e: ValidationError) -> Self {
        ClassifyError::InvalidFrame(e.to_string())
    }
}

/// The complete orbit invariant of a Hermitian/symmetric matrix under the
/// triangular congruence action: all trailing-submatrix ranks
/// `rank z[{p+1..m}, {q+1..m}]` for `0 <= p <= q < m` and all trailing
/// signatures `sign z[{p+1..m}]` for `0 <= p < m`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InvariantProfile {
    m: usize,
    /// Triangular: `ranks[p][q - p] = rank z_{[p]^c [q]^c}`.
    ranks: Vec<Vec<usize>>,
    /// `signatures[p] = sign z_{[p]^c}`, serialized as `(p, q, r)` triples.
    signatures: Vec<Inertia>,
}

impl InvariantProfile {
    pub fn m(&self) -> usize {
        self.m
    }

    /// `rank z_{[p]^c [q]^c}` for `0 <= p <= q < m` (0-based `p`, `q`).
    pub fn rank_at(&self, p: usize, q: usize) -> usize {
        assert!(p <= q && q < self.m);
        self.ranks[p][q - p]
    }

    /// `sign z_{[p]^c}` for `0 <= p < m`.
    pub fn signature_at(&self, p: usize) -> Inertia {
        self.signatures[p]
    }

    pub fn signatures(&self) -> &[Inertia] {
        &self.signatures
    }
}

/// Computes the invariant profile of a Hermitian/symmetric matrix.
pub fn invariant_profile(z: &Matrix) -> Result<InvariantProfile, ClassifyError> {
    if !z.is_hermitian() {
        return Err(ClassifyError::NotHermitian);
    }
    let m = z.rows();
    let mut ranks = Vec::with_capacity(m);
    let mut signatures = Vec::with_capacity(m);
    for p in 0..m {
        let rows: Vec<usize> = (p..m).collect();
        let mut row_ranks = Vec::with_capacity(m - p);
        for q in p..m {
            let cols: Vec<usize> = (q..m).collect();
            row_ranks.push(z.submatrix(&rows, &cols).rank());
        }
        ranks.push(row_ranks);
        signatures.push(z.submatrix(&rows, &rows).inertia()?);
    }
    Ok(InvariantProfile { m, ranks, signatures })
}

fn signature_diff(a: Inertia, b: Inertia) -> (i64, i64, i64) {
    (
        a.pos as i64 - b.pos as i64,
        a.neg as i64 - b.neg as i64,
        a.nul as i64 - b.nul as i64,
    )
}

/// Reconstructs the unique nonnegative-arc signed partial involution whose
/// profile equals the input, by the descending recursion over the trailing
/// submatrices. Each step re-derives the expected invariants of the partial
/// matrix and aborts with `UnrealizableProfile` on the first mismatch.
pub fn reconstruct_spi(
    profile: &InvariantProfile,
) -> Result<SignedPartialInvolution, ClassifyError> {
    let m = profile.m;
    let mut grid = vec![0i8; m * m];
    for p in (0..m).rev() {
        let prev = if p + 1 < m {
            profile.signature_at(p + 1)
        } else {
            Inertia::new(0, 0, 0)
        };
        let target = profile.signature_at(p);
        match signature_diff(target, prev) {
            (1, 0, 0) => grid[p * m + p] = 1,
            (0, 1, 0) => grid[p * m + p] = -1,
            (0, 0, 1) => grid[p * m + p] = 0,
            (1, 1, -1) => {
                let k = (1..=(m - p - 1))
                    .filter(|&j| {
                        profile.rank_at(p, p + j) == profile.rank_at(p + 1, p + j) + 1
                    })
                    .max()
                    .ok_or_else(|| {
                        ClassifyError::UnrealizableProfile(format!(
                            "no admissible arc column at step p = {p}"
                        ))
                    })?;
                let partner = p + k;
                if grid[partner * m + partner] != 0
                    || (partner + 1..m).any(|c| grid[partner * m + c] != 0)
                {
                    return Err(ClassifyError::UnrealizableProfile(format!(
                        "arc target {partner} already occupied at step p = {p}"
                    )));
                }
                grid[p * m + partner] = 1;
                grid[partner * m + p] = 1;
            }
            other => {
                return Err(ClassifyError::UnrealizableProfile(format!(
                    "signature step {other:?} at p = {p} matches no case"
                )))
            }
        }
        // Re-derive the invariants of the partial matrix tau_{[p]^c}.
        let rows: Vec<usize> = (p..m).collect();
        let partial = submatrix_of_grid_rect(&grid, m, &rows, &rows);
        let sig = partial.inertia().map_err(ClassifyError::from)?;
        if sig != target {
            return Err(ClassifyError::UnrealizableProfile(format!(
                "signature mismatch at p = {p}: built {sig:?}, profile says {target:?}"
            )));
        }
        for q in p..m {
            let cols: Vec<usize> = (q..m).collect();
            let got = submatrix_of_grid_rect(&grid, m, &rows, &cols).rank();
            if got != profile.rank_at(p, q) {
                return Err(ClassifyError::UnrealizableProfile(format!(
                    "rank mismatch at (p, q) = ({p}, {q}): built {got}, profile says {}",
                    profile.rank_at(p, q)
                )));
            }
        }
    }
    let spp = SignedPartialPermutation::new(m, grid)
        .map_err(|e| ClassifyError::UnrealizableProfile(e.to_string()))?;
    let spi = SignedPartialInvolution::new(spp)
        .map_err(|e| ClassifyError::UnrealizableProfile(e.to_string()))?;
    debug_assert!(spi.is_plus());
    Ok(spi)
}

fn submatrix_of_grid_rect(grid: &[i8], m: usize, rows: &[usize], cols: &[usize]) -> Matrix {
    let mut out = Matrix::zeros(rows.len(), cols.len());
    for (r, &ri) in rows.iter().enumerate() {
        for (c, &ci) in cols.iter().enumerate() {
            let v = grid[ri * m + ci];
            if v != 0 {
                out.set(r, c, Scalar::from_int(v as i64));
            }
        }
    }
    out
}

/// The unique nonnegative-arc signed partial involution in the triangular
/// congruence orbit of `z`, computed through the complete invariants.
pub fn borel_normal_form(z: &Matrix) -> Result<SignedPartialInvolution, ClassifyError> {
    reconstruct_spi(&invariant_profile(z)?)
}

/// Triangular reduction witness: returns upper-triangular invertible `b` and
/// `w = b z b*` such that `w` has the sparsity pattern of a signed partial
/// involution with arc entries exactly 1 and each nonzero diagonal entry a
/// rational of the correct sign. Diagonal entries are determined only up to
/// positive rational squares, since exact unit pivots would require square
/// roots outside the field.
pub fn borel_reduce_witness(z: &Matrix) -> Result<(Matrix, Matrix), ClassifyError> {
    if !z.is_hermitian() {
        return Err(ClassifyError::NotHermitian);
    }
    let m = z.rows();
    let mut w = z.clone();
    let mut b = Matrix::identity(m);

    // row_dst += f * row_src together with the conjugate column update and
    // the bookkeeping b <- E b for E = I + f E_{dst,src}.
    fn congruence_add(w: &mut Matrix, b: &mut Matrix, dst: usize, src: usize, f: &Scalar) {
        if f.is_zero() {
            return;
        }
        w.row_axpy(dst, src, f);
        w.col_axpy(dst, src, &f.conj());
        b.row_axpy(dst, src, f);
    }

    fn scale_index(w: &mut Matrix, b: &mut Matrix, i: usize, s: &Scalar) {
        let m = w.rows();
        for c in 0..m {
            let val = w.get(i, c) * s;
            w.set(i, c, val);
            let bb = b.get(i, c) * s;
            b.set(i, c, bb);
        }
        w.scale_col(i, &s.conj());
    }

    let mut remaining: Vec<usize> = (0..m).collect();
    while let Some(&i) = remaining.last() {
        if !w.get(i, i).is_zero() {
            let d = w.get(i, i).clone();
            for &j in remaining.iter().take(remaining.len() - 1) {
                let f = -(w.get(j, i) / &d);
                congruence_add(&mut w, &mut b, j, i, &f);
            }
            remaining.pop();
            continue;
        }
        let column_entries: Vec<usize> = remaining[..remaining.len() - 1]
            .iter()
            .copied()
            .filter(|&r| !w.get(r, i).is_zero())
            .collect();
        let Some(&k) = column_entries.last() else {
            // Zero row and column at i.
            remaining.pop();
            continue;
        };
        // Clear the column entries above the lowest one at k.
        for &r in &column_entries {
            if r == k {
                continue;
            }
            let f = -(w.get(r, i) / w.get(k, i));
            congruence_add(&mut w, &mut b, r, k, &f);
        }
        // Scale the row/column at i so the (k, i) entry becomes exactly 1.
        let v = w.get(k, i).clone();
        if !v.is_one() {
            let s = v.conj().inv().expect("pivot is nonzero");
            scale_index(&mut w, &mut b, i, &s);
        }
        // Use the unit entry to clear the remainder of row/column k; the
        // partner's own diagonal needs the halved correction.
        for &r in remaining.iter().take(remaining.len() - 1) {
            let c = if r == k {
                w.get(k, k) * &Scalar::from_frac(-1, 2)
            } else {
                -w.get(r, k).clone()
            };
            congruence_add(&mut w, &mut b, r, i, &c);
        }
        remaining.pop();
        remaining.retain(|&x| x != k);
    }
    Ok((b, w))
}

/// Entrywise sign pattern of a reduction result, as a signed partial
/// involution.
pub fn sign_pattern(w: &Matrix) -> Result<SignedPartialInvolution, ClassifyError> {
    let m = w.rows();
    let mut grid = vec![0i8; m * m];
    for r in 0..m {
        for c in 0..m {
            let e = w.get(r, c);
            if !e.is_zero() {
                if !e.is_real() {
                    return Err(ClassifyError::Certification(format!(
                        "non-real entry {e} at ({r}, {c}) in reduction result"
                    )));
                }
                grid[r * m + c] = e.real_sign();
            }
        }
    }
    let spp = SignedPartialPermutation::new(m, grid)
        .map_err(|e| ClassifyError::Certification(e.to_string()))?;
    SignedPartialInvolution::new(spp).map_err(|e| ClassifyError::Certification(e.to_string()))
}

/// A Lagrangian frame: a `2n x n` full-rank stacked pair `(C; D)` with
/// `C* D` Hermitian.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LagrangianFrame {
    n: usize,
    c: Matrix,
    d: Matrix,
}

impl LagrangianFrame {
    pub fn new(c: Matrix, d: Matrix) -> Result<Self, ClassifyError> {
        let n = c.rows();
        if c.cols() != n || d.rows() != n || d.cols() != n {
            return Err(ClassifyError::InvalidFrame(format!(
                "expected two square blocks of equal size, got {}x{} and {}x{}",
                c.rows(),
                c.cols(),
                d.rows(),
                d.cols()
            )));
        }
        if !c.conj_transpose().mul(&d).is_hermitian() {
            return Err(ClassifyError::InvalidFrame(
                "C* D is not Hermitian/symmetric".into(),
            ));
        }
        if Matrix::stack(&c, &d).rank() != n {
            return Err(ClassifyError::InvalidFrame(
                "stacked pair is rank deficient".into(),
            ));
        }
        Ok(LagrangianFrame { n, c, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn from_omega(omega: &OmegaPair) -> Self {
        LagrangianFrame {
            n: omega.n(),
            c: omega.tau1().to_matrix(),
            d: omega.tau2().to_matrix(),
        }
    }

    /// A Hermitian matrix `z` viewed as the frame `(z; identity)`.
    pub fn from_hermitian(z: &Matrix) -> Result<Self, ClassifyError> {
        if !z.is_hermitian() {
            return Err(ClassifyError::NotHermitian);
        }
        Ok(LagrangianFrame {
            n: z.rows(),
            c: z.clone(),
            d: Matrix::identity(z.rows()),
        })
    }
}

/// An orbit label: the echelon set `I` (1-based, ascending) together with
/// the canonical signed partial involution of size `#I`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct OrbitLabel {
    i_set: Vec<usize>,
    spi: SignedPartialInvolution,
}

impl OrbitLabel {
    pub fn new(i_set: Vec<usize>, spi: SignedPartialInvolution) -> Result<Self, ClassifyError> {
        if i_set.len() != spi.n() {
            return Err(ClassifyError::InvalidFrame(format!(
                "index set of size {} does not match an involution of size {}",
                i_set.len(),
                spi.n()
            )));
        }
        if !i_set.windows(2).all(|w| w[0] < w[1]) || i_set.first().is_some_and(|&i| i == 0) {
            return Err(ClassifyError::InvalidFrame(
                "index set must be strictly increasing and 1-based".into(),
            ));
        }
        if !spi.is_plus() {
            return Err(ClassifyError::InvalidFrame(
                "label involution must have nonnegative arcs".into(),
            ));
        }
        Ok(OrbitLabel { i_set, spi })
    }

    /// 1-based echelon set, ascending.
    pub fn i_set(&self) -> &[usize] {
        &self.i_set
    }

    pub fn spi(&self) -> &SignedPartialInvolution {
        &self.spi
    }
}

impl Serialize for OrbitLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("I", &self.i_set)?;
        map.serialize_entry("spi", &self.spi)?;
        map.end()
    }
}

#[derive(Deserialize)]
struct LabelRepr {
    #[serde(rename = "I")]
    i_set: Vec<usize>,
    spi: SignedPartialInvolution,
}

impl<'de> Deserialize<'de> for OrbitLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = LabelRepr::deserialize(deserializer)?;
        OrbitLabel::new(repr.i_set, repr.spi).map_err(de::Error::custom)
    }
}

/// The echelon set and extracted Hermitian block of a frame, following the
/// constructive normalization: right-normalize `D` to reduced column echelon
/// form, clear below the pivots by a triangular left action, and read off
/// the leading block of the row-permuted `C`.
pub fn frame_z_block(f: &LagrangianFrame) -> Result<(Vec<usize>, Matrix), ClassifyError> {
    let n = f.n;
    let (mut d1, g) = f.d.reduced_column_echelon();
    let mut c1 = f.c.mul(&g);
    let pivots: Vec<usize> = f.d.ech_set().into_iter().map(|i| i - 1).collect();
    let m = pivots.len();
    // Clear the entries below each pivot with a lower-triangular action on
    // D; the matching action on C is upper triangular.
    for (k, &ik) in pivots.iter().enumerate() {
        for r in (ik + 1)..n {
            let alpha = d1.get(r, k).clone();
            if alpha.is_zero() {
                continue;
            }
            d1.row_axpy(r, ik, &-&alpha);
            c1.row_axpy(ik, r, &alpha.conj());
        }
    }
    // The bottom block is now (e_{i_1} ... e_{i_m} 0 ... 0).
    debug_assert!((0..n).all(|r| (0..n).all(|c| {
        let expected = pivots.get(c) == Some(&r);
        (d1.get(r, c) == &Scalar::one()) == expected
            && (expected || d1.get(r, c).is_zero())
    })));
    // Row permutation pulling the pivot rows to the top, complement below
    // in ascending order.
    let complement: Vec<usize> = (0..n).filter(|r| !pivots.contains(r)).collect();
    let sigma: Vec<usize> = pivots.iter().chain(complement.iter()).copied().collect();
    let mut cp = Matrix::zeros(n, n);
    for (k, &sk) in sigma.iter().enumerate() {
        for c in 0..n {
            cp.set(k, c, c1.get(sk, c).clone());
        }
    }
    // Certify the block structure forced by the membership conditions.
    let rows_top: Vec<usize> = (0..m).collect();
    let rows_bot: Vec<usize> = (m..n).collect();
    let cols_left: Vec<usize> = (0..m).collect();
    let cols_right: Vec<usize> = (m..n).collect();
    let z11 = cp.submatrix(&rows_top, &cols_left);
    let z12 = cp.submatrix(&rows_top, &cols_right);
    let z22 = cp.submatrix(&rows_bot, &cols_right);
    if !z12.is_zero() {
        return Err(ClassifyError::Certification(
            "upper-right block of the normalized frame is nonzero".into(),
        ));
    }
    if !z11.is_hermitian() {
        return Err(ClassifyError::Certification(
            "leading block of the normalized frame is not Hermitian".into(),
        ));
    }
    if z22.rank() != n - m {
        return Err(ClassifyError::Certification(
            "trailing block of the normalized frame is singular".into(),
        ));
    }
    Ok((pivots.into_iter().map(|i| i + 1).collect(), z11))
}

/// Classifies a Lagrangian frame: `I` is the echelon set of `D` and the
/// involution is the normal form of the extracted Hermitian block.
pub fn classify_frame(f: &LagrangianFrame) -> Result<OrbitLabel, ClassifyError> {
    let (i_set, z11) = frame_z_block(f)?;
    let spi = borel_normal_form(&z11)?;
    OrbitLabel::new(i_set, spi)
}

/// Classifies a signed stacked pair through the integer specialization:
/// right-normalize the bottom block by column signs and a permutation,
/// extract the leading involution, and canonicalize its arc signs.
pub fn normalize_omega(omega: &OmegaPair) -> Result<OrbitLabel, ClassifyError> {
    let n = omega.n();
    let tau2 = omega.tau2();
    // Supports of the bottom block: (row, column, sign), sorted by row.
    let mut supports: Vec<(usize, usize, i8)> = (0..n)
        .filter_map(|r| tau2.row_support(r).map(|(c, s)| (r, c, s)))
        .collect();
    supports.sort_by_key(|&(r, _, _)| r);
    let m = supports.len();
    let used: Vec<usize> = supports.iter().map(|&(_, c, _)| c).collect();
    let mut order: Vec<usize> = used.clone();
    order.extend((0..n).filter(|c| !used.contains(c)));
    let mut eta = vec![1i8; n];
    for &(_, c, s) in &supports {
        eta[c] = s;
    }
    let ones = vec![1i8; n];
    let t1 = omega.tau1().act(&ones, &eta, &order);
    let t2 = omega.tau2().act(&ones, &eta, &order);

    // After normalization the bottom block is (e_{i_1} ... e_{i_m} 0 ... 0).
    for (k, &(r, _, _)) in supports.iter().enumerate() {
        debug_assert_eq!(t2.entry(r, k), 1);
    }
    let mut grid = vec![0i8; m * m];
    for (k, &(rk, _, _)) in supports.iter().enumerate() {
        for l in 0..n {
            let v = t1.entry(rk, l);
            if v == 0 {
                continue;
            }
            if l >= m {
                return Err(ClassifyError::Certification(
                    "normalized top block has support outside the leading square".into(),
                ));
            }
            grid[k * m + l] = v;
        }
    }
    // Rows of the top block outside I must live in the trailing columns.
    for r in 0..n {
        if supports.iter().any(|&(sr, _, _)| sr == r) {
            continue;
        }
        if let Some((c, _)) = t1.row_support(r) {
            if c < m {
                return Err(ClassifyError::Certification(
                    "normalized top block mixes trailing rows into leading columns".into(),
                ));
            }
        }
    }
    let spp = SignedPartialPermutation::new(m, grid)
        .map_err(|e| ClassifyError::Certification(e.to_string()))?;
    let spi = SignedPartialInvolution::new(spp)
        .map_err(|e| ClassifyError::Certification(e.to_string()))?;
    let i_set: Vec<usize> = supports.iter().map(|&(r, _, _)| r + 1).collect();
    OrbitLabel::new(i_set, canonicalize_spi(&spi))
}
