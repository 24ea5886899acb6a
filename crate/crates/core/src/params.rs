//! Finite parameter families: signed partial permutations (SPP), signed
//! partial involutions (SPI / SPI+), stacked pairs with full rank and
//! symmetric product, and their unsigned analogues, together with the group
//! actions and exhaustive enumerations used by the classifiers and oracles.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Default guard for the doubly-exponential enumerations.
pub const DEFAULT_MAX_ENUM_N: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidationError {
    #[error("matrix is not a signed partial permutation")]
    NotSpp,
    #[error("matrix is not a partial permutation (entries must be 0 or 1)")]
    NotPartialPermutation,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("product of the transposed top block with the bottom block is not symmetric")]
    NotSymmetricProduct,
    #[error("stacked pair has rank below its size")]
    RankDeficient,
    #[error("sizes {0} and {1} do not match")]
    SizeMismatch(usize, usize),
    #[error("size {n} exceeds the enumeration guard {max}")]
    SizeGuardExceeded { n: usize, max: usize },
}

/// An `n x n` matrix over `{-1, 0, 1}` with at most one nonzero entry in
/// each row and each column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedPartialPermutation {
    n: usize,
    entries: Vec<i8>,
}

impl SignedPartialPermutation {
    pub fn new(n: usize, entries: Vec<i8>) -> Result<Self, ValidationError> {
        if entries.len() != n * n {
            return Err(ValidationError::SizeMismatch(entries.len(), n * n));
        }
        let spp = SignedPartialPermutation { n, entries };
        if !spp.is_valid() {
            return Err(ValidationError::NotSpp);
        }
        Ok(spp)
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, ValidationError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(ValidationError::SizeMismatch(row.len(), n));
            }
            for &v in *row {
                if !(-1..=1).contains(&v) {
                    return Err(ValidationError::NotSpp);
                }
                entries.push(v as i8);
            }
        }
        SignedPartialPermutation::new(n, entries)
    }

    pub fn zero(n: usize) -> Self {
        SignedPartialPermutation {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut spp = SignedPartialPermutation::zero(n);
        for i in 0..n {
            spp.entries[i * n + i] = 1;
        }
        spp
    }

    fn is_valid(&self) -> bool {
        let n = self.n;
        if self.entries.iter().any(|&v| !(-1..=1).contains(&v)) {
            return false;
        }
        for r in 0..n {
            if (0..n).filter(|&c| self.entries[r * n + c] != 0).count() > 1 {
                return false;
            }
        }
        for c in 0..n {
            if (0..n).filter(|&r| self.entries[r * n + c] != 0).count() > 1 {
                return false;
            }
        }
        true
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, r: usize, c: usize) -> i8 {
        self.entries[r * self.n + c]
    }

    fn set(&mut self, r: usize, c: usize, v: i8) {
        self.entries[r * self.n + c] = v;
    }

    /// The unique nonzero of column `c` as `(row, sign)`, if any.
    pub fn col_support(&self, c: usize) -> Option<(usize, i8)> {
        (0..self.n).find_map(|r| {
            let v = self.entry(r, c);
            (v != 0).then_some((r, v))
        })
    }

    /// The unique nonzero of row `r` as `(col, sign)`, if any.
    pub fn row_support(&self, r: usize) -> Option<(usize, i8)> {
        (0..self.n).find_map(|c| {
            let v = self.entry(r, c);
            (v != 0).then_some((c, v))
        })
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|r| (r + 1..self.n).all(|c| self.entry(r, c) == self.entry(c, r)))
    }

    pub fn is_partial_permutation(&self) -> bool {
        self.entries.iter().all(|&v| v >= 0)
    }

    /// Entrywise absolute value.
    pub fn abs(&self) -> Self {
        SignedPartialPermutation {
            n: self.n,
            entries: self.entries.iter().map(|&v| v.abs()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                let v = self.entry(r, c);
                if v != 0 {
                    m.set(r, c, Scalar::from_int(v as i64));
                }
            }
        }
        m
    }

    /// `eps * tau * eta * w` with `eps`, `eta` diagonal sign matrices and `w`
    /// a permutation acting by `(tau w)(:, j) = tau(:, w(j))`.
    #[allow(clippy::needless_range_loop)]
    pub fn act(&self, eps: &[i8], eta: &[i8], w: &[usize]) -> Self {
        assert_eq!(eps.len(), self.n);
        assert_eq!(eta.len(), self.n);
        assert_eq!(w.len(), self.n);
        let mut out = SignedPartialPermutation::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let src = w[j];
                let v = self.entry(i, src);
                if v != 0 {
                    out.set(i, j, eps[i] * v * eta[src]);
                }
            }
        }
        out
    }
}

impl fmt::Debug for SignedPartialPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|c| self.entry(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// A symmetric signed partial permutation. The SPI+ refinement additionally
/// has nonnegative off-diagonal entries and is the canonical Borel-orbit
/// representative on Hermitian/symmetric matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedPartialInvolution(SignedPartialPermutation);

impl SignedPartialInvolution {
    pub fn new(spp: SignedPartialPermutation) -> Result<Self, ValidationError> {
        if !spp.is_symmetric() {
            return Err(ValidationError::NotSymmetric);
        }
        Ok(SignedPartialInvolution(spp))
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, ValidationError> {
        SignedPartialInvolution::new(SignedPartialPermutation::from_int_rows(rows)?)
    }

    pub fn zero(n: usize) -> Self {
        SignedPartialInvolution(SignedPartialPermutation::zero(n))
    }

    pub fn identity(n: usize) -> Self {
        SignedPartialInvolution(SignedPartialPermutation::identity(n))
    }

    pub fn as_spp(&self) -> &SignedPartialPermutation {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn entry(&self, r: usize, c: usize) -> i8 {
        self.0.entry(r, c)
    }

    pub fn to_matrix(&self) -> Matrix {
        self.0.to_matrix()
    }

    /// All off-diagonal entries nonnegative.
    pub fn is_plus(&self) -> bool {
        let n = self.n();
        (0..n).all(|r| (0..n).all(|c| r == c || self.entry(r, c) >= 0))
    }

    /// Arcs `(i, j)` with `i < j` (0-based) and the arc sign.
    pub fn arcs(&self) -> Vec<(usize, usize, i8)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let v = self.entry(i, j);
                if v != 0 {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    /// Conjugation `eps * tau * eps` by a diagonal sign matrix.
    pub fn conjugate_by_signs(&self, eps: &[i8]) -> Self {
        let id: Vec<usize> = (0..self.n()).collect();
        SignedPartialInvolution(self.0.act(eps, eps, &id))
    }
}

impl fmt::Debug for SignedPartialInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The unique SPI+ element in the sign-conjugation orbit of `tau`: every arc
/// entry becomes `+1`, diagonal entries are unchanged.
pub fn canonicalize_spi(tau: &SignedPartialInvolution) -> SignedPartialInvolution {
    canonicalize_spi_with_witness(tau).0
}

/// Canonicalization together with the sign vector `eps` realizing it, so
/// that `eps * tau * eps` equals the returned SPI+.
pub fn canonicalize_spi_with_witness(
    tau: &SignedPartialInvolution,
) -> (SignedPartialInvolution, Vec<i8>) {
    let n = tau.n();
    let mut eps = vec![1i8; n];
    for (i, j, sign) in tau.arcs() {
        // Arc endpoints carry no diagonal entry, so flipping the larger
        // endpoint fixes this arc and touches no other.
        debug_assert_eq!(tau.entry(i, i), 0);
        debug_assert_eq!(tau.entry(j, j), 0);
        if sign < 0 {
            eps[j] = -eps[j];
        }
    }
    let canon = tau.conjugate_by_signs(&eps);
    debug_assert!(canon.is_plus());
    (canon, eps)
}

/// Integer product of the transposed first block with the second:
/// `(t tau1 tau2)[j][l] = col_j(tau1) . col_l(tau2)`.
fn transposed_product_entry(
    tau1: &SignedPartialPermutation,
    tau2: &SignedPartialPermutation,
    j: usize,
    l: usize,
) -> i8 {
    match (tau1.col_support(j), tau2.col_support(l)) {
        (Some((r1, s1)), Some((r2, s2))) if r1 == r2 => s1 * s2,
        _ => 0,
    }
}

fn has_symmetric_product(
    tau1: &SignedPartialPermutation,
    tau2: &SignedPartialPermutation,
) -> bool {
    let n = tau1.n();
    (0..n).all(|j| {
        (j + 1..n).all(|l| {
            transposed_product_entry(tau1, tau2, j, l) == transposed_product_entry(tau1, tau2, l, j)
        })
    })
}

/// The columns of a signed partial permutation pair have pairwise disjoint
/// supports in the stacked matrix, so the stacked rank equals the number of
/// columns that are nonzero in at least one block.
fn stacked_full_rank(tau1: &SignedPartialPermutation, tau2: &SignedPartialPermutation) -> bool {
    (0..tau1.n()).all(|j| tau1.col_support(j).is_some() || tau2.col_support(j).is_some())
}

/// A stacked pair `(tau1; tau2)` of signed partial permutations with
/// symmetric transposed product and full stacked rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OmegaPair {
    tau1: SignedPartialPermutation,
    tau2: SignedPartialPermutation,
}

impl OmegaPair {
    /// Validates the two membership conditions beyond the SPP shape.
    pub fn new(
        tau1: SignedPartialPermutation,
        tau2: SignedPartialPermutation,
    ) -> Result<Self, ValidationError> {
        if tau1.n() != tau2.n() {
            return Err(ValidationError::SizeMismatch(tau1.n(), tau2.n()));
        }
        if !has_symmetric_product(&tau1, &tau2) {
            return Err(ValidationError::NotSymmetricProduct);
        }
        if !stacked_full_rank(&tau1, &tau2) {
            return Err(ValidationError::RankDeficient);
        }
        Ok(OmegaPair { tau1, tau2 })
    }

    pub fn from_int_rows(tau1: &[&[i64]], tau2: &[&[i64]]) -> Result<Self, ValidationError> {
        OmegaPair::new(
            SignedPartialPermutation::from_int_rows(tau1)?,
            SignedPartialPermutation::from_int_rows(tau2)?,
        )
    }

    pub fn n(&self) -> usize {
        self.tau1.n()
    }

    pub fn tau1(&self) -> &SignedPartialPermutation {
        &self.tau1
    }

    pub fn tau2(&self) -> &SignedPartialPermutation {
        &self.tau2
    }

    /// The stacked `2n x n` exact matrix.
    pub fn to_stacked_matrix(&self) -> Matrix {
        Matrix::stack(&self.tau1.to_matrix(), &self.tau2.to_matrix())
    }

    /// The echelon set of the bottom block (1-based, ascending), which
    /// stratifies the family. For a signed partial permutation this is the
    /// set of rows carrying a nonzero entry.
    pub fn ech_set(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&r| self.tau2.row_support(r).is_some())
            .map(|r| r + 1)
            .collect()
    }

    /// Applies `(eps, eta, w)`: left sign, right sign, right permutation.
    pub fn act(&self, g: &GroupElement) -> OmegaPair {
        OmegaPair {
            tau1: self.tau1.act(&g.left, &g.right, &g.perm),
            tau2: self.tau2.act(&g.left, &g.right, &g.perm),
        }
    }

    /// Scales the rows of `tau1` only; the representative map of the real
    /// fiber construction.
    pub fn scale_tau1_rows(&self, t: &[i8]) -> OmegaPair {
        let ones = vec![1i8; self.n()];
        let id: Vec<usize> = (0..self.n()).collect();
        OmegaPair {
            tau1: self.tau1.act(t, &ones, &id),
            tau2: self.tau2.clone(),
        }
    }
}

impl fmt::Debug for OmegaPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau1:\n{:?}tau2:\n{:?}", self.tau1, self.tau2)
    }
}

/// A stacked pair of partial permutations (entries `{0,1}`) with full
/// stacked rank. The symmetric-product refinement is membership in the
/// subset whose complex orbits carry real points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TauPair {
    tau1: SignedPartialPermutation,
    tau2: SignedPartialPermutation,
}

impl TauPair {
    pub fn new(
        tau1: SignedPartialPermutation,
        tau2: SignedPartialPermutation,
    ) -> Result<Self, ValidationError> {
        if tau1.n() != tau2.n() {
            return Err(ValidationError::SizeMismatch(tau1.n(), tau2.n()));
        }
        if !tau1.is_partial_permutation() || !tau2.is_partial_permutation() {
            return Err(ValidationError::NotPartialPermutation);
        }
        if !stacked_full_rank(&tau1, &tau2) {
            return Err(ValidationError::RankDeficient);
        }
        Ok(TauPair { tau1, tau2 })
    }

    pub fn from_int_rows(tau1: &[&[i64]], tau2: &[&[i64]]) -> Result<Self, ValidationError> {
        TauPair::new(
            SignedPartialPermutation::from_int_rows(tau1)?,
            SignedPartialPermutation::from_int_rows(tau2)?,
        )
    }

    pub fn n(&self) -> usize {
        self.tau1.n()
    }

    pub fn tau1(&self) -> &SignedPartialPermutation {
        &self.tau1
    }

    pub fn tau2(&self) -> &SignedPartialPermutation {
        &self.tau2
    }

    /// Symmetric transposed product: the pair parametrizes a complex orbit
    /// with nonempty real points.
    pub fn has_symmetric_product(&self) -> bool {
        has_symmetric_product(&self.tau1, &self.tau2)
    }

    /// Reinterprets the pair as a signed pair (all signs `+1`).
    pub fn to_omega(&self) -> Result<OmegaPair, ValidationError> {
        OmegaPair::new(self.tau1.clone(), self.tau2.clone())
    }

    /// Right action of a permutation on the columns.
    pub fn permute_columns(&self, w: &[usize]) -> TauPair {
        let ones = vec![1i8; self.n()];
        TauPair {
            tau1: self.tau1.act(&ones, &ones, w),
            tau2: self.tau2.act(&ones, &ones, w),
        }
    }
}

impl fmt::Debug for TauPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau1:\n{:?}tau2:\n{:?}", self.tau1, self.tau2)
    }
}

/// The canonical representative of the column-permutation orbit of a pair:
/// columns sorted ascending by the encoding `(tau1 support row + 1 or 0,
/// tau2 support row + 1 or 0)`. Distinct columns never share an encoding,
/// so the sort is strict and the map is idempotent.
pub fn canonical_tau_rep(tau: &TauPair) -> TauPair {
    let n = tau.n();
    let key = |j: usize| {
        (
            tau.tau1.col_support(j).map_or(0, |(r, _)| r + 1),
            tau.tau2.col_support(j).map_or(0, |(r, _)| r + 1),
        )
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| key(j));
    tau.permute_columns(&order)
}

/// One element of the symmetry group: a left sign vector, a right sign
/// vector, and a right column permutation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupElement {
    pub left: Vec<i8>,
    pub right: Vec<i8>,
    pub perm: Vec<usize>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement {
            left: vec![1; n],
            right: vec![1; n],
            perm: (0..n).collect(),
        }
    }

    pub fn left_sign_flip(n: usize, i: usize) -> Self {
        let mut g = GroupElement::identity(n);
        g.left[i] = -1;
        g
    }

    pub fn right_sign_flip(n: usize, i: usize) -> Self {
        let mut g = GroupElement::identity(n);
        g.right[i] = -1;
        g
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut g = GroupElement::identity(n);
        g.perm.swap(i, j);
        g
    }
}

fn check_guard(n: usize, max: usize) -> Result<(), ValidationError> {
    if n > max {
        return Err(ValidationError::SizeGuardExceeded { n, max });
    }
    Ok(())
}

/// Every signed partial permutation of size `n`, exactly once.
///
/// Order: recursive over rows; for each row the options are "no entry"
/// first, then `(column, +1)`, `(column, -1)` with columns ascending.
pub fn enumerate_spp(n: usize) -> Vec<SignedPartialPermutation> {
    let mut out = Vec::new();
    let mut used_cols = vec![false; n];
    let mut current = SignedPartialPermutation::zero(n);
    fn rec(
        r: usize,
        n: usize,
        used_cols: &mut [bool],
        current: &mut SignedPartialPermutation,
        out: &mut Vec<SignedPartialPermutation>,
    ) {
        if r == n {
            out.push(current.clone());
            return;
        }
        rec(r + 1, n, used_cols, current, out);
        for c in 0..n {
            if used_cols[c] {
                continue;
            }
            used_cols[c] = true;
            for s in [1i8, -1] {
                current.set(r, c, s);
                rec(r + 1, n, used_cols, current, out);
            }
            current.set(r, c, 0);
            used_cols[c] = false;
        }
    }
    rec(0, n, &mut used_cols, &mut current, &mut out);
    out
}

/// Every signed partial involution of size `m`, exactly once: the SPI+
/// elements expanded by all arc sign patterns.
pub fn enumerate_spi(m: usize) -> Vec<SignedPartialInvolution> {
    let mut out = Vec::new();
    for plus in enumerate_spi_plus(m) {
        let arcs = plus.arcs();
        for mask in 0..(1u32 << arcs.len()) {
            let mut spp = plus.as_spp().clone();
            for (b, &(i, j, _)) in arcs.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    spp.set(i, j, -1);
                    spp.set(j, i, -1);
                }
            }
            out.push(SignedPartialInvolution(spp));
        }
    }
    out
}

/// Every SPI+ element of size `m`, exactly once.
///
/// Order: recursive over the smallest unassigned vertex with options
/// `+1`, `-1`, `0` on the diagonal, then arcs to larger unassigned
/// vertices ascending.
pub fn enumerate_spi_plus(m: usize) -> Vec<SignedPartialInvolution> {
    let mut out = Vec::new();
    let mut assigned = vec![false; m];
    let mut current = SignedPartialPermutation::zero(m);
    fn rec(
        m: usize,
        assigned: &mut [bool],
        current: &mut SignedPartialPermutation,
        out: &mut Vec<SignedPartialInvolution>,
    ) {
        let Some(v) = (0..m).find(|&v| !assigned[v]) else {
            out.push(SignedPartialInvolution(current.clone()));
            return;
        };
        assigned[v] = true;
        for s in [1i8, -1, 0] {
            current.set(v, v, s);
            rec(m, assigned, current, out);
        }
        current.set(v, v, 0);
        for w in (v + 1)..m {
            if assigned[w] {
                continue;
            }
            assigned[w] = true;
            current.set(v, w, 1);
            current.set(w, v, 1);
            rec(m, assigned, current, out);
            current.set(v, w, 0);
            current.set(w, v, 0);
            assigned[w] = false;
        }
        assigned[v] = false;
    }
    rec(m, &mut assigned, &mut current, &mut out);
    out
}

/// Column choice while extending a stacked pair: supports and signs of the
/// two blocks, `None` meaning a zero column in that block.
type ColChoice = (Option<(usize, i8)>, Option<(usize, i8)>);

#[allow(clippy::needless_range_loop)]
fn visit_pairs(
    n: usize,
    signed: bool,
    require_symmetric: bool,
    visitor: &mut dyn FnMut(&[ColChoice]),
) {
    let signs: &[i8] = if signed { &[1, -1] } else { &[1] };
    let mut cols: Vec<ColChoice> = Vec::with_capacity(n);
    let mut used1 = vec![false; n];
    let mut used2 = vec![false; n];

    // Dot product of the tau1 part of column `a` with the tau2 part of `b`.
    fn cross(a: &ColChoice, b: &ColChoice) -> i8 {
        match (a.0, b.1) {
            (Some((r1, s1)), Some((r2, s2))) if r1 == r2 => s1 * s2,
            _ => 0,
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        j: usize,
        n: usize,
        signs: &[i8],
        require_symmetric: bool,
        cols: &mut Vec<ColChoice>,
        used1: &mut [bool],
        used2: &mut [bool],
        visitor: &mut dyn FnMut(&[ColChoice]),
    ) {
        if j == n {
            visitor(cols);
            return;
        }
        let mut first_options: Vec<Option<(usize, i8)>> = vec![None];
        for r in 0..n {
            if !used1[r] {
                for &s in signs {
                    first_options.push(Some((r, s)));
                }
            }
        }
        for a in first_options {
            let mut second_options: Vec<Option<(usize, i8)>> = Vec::new();
            if a.is_some() {
                second_options.push(None);
            }
            for r in 0..n {
                if !used2[r] {
                    for &s in signs {
                        second_options.push(Some((r, s)));
                    }
                }
            }
            if let Some((r, _)) = a {
                used1[r] = true;
            }
            for b in second_options {
                let candidate = (a, b);
                if require_symmetric
                    && !cols
                        .iter()
                        .all(|prev| cross(prev, &candidate) == cross(&candidate, prev))
                {
                    continue;
                }
                if let Some((r, _)) = b {
                    used2[r] = true;
                }
                cols.push(candidate);
                rec(j + 1, n, signs, require_symmetric, cols, used1, used2, visitor);
                cols.pop();
                if let Some((r, _)) = b {
                    used2[r] = false;
                }
            }
            if let Some((r, _)) = a {
                used1[r] = false;
            }
        }
    }
    rec(
        0,
        n,
        signs,
        require_symmetric,
        &mut cols,
        &mut used1,
        &mut used2,
        visitor,
    );
}

fn cols_to_pair(n: usize, cols: &[ColChoice]) -> (SignedPartialPermutation, SignedPartialPermutation) {
    let mut t1 = SignedPartialPermutation::zero(n);
    let mut t2 = SignedPartialPermutation::zero(n);
    for (j, &(a, b)) in cols.iter().enumerate() {
        if let Some((r, s)) = a {
            t1.set(r, j, s);
        }
        if let Some((r, s)) = b {
            t2.set(r, j, s);
        }
    }
    (t1, t2)
}

/// Streams every element of the full signed family of size `n` exactly once
/// into `visitor`, in a deterministic column-lexicographic order.
pub fn visit_omega(n: usize, visitor: &mut dyn FnMut(OmegaPair)) {
    visit_pairs(n, true, true, &mut |cols| {
        let (t1, t2) = cols_to_pair(n, cols);
        visitor(OmegaPair { tau1: t1, tau2: t2 })
    });
}

/// Collects the full signed family of size `n`, guarded.
pub fn enumerate_omega(n: usize, max_n: usize) -> Result<Vec<OmegaPair>, ValidationError> {
    check_guard(n, max_n)?;
    let mut out = Vec::new();
    visit_omega(n, &mut |w| out.push(w));
    Ok(out)
}

/// Collects the unsigned pairs with symmetric product of size `n`, guarded.
pub fn enumerate_r_circle(n: usize, max_n: usize) -> Result<Vec<TauPair>, ValidationError> {
    check_guard(n, max_n)?;
    let mut out = Vec::new();
    visit_pairs(n, false, true, &mut |cols| {
        let (t1, t2) = cols_to_pair(n, cols);
        out.push(TauPair { tau1: t1, tau2: t2 });
    });
    Ok(out)
}

/// Collects all unsigned full-rank pairs of size `n` (no symmetry
/// requirement), guarded.
pub fn enumerate_t_circle(n: usize, max_n: usize) -> Result<Vec<TauPair>, ValidationError> {
    check_guard(n, max_n)?;
    let mut out = Vec::new();
    visit_pairs(n, false, false, &mut |cols| {
        let (t1, t2) = cols_to_pair(n, cols);
        out.push(TauPair { tau1: t1, tau2: t2 });
    });
    Ok(out)
}

// Integer-matrix wire format: {"rows": n, "cols": n, "data": [[...]]} with
// plain integer entries; integer-valued strings are accepted on input.
struct IntEntry(i64);

impl<'de> Deserialize<'de> for IntEntry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<IntEntry, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = IntEntry;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer entry")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<IntEntry, E> {
                Ok(IntEntry(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<IntEntry, E> {
                i64::try_from(v).map(IntEntry).map_err(E::custom)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<IntEntry, E> {
                v.trim().parse::<i64>().map(IntEntry).map_err(E::custom)
            }
        }
        deserializer.deserialize_any(V)
    }
}

fn serialize_int_grid<S: Serializer>(
    spp: &SignedPartialPermutation,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    struct Grid<'a>(&'a SignedPartialPermutation);
    struct Row<'a>(&'a SignedPartialPermutation, usize);
    impl Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            let n = self.0.n();
            let mut seq = s.serialize_seq(Some(n))?;
            for c in 0..n {
                seq.serialize_element(&self.0.entry(self.1, c))?;
            }
            seq.end()
        }
    }
    impl Serialize for Grid<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            let n = self.0.n();
            let mut seq = s.serialize_seq(Some(n))?;
            for r in 0..n {
                seq.serialize_element(&Row(self.0, r))?;
            }
            seq.end()
        }
    }
    let mut map = serializer.serialize_map(Some(3))?;
    map.serialize_entry("rows", &spp.n())?;
    map.serialize_entry("cols", &spp.n())?;
    map.serialize_entry("data", &Grid(spp))?;
    map.end()
}

impl Serialize for SignedPartialPermutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize_int_grid(self, serializer)
    }
}

#[derive(Deserialize)]
struct IntGridRepr {
    rows: usize,
    cols: usize,
    #[serde(default)]
    data: Vec<Vec<IntEntry>>,
}

impl IntGridRepr {
    fn into_spp<E: de::Error>(self) -> Result<SignedPartialPermutation, E> {
        if self.rows != self.cols {
            return Err(E::custom("signed partial permutations are square"));
        }
        let n = self.rows;
        if n > 0 && self.data.len() != n {
            return Err(E::custom(format!(
                "expected {n} rows of data, got {}",
                self.data.len()
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in &self.data {
            if row.len() != n {
                return Err(E::custom(format!(
                    "expected {n} entries per row, got {}",
                    row.len()
                )));
            }
            for e in row {
                if !(-1..=1).contains(&e.0) {
                    return Err(E::custom("entries must be -1, 0, or 1"));
                }
                entries.push(e.0 as i8);
            }
        }
        SignedPartialPermutation::new(n, entries).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for SignedPartialPermutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        IntGridRepr::deserialize(deserializer)?.into_spp()
    }
}

impl Serialize for SignedPartialInvolution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SignedPartialInvolution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        SignedPartialInvolution::new(SignedPartialPermutation::deserialize(deserializer)?)
            .map_err(de::Error::custom)
    }
}

// Pairs serialize as {"tau1": M, "tau2": M}.
#[derive(Serialize, Deserialize)]
struct PairRepr {
    tau1: SignedPartialPermutation,
    tau2: SignedPartialPermutation,
}

impl Serialize for OmegaPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("tau1", &self.tau1)?;
        map.serialize_entry("tau2", &self.tau2)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for OmegaPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PairRepr::deserialize(deserializer)?;
        OmegaPair::new(repr.tau1, repr.tau2).map_err(de::Error::custom)
    }
}

impl Serialize for TauPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("tau1", &self.tau1)?;
        map.serialize_entry("tau2", &self.tau2)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for TauPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PairRepr::deserialize(deserializer)?;
        TauPair::new(repr.tau1, repr.tau2).map_err(de::Error::custom)
    }
}
