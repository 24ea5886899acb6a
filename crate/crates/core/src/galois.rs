//! The complex-to-real orbit correspondence as decision procedures and
//! constructions: membership of the rational-point locus, the column-support
//! partition, the sign-set of a parameter, real fibers of size `2^d`, and
//! the sign-stripping map back to the unsigned parameter.

use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::{canonical_tau_rep, OmegaPair, TauPair, ValidationError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaloisError {
    #[error("pair is not in the rational-point locus (transposed product not symmetric)")]
    NotInRCircle,
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

/// Column-support partition of an unsigned pair: for each column, the top
/// support `i_k` and bottom support `j_k` fall into exactly one of four
/// classes. Vertex indices are 1-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KPartition {
    pub k_c: Vec<usize>,
    pub k_d: Vec<usize>,
    pub k_1: Vec<usize>,
    pub k_2: Vec<usize>,
}

impl Serialize for KPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("c", &self.k_c)?;
        map.serialize_entry("d", &self.k_d)?;
        map.serialize_entry("one", &self.k_1)?;
        map.serialize_entry("two", &self.k_2)?;
        map.end()
    }
}

/// A sign vector supported on the matched class: entries `-1` or `1`, and
/// `1` outside it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SignVector(pub Vec<i8>);

/// True iff the complex orbit of the pair contains a real point, i.e. the
/// transposed product of the blocks is symmetric.
pub fn rational_point_test(tau: &TauPair) -> bool {
    tau.has_symmetric_product()
}

fn require_r_circle(tau: &TauPair) -> Result<(), GaloisError> {
    if !rational_point_test(tau) {
        return Err(GaloisError::NotInRCircle);
    }
    Ok(())
}

/// Column-support partition: reading column `k` of the two blocks as
/// `e_{i_k}` and `e_{j_k}` (index 0 for a zero column),
/// `K_c = {j_k : i_k = 0}`, `K_d = {i_k : j_k = 0}`,
/// `K_1 = {i_k : i_k = j_k != 0}`, and `K_2` collects the crossed pairs
/// `i_k = j_l, j_k = i_l` for some `l != k`.
pub fn k_partition(tau: &TauPair) -> Result<KPartition, GaloisError> {
    require_r_circle(tau)?;
    let n = tau.n();
    let mut out = KPartition {
        k_c: Vec::new(),
        k_d: Vec::new(),
        k_1: Vec::new(),
        k_2: Vec::new(),
    };
    let sup = |k: usize| {
        (
            tau.tau1().col_support(k).map(|(r, _)| r + 1).unwrap_or(0),
            tau.tau2().col_support(k).map(|(r, _)| r + 1).unwrap_or(0),
        )
    };
    for k in 0..n {
        let (ik, jk) = sup(k);
        match (ik, jk) {
            (0, j) => out.k_c.push(j),
            (i, 0) => out.k_d.push(i),
            (i, j) if i == j => out.k_1.push(i),
            (i, j) => {
                debug_assert!(
                    (0..n).any(|l| l != k && sup(l) == (j, i)),
                    "crossed column without a partner"
                );
                out.k_2.push(i);
            }
        }
    }
    out.k_c.sort_unstable();
    out.k_d.sort_unstable();
    out.k_1.sort_unstable();
    out.k_2.sort_unstable();
    debug_assert_eq!(
        out.k_c.len() + out.k_d.len() + out.k_1.len() + out.k_2.len(),
        n
    );
    debug_assert_eq!(out.k_2.len() % 2, 0);
    Ok(out)
}

/// The number of columns on which the two blocks agree; the real fiber over
/// the complex orbit has exactly `2^d` elements. Full rank excludes the
/// all-zero column, so this equals the size of the matched class.
pub fn d_of_tau(tau: &TauPair) -> Result<usize, GaloisError> {
    require_r_circle(tau)?;
    let n = tau.n();
    Ok((0..n)
        .filter(|&k| (0..n).all(|r| tau.tau1().entry(r, k) == tau.tau2().entry(r, k)))
        .count())
}

/// The sign-set: all `{-1,1}` vectors supported on the matched class, in a
/// deterministic order with the all-ones vector first.
pub fn sign_set(tau: &TauPair) -> Result<Vec<SignVector>, GaloisError> {
    let part = k_partition(tau)?;
    let n = tau.n();
    let d = part.k_1.len();
    let mut out = Vec::with_capacity(1 << d);
    for mask in 0u64..(1u64 << d) {
        let mut t = vec![1i8; n];
        for (b, &v) in part.k_1.iter().enumerate() {
            if mask & (1 << b) != 0 {
                t[v - 1] = -1;
            }
        }
        out.push(SignVector(t));
    }
    Ok(out)
}

/// The real fiber over the complex orbit of `tau`: the signed pairs
/// `(t * tau1; tau2)` for `t` in the sign-set. Exactly `2^d` pairs with
/// pairwise distinct orbit labels.
pub fn real_fiber(tau: &TauPair) -> Result<Vec<OmegaPair>, GaloisError> {
    require_r_circle(tau)?;
    let base = tau.to_omega().map_err(GaloisError::from)?;
    let mut out = Vec::new();
    for t in sign_set(tau)? {
        out.push(base.scale_tau1_rows(&t.0));
    }
    Ok(out)
}

/// Strips all signs from a signed pair and canonicalizes the column order
/// of the resulting unsigned pair. The result always lies in the
/// rational-point locus.
pub fn strip_signs(omega: &OmegaPair) -> TauPair {
    let tau = TauPair::new(omega.tau1().abs(), omega.tau2().abs())
        .expect("stripping signs preserves shape and rank");
    debug_assert!(tau.has_symmetric_product());
    canonical_tau_rep(&tau)
}
