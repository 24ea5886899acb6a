//! Independent brute-force certification: exhaustive orbit enumeration of
//! the signed-pair family under its full symmetry group via union-find, and
//! randomized triangular-invariance sampling of the classifier. These paths
//! share no code with the fast classifiers they check.

use std::collections::HashMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{invariant_profile, normalize_omega, reconstruct_spi, OrbitLabel};
use crate::clans::{count_clans, omega_to_clan, DecoratedClan};
use crate::matrix::Matrix;
use crate::params::{enumerate_omega, GroupElement, OmegaPair};
use crate::scalar::Scalar;

/// Guard for the exhaustive union-find runs.
pub const MAX_BRUTE_FORCE_N: usize = 3;
/// Guard for the randomized invariance sampler.
pub const MAX_SAMPLE_M: usize = 6;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("size {n} exceeds the certification guard {max}")]
    SizeGuardExceeded { n: usize, max: usize },
    #[error("certification failure: {message}")]
    CertificationFailure {
        message: String,
        /// Replayable witness in the standard JSON formats.
        witness: String,
    },
}

/// Union-find over element indices with path compression and union by rank.
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            self.parent[x] = self.find(self.parent[x]);
        }
        self.parent[x]
    }

    pub fn union(&mut self, x: usize, y: usize) {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return;
        }
        if self.rank[rx] < self.rank[ry] {
            self.parent[rx] = ry;
        } else if self.rank[rx] > self.rank[ry] {
            self.parent[ry] = rx;
        } else {
            self.parent[ry] = rx;
            self.rank[rx] += 1;
        }
    }
}

/// The result of closing the full family under the symmetry group: the
/// element list, the resolved union-find roots, and the classes (sorted
/// member lists; the first member is the representative).
pub struct OrbitTable {
    pub elements: Vec<OmegaPair>,
    pub roots: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

/// Enumerates the signed family of size `n` and closes it under the
/// generators of the symmetry group (left diagonal signs, right diagonal
/// signs, adjacent transpositions). The generator images stay inside the
/// enumerated set, so union-find closure computes the full partition.
pub fn brute_force_orbit_count(n: usize) -> Result<(usize, OrbitTable), OracleError> {
    if n > MAX_BRUTE_FORCE_N {
        return Err(OracleError::SizeGuardExceeded {
            n,
            max: MAX_BRUTE_FORCE_N,
        });
    }
    let elements = enumerate_omega(n, MAX_BRUTE_FORCE_N).expect("guard already checked");
    let index: HashMap<&OmegaPair, usize> =
        elements.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut generators: Vec<GroupElement> = Vec::new();
    for i in 0..n {
        generators.push(GroupElement::left_sign_flip(n, i));
        generators.push(GroupElement::right_sign_flip(n, i));
    }
    for i in 0..n.saturating_sub(1) {
        generators.push(GroupElement::transposition(n, i, i + 1));
    }
    let mut uf = UnionFind::new(elements.len());
    for (i, w) in elements.iter().enumerate() {
        for g in &generators {
            let image = w.act(g);
            let j = *index
                .get(&image)
                .expect("the family is stable under the group action");
            uf.union(i, j);
        }
    }
    let roots: Vec<usize> = (0..elements.len()).map(|i| uf.find(i)).collect();
    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &r) in roots.iter().enumerate() {
        by_root.entry(r).or_default().push(i);
    }
    let mut classes: Vec<Vec<usize>> = by_root.into_values().collect();
    for class in &mut classes {
        class.sort_unstable();
    }
    classes.sort_by_key(|c| c[0]);
    let count = classes.len();
    Ok((
        count,
        OrbitTable {
            elements,
            roots,
            classes,
        },
    ))
}

#[derive(Serialize, Debug)]
pub struct CertifyReport {
    pub n: usize,
    pub elements: usize,
    pub classes: usize,
    pub expected_classes: String,
    pub passed: bool,
    pub elapsed_ms: u128,
}

fn witness_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|e| format!("\"unserializable witness: {e}\""))
}

/// Certifies the fast classifiers against the union-find partition: labels
/// and clans must be constant on classes, injective across classes, and the
/// class count must equal the closed counting formula.
pub fn certify_classifier(n: usize) -> Result<CertifyReport, OracleError> {
    let start = Instant::now();
    let (count, table) = brute_force_orbit_count(n)?;
    let mut seen: HashMap<DecoratedClan, usize> = HashMap::new();
    let mut labels: Vec<OrbitLabel> = Vec::new();
    for (ci, class) in table.classes.iter().enumerate() {
        let rep = &table.elements[class[0]];
        let rep_label = normalize_omega(rep).map_err(|e| OracleError::CertificationFailure {
            message: format!("classifier failed on a valid element: {e}"),
            witness: witness_json(rep),
        })?;
        let rep_clan = omega_to_clan(rep);
        for &i in &class[1..] {
            let w = &table.elements[i];
            let label = normalize_omega(w).map_err(|e| OracleError::CertificationFailure {
                message: format!("classifier failed on a valid element: {e}"),
                witness: witness_json(w),
            })?;
            if label != rep_label {
                return Err(OracleError::CertificationFailure {
                    message: "label not constant on a group orbit".into(),
                    witness: witness_json(&(rep, w)),
                });
            }
            let clan = omega_to_clan(w);
            if clan != rep_clan {
                return Err(OracleError::CertificationFailure {
                    message: "clan not constant on a group orbit".into(),
                    witness: witness_json(&(rep, w)),
                });
            }
        }
        if let Some(&other) = seen.get(&rep_clan) {
            let other_rep = &table.elements[table.classes[other][0]];
            return Err(OracleError::CertificationFailure {
                message: "distinct orbits share a clan".into(),
                witness: witness_json(&(rep, other_rep)),
            });
        }
        seen.insert(rep_clan, ci);
        labels.push(rep_label);
    }
    let expected = count_clans(n);
    if num::BigUint::from(count) != expected {
        return Err(OracleError::CertificationFailure {
            message: format!("orbit count {count} differs from the formula value {expected}"),
            witness: "null".into(),
        });
    }
    Ok(CertifyReport {
        n,
        elements: table.elements.len(),
        classes: count,
        expected_classes: expected.to_string(),
        passed: true,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// How the sampler conjugates: the honest upper-triangular action, or a
/// deliberately general linear fault injection used as a negative control
/// for the harness itself.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConjugationStyle {
    UpperTriangular,
    FullLinearFault,
}

#[derive(Serialize, Debug)]
pub struct SampleReport {
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    pub checked: usize,
    pub passed: bool,
    pub elapsed_ms: u128,
}

fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_frac(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

fn random_scalar(rng: &mut ChaCha8Rng, gaussian: bool) -> Scalar {
    if gaussian {
        &random_rational(rng) + &(&Scalar::i() * &random_rational(rng))
    } else {
        random_rational(rng)
    }
}

fn random_hermitian(rng: &mut ChaCha8Rng, m: usize, gaussian: bool) -> Matrix {
    let mut z = Matrix::zeros(m, m);
    for i in 0..m {
        z.set(i, i, random_rational(rng));
        for j in (i + 1)..m {
            let v = random_scalar(rng, gaussian);
            z.set(i, j, v.clone());
            z.set(j, i, v.conj());
        }
    }
    z
}

fn random_upper_triangular(rng: &mut ChaCha8Rng, m: usize, gaussian: bool) -> Matrix {
    let mut b = Matrix::zeros(m, m);
    for i in 0..m {
        let mut d = random_scalar(rng, gaussian);
        while d.is_zero() {
            d = random_scalar(rng, gaussian);
        }
        b.set(i, i, d);
        for j in (i + 1)..m {
            b.set(i, j, random_scalar(rng, gaussian));
        }
    }
    b
}

fn random_invertible(rng: &mut ChaCha8Rng, m: usize, gaussian: bool) -> Matrix {
    loop {
        let mut g = Matrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                g.set(i, j, random_scalar(rng, gaussian));
            }
        }
        if g.rank() == m {
            return g;
        }
    }
}

/// Randomized invariance sampling: for `trials` random Hermitian (and real
/// symmetric) matrices and random upper-triangular invertible conjugators,
/// asserts that the invariant profile and the normal form are unchanged.
/// Deterministic under `seed`.
pub fn borel_invariance_sample(
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<SampleReport, OracleError> {
    borel_invariance_sample_with_style(m, trials, seed, ConjugationStyle::UpperTriangular)
}

/// Sampler with an explicit conjugation style; the fault-injecting style is
/// expected to fail and validates the harness.
pub fn borel_invariance_sample_with_style(
    m: usize,
    trials: usize,
    seed: u64,
    style: ConjugationStyle,
) -> Result<SampleReport, OracleError> {
    if m > MAX_SAMPLE_M {
        return Err(OracleError::SizeGuardExceeded {
            n: m,
            max: MAX_SAMPLE_M,
        });
    }
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for _ in 0..trials {
        for gaussian in [false, true] {
            let z = random_hermitian(&mut rng, m, gaussian);
            let b = match style {
                ConjugationStyle::UpperTriangular => {
                    random_upper_triangular(&mut rng, m, gaussian)
                }
                ConjugationStyle::FullLinearFault => random_invertible(&mut rng, m, gaussian),
            };
            let moved = b.mul(&z).mul(&b.conj_transpose());
            let base_profile =
                invariant_profile(&z).expect("random Hermitian matrices are Hermitian");
            let moved_profile =
                invariant_profile(&moved).expect("congruence preserves Hermitian");
            if base_profile != moved_profile {
                return Err(OracleError::CertificationFailure {
                    message: "profile changed under conjugation".into(),
                    witness: witness_json(&(&z, &b)),
                });
            }
            let base_nf = reconstruct_spi(&base_profile).expect("profile is realizable");
            let moved_nf = reconstruct_spi(&moved_profile).expect("profile is realizable");
            if base_nf != moved_nf {
                return Err(OracleError::CertificationFailure {
                    message: "normal form changed under conjugation".into(),
                    witness: witness_json(&(&z, &b)),
                });
            }
            checked += 1;
        }
    }
    Ok(SampleReport {
        m,
        trials,
        seed,
        checked,
        passed: true,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
