//! Decorated n-clans, (p,q)-clans, restricted clans, and the bijections
//! among clans, canonical signed partial involutions, and stacked pairs,
//! together with exact counting formulas and exhaustive enumerations.
//!
//! Text format: whitespace-separated tokens over `{+, -, c, d}` and positive
//! integers; each integer appears exactly twice and marks an arc, numbered
//! by first occurrence. Example: `d - c 1 + 1 -`.

use std::fmt;

use num::bigint::BigUint;
use num::{One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{ClassifyError, OrbitLabel};
use crate::matrix::Inertia;
use crate::params::{OmegaPair, SignedPartialInvolution, SignedPartialPermutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClanError {
    #[error("invalid arc structure: {0}")]
    InvalidArc(String),
    #[error("clan contains a d-decorated vertex")]
    ContainsD,
    #[error("decoration not allowed here: {0}")]
    BadDecoration(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("sign condition violated: #plus - #minus must equal p - q")]
    SignCondition,
    #[error("cannot parse clan: {0}")]
    Parse(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// One vertex decoration. `Arc` stores the 0-based partner vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ClanEntry {
    Plus,
    Minus,
    C,
    D,
    Arc(usize),
}

fn check_arcs(gamma: &[ClanEntry]) -> Result<(), ClanError> {
    for (i, &e) in gamma.iter().enumerate() {
        if let ClanEntry::Arc(j) = e {
            if j == i {
                return Err(ClanError::InvalidArc(format!("vertex {} loops", i + 1)));
            }
            if j >= gamma.len() || gamma[j] != ClanEntry::Arc(i) {
                return Err(ClanError::InvalidArc(format!(
                    "vertex {} points to {} but is not matched back",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// A graph on `n` vertices, each decorated by `+`, `-`, `c`, `d`, or matched
/// by an arc.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DecoratedClan {
    gamma: Vec<ClanEntry>,
}

impl DecoratedClan {
    pub fn new(gamma: Vec<ClanEntry>) -> Result<Self, ClanError> {
        check_arcs(&gamma)?;
        Ok(DecoratedClan { gamma })
    }

    pub fn n(&self) -> usize {
        self.gamma.len()
    }

    pub fn entries(&self) -> &[ClanEntry] {
        &self.gamma
    }

    pub fn entry(&self, v: usize) -> ClanEntry {
        self.gamma[v]
    }

    /// The all-`+` clan, the image of the identity pair.
    pub fn all_plus(n: usize) -> Self {
        DecoratedClan {
            gamma: vec![ClanEntry::Plus; n],
        }
    }

    pub fn all_of(n: usize, e: ClanEntry) -> Self {
        assert!(!matches!(e, ClanEntry::Arc(_)));
        DecoratedClan { gamma: vec![e; n] }
    }
}

impl fmt::Debug for DecoratedClan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A clan without `d` decorations on vertices `1..=m` (the relabeled form
/// of a restricted clan on an arbitrary index set, transported along the
/// unique order isomorphism).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RestrictedClan {
    gamma: Vec<ClanEntry>,
}

impl RestrictedClan {
    pub fn new(gamma: Vec<ClanEntry>) -> Result<Self, ClanError> {
        if gamma.contains(&ClanEntry::D) {
            return Err(ClanError::ContainsD);
        }
        check_arcs(&gamma)?;
        Ok(RestrictedClan { gamma })
    }

    pub fn m(&self) -> usize {
        self.gamma.len()
    }

    pub fn entries(&self) -> &[ClanEntry] {
        &self.gamma
    }
}

impl fmt::Debug for RestrictedClan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_tokens(&self.gamma))
    }
}

/// A Matsuki-Oshima clan: `p + q` vertices decorated by `+`, `-`, or arcs,
/// with `#plus - #minus = p - q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PqClan {
    p: usize,
    q: usize,
    gamma: Vec<ClanEntry>,
}

impl PqClan {
    pub fn new(p: usize, q: usize, gamma: Vec<ClanEntry>) -> Result<Self, ClanError> {
        if gamma.len() != p + q {
            return Err(ClanError::SizeMismatch(format!(
                "expected {} vertices, got {}",
                p + q,
                gamma.len()
            )));
        }
        if gamma
            .iter()
            .any(|&e| matches!(e, ClanEntry::C | ClanEntry::D))
        {
            return Err(ClanError::BadDecoration(
                "(p,q)-clans admit only +, -, and arcs".into(),
            ));
        }
        check_arcs(&gamma)?;
        let plus = gamma.iter().filter(|&&e| e == ClanEntry::Plus).count() as i64;
        let minus = gamma.iter().filter(|&&e| e == ClanEntry::Minus).count() as i64;
        if plus - minus != p as i64 - q as i64 {
            return Err(ClanError::SignCondition);
        }
        Ok(PqClan { p, q, gamma })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn m(&self) -> usize {
        self.p + self.q
    }

    pub fn entries(&self) -> &[ClanEntry] {
        &self.gamma
    }
}

impl fmt::Debug for PqClan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})[{}]", self.p, self.q, format_tokens(&self.gamma))
    }
}

/// Reads off the clan of a stacked pair, column by column: a zero top
/// column decorates the bottom support with `c`, a zero bottom column
/// decorates the top support with `d`, matching supports give the product
/// of signs, and crossing supports give an arc.
pub fn omega_to_clan(omega: &OmegaPair) -> DecoratedClan {
    let n = omega.n();
    let mut gamma = vec![None; n];
    let mut assign = |k: usize, e: ClanEntry| {
        debug_assert!(
            gamma[k].is_none() || gamma[k] == Some(e),
            "conflicting decoration at vertex {k}"
        );
        gamma[k] = Some(e);
    };
    for j in 0..n {
        match (omega.tau1().col_support(j), omega.tau2().col_support(j)) {
            (None, Some((k, _))) => assign(k, ClanEntry::C),
            (Some((k, _)), None) => assign(k, ClanEntry::D),
            (Some((k1, s1)), Some((k2, s2))) if k1 == k2 => {
                let e = if s1 * s2 > 0 {
                    ClanEntry::Plus
                } else {
                    ClanEntry::Minus
                };
                assign(k1, e);
            }
            (Some((k1, _)), Some((k2, _))) => {
                assign(k1, ClanEntry::Arc(k2));
                assign(k2, ClanEntry::Arc(k1));
            }
            (None, None) => unreachable!("full-rank pairs have no zero column"),
        }
    }
    let gamma: Vec<ClanEntry> = gamma
        .into_iter()
        .map(|e| e.expect("every vertex is decorated"))
        .collect();
    DecoratedClan::new(gamma).expect("clan read off a valid pair is valid")
}

/// The deterministic pair representative of a clan: one column per vertex
/// in increasing vertex order. Vertex `k` contributes column `k` with the
/// bottom block carrying `e_k` unless `k` is `d`-decorated; an arc
/// `{k1 < k2}` puts `e_{k2}` in the top block of column `k1` and `e_{k1}`
/// in the top block of column `k2`.
pub fn clan_to_omega(clan: &DecoratedClan) -> OmegaPair {
    let n = clan.n();
    let mut t1 = vec![0i8; n * n];
    let mut t2 = vec![0i8; n * n];
    for k in 0..n {
        match clan.entry(k) {
            ClanEntry::Plus => {
                t1[k * n + k] = 1;
                t2[k * n + k] = 1;
            }
            ClanEntry::Minus => {
                t1[k * n + k] = -1;
                t2[k * n + k] = 1;
            }
            ClanEntry::C => {
                t2[k * n + k] = 1;
            }
            ClanEntry::D => {
                t1[k * n + k] = 1;
            }
            ClanEntry::Arc(l) => {
                t1[l * n + k] = 1;
                t2[k * n + k] = 1;
            }
        }
    }
    let tau1 = SignedPartialPermutation::new(n, t1).expect("pair built from a clan is valid");
    let tau2 = SignedPartialPermutation::new(n, t2).expect("pair built from a clan is valid");
    OmegaPair::new(tau1, tau2).expect("pair built from a clan is valid")
}

/// Splits a clan into its non-`d` vertex set `I` (1-based, ascending) and
/// the restriction to `I`, relabeled to `1..=#I` along the order
/// isomorphism.
pub fn clan_decompose(clan: &DecoratedClan) -> (Vec<usize>, RestrictedClan) {
    let keep: Vec<usize> = (0..clan.n())
        .filter(|&v| clan.entry(v) != ClanEntry::D)
        .collect();
    let position = |v: usize| keep.iter().position(|&x| x == v).unwrap();
    let gamma: Vec<ClanEntry> = keep
        .iter()
        .map(|&v| match clan.entry(v) {
            ClanEntry::Arc(w) => ClanEntry::Arc(position(w)),
            e => e,
        })
        .collect();
    let i_set = keep.iter().map(|&v| v + 1).collect();
    (
        i_set,
        RestrictedClan::new(gamma).expect("restriction of a valid clan is valid"),
    )
}

/// Inverse of [`clan_decompose`]: transports a restricted clan along the
/// order isomorphism onto `I` and decorates the complement with `d`.
pub fn clan_compose(
    n: usize,
    i_set: &[usize],
    prime: &RestrictedClan,
) -> Result<DecoratedClan, ClanError> {
    if i_set.len() != prime.m() {
        return Err(ClanError::SizeMismatch(format!(
            "index set has {} elements, clan has {} vertices",
            i_set.len(),
            prime.m()
        )));
    }
    if !i_set.windows(2).all(|w| w[0] < w[1]) {
        return Err(ClanError::SizeMismatch("index set must be ascending".into()));
    }
    if i_set.iter().any(|&i| i == 0 || i > n) {
        return Err(ClanError::SizeMismatch(format!(
            "index set must lie in 1..={n}"
        )));
    }
    let mut gamma = vec![ClanEntry::D; n];
    for (t, &i) in i_set.iter().enumerate() {
        gamma[i - 1] = match prime.entries()[t] {
            ClanEntry::Arc(u) => ClanEntry::Arc(i_set[u] - 1),
            e => e,
        };
    }
    DecoratedClan::new(gamma)
}

/// The canonical involution of a restricted clan: `+1` at `(i, j)` for an
/// arc `{i, j}`, `+1`/`-1` on the diagonal for `+`/`-`, zero row and column
/// for `c`.
pub fn gamma_prime_to_spi(prime: &RestrictedClan) -> SignedPartialInvolution {
    let m = prime.m();
    let mut grid = vec![0i8; m * m];
    for (i, &e) in prime.entries().iter().enumerate() {
        match e {
            ClanEntry::Plus => grid[i * m + i] = 1,
            ClanEntry::Minus => grid[i * m + i] = -1,
            ClanEntry::C => {}
            ClanEntry::Arc(j) => grid[i * m + j] = 1,
            ClanEntry::D => unreachable!("restricted clans contain no d"),
        }
    }
    let spp = SignedPartialPermutation::new(m, grid).expect("clan involutions are valid");
    SignedPartialInvolution::new(spp).expect("clan involutions are symmetric")
}

/// Inverse of [`gamma_prime_to_spi`]; requires a canonical (nonnegative
/// arc) involution.
pub fn spi_to_gamma_prime(spi: &SignedPartialInvolution) -> Result<RestrictedClan, ClanError> {
    if !spi.is_plus() {
        return Err(ClanError::BadDecoration(
            "involution has a negative arc; canonicalize first".into(),
        ));
    }
    let m = spi.n();
    let mut gamma = vec![ClanEntry::C; m];
    for (i, slot) in gamma.iter_mut().enumerate() {
        match spi.entry(i, i) {
            1 => *slot = ClanEntry::Plus,
            -1 => *slot = ClanEntry::Minus,
            _ => {}
        }
    }
    for (i, j, _) in spi.arcs() {
        gamma[i] = ClanEntry::Arc(j);
        gamma[j] = ClanEntry::Arc(i);
    }
    RestrictedClan::new(gamma)
}

/// Transports a `(p,q)`-clan along the order isomorphism onto `J` (1-based
/// subset of `1..=m`) and decorates the complement with `c`.
pub fn pq_clan_embed(clan: &PqClan, j_set: &[usize], m: usize) -> Result<RestrictedClan, ClanError> {
    if j_set.len() != clan.m() {
        return Err(ClanError::SizeMismatch(format!(
            "subset has {} elements, clan has {} vertices",
            j_set.len(),
            clan.m()
        )));
    }
    if !j_set.windows(2).all(|w| w[0] < w[1]) || j_set.iter().any(|&j| j == 0 || j > m) {
        return Err(ClanError::SizeMismatch(format!(
            "subset must be ascending inside 1..={m}"
        )));
    }
    let mut gamma = vec![ClanEntry::C; m];
    for (t, &j) in j_set.iter().enumerate() {
        gamma[j - 1] = match clan.entries()[t] {
            ClanEntry::Arc(u) => ClanEntry::Arc(j_set[u] - 1),
            e => e,
        };
    }
    RestrictedClan::new(gamma)
}

/// Inverse of [`pq_clan_embed`]: recovers the `(p,q)`-clan on the non-`c`
/// vertices together with the subset `J` they occupied.
pub fn pq_clan_extract(prime: &RestrictedClan) -> (PqClan, Vec<usize>) {
    let keep: Vec<usize> = (0..prime.m())
        .filter(|&v| prime.entries()[v] != ClanEntry::C)
        .collect();
    let position = |v: usize| keep.iter().position(|&x| x == v).unwrap();
    let gamma: Vec<ClanEntry> = keep
        .iter()
        .map(|&v| match prime.entries()[v] {
            ClanEntry::Arc(w) => ClanEntry::Arc(position(w)),
            e => e,
        })
        .collect();
    let plus = gamma.iter().filter(|&&e| e == ClanEntry::Plus).count();
    let minus = gamma.iter().filter(|&&e| e == ClanEntry::Minus).count();
    let arcs = (gamma.len() - plus - minus) / 2;
    let p = plus + arcs;
    let q = minus + arcs;
    let j_set = keep.iter().map(|&v| v + 1).collect();
    (
        PqClan::new(p, q, gamma).expect("extracted clan is valid"),
        j_set,
    )
}

/// Combinatorial signature of a signed partial involution: positives are
/// `+1` diagonal entries plus arcs, negatives are `-1` diagonal entries
/// plus arcs, nullity is the number of zero columns. Agrees with the exact
/// matrix inertia.
pub fn spi_signature(spi: &SignedPartialInvolution) -> Inertia {
    let m = spi.n();
    let arcs = spi.arcs().len();
    let plus = (0..m).filter(|&i| spi.entry(i, i) == 1).count();
    let minus = (0..m).filter(|&i| spi.entry(i, i) == -1).count();
    let zero_cols = (0..m)
        .filter(|&c| spi.as_spp().col_support(c).is_none())
        .count();
    Inertia::new(plus + arcs, minus + arcs, zero_cols)
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut out = BigUint::one();
    for i in 0..k {
        out = out * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    out
}

fn double_factorial_odd(k: usize) -> BigUint {
    // (2k - 1)!! = 1 * 3 * ... * (2k - 1), empty product for k = 0.
    let mut out = BigUint::one();
    for i in 1..=k {
        out *= BigUint::from(2 * i - 1);
    }
    out
}

/// Number of decorated clans on `n` vertices:
/// `sum_k (2k-1)!! C(n, 2k) 2^(2(n-2k))`.
pub fn count_clans(n: usize) -> BigUint {
    let mut total = BigUint::zero();
    for k in 0..=(n / 2) {
        let term = double_factorial_odd(k)
            * binomial(n, 2 * k)
            * BigUint::from(2u32).pow(2 * (n - 2 * k) as u32);
        total += term;
    }
    total
}

/// Number of `(p,q)`-clans: choosing `2k` arc vertices, a perfect matching
/// on them, and a sign word with excess `p - q` on the rest.
pub fn count_pq_clans(p: usize, q: usize) -> BigUint {
    let m = p + q;
    let mut total = BigUint::zero();
    for k in 0..=p.min(q) {
        total += binomial(m, 2 * k) * double_factorial_odd(k) * binomial(m - 2 * k, p - k);
    }
    total
}

/// Every decorated clan on `n` vertices, exactly once. Order: recursive on
/// the smallest unassigned vertex with options `+`, `-`, `c`, `d`, then
/// arcs to larger unassigned vertices ascending.
pub fn enumerate_clans(n: usize) -> Vec<DecoratedClan> {
    let mut out = Vec::new();
    let mut gamma = vec![ClanEntry::Plus; n];
    let mut assigned = vec![false; n];
    fn rec(
        n: usize,
        gamma: &mut Vec<ClanEntry>,
        assigned: &mut [bool],
        out: &mut Vec<DecoratedClan>,
    ) {
        let Some(v) = (0..n).find(|&v| !assigned[v]) else {
            out.push(DecoratedClan {
                gamma: gamma.clone(),
            });
            return;
        };
        assigned[v] = true;
        for e in [ClanEntry::Plus, ClanEntry::Minus, ClanEntry::C, ClanEntry::D] {
            gamma[v] = e;
            rec(n, gamma, assigned, out);
        }
        for w in (v + 1)..n {
            if assigned[w] {
                continue;
            }
            assigned[w] = true;
            gamma[v] = ClanEntry::Arc(w);
            gamma[w] = ClanEntry::Arc(v);
            rec(n, gamma, assigned, out);
            assigned[w] = false;
        }
        assigned[v] = false;
    }
    rec(n, &mut gamma, &mut assigned, &mut out);
    out
}

/// Every `(p,q)`-clan, exactly once, in the analogous recursive order.
pub fn enumerate_pq_clans(p: usize, q: usize) -> Vec<PqClan> {
    let m = p + q;
    let mut out = Vec::new();
    let mut gamma = vec![ClanEntry::Plus; m];
    let mut assigned = vec![false; m];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        m: usize,
        p: usize,
        q: usize,
        plus: usize,
        minus: usize,
        gamma: &mut Vec<ClanEntry>,
        assigned: &mut [bool],
        out: &mut Vec<PqClan>,
    ) {
        let Some(v) = (0..m).find(|&v| !assigned[v]) else {
            if plus as i64 - minus as i64 == p as i64 - q as i64 {
                out.push(PqClan {
                    p,
                    q,
                    gamma: gamma.clone(),
                });
            }
            return;
        };
        assigned[v] = true;
        gamma[v] = ClanEntry::Plus;
        rec(m, p, q, plus + 1, minus, gamma, assigned, out);
        gamma[v] = ClanEntry::Minus;
        rec(m, p, q, plus, minus + 1, gamma, assigned, out);
        for w in (v + 1)..m {
            if assigned[w] {
                continue;
            }
            assigned[w] = true;
            gamma[v] = ClanEntry::Arc(w);
            gamma[w] = ClanEntry::Arc(v);
            rec(m, p, q, plus, minus, gamma, assigned, out);
            assigned[w] = false;
        }
        assigned[v] = false;
    }
    rec(m, p, q, 0, 0, &mut gamma, &mut assigned, &mut out);
    out
}

/// Clan of an orbit label inside the ambient size `n`.
pub fn label_to_clan(label: &OrbitLabel, n: usize) -> Result<DecoratedClan, ClanError> {
    let prime = spi_to_gamma_prime(label.spi())?;
    clan_compose(n, label.i_set(), &prime)
}

/// Orbit label of a clan.
pub fn clan_to_label(clan: &DecoratedClan) -> Result<OrbitLabel, ClanError> {
    let (i_set, prime) = clan_decompose(clan);
    let spi = gamma_prime_to_spi(&prime);
    Ok(OrbitLabel::new(i_set, spi)?)
}

fn format_tokens(gamma: &[ClanEntry]) -> String {
    let mut arc_number = vec![0usize; gamma.len()];
    let mut next = 1;
    for (i, &e) in gamma.iter().enumerate() {
        if let ClanEntry::Arc(j) = e {
            if arc_number[i] == 0 {
                arc_number[i] = next;
                arc_number[j] = next;
                next += 1;
            }
        }
    }
    gamma
        .iter()
        .enumerate()
        .map(|(i, &e)| match e {
            ClanEntry::Plus => "+".to_string(),
            ClanEntry::Minus => "-".to_string(),
            ClanEntry::C => "c".to_string(),
            ClanEntry::D => "d".to_string(),
            ClanEntry::Arc(_) => arc_number[i].to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for DecoratedClan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tokens(&self.gamma))
    }
}

/// Parses the whitespace-separated token format. The ASCII hyphen and the
/// Unicode minus sign are both accepted for `-`.
pub fn parse_clan(s: &str) -> Result<DecoratedClan, ClanError> {
    let tokens: Vec<&str> = s.split_whitespace().collect();
    let n = tokens.len();
    let mut gamma = vec![ClanEntry::C; n];
    let mut arc_positions: std::collections::BTreeMap<u64, Vec<usize>> = Default::default();
    for (i, tok) in tokens.iter().enumerate() {
        match *tok {
            "+" => gamma[i] = ClanEntry::Plus,
            "-" | "\u{2212}" => gamma[i] = ClanEntry::Minus,
            "c" => gamma[i] = ClanEntry::C,
            "d" => gamma[i] = ClanEntry::D,
            other => {
                let label: u64 = other
                    .parse()
                    .map_err(|_| ClanError::Parse(format!("unknown token {other:?}")))?;
                if label == 0 {
                    return Err(ClanError::Parse("arc labels are positive".into()));
                }
                arc_positions.entry(label).or_default().push(i);
            }
        }
    }
    for (label, positions) in arc_positions {
        let [i, j] = positions[..] else {
            return Err(ClanError::Parse(format!(
                "arc label {label} appears {} times, expected exactly 2",
                positions.len()
            )));
        };
        gamma[i] = ClanEntry::Arc(j);
        gamma[j] = ClanEntry::Arc(i);
    }
    DecoratedClan::new(gamma)
}

// JSON alternative: {"n": 7, "gamma": ["d", "-", "c", 6, "+", 4, "-"]} with
// 1-based arc targets.
impl Serialize for DecoratedClan {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Gamma<'a>(&'a [ClanEntry]);
        impl Serialize for Gamma<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for &e in self.0 {
                    match e {
                        ClanEntry::Plus => seq.serialize_element("+")?,
                        ClanEntry::Minus => seq.serialize_element("-")?,
                        ClanEntry::C => seq.serialize_element("c")?,
                        ClanEntry::D => seq.serialize_element("d")?,
                        ClanEntry::Arc(j) => seq.serialize_element(&(j + 1))?,
                    }
                }
                seq.end()
            }
        }
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("n", &self.n())?;
        map.serialize_entry("gamma", &Gamma(&self.gamma))?;
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ClanToken {
    Symbol(String),
    Target(u64),
}

#[derive(Deserialize)]
struct ClanRepr {
    n: usize,
    gamma: Vec<ClanToken>,
}

impl<'de> Deserialize<'de> for DecoratedClan {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ClanRepr::deserialize(deserializer)?;
        if repr.gamma.len() != repr.n {
            return Err(de::Error::custom(format!(
                "clan on {} vertices needs {} entries, got {}",
                repr.n,
                repr.n,
                repr.gamma.len()
            )));
        }
        let gamma: Vec<ClanEntry> = repr
            .gamma
            .iter()
            .map(|t| match t {
                ClanToken::Symbol(s) => match s.as_str() {
                    "+" => Ok(ClanEntry::Plus),
                    "-" | "\u{2212}" => Ok(ClanEntry::Minus),
                    "c" => Ok(ClanEntry::C),
                    "d" => Ok(ClanEntry::D),
                    other => Err(de::Error::custom(format!("unknown decoration {other:?}"))),
                },
                ClanToken::Target(j) => {
                    if *j == 0 || *j as usize > repr.n {
                        Err(de::Error::custom(format!("arc target {j} out of range")))
                    } else {
                        Ok(ClanEntry::Arc(*j as usize - 1))
                    }
                }
            })
            .collect::<Result<_, _>>()?;
        DecoratedClan::new(gamma).map_err(de::Error::custom)
    }
}
