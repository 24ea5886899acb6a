//! Exact-arithmetic classification of Borel orbits on the (Hermitian)
//! Lagrangian Grassmannians attached to U(n,n) and Sp(2n,R).
//!
//! The crate provides:
//!
//! - [`scalar`], [`matrix`]: arbitrary-precision rational and Gaussian
//!   rational arithmetic with exact rank, reduced column echelon form, and
//!   Hermitian/symmetric inertia;
//! - [`params`]: the finite parameter families (signed partial permutations
//!   and involutions, stacked pairs, their group actions and enumerations);
//! - [`classify`]: complete orbit invariants, normal forms, reduction
//!   witnesses, and classification of Lagrangian frames;
//! - [`clans`]: decorated n-clans and (p,q)-clans with all conversions and
//!   counting formulas;
//! - [`galois`]: the complex-to-real orbit correspondence (K-partitions,
//!   sign sets, real fibers);
//! - [`oracle`]: independent brute-force certification of the fast paths.

pub mod classify;
pub mod clans;
pub mod galois;
pub mod matrix;
pub mod oracle;
pub mod params;
pub mod scalar;

pub use classify::{InvariantProfile, LagrangianFrame, OrbitLabel};
pub use clans::{DecoratedClan, PqClan, RestrictedClan};
pub use galois::KPartition;
pub use matrix::{Inertia, Matrix};
pub use params::{OmegaPair, SignedPartialInvolution, SignedPartialPermutation, TauPair};
pub use scalar::{Rational, Scalar};
