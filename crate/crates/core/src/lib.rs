//! Exact K-type transition analysis for the degenerate principal series of
//! an irreducible Hermitian Lie group induced from its Heisenberg parabolic.
//!
//! Everything is computed in exact rational (or Gaussian-rational) arithmetic;
//! no floating point appears anywhere in the data path.
//!
//! Module map:
//! - [`scalars`]: big rationals, Gaussian rationals, Laurent polynomials on a
//!   one- or two-dimensional torus, telescoped Gamma-function ratios.
//! - [`catalog`]: the seven group families, their Jordan characteristics and
//!   derived invariants, dimension/genus duality checks.
//! - [`jordan`]: a concrete matrix model of the Jordan triple used to certify
//!   the structural identities (quadrangle, sl2 pairs, torus orbit).
//! - [`ktypes`]: the K-type lattice per family, admissibility and neighbor
//!   enumeration.
//! - [`coeffs`]: exact transition coefficients: C-function ratios via Gamma
//!   telescoping and affine spectral factors.
//! - [`su2`]: the SU(2) symmetric-power oracle for the recursion formulas of
//!   spherical polynomials on the projective line.
//! - [`disk`]: the disk-polynomial (Jacobi) oracle for the rank-one families
//!   and the product factorization of the type I lattice.
//! - [`analysis`]: weighted K-type graphs, reducibility, complementary-series
//!   scan, Schur constants, unitarizable subsets, component candidates.
//! - [`report`]: structured, deterministic report values shared by the CLI.

pub mod analysis;
pub mod catalog;
pub mod coeffs;
pub mod disk;
pub mod jordan;
pub mod ktypes;
pub mod report;
pub mod scalars;
pub mod su2;

pub use catalog::{Family, GroupDatum, LatticeKind};
pub use coeffs::{AffineFactor, EpsilonReading, Provenance, TransitionCoefficient};
pub use ktypes::{Edge, KType};
pub use scalars::{GaussianRational, LaurentPoly, Rational};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A Gamma-function pole ended up in a denominator position.
    #[error("gamma pole encountered: {0}")]
    PoleEncountered(String),
    /// Leading term requested of the zero polynomial.
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    /// Family parameters outside the legal range.
    #[error("illegal parameters: {0}")]
    IllegalParameters(String),
    /// A K-type of the wrong lattice kind was passed for this group.
    #[error("k-type kind does not match the group lattice: {0}")]
    KindMismatch(String),
    /// The target of a requested transition is not an admissible K-type.
    #[error("inadmissible target: {0}")]
    InadmissibleTarget(String),
    /// A scan result changed when the truncation bound grew.
    #[error("scan unstable under bound growth: {0}")]
    UnstableBound(String),
    /// Schur propagation met an exact mismatch on a cycle.
    #[error("schur constants inconsistent along a cycle: {0}")]
    PathInconsistent(String),
    /// Malformed textual input (rational or group spec).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
