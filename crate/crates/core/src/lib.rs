//! Workbench for involutive FL_e-chains built from layer groups.
//!
//! An *involutive FL_e-chain* is a totally ordered commutative residuated
//! monoid with an involutive negation `x' = x -> f`.  Every odd or even such
//! chain decomposes into a *bunch of layer groups*: a direct system of
//! totally ordered abelian groups indexed by the chain's positive idempotents,
//! and conversely every bunch assembles back into a chain.  This crate makes
//! both directions executable:
//!
//! * [`ogroup`] — exact arithmetic in the layer groups themselves (the
//!   trivial group, `Z^r` under the lexicographic order, and `Q`), their
//!   subgroups, and monotone homomorphisms between them;
//! * [`bunch`] — bunches of layer groups over a finite skeleton, with full
//!   structural validation of the direct-system and layer conditions;
//! * [`chain`] — evaluation inside the chain assembled from a bunch:
//!   comparison, product, negation, residuation;
//! * [`finite_chain`] — finite chains as explicit Cayley tables, including
//!   Sugihara chain generation and homomorphism enumeration;
//! * [`decompose`] — the inverse direction, recovering a bunch from a chain;
//! * [`hom`] — structure-preserving maps between bunches and the bijective
//!   correspondence with chain homomorphisms;
//! * [`oracle`] — seeded, reproducible sampling suites that recheck the
//!   algebraic laws and the agreement of independent formulations;
//! * [`text`] — canonical text formats for bunches, finite chains, bunch
//!   homomorphisms, and chain elements.
//!
//! All arithmetic is exact: integers are arbitrary-precision and rationals
//! are kept in lowest terms, so every reported equality is a real equality.

mod error;
pub mod matrix;
pub mod report;

pub mod ogroup;

pub mod bunch;
pub mod chain;
pub mod decompose;
pub mod finite_chain;
pub mod hom;
pub mod oracle;
pub mod presets;
pub mod text;

pub use error::{Error, Result};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use report::{CheckResult, CheckStatus, ValidationReport};

/// Arbitrary-precision signed integer used for all `Z`-valued entries.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rat = num_rational::BigRational;
