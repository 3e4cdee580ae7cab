//! Classification of the irreducible components of the varieties `Rep_d(Λ)`
//! of finite-dimensional representations of a truncated path algebra `Λ`.
//!
//! A truncated path algebra is a path algebra of a quiver modulo the ideal
//! generated by all paths of length `L+1`.  A point of `Rep_d(Λ)` is a tuple
//! of matrices over a field, one per arrow, such that every composite of
//! `L+1` arrows acts as zero.  The crate provides:
//!
//! - [`algebra`]: quivers, truncated path algebras, path words;
//! - [`layers`]: dimension vectors, semisimple sequences, the dominance
//!   order, realizability, enumeration;
//! - [`repmod`]: module points over a prime field, radical and socle
//!   layerings, path nullities, endomorphism algebras, indecomposability,
//!   duality;
//! - [`skeleta`]: layered path forests (skeleta), presentation templates,
//!   and random sampling of modules with a prescribed radical layering;
//! - [`components`]: the component classification for local truncated
//!   algebras, minimal radical-socle pairs in general, Schur-root tests
//!   for the generalized Kronecker quiver, and related diagnostics;
//! - [`deform`]: explicit one-parameter deformation families that move a
//!   module between strata with comparable layerings.
//!
//! All linear algebra is exact, over a prime field `F_p` with a large
//! configurable prime (default `2^31 - 1`).  Genericity statements are
//! validated statistically by seeded sampling; every sampling entry point
//! takes an explicit seed so runs are reproducible bit for bit.

pub mod algebra;
pub mod components;
pub mod corpus;
pub mod deform;
pub mod fp;
pub mod layers;
pub mod linalg;
pub mod polys;
pub mod repmod;
pub mod selftest;
pub mod skeleta;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    Algebra(String),
    #[error("invalid sequence: {0}")]
    Layers(String),
    #[error("sequences are not comparable: {0}")]
    Incomparable(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("field modulus {p} is not usable here: {reason}")]
    Field { p: u64, reason: String },
    #[error("sequence is not realizable over this algebra")]
    NotRealizable,
    #[error("scalar family has {got} entries, template needs {want}")]
    ScalarCount { got: usize, want: usize },
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("genericity sampling inconclusive after {trials} trials")]
    Inconclusive { trials: usize },
    #[error("bad input: {0}")]
    Input(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
