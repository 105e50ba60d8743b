//! Rank-2 sign-coherent fans, their quiddity-sequence calculus, and the
//! finite-dimensional algebras over F_p that realize them.
//!
//! The crate has three layers:
//!
//! * [`fan`] and [`enumeration`] — exact integer geometry: quiddity
//!   sequences, fan operators (subdivision, rotation, the two gluings),
//!   convexity, Catalan enumeration and the triangulation /
//!   parenthesization bijections.
//! * [`algebra`] and [`quiver`] — concrete elementary algebras over a small
//!   prime field as structure-constant tables, with Peirce decomposition,
//!   radical bookkeeping, and a bound-quiver front end.
//! * [`synthesis`] and [`oracle`] — the algebra-level counterparts of the
//!   fan operators (trivial extensions, endomorphism-algebra rotation,
//!   fiber-product gluings), a driver that realizes any complete
//!   sign-coherent fan as a g-fan, and an oracle that recomputes the g-fan
//!   of an algebra from scratch, closing the loop fan → algebra → fan.

pub mod algebra;
pub mod complexes;
pub mod enumeration;
pub mod fan;
pub mod fp;
pub mod json;
pub mod oracle;
pub mod quiver;
pub mod synthesis;

pub use fan::{Fan2, PartialWalk, Quiddity, Ray};

/// Errors across the crate. Variant names follow the failure they report.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid quiddity sequence: {0}")]
    InvalidQuiddity(String),
    #[error("cannot parse quiddity string: {0}")]
    ParseQuiddity(String),
    #[error("invalid ray: {0}")]
    InvalidRay(String),
    #[error("fan is not complete")]
    NotComplete,
    #[error("index {index} out of range for {n} facets")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("fan does not contain cone{{(-1,0),(0,1)}}")]
    NotPlusMinusFan,
    #[error("wrong half-plane for gluing: {0}")]
    WrongHalf(String),
    #[error("gluing anchor cone missing (need a trailing/leading quiddity entry 1)")]
    MissingAnchorCone,
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("{0} is not a usable prime (need a prime at most 17)")]
    BadPrime(u32),
    #[error("algebra data is invalid: {0}")]
    InvalidAlgebra(String),
    #[error("algebra is not triangular (e2·Λ·e1 must vanish)")]
    NotTriangular,
    #[error("algebra is not elementary over F_p")]
    NotElementary,
    #[error("algebra is not local")]
    NotLocal,
    #[error("matrix shapes do not match: {0}")]
    DimensionMismatch(String),
    #[error("rotation undefined: the bimodule X is zero")]
    ZeroX,
    #[error("gluing needs a cyclic bimodule on the matching side")]
    NotCyclicBimodule,
    #[error("gluing factors have the wrong triangular shape")]
    WrongTriangularity,
    #[error("family index {0} exceeds the configured cap {1}")]
    CapExceeded(usize, usize),
    #[error("synthesized algebra failed the oracle round trip: expected {expected}, got {got}")]
    OracleMismatch { expected: String, got: String },
    #[error("cannot parse quiver description: {0}")]
    ParseQuiver(String),
    #[error("malformed JSON input: {0}")]
    Json(String),
}
