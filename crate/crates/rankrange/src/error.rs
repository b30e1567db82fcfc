//! Error type shared across the library.

use thiserror::Error;

/// Library-wide error enumeration.
#[derive(Debug, Error)]
pub enum Error {
    /// A half plane was requested through two (nearly) identical anchor points.
    #[error("cannot build a half plane from two coincident points")]
    DegenerateLine,

    /// The requested intersection is unbounded, so it cannot be reported as a
    /// point/segment/polygon. Carries no data; callers that can handle
    /// unbounded regions use the clipped variant instead.
    #[error("half-plane intersection is unbounded")]
    UnboundedRegion,

    /// Rank parameter outside the valid window for this spectrum.
    #[error("rank k={k} invalid for dimension n={n} (need 1 <= k <= n)")]
    BadRank { k: usize, n: usize },

    /// A brute-force routine refused to run because the instance is too big.
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),

    /// Direction set is not even 1-regular, so no finite extension target exists
    /// below it / no bounded synthesis is possible.
    #[error("direction set is not 1-regular (an open semicircle is empty)")]
    NotOneRegular,

    /// A routine that needs a genuine 2-D polygon received a degenerate region.
    #[error("region is not a polygon (empty, point, or segment)")]
    NotPolygon,

    /// Affine transform with (nearly) zero scale factor.
    #[error("transform scale factor is too close to zero")]
    DegenerateScale,

    /// An internal self-check failed. This is a hard error by design: the
    /// library refuses to return unverified synthesis output.
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    /// Vertex list does not describe a convex polygon in order.
    #[error("vertices do not form a convex polygon")]
    NotConvex,

    /// Vertex list is collinear where a 2-D polygon was required.
    #[error("vertices are collinear; not a polygon")]
    Collinear,

    /// An input collection that must be nonempty was empty.
    #[error("input must be nonempty")]
    EmptyInput,

    /// Malformed or inconsistent input (message explains).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// I/O failure while reading or writing job files.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization failure.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
