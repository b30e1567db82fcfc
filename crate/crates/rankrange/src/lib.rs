//! Rank-k numerical ranges of normal matrices.
//!
//! For a normal matrix `A` with eigenvalue multiset `{a_1, …, a_n}`, the rank-k
//! numerical range is the set of complex numbers `λ` admitting a rank-k orthogonal
//! projection `P` with `PAP = λP`.  For normal `A` this set depends only on the
//! eigenvalues and is an intersection of finitely many closed half planes, each
//! determined by an ordered pair of eigenvalues.  This crate computes that
//! intersection exactly (up to floating-point tolerance) and classifies the result
//! as empty, a point, a segment, or a convex polygon.
//!
//! The crate also solves the inverse problem: given a convex polygon `P` and a rank
//! `k`, synthesize a normal spectrum of provably minimum dimension whose rank-k
//! numerical range equals `P`.  The bridge between the two problems is the notion
//! of a *k-regular* set of unit-circle directions (every open semicircle contains
//! at least `k` of them); [`kregular`] hosts the regularity analysis and the
//! minimum-cardinality extension machinery the synthesis rests on.
//!
//! Module map:
//! - [`geometry`]: half planes, intersections, hulls, region classification.
//! - [`spectrum`]: eigenvalue multisets and their collinearity structure.
//! - [`rank_range`]: the candidate half-plane families and `lambda_k`.
//! - [`kregular`]: k-regularity, minimal extensions, witnesses.
//! - [`oracle`]: independent brute-force references used to cross-check results.
//! - [`synthesis`]: polygon → spectrum synthesis, degenerate targets, pruning.
//! - [`io`]: JSON formats, job requests, and SVG rendering for the CLI.

pub mod error;
pub mod geometry;
pub mod io;
pub mod kregular;
pub mod oracle;
pub mod rank_range;
pub mod spectrum;
pub mod synthesis;

/// Default tolerances used across the crate.
pub mod tol {
    /// Absolute geometric tolerance: coordinate comparisons, half-plane slack,
    /// multiplicity merging.
    pub const ABS: f64 = 1e-9;
    /// Angular tolerance for direction comparisons on the unit circle.
    pub const ANGLE: f64 = 1e-12;
}

pub use error::{Error, Result};
pub use geometry::{
    convex_hull, intersect_half_planes, intersect_half_planes_clipped, line_intersection,
    normalize_angle, region_equal, CPoint, ConvexRegion, HalfPlane,
};
pub use kregular::{
    addition_witness, brute_force_min_extension, count_antipodal, deletion_witness, is_k_regular,
    minimal_extension, regular_lower_bound, spread_duplicate_angles, DirectionSet,
    ExtensionResult,
};
pub use oracle::{angle_sweep, subset_hull_range, sweep_region, SweepProfile};
pub use rank_range::{
    covering_pairs, lambda_k, line_collapse_range, minimal_half_planes, pencil_reduction_range,
    tight_pairs, CandidateKind, CandidatePair, CandidateSet,
};
pub use spectrum::{Collinearity, NormalSpectrum, SpectrumEntry};
pub use synthesis::{
    dimension_bound, polygon_to_support, prune_spectrum, synthesize, synthesize_degenerate,
    PolygonSpec, PruneOutput, SynthesisOutput,
};
