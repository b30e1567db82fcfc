//! Independent brute-force references for cross-checking the fast paths.
//!
//! Nothing here shares logic with the candidate-pair machinery: the subset
//! oracle intersects convex hulls of eigenvalue subsets directly, and the
//! sweep oracle slices the range by support offsets over a dense angle grid.

use crate::error::{Error, Result};
use crate::geometry::{
    convex_hull, intersect_half_planes, normalize_angle, CPoint, ConvexRegion, HalfPlane,
};
use crate::spectrum::NormalSpectrum;
use itertools::Itertools;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

fn support(v: CPoint, xi: f64) -> f64 {
    v.re * xi.cos() + v.im * xi.sin()
}

/// Reference computation straight from the subset characterization: the
/// rank-k range is the intersection of `conv(T)` over all `(n-k+1)`-element
/// sub-multisets `T` of the eigenvalues.  Exponential; guarded to `n ≤ 14`.
pub fn subset_hull_range(sp: &NormalSpectrum, k: usize) -> Result<ConvexRegion> {
    let n = sp.n();
    if k < 1 || k > n {
        return Err(Error::BadRank { k, n });
    }
    if n > 14 {
        return Err(Error::TooLarge(format!(
            "subset-hull reference is limited to n ≤ 14 (got n = {n})"
        )));
    }
    let vals = sp.values_with_multiplicity();
    let take = n - k + 1;
    let mut planes: Vec<HalfPlane> = Vec::new();
    for subset in vals.into_iter().combinations(take) {
        match convex_hull(&subset) {
            ConvexRegion::Polygon(v) => {
                for i in 0..v.len() {
                    planes.push(HalfPlane::from_pair(v[i], v[(i + 1) % v.len()])?);
                }
            }
            ConvexRegion::Segment(a, b) => {
                // Both sides of the carrier line plus end caps box the
                // segment exactly.
                planes.push(HalfPlane::from_pair(a, b)?);
                planes.push(HalfPlane::from_pair(b, a)?);
                let xi = normalize_angle((b - a).arg());
                planes.push(HalfPlane::new(support(b, xi), xi));
                let xi2 = normalize_angle((a - b).arg());
                planes.push(HalfPlane::new(support(a, xi2), xi2));
            }
            ConvexRegion::Point(c) => {
                for xi in [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2] {
                    planes.push(HalfPlane::new(support(c, xi), xi));
                }
            }
            ConvexRegion::Empty => unreachable!("hull of a nonempty subset"),
        }
    }
    intersect_half_planes(&planes)
}

/// A sampled support profile: for each sweep angle `ξ`, the k-th largest
/// eigenvalue projection onto `e^{iξ}` bounds the range by
/// `Re(e^{-iξ} z) ≤ offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepProfile {
    /// Sorted sweep angles in `[0, 2π)`.
    pub angles: Vec<f64>,
    /// Matching support offsets.
    pub offsets: Vec<f64>,
}

/// Sample the support function on a uniform grid of at least 8 angles,
/// augmented by every critical angle (directions perpendicular to an
/// eigenvalue difference, where the projection order changes).  With the
/// critical angles included the sampled intersection is exact.
pub fn angle_sweep(sp: &NormalSpectrum, k: usize, num_angles: usize) -> Result<SweepProfile> {
    let n = sp.n();
    if k < 1 || k > n {
        return Err(Error::BadRank { k, n });
    }
    if num_angles < 8 {
        return Err(Error::InvalidInput(
            "angle sweep needs at least 8 grid angles".into(),
        ));
    }
    let mut angles: Vec<f64> = (0..num_angles)
        .map(|j| TAU * j as f64 / num_angles as f64)
        .collect();
    for i in 0..sp.m() {
        for j in 0..sp.m() {
            if i == j {
                continue;
            }
            let base = (sp.value(j) - sp.value(i)).arg();
            angles.push(normalize_angle(base + FRAC_PI_2));
            angles.push(normalize_angle(base - FRAC_PI_2));
        }
    }
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    let vals = sp.values_with_multiplicity();
    let offsets: Vec<f64> = angles
        .iter()
        .map(|&xi| {
            let mut projs: Vec<f64> = vals.iter().map(|&v| support(v, xi)).collect();
            projs.sort_by(|a, b| b.total_cmp(a));
            projs[k - 1]
        })
        .collect();
    Ok(SweepProfile { angles, offsets })
}

/// Intersect a sweep profile's support half planes.
pub fn sweep_region(profile: &SweepProfile) -> Result<ConvexRegion> {
    if profile.angles.is_empty() || profile.angles.len() != profile.offsets.len() {
        return Err(Error::InvalidInput("malformed sweep profile".into()));
    }
    let planes: Vec<HalfPlane> = profile
        .angles
        .iter()
        .zip(&profile.offsets)
        .map(|(&xi, &d)| HalfPlane::new(d, xi))
        .collect();
    intersect_half_planes(&planes)
}
