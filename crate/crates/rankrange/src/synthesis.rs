//! Inverse problem: synthesize a minimum-dimension normal spectrum whose
//! rank-k numerical range equals a prescribed convex polygon.
//!
//! The route: take the polygon's outward edge normals as a direction set,
//! extend it to a k-regular set with the provably minimum number of
//! additions, give each added direction the polygon's support offset, and
//! intersect consecutive (`k` steps apart) support lines to place the
//! eigenvalues.  Every output is verified against the forward computation
//! before it is returned.

use crate::error::{Error, Result};
use crate::geometry::{
    line_intersection, normalize_angle, region_equal, CPoint, ConvexRegion,
};
use crate::kregular::{
    is_k_regular, minimal_extension, spread_duplicate_angles, DirectionSet,
};
use crate::rank_range::lambda_k;
use crate::spectrum::{NormalSpectrum, SpectrumEntry};
use crate::tol;
use std::f64::consts::{FRAC_PI_2, PI};

/// A validated convex polygon target: CCW vertices (canonical start at the
/// lexicographic minimum) together with its support-form edges.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonSpec {
    vertices: Vec<CPoint>,
    directions: Vec<f64>,
    offsets: Vec<f64>,
}

impl PolygonSpec {
    /// Build from vertices.  Accepts either orientation (normalized to CCW),
    /// merges duplicate and collinear-through vertices, and rejects
    /// non-convex chains ([`Error::NotConvex`]) and degenerate flat input
    /// ([`Error::Collinear`]).
    pub fn from_vertices(vs: &[CPoint]) -> Result<Self> {
        if vs.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidInput("non-finite vertex".into()));
        }
        if vs.len() < 3 {
            return Err(Error::NotConvex);
        }
        let scale = vs.iter().map(|v| v.norm()).fold(0.0, f64::max);
        // Drop consecutive duplicates (cyclically).
        let mut pts: Vec<CPoint> = Vec::with_capacity(vs.len());
        for &v in vs {
            if pts.last().map_or(true, |&p| (v - p).norm() > tol::ABS) {
                pts.push(v);
            }
        }
        while pts.len() > 1 && (pts[0] - *pts.last().unwrap()).norm() <= tol::ABS {
            pts.pop();
        }
        if pts.len() < 3 {
            return Err(Error::Collinear);
        }
        // Orientation: normalize to counterclockwise.
        let mut area2 = 0.0;
        for i in 0..pts.len() {
            let a = pts[i];
            let b = pts[(i + 1) % pts.len()];
            area2 += a.re * b.im - b.re * a.im;
        }
        if area2.abs() <= 1e-12 * (1.0 + scale * scale) {
            return Err(Error::Collinear);
        }
        if area2 < 0.0 {
            pts.reverse();
        }
        // Merge vertices the boundary passes straight through, then demand
        // strictly convex left turns everywhere.
        loop {
            let n = pts.len();
            if n < 3 {
                return Err(Error::Collinear);
            }
            let mut dropped = false;
            let mut next: Vec<CPoint> = Vec::with_capacity(n);
            for i in 0..n {
                let prev = if next.is_empty() {
                    pts[(i + n - 1) % n]
                } else {
                    *next.last().unwrap()
                };
                let cur = pts[i];
                let nxt = pts[(i + 1) % n];
                let e1 = cur - prev;
                let e2 = nxt - cur;
                let cross = e1.re * e2.im - e1.im * e2.re;
                let dot = e1.re * e2.re + e1.im * e2.im;
                // Straight-through vertex: turn angle below ~1e-7 radians.
                if dot > 0.0 && cross.abs() <= 1e-7 * e1.norm() * e2.norm() {
                    dropped = true;
                } else {
                    next.push(cur);
                }
            }
            pts = next;
            if !dropped {
                break;
            }
        }
        if pts.len() < 3 {
            return Err(Error::Collinear);
        }
        for i in 0..pts.len() {
            let prev = pts[(i + pts.len() - 1) % pts.len()];
            let cur = pts[i];
            let nxt = pts[(i + 1) % pts.len()];
            let e1 = cur - prev;
            let e2 = nxt - cur;
            if e1.re * e2.im - e1.im * e2.re <= 0.0 {
                return Err(Error::NotConvex);
            }
        }
        // Canonical start: lexicographically smallest vertex.
        let start = (0..pts.len())
            .min_by(|&i, &j| {
                (pts[i].re, pts[i].im)
                    .partial_cmp(&(pts[j].re, pts[j].im))
                    .unwrap()
            })
            .unwrap();
        pts.rotate_left(start);
        // Support form of each edge.
        let mut directions = Vec::with_capacity(pts.len());
        let mut offsets = Vec::with_capacity(pts.len());
        for i in 0..pts.len() {
            let a = pts[i];
            let b = pts[(i + 1) % pts.len()];
            let xi = normalize_angle((b - a).arg() - FRAC_PI_2);
            directions.push(xi);
            offsets.push(a.re * xi.cos() + a.im * xi.sin());
        }
        Ok(PolygonSpec {
            vertices: pts,
            directions,
            offsets,
        })
    }

    /// Build from support lines `(d_j, ξ_j)`.  Lines that do not touch the
    /// resulting region are dropped; anything that fails to bound a
    /// two-dimensional polygon is rejected with [`Error::NotPolygon`].
    pub fn from_support(lines: &[(f64, f64)]) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::EmptyInput);
        }
        let planes: Vec<crate::geometry::HalfPlane> = lines
            .iter()
            .map(|&(d, xi)| crate::geometry::HalfPlane::new(d, xi))
            .collect();
        match crate::geometry::intersect_half_planes(&planes) {
            Ok(ConvexRegion::Polygon(vs)) => Self::from_vertices(&vs),
            Ok(_) => Err(Error::NotPolygon),
            Err(Error::UnboundedRegion) => Err(Error::NotPolygon),
            Err(e) => Err(e),
        }
    }

    /// CCW vertices, starting from the lexicographic minimum.
    pub fn vertices(&self) -> &[CPoint] {
        &self.vertices
    }

    /// Number of edges (= vertices).
    pub fn p(&self) -> usize {
        self.vertices.len()
    }

    /// Outward edge normals, in edge order.
    pub fn directions(&self) -> &[f64] {
        &self.directions
    }

    /// Support offsets, in edge order.
    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// The polygon as a classified region.
    pub fn region(&self) -> ConvexRegion {
        ConvexRegion::Polygon(self.vertices.clone())
    }

    /// Support function: the largest projection of the polygon onto the
    /// direction `e^{iξ}`.
    pub fn support_offset_for(&self, xi: f64) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.re * xi.cos() + v.im * xi.sin())
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Convenience wrapper: vertices straight to the validated support form.
pub fn polygon_to_support(vs: &[CPoint]) -> Result<PolygonSpec> {
    PolygonSpec::from_vertices(vs)
}

/// Upper bound on the dimension needed for a p-gon at rank k:
/// `max(2k+2, p+k-1)`.
pub fn dimension_bound(p: usize, k: usize) -> usize {
    (2 * k + 2).max(p + k - 1)
}

/// A synthesized spectrum with its certificate data.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisOutput {
    /// The synthesized eigenvalue multiset.
    pub spectrum: NormalSpectrum,
    /// Its dimension (total multiplicity).
    pub n: usize,
    /// Number of support directions added beyond the polygon's own edges.
    pub q: usize,
    /// The full, sorted support direction family used.
    pub directions: Vec<f64>,
    /// Matching support offsets.
    pub offsets: Vec<f64>,
    /// Deletion witness from the minimal extension, when that route was used.
    pub witness_removed: Option<Vec<f64>>,
}

/// Synthesize a normal spectrum of minimum dimension `n = p + q` whose rank-k
/// numerical range equals the polygon.
///
/// The eigenvalues are the intersections of support lines `k` apart in the
/// sorted k-regular direction family; the result is verified by computing its
/// range and comparing against the target before returning.
pub fn synthesize(target: &PolygonSpec, k: usize) -> Result<SynthesisOutput> {
    if k == 0 {
        return Err(Error::InvalidInput("rank must be at least 1".into()));
    }
    let p = target.p();
    let base = DirectionSet::new(target.directions())?;
    if base.len() != p {
        return Err(Error::VerificationFailed(
            "polygon edge normals collide within tolerance".into(),
        ));
    }
    let ext = minimal_extension(&base, k)?;
    let mut dirs: Vec<(f64, f64)> = target
        .directions()
        .iter()
        .zip(target.offsets())
        .map(|(&xi, &d)| (xi, d))
        .collect();
    for &a in &ext.added {
        dirs.push((a, target.support_offset_for(a)));
    }
    // Angle-collision repair: the extension certifies distinctness, but keep
    // the guard — spread coincident angles apart and re-read the support
    // function at the moved angles.
    let angles: Vec<f64> = dirs.iter().map(|d| d.0).collect();
    let spread = spread_duplicate_angles(&angles, 2.0 * tol::ABS);
    for (i, (&old, &new)) in angles.iter().zip(spread.iter()).enumerate() {
        if old != new {
            dirs[i] = (new, target.support_offset_for(new));
        }
    }
    dirs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = dirs.len();
    let family = DirectionSet::new(&dirs.iter().map(|d| d.0).collect::<Vec<_>>())?;
    if family.len() != n || !is_k_regular(&family, k) {
        return Err(Error::VerificationFailed(
            "support direction family lost k-regularity".into(),
        ));
    }
    // Eigenvalues: intersection of support lines k apart.  k-regularity keeps
    // every k-step window of normals strictly inside an open semicircle's
    // complement, so the lines genuinely cross.
    let mut eigs: Vec<CPoint> = Vec::with_capacity(n);
    for r in 0..n {
        let (xi1, d1) = dirs[r];
        let (xi2, d2) = dirs[(r + k) % n];
        let gap = normalize_angle(xi2 - xi1);
        if gap <= 1e-6 || gap >= PI - 1e-6 {
            return Err(Error::VerificationFailed(format!(
                "support-line window {r} is degenerate (gap {gap:.3e})"
            )));
        }
        let z = line_intersection(d1, xi1, d2, xi2).ok_or_else(|| {
            Error::VerificationFailed(format!("support lines {r} are parallel", r = r))
        })?;
        eigs.push(z);
    }
    let spectrum = NormalSpectrum::from_values(&eigs)?;
    if spectrum.n() != n {
        return Err(Error::VerificationFailed(
            "eigenvalue multiset lost entries".into(),
        ));
    }
    // Self-verification against the forward computation.
    let got = lambda_k(&spectrum, k)?;
    let scale = target.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
    if !region_equal(&got, &target.region(), 1e-7 * (1.0 + scale)) {
        return Err(Error::VerificationFailed(
            "synthesized range does not match the target polygon".into(),
        ));
    }
    if n > dimension_bound(p, k) {
        return Err(Error::VerificationFailed(format!(
            "dimension {n} exceeds the bound {}",
            dimension_bound(p, k)
        )));
    }
    Ok(SynthesisOutput {
        spectrum,
        n,
        q: ext.q,
        directions: dirs.iter().map(|d| d.0).collect(),
        offsets: dirs.iter().map(|d| d.1).collect(),
        witness_removed: ext.witness_removed,
    })
}

/// Degenerate targets: a point needs `diag(a, …, a)` of dimension `k`; a
/// segment needs both endpoints with multiplicity `k` (dimension `2k`).
pub fn synthesize_degenerate(a1: CPoint, a2: CPoint, k: usize) -> Result<SynthesisOutput> {
    if k == 0 {
        return Err(Error::InvalidInput("rank must be at least 1".into()));
    }
    let (spectrum, expected) = if (a1 - a2).norm() <= tol::ABS {
        (
            NormalSpectrum::from_entries(vec![(a1, k)])?,
            ConvexRegion::Point(a1),
        )
    } else {
        (
            NormalSpectrum::from_entries(vec![(a1, k), (a2, k)])?,
            ConvexRegion::Segment(a1, a2),
        )
    };
    let got = lambda_k(&spectrum, k)?;
    let scale = a1.norm().max(a2.norm());
    if !region_equal(&got, &expected, 10.0 * tol::ABS * (1.0 + scale)) {
        return Err(Error::VerificationFailed(
            "degenerate synthesis failed its own check".into(),
        ));
    }
    let n = spectrum.n();
    Ok(SynthesisOutput {
        spectrum,
        n,
        q: 0,
        directions: vec![],
        offsets: vec![],
        witness_removed: None,
    })
}

/// Result of pruning a spectrum at rank k.
#[derive(Debug, Clone, PartialEq)]
pub struct PruneOutput {
    /// The pruned spectrum (equal to the input when nothing was removable).
    pub spectrum: NormalSpectrum,
    /// Entries removed, in lexicographic order.
    pub removed: Vec<SpectrumEntry>,
    /// The (unchanged) rank-k numerical range.
    pub region: ConvexRegion,
}

/// Remove eigenvalues that lie inside the rank-k range, away from its extreme
/// points, without changing the range.  Each removal is verified by
/// recomputation and rolled back if the range moves.
pub fn prune_spectrum(sp: &NormalSpectrum, k: usize) -> Result<PruneOutput> {
    let region = lambda_k(sp, k)?;
    let extremes = region.vertices();
    let scale = sp
        .entries()
        .iter()
        .map(|e| e.value.norm())
        .fold(0.0, f64::max);
    let keep_tol = 10.0 * tol::ABS * (1.0 + scale);
    let candidates: Vec<CPoint> = sp
        .entries()
        .iter()
        .map(|e| e.value)
        .filter(|&v| {
            region.contains(v, tol::ABS)
                && extremes.iter().all(|&x| (x - v).norm() > keep_tol)
        })
        .collect();
    let mut current = sp.clone();
    let mut removed: Vec<SpectrumEntry> = Vec::new();
    for v in candidates {
        let kept: Vec<(CPoint, usize)> = current
            .entries()
            .iter()
            .filter(|e| (e.value - v).norm() > tol::ABS)
            .map(|e| (e.value, e.multiplicity))
            .collect();
        if kept.is_empty() {
            continue;
        }
        let trial = NormalSpectrum::from_entries(kept)?;
        if trial.n() < k {
            continue;
        }
        match lambda_k(&trial, k) {
            Ok(r2) if region_equal(&r2, &region, 10.0 * tol::ABS * (1.0 + scale)) => {
                let entry = current
                    .entries()
                    .iter()
                    .find(|e| (e.value - v).norm() <= tol::ABS)
                    .copied()
                    .expect("candidate entry present");
                removed.push(entry);
                current = trial;
            }
            _ => {}
        }
    }
    Ok(PruneOutput {
        spectrum: current,
        removed,
        region,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> CPoint {
        CPoint::new(re, im)
    }

    #[test]
    fn polygon_validation() {
        assert!(matches!(
            PolygonSpec::from_vertices(&[c(0.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotConvex)
        ));
        assert!(matches!(
            PolygonSpec::from_vertices(&[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]),
            Err(Error::Collinear)
        ));
        // A dart (reflex vertex) is not convex.
        assert!(matches!(
            PolygonSpec::from_vertices(&[c(0.0, 0.0), c(2.0, 0.0), c(0.5, 0.5), c(0.0, 2.0)]),
            Err(Error::NotConvex)
        ));
        // Clockwise input is accepted and normalized.
        let cw = PolygonSpec::from_vertices(&[c(0.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(cw.p(), 3);
        assert_eq!(cw.vertices()[0], c(0.0, 0.0));
        // Straight-through vertices merge away.
        let merged =
            PolygonSpec::from_vertices(&[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.0, 2.0)])
                .unwrap();
        assert_eq!(merged.p(), 3);
    }

    #[test]
    fn support_form_round_trip() {
        let square = PolygonSpec::from_vertices(&[
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(1.0, 1.0),
            c(0.0, 1.0),
        ])
        .unwrap();
        let lines: Vec<(f64, f64)> = square
            .offsets()
            .iter()
            .zip(square.directions())
            .map(|(&d, &xi)| (d, xi))
            .collect();
        let back = PolygonSpec::from_support(&lines).unwrap();
        assert!(region_equal(&back.region(), &square.region(), 1e-9));
        // A non-touching line is stripped.
        let mut padded = lines.clone();
        padded.push((5.0, 0.7));
        let stripped = PolygonSpec::from_support(&padded).unwrap();
        assert_eq!(stripped.p(), 4);
        // Underconstrained support is not a polygon.
        assert!(matches!(
            PolygonSpec::from_support(&[(1.0, 0.0), (1.0, PI)]),
            Err(Error::NotPolygon)
        ));
    }

    #[test]
    fn rank_one_synthesis_is_the_vertex_set() {
        let tri = PolygonSpec::from_vertices(&[c(0.0, 0.0), c(2.0, 0.0), c(1.0, 1.5)]).unwrap();
        let out = synthesize(&tri, 1).unwrap();
        assert_eq!(out.q, 0);
        assert_eq!(out.n, 3);
        for v in tri.vertices() {
            assert!(out
                .spectrum
                .entries()
                .iter()
                .any(|e| (e.value - v).norm() < 1e-9));
        }
    }

    #[test]
    fn square_synthesis_rank_two() {
        let square = PolygonSpec::from_vertices(&[
            c(1.0, 0.0),
            c(0.0, 1.0),
            c(-1.0, 0.0),
            c(0.0, -1.0),
        ])
        .unwrap();
        let out = synthesize(&square, 2).unwrap();
        assert_eq!(out.q, 2);
        assert_eq!(out.n, 6);
        assert!(out.n <= dimension_bound(4, 2));
        let got = lambda_k(&out.spectrum, 2).unwrap();
        assert!(region_equal(&got, &square.region(), 1e-7));
    }

    #[test]
    fn degenerate_synthesis() {
        let seg = synthesize_degenerate(c(0.0, 0.0), c(1.0, 1.0), 3).unwrap();
        assert_eq!(seg.n, 6);
        match lambda_k(&seg.spectrum, 3).unwrap() {
            ConvexRegion::Segment(a, b) => {
                assert!((a - c(0.0, 0.0)).norm() < 1e-9 || (b - c(0.0, 0.0)).norm() < 1e-9);
                assert!((a - c(1.0, 1.0)).norm() < 1e-9 || (b - c(1.0, 1.0)).norm() < 1e-9);
            }
            other => panic!("expected segment, got {other:?}"),
        }
        let pt = synthesize_degenerate(c(2.0, 1.0), c(2.0, 1.0), 4).unwrap();
        assert_eq!(pt.n, 4);
        assert!(matches!(
            lambda_k(&pt.spectrum, 4).unwrap(),
            ConvexRegion::Point(_)
        ));
    }

    #[test]
    fn pruning_removes_interior_eigenvalue() {
        // diag(3, 2, 1.5, 1, 0) at k = 2 has range [1, 2]; the interior 1.5
        // is removable.
        let sp = NormalSpectrum::from_values(&[
            c(3.0, 0.0),
            c(2.0, 0.0),
            c(1.5, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
        ])
        .unwrap();
        let out = prune_spectrum(&sp, 2).unwrap();
        assert_eq!(out.removed.len(), 1);
        assert!((out.removed[0].value - c(1.5, 0.0)).norm() < 1e-12);
        assert_eq!(out.spectrum.n(), 4);
        let after = lambda_k(&out.spectrum, 2).unwrap();
        assert!(region_equal(&after, &out.region, 1e-9));
    }

    #[test]
    fn pruning_keeps_extreme_and_exterior_eigenvalues() {
        let sp = NormalSpectrum::from_entries(vec![
            (c(0.0, 0.0), 2),
            (c(1.0, 0.0), 2),
            (c(0.0, 1.0), 1),
        ])
        .unwrap();
        let out = prune_spectrum(&sp, 2).unwrap();
        assert!(out.removed.is_empty());
        assert_eq!(out.spectrum, sp);
    }
}
