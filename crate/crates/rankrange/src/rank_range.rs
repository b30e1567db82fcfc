//! The rank-k numerical range of a normal spectrum as an exact intersection
//! of eigenvalue-pair half planes.
//!
//! For eigenvalues `a_1 … a_n` (with multiplicity) the rank-k numerical range
//! equals the intersection of the closed half planes left of `a_r → a_s` over
//! all ordered pairs whose open right side holds at most `k-1` eigenvalues.
//! Within that *covering* family, the *tight* subfamily — pairs whose open
//! left side also holds at most `n-k-1` eigenvalues — already has the same
//! intersection and is what the reduction routines consume.

use crate::error::{Error, Result};
use crate::geometry::{
    intersect_half_planes, normalize_angle, CPoint, ConvexRegion, HalfPlane,
};
use crate::spectrum::{Collinearity, NormalSpectrum};
use crate::tol;
use std::f64::consts::PI;

/// Which selection rule produced a candidate family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateKind {
    /// Pairs whose open right side holds at most `k-1` eigenvalues.
    Covering,
    /// Covering pairs whose open left side also holds at most `n-k-1`.
    Tight,
    /// A minimum subfamily supporting every edge of the computed polygon.
    Minimal,
}

/// One ordered eigenvalue pair `(r, s)` (indices into the distinct entries)
/// together with the half plane left of `a_r → a_s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidatePair {
    pub r: usize,
    pub s: usize,
    pub plane: HalfPlane,
}

/// A family of candidate half planes with its provenance tag.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    pub kind: CandidateKind,
    pub pairs: Vec<CandidatePair>,
}

impl CandidateSet {
    /// The half planes of the family, in pair order.
    pub fn planes(&self) -> Vec<HalfPlane> {
        self.pairs.iter().map(|p| p.plane).collect()
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Whether the family is empty.
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Whether the ordered pair `(r, s)` is present.
    pub fn contains_pair(&self, r: usize, s: usize) -> bool {
        self.pairs.iter().any(|p| p.r == r && p.s == s)
    }
}

/// Eigenvalue counts strictly left and strictly right of the directed line
/// `a_r → a_s` (multiplicities included; points on the line count in neither).
fn side_counts(sp: &NormalSpectrum, r: usize, s: usize) -> (usize, usize) {
    let a = sp.value(r);
    let w = sp.value(s) - a;
    let len = w.norm();
    let (mut left, mut right) = (0usize, 0usize);
    for e in sp.entries() {
        let d = ((e.value - a) * w.conj()).im / len;
        if d > tol::ABS {
            left += e.multiplicity;
        } else if d < -tol::ABS {
            right += e.multiplicity;
        }
    }
    (left, right)
}

fn validate_rank(sp: &NormalSpectrum, k: usize) -> Result<()> {
    let n = sp.n();
    if k < 1 || k > n {
        return Err(Error::BadRank { k, n });
    }
    Ok(())
}

/// The covering family: ordered pairs of distinct eigenvalues whose open
/// right side holds at most `k-1` eigenvalues, so the closed left side holds
/// at least `n-k+1`.  Requires `1 ≤ k ≤ n-1` and at least two distinct
/// eigenvalues.
pub fn covering_pairs(sp: &NormalSpectrum, k: usize) -> Result<CandidateSet> {
    validate_rank(sp, k)?;
    if k == sp.n() {
        return Err(Error::BadRank { k, n: sp.n() });
    }
    if sp.m() < 2 {
        return Err(Error::InvalidInput(
            "candidate pairs need at least two distinct eigenvalues".into(),
        ));
    }
    let mut pairs = Vec::new();
    for r in 0..sp.m() {
        for s in 0..sp.m() {
            if r == s {
                continue;
            }
            let (_, right) = side_counts(sp, r, s);
            if right <= k - 1 {
                let plane = HalfPlane::from_pair(sp.value(r), sp.value(s))?.with_pair(r, s);
                pairs.push(CandidatePair { r, s, plane });
            }
        }
    }
    Ok(CandidateSet {
        kind: CandidateKind::Covering,
        pairs,
    })
}

/// The tight family: covering pairs whose open left side also holds at most
/// `n-k-1` eigenvalues.  Its intersection equals the covering family's.
pub fn tight_pairs(sp: &NormalSpectrum, k: usize) -> Result<CandidateSet> {
    validate_rank(sp, k)?;
    if k == sp.n() {
        return Err(Error::BadRank { k, n: sp.n() });
    }
    if sp.m() < 2 {
        return Err(Error::InvalidInput(
            "candidate pairs need at least two distinct eigenvalues".into(),
        ));
    }
    let n = sp.n();
    let mut pairs = Vec::new();
    for r in 0..sp.m() {
        for s in 0..sp.m() {
            if r == s {
                continue;
            }
            let (left, right) = side_counts(sp, r, s);
            if right <= k - 1 && left + k + 1 <= n {
                let plane = HalfPlane::from_pair(sp.value(r), sp.value(s))?.with_pair(r, s);
                pairs.push(CandidatePair { r, s, plane });
            }
        }
    }
    Ok(CandidateSet {
        kind: CandidateKind::Tight,
        pairs,
    })
}

/// The rank-k numerical range of a normal spectrum, classified.
///
/// Dispatch: scalar spectra give the eigenvalue itself for every `k ≤ n`;
/// collinear spectra reduce to an interval of projections; in general
/// position `k = n` is empty and `k < n` goes through the tight family with
/// the two degeneracy reductions below.
pub fn lambda_k(sp: &NormalSpectrum, k: usize) -> Result<ConvexRegion> {
    validate_rank(sp, k)?;
    match sp.collinearity() {
        Collinearity::Scalar => Ok(ConvexRegion::Point(sp.value(0))),
        Collinearity::Collinear {
            theta,
            offsets,
            anchor,
        } => Ok(collinear_interval(theta, &offsets, anchor, k)),
        Collinearity::General => {
            let n = sp.n();
            if k == n {
                // Two eigenvalues off a common line force opposing strips.
                return Ok(ConvexRegion::Empty);
            }
            let s0 = tight_pairs(sp, k)?;
            if let Some((p, q)) = mutual_pair(&s0) {
                line_collapse_range(sp, k, p, q, &s0)
            } else {
                pencil_reduction_range(sp, k, &s0)
            }
        }
    }
}

/// Collinear case: with projections `t_1 ≥ … ≥ t_n` along the line, the
/// range is the (possibly empty or degenerate) interval
/// `[t_{n-k+1}, t_k]` mapped back onto the line.
fn collinear_interval(theta: f64, offsets: &[f64], anchor: CPoint, k: usize) -> ConvexRegion {
    let n = offsets.len();
    let lo = offsets[n - k];
    let hi = offsets[k - 1];
    let dir = CPoint::from_polar(1.0, theta);
    if lo > hi + tol::ABS {
        ConvexRegion::Empty
    } else if hi - lo <= tol::ABS {
        ConvexRegion::Point(anchor + dir * ((lo + hi) / 2.0))
    } else {
        ConvexRegion::Segment(anchor + dir * lo, anchor + dir * hi)
    }
}

/// First ordered pair present in both directions, if any.
fn mutual_pair(s0: &CandidateSet) -> Option<(usize, usize)> {
    s0.pairs
        .iter()
        .find(|p| p.r < p.s && s0.contains_pair(p.s, p.r))
        .map(|p| (p.r, p.s))
}

/// Plain intersection of a candidate family.
fn family_intersection(s0: &CandidateSet) -> Result<ConvexRegion> {
    intersect_half_planes(&s0.planes())
}

/// Degeneracy reduction for a mutually-tight pair `(p, q)`: both orientations
/// of the line through `a_p, a_q` are tight, so the range lies on that line.
///
/// In coordinates `ẑ = (z - a_p)/(a_q - a_p)` every tight pair whose
/// endpoints straddle the line cuts the real axis at
/// `b = (ŷ_r x̂_s - ŷ_s x̂_r)/(ŷ_r - ŷ_s)`; downward crossings bound from
/// below, upward crossings from above, and the range is the interval between
/// the extreme cuts.  Pairs parallel to the line (equal ŷ) never bind; if no
/// crossing bounds one of the sides the reduction falls back to the plain
/// intersection.
pub fn line_collapse_range(
    sp: &NormalSpectrum,
    k: usize,
    p: usize,
    q: usize,
    s0: &CandidateSet,
) -> Result<ConvexRegion> {
    validate_rank(sp, k)?;
    let ap = sp.value(p);
    let w = sp.value(q) - ap;
    if w.norm() <= tol::ABS {
        return Err(Error::DegenerateLine);
    }
    let hat = |i: usize| (sp.value(i) - ap) / w;
    let mut lower: Option<f64> = None; // b₁: greatest lower cut
    let mut upper: Option<f64> = None; // b₂: least upper cut
    let mut any_crossing = false;
    for pair in &s0.pairs {
        let hr = hat(pair.r);
        let hs = hat(pair.s);
        let eps = tol::ABS * (1.0 + hr.norm() + hs.norm());
        if (hr.im - hs.im).abs() <= eps {
            continue; // parallel to the line: never binding on it
        }
        any_crossing = true;
        let b = (hr.im * hs.re - hs.im * hr.re) / (hr.im - hs.im);
        if hr.im >= -eps && hs.im <= eps {
            lower = Some(lower.map_or(b, |v: f64| v.max(b)));
        }
        if hr.im <= eps && hs.im >= -eps {
            upper = Some(upper.map_or(b, |v: f64| v.min(b)));
        }
    }
    if !any_crossing {
        return Ok(ConvexRegion::Empty);
    }
    let (b1, b2) = match (lower, upper) {
        (Some(b1), Some(b2)) => (b1, b2),
        // One side unbounded along the line: the anchor pair's own strip must
        // close it, which the plain intersection handles exactly.
        _ => return family_intersection(s0),
    };
    let scale = w.norm();
    if b1 > b2 + tol::ABS / scale {
        Ok(ConvexRegion::Empty)
    } else if (b2 - b1) * scale <= tol::ABS {
        Ok(ConvexRegion::Point(ap + w * ((b1 + b2) / 2.0)))
    } else {
        let z1 = ap + w * b1;
        let z2 = ap + w * b2;
        if (z2.re, z2.im) < (z1.re, z1.im) {
            Ok(ConvexRegion::Segment(z2, z1))
        } else {
            Ok(ConvexRegion::Segment(z1, z2))
        }
    }
}

/// Reduction of pencils through a shared eigenvalue, then the plain
/// intersection of what remains.
///
/// Whenever three or more tight pairs share one endpoint `a_t`, each such pair
/// constrains `z` to `Im(e^{-iθ}(z - a_t)) ≥ 0` for its ray angle `θ`.  With
/// the angles sorted: a spread below `π` keeps only the two extreme rays; a
/// consecutive gap above `π` keeps only the two rays bordering the gap; and
/// otherwise the cone degenerates to the apex, so the range is `{a_t}` or
/// empty according to the remaining constraints.  Spreads or gaps within
/// tolerance of exactly `π` leave the family untouched (the cone is a ray and
/// no pair is redundant).
pub fn pencil_reduction_range(
    sp: &NormalSpectrum,
    k: usize,
    s0: &CandidateSet,
) -> Result<ConvexRegion> {
    validate_rank(sp, k)?;
    const RAY_TOL: f64 = 1e-9;
    let mut pairs: Vec<CandidatePair> = s0.pairs.clone();
    let mut blocked: Vec<usize> = Vec::new();
    for _ in 0..=s0.pairs.len() {
        // An index appearing in ≥ 3 pairs hosts a pencil.
        let Some(t) = (0..sp.m()).find(|&t| {
            !blocked.contains(&t)
                && pairs.iter().filter(|p| p.r == t || p.s == t).count() >= 3
        }) else {
            break;
        };
        let at = sp.value(t);
        // Ray angle of each pencil member: the half plane of (t, s) or (r, t)
        // is {Im(e^{-iθ}(z - a_t)) ≥ 0} with θ the direction a_t → a_s or
        // a_r → a_t respectively.
        let mut family: Vec<(f64, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.r == t || p.s == t)
            .map(|(i, p)| {
                let theta = if p.r == t {
                    normalize_angle((sp.value(p.s) - at).arg())
                } else {
                    normalize_angle((at - sp.value(p.r)).arg())
                };
                (theta, i)
            })
            .collect();
        family.sort_by(|a, b| a.0.total_cmp(&b.0));
        let l = family.len();
        let spread = family[l - 1].0 - family[0].0;
        if (spread - PI).abs() <= RAY_TOL {
            // The cone is numerically a ray: skip this pencil entirely.
            blocked.push(t);
            continue;
        }
        if spread < PI {
            // Keep the extreme rays only.
            let drop: Vec<usize> = family[1..l - 1].iter().map(|&(_, i)| i).collect();
            remove_indices(&mut pairs, &drop);
            continue;
        }
        if let Some(j) = (0..l - 1).find(|&j| family[j + 1].0 - family[j].0 > PI + RAY_TOL) {
            let keep = [family[j].1, family[j + 1].1];
            let drop: Vec<usize> = family
                .iter()
                .map(|&(_, i)| i)
                .filter(|i| !keep.contains(i))
                .collect();
            remove_indices(&mut pairs, &drop);
            continue;
        }
        if (0..l - 1).any(|j| (family[j + 1].0 - family[j].0 - PI).abs() <= RAY_TOL) {
            blocked.push(t);
            continue;
        }
        // The rays positively span the plane: the cone is the apex alone.
        let inside = s0
            .pairs
            .iter()
            .all(|p| p.plane.contains(at, tol::ABS * (1.0 + at.norm())));
        return Ok(if inside {
            ConvexRegion::Point(at)
        } else {
            ConvexRegion::Empty
        });
    }
    intersect_half_planes(&pairs.iter().map(|p| p.plane).collect::<Vec<_>>())
}

fn remove_indices(pairs: &mut Vec<CandidatePair>, drop: &[usize]) {
    let mut keep_mask: Vec<bool> = vec![true; pairs.len()];
    for &i in drop {
        keep_mask[i] = false;
    }
    let mut i = 0;
    pairs.retain(|_| {
        let keep = keep_mask[i];
        i += 1;
        keep
    });
}

/// A minimum subfamily of the tight family whose intersection is still the
/// full polygon: one supporting pair per edge.  Errors with
/// [`Error::NotPolygon`] when the range is not two-dimensional.
pub fn minimal_half_planes(sp: &NormalSpectrum, k: usize) -> Result<CandidateSet> {
    let region = lambda_k(sp, k)?;
    let ConvexRegion::Polygon(vs) = region else {
        return Err(Error::NotPolygon);
    };
    let s0 = tight_pairs(sp, k)?;
    let scale = vs.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let edge_tol = 1e-7 * (1.0 + scale);
    let mut out: Vec<CandidatePair> = Vec::with_capacity(vs.len());
    for i in 0..vs.len() {
        let a = vs[i];
        let b = vs[(i + 1) % vs.len()];
        let supporting = s0.pairs.iter().find(|p| {
            p.plane.excess(a).abs() <= edge_tol && p.plane.excess(b).abs() <= edge_tol
        });
        match supporting {
            Some(p) => {
                if !out.iter().any(|o| o.r == p.r && o.s == p.s) {
                    out.push(*p);
                }
            }
            None => {
                return Err(Error::VerificationFailed(format!(
                    "no tight pair supports polygon edge {i}"
                )))
            }
        }
    }
    Ok(CandidateSet {
        kind: CandidateKind::Minimal,
        pairs: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::region_equal;

    fn c(re: f64, im: f64) -> CPoint {
        CPoint::new(re, im)
    }

    /// diag(0, 0, 1, 1, i): the workhorse five-dimensional fixture.
    fn five_point_fixture() -> NormalSpectrum {
        NormalSpectrum::from_entries(vec![
            (c(0.0, 0.0), 2),
            (c(1.0, 0.0), 2),
            (c(0.0, 1.0), 1),
        ])
        .unwrap()
    }

    #[test]
    fn rank_validation() {
        let sp = five_point_fixture();
        assert!(matches!(lambda_k(&sp, 0), Err(Error::BadRank { .. })));
        assert!(matches!(lambda_k(&sp, 6), Err(Error::BadRank { .. })));
        assert!(matches!(covering_pairs(&sp, 5), Err(Error::BadRank { .. })));
    }

    #[test]
    fn tight_family_of_five_point_fixture_rank_two() {
        // Indices after lexicographic sort: 0 ↦ 0, 1 ↦ i, 2 ↦ 1.
        let sp = five_point_fixture();
        let s0 = tight_pairs(&sp, 2).unwrap();
        assert_eq!(s0.len(), 4);
        for (r, s) in [(0, 2), (2, 0), (1, 0), (2, 1)] {
            assert!(s0.contains_pair(r, s), "missing pair ({r}, {s})");
        }
        // The covering family adds no intersection-relevant planes here, but
        // strictly contains the tight family.
        let cov = covering_pairs(&sp, 2).unwrap();
        assert!(cov.len() >= s0.len());
        for p in &s0.pairs {
            assert!(cov.contains_pair(p.r, p.s));
        }
    }

    #[test]
    fn five_point_fixture_rank_two_is_unit_segment() {
        let sp = five_point_fixture();
        let r = lambda_k(&sp, 2).unwrap();
        assert!(region_equal(
            &r,
            &ConvexRegion::Segment(c(0.0, 0.0), c(1.0, 0.0)),
            1e-9
        ));
    }

    #[test]
    fn five_point_fixture_rank_three_is_empty() {
        let sp = five_point_fixture();
        assert!(matches!(lambda_k(&sp, 3).unwrap(), ConvexRegion::Empty));
    }

    #[test]
    fn fourth_roots_rank_two_is_origin() {
        let sp = NormalSpectrum::from_values(&[
            c(1.0, 0.0),
            c(-1.0, 0.0),
            c(0.0, 1.0),
            c(0.0, -1.0),
        ])
        .unwrap();
        match lambda_k(&sp, 2).unwrap() {
            ConvexRegion::Point(p) => assert!(p.norm() < 1e-9),
            other => panic!("expected point at origin, got {other:?}"),
        }
    }

    #[test]
    fn rank_one_is_convex_hull() {
        let vals = [c(0.0, 0.0), c(2.0, 0.0), c(1.0, 2.0), c(0.8, 0.7)];
        let sp = NormalSpectrum::from_values(&vals).unwrap();
        let r = lambda_k(&sp, 1).unwrap();
        let hull = crate::geometry::convex_hull(&vals);
        assert!(region_equal(&r, &hull, 1e-9));
    }

    #[test]
    fn full_rank_general_position_is_empty() {
        let sp =
            NormalSpectrum::from_values(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert!(matches!(lambda_k(&sp, 3).unwrap(), ConvexRegion::Empty));
    }

    #[test]
    fn scalar_spectrum_returns_the_point_for_all_ranks() {
        let sp = NormalSpectrum::from_entries(vec![(c(2.0, -3.0), 4)]).unwrap();
        for k in 1..=4 {
            match lambda_k(&sp, k).unwrap() {
                ConvexRegion::Point(p) => assert!((p - c(2.0, -3.0)).norm() < 1e-12),
                other => panic!("expected point, got {other:?}"),
            }
        }
    }

    #[test]
    fn hermitian_spectrum_interval() {
        // diag(3, 2, 1, 0): rank-2 range is [1, 2]; rank-4 is empty.
        let sp =
            NormalSpectrum::from_values(&[c(3.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
                .unwrap();
        let r = lambda_k(&sp, 2).unwrap();
        assert!(region_equal(
            &r,
            &ConvexRegion::Segment(c(1.0, 0.0), c(2.0, 0.0)),
            1e-12
        ));
        assert!(matches!(lambda_k(&sp, 4).unwrap(), ConvexRegion::Empty));
        // Odd dimension: the middle eigenvalue is the rank-((n+1)/2) range.
        let sp5 = NormalSpectrum::from_values(&[
            c(4.0, 0.0),
            c(3.0, 0.0),
            c(2.0, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
        ])
        .unwrap();
        match lambda_k(&sp5, 3).unwrap() {
            ConvexRegion::Point(p) => assert!((p - c(2.0, 0.0)).norm() < 1e-12),
            other => panic!("expected point, got {other:?}"),
        }
    }

    #[test]
    fn line_collapse_matches_plain_intersection_on_fixture() {
        let sp = five_point_fixture();
        let s0 = tight_pairs(&sp, 2).unwrap();
        let (p, q) = mutual_pair(&s0).expect("fixture has a mutually tight pair");
        let collapsed = line_collapse_range(&sp, 2, p, q, &s0).unwrap();
        let plain = family_intersection(&s0).unwrap();
        assert!(region_equal(&collapsed, &plain, 1e-8));
    }

    #[test]
    fn pencil_reduction_keeps_the_intersection() {
        // Fourth roots have no mutual pencil of size ≥ 3; the reduction must
        // pass through to the plain intersection.
        let sp = NormalSpectrum::from_values(&[
            c(1.0, 0.0),
            c(-1.0, 0.0),
            c(0.0, 1.0),
            c(0.0, -1.0),
        ])
        .unwrap();
        let s0 = tight_pairs(&sp, 2).unwrap();
        let reduced = pencil_reduction_range(&sp, 2, &s0).unwrap();
        let plain = family_intersection(&s0).unwrap();
        assert!(region_equal(&reduced, &plain, 1e-8));
    }

    #[test]
    fn minimal_family_supports_every_edge() {
        // Ninth roots of unity, k = 2: a bounded polygon.
        let vals: Vec<CPoint> = (0..9)
            .map(|j| CPoint::from_polar(1.0, 2.0 * PI * j as f64 / 9.0))
            .collect();
        let sp = NormalSpectrum::from_values(&vals).unwrap();
        let region = lambda_k(&sp, 2).unwrap();
        let ConvexRegion::Polygon(vs) = &region else {
            panic!("expected polygon");
        };
        let min = minimal_half_planes(&sp, 2).unwrap();
        assert_eq!(min.kind, CandidateKind::Minimal);
        assert_eq!(min.len(), vs.len());
        let r2 = intersect_half_planes(&min.planes()).unwrap();
        assert!(region_equal(&r2, &region, 1e-7));
        // Degenerate ranges refuse the request.
        let seg = five_point_fixture();
        assert!(matches!(
            minimal_half_planes(&seg, 2),
            Err(Error::NotPolygon)
        ));
    }
}
