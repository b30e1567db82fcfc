//! Planar convex geometry: half planes in support form, bounded intersections,
//! convex hulls, and tolerance-aware classification of the results.
//!
//! Every region this crate produces is an intersection of closed half planes
//! `{z : Re(e^{-iξ} z) ≤ d}`.  The classifier distinguishes the four shapes such
//! an intersection can take when bounded: empty, a single point, a segment, or a
//! convex polygon with counterclockwise vertices.

use crate::error::{Error, Result};
use crate::tol;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// A point of the complex plane.
pub type CPoint = Complex64;

/// Angular tolerance for grouping half-plane normals and detecting antipodal
/// (opposed-normal) pairs.
const NORMAL_GROUP_TOL: f64 = 1e-9;

/// Relative tolerance for the near-unbounded guard: a family of normals whose
/// largest cyclic gap reaches `π` within this margin cannot bound a region.
const GAP_TOL: f64 = 1e-9;

/// Normalize an angle into `[0, 2π)`.
pub fn normalize_angle(t: f64) -> f64 {
    let mut a = t % TAU;
    if a < 0.0 {
        a += TAU;
    }
    if a >= TAU {
        a = 0.0;
    }
    a
}

/// A closed half plane `{z : Re(e^{-iξ} z) ≤ d}` with outward unit normal
/// `e^{iξ}` and support offset `d`.
///
/// When the plane was generated by an ordered pair of spectrum entries, `pair`
/// records their indices so candidate families stay traceable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    /// Support offset along the outward normal.
    pub d: f64,
    /// Outward normal direction, normalized into `[0, 2π)`.
    pub xi: f64,
    /// Originating ordered index pair, when the plane came from a spectrum.
    pub pair: Option<(usize, usize)>,
}

impl HalfPlane {
    /// Half plane from its support form.
    pub fn new(d: f64, xi: f64) -> Self {
        HalfPlane {
            d,
            xi: normalize_angle(xi),
            pair: None,
        }
    }

    /// Attach an originating index pair.
    pub fn with_pair(mut self, r: usize, s: usize) -> Self {
        self.pair = Some((r, s));
        self
    }

    /// The closed half plane to the **left** of the directed line from `a`
    /// through `b`: `{z : Im((conj(b) - conj(a)) (z - a)) ≥ 0}`.
    ///
    /// Its outward normal points right of the direction of travel, so
    /// `ξ = arg(b - a) - π/2` and `d = Re(e^{-iξ} a)`.
    pub fn from_pair(a: CPoint, b: CPoint) -> Result<Self> {
        let w = b - a;
        if w.norm() <= 1e-14 * (1.0 + a.norm() + b.norm()) {
            return Err(Error::DegenerateLine);
        }
        let xi = normalize_angle(w.arg() - FRAC_PI_2);
        let d = a.re * xi.cos() + a.im * xi.sin();
        Ok(HalfPlane { d, xi, pair: None })
    }

    /// Signed distance of `z` past the boundary: positive outside the half
    /// plane, negative strictly inside, zero on the boundary line.
    pub fn excess(&self, z: CPoint) -> f64 {
        z.re * self.xi.cos() + z.im * self.xi.sin() - self.d
    }

    /// Membership within an absolute slack `slack`.
    pub fn contains(&self, z: CPoint, slack: f64) -> bool {
        self.excess(z) <= slack
    }
}

/// Intersection point of the two boundary lines `Re(e^{-iξ_j} z) = d_j`, or
/// `None` when the lines are parallel within tolerance.
pub fn line_intersection(d1: f64, xi1: f64, d2: f64, xi2: f64) -> Option<CPoint> {
    let det = (xi2 - xi1).sin();
    if det.abs() < 1e-12 {
        return None;
    }
    let x = (d1 * xi2.sin() - d2 * xi1.sin()) / det;
    let y = (d2 * xi1.cos() - d1 * xi2.cos()) / det;
    Some(CPoint::new(x, y))
}

/// A bounded intersection of closed half planes, classified.
///
/// Polygon vertices are in counterclockwise order, strictly convex (no
/// duplicate and no three consecutive collinear vertices within the working
/// tolerance), starting from the lexicographically smallest vertex.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexRegion {
    /// No point satisfies all constraints.
    Empty,
    /// The intersection degenerates to a single point.
    Point(CPoint),
    /// The intersection degenerates to a segment with distinct endpoints.
    Segment(CPoint, CPoint),
    /// A non-degenerate convex polygon, vertices counterclockwise.
    Polygon(Vec<CPoint>),
}

impl ConvexRegion {
    /// True for [`ConvexRegion::Empty`].
    pub fn is_empty(&self) -> bool {
        matches!(self, ConvexRegion::Empty)
    }

    /// Extreme points of the region: nothing, the point, both endpoints, or
    /// the polygon vertices.
    pub fn vertices(&self) -> Vec<CPoint> {
        match self {
            ConvexRegion::Empty => vec![],
            ConvexRegion::Point(p) => vec![*p],
            ConvexRegion::Segment(a, b) => vec![*a, *b],
            ConvexRegion::Polygon(v) => v.clone(),
        }
    }

    /// Area (zero for everything but polygons).
    pub fn area(&self) -> f64 {
        match self {
            ConvexRegion::Polygon(v) => {
                let n = v.len();
                let mut s = 0.0;
                for i in 0..n {
                    let a = v[i];
                    let b = v[(i + 1) % n];
                    s += a.re * b.im - b.re * a.im;
                }
                s / 2.0
            }
            _ => 0.0,
        }
    }

    /// Membership test with absolute slack `slack` (Euclidean for the
    /// degenerate shapes, per-edge signed distance for polygons).
    pub fn contains(&self, z: CPoint, slack: f64) -> bool {
        self.interior_margin(z) >= -slack
    }

    /// Signed distance from `z` to the boundary: positive strictly inside,
    /// negative outside, zero on the boundary.  `-∞` for the empty region.
    pub fn interior_margin(&self, z: CPoint) -> f64 {
        match self {
            ConvexRegion::Empty => f64::NEG_INFINITY,
            ConvexRegion::Point(p) => -(z - p).norm(),
            ConvexRegion::Segment(a, b) => -dist_to_segment(z, *a, *b),
            ConvexRegion::Polygon(v) => {
                let n = v.len();
                let mut margin = f64::INFINITY;
                let mut outside: f64 = 0.0;
                for i in 0..n {
                    let a = v[i];
                    let b = v[(i + 1) % n];
                    // Interior lies left of each CCW edge; from_pair cannot fail
                    // because polygon vertices are pairwise distinct.
                    let hp = HalfPlane::from_pair(a, b).expect("polygon edge");
                    let e = hp.excess(z);
                    margin = margin.min(-e);
                    if e > 0.0 {
                        // Outside: true distance needs the segment, not the line.
                        outside = outside.max(dist_to_segment(z, a, b));
                    }
                }
                if margin >= 0.0 {
                    margin
                } else {
                    -outside
                }
            }
        }
    }
}

/// Euclidean distance from `z` to the segment `[a, b]`.
fn dist_to_segment(z: CPoint, a: CPoint, b: CPoint) -> f64 {
    let w = b - a;
    let len2 = w.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = ((z - a).re * w.re + (z - a).im * w.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (z - (a + w * t)).norm()
}

/// Structural equality of two classified regions with per-coordinate
/// tolerance `tol`: same shape tag, and payloads match up to segment
/// orientation and cyclic rotation of polygon vertex lists.
pub fn region_equal(r1: &ConvexRegion, r2: &ConvexRegion, tol: f64) -> bool {
    let close = |a: CPoint, b: CPoint| (a.re - b.re).abs() <= tol && (a.im - b.im).abs() <= tol;
    match (r1, r2) {
        (ConvexRegion::Empty, ConvexRegion::Empty) => true,
        (ConvexRegion::Point(a), ConvexRegion::Point(b)) => close(*a, *b),
        (ConvexRegion::Segment(a1, b1), ConvexRegion::Segment(a2, b2)) => {
            (close(*a1, *a2) && close(*b1, *b2)) || (close(*a1, *b2) && close(*b1, *a2))
        }
        (ConvexRegion::Polygon(v), ConvexRegion::Polygon(w)) => {
            if v.len() != w.len() {
                return false;
            }
            let n = v.len();
            (0..n).any(|r| (0..n).all(|i| close(v[i], w[(i + r) % n])))
        }
        _ => false,
    }
}

/// Canonical half-plane family: normals normalized and sorted, duplicates
/// within [`NORMAL_GROUP_TOL`] collapsed to the tightest offset (wrap-aware).
fn canonicalize(planes: &[HalfPlane]) -> Vec<HalfPlane> {
    let mut ps: Vec<HalfPlane> = planes
        .iter()
        .map(|h| HalfPlane {
            d: h.d,
            xi: normalize_angle(h.xi),
            pair: h.pair,
        })
        .collect();
    ps.sort_by(|a, b| a.xi.total_cmp(&b.xi));
    let mut out: Vec<HalfPlane> = Vec::with_capacity(ps.len());
    for h in ps {
        match out.last_mut() {
            Some(last) if (h.xi - last.xi).abs() <= NORMAL_GROUP_TOL => {
                if h.d < last.d {
                    *last = h;
                }
            }
            _ => out.push(h),
        }
    }
    // Wrap-around group: first and last normals may coincide modulo 2π.
    if out.len() > 1 {
        let first = out[0];
        let last = *out.last().unwrap();
        if first.xi + TAU - last.xi <= NORMAL_GROUP_TOL {
            if last.d < first.d {
                out[0] = HalfPlane {
                    xi: first.xi,
                    ..last
                };
            }
            out.pop();
        }
    }
    out
}

/// Largest cyclic gap between consecutive normals of a canonical (sorted)
/// family.  A single normal has gap `2π`.
fn max_cyclic_gap(canon: &[HalfPlane]) -> f64 {
    if canon.len() <= 1 {
        return TAU;
    }
    let mut gap: f64 = 0.0;
    for i in 0..canon.len() {
        let a = canon[i].xi;
        let b = if i + 1 < canon.len() {
            canon[i + 1].xi
        } else {
            canon[0].xi + TAU
        };
        gap = gap.max(b - a);
    }
    gap
}

/// Detect a pair of opposed normals whose strips contradict: `ξ_j ≈ ξ_i + π`
/// and `d_i + d_j < 0` beyond tolerance leave no feasible slab.
fn has_antipodal_contradiction(canon: &[HalfPlane]) -> bool {
    for (i, a) in canon.iter().enumerate() {
        for b in canon.iter().skip(i + 1) {
            let rel = normalize_angle(b.xi - a.xi);
            if (rel - PI).abs() <= NORMAL_GROUP_TOL {
                let scale = 1.0 + a.d.abs() + b.d.abs();
                if a.d + b.d < -tol::ABS * scale {
                    return true;
                }
            }
        }
    }
    false
}

/// Sutherland–Hodgman: clip a CCW polygon by one half plane, preserving
/// orientation.  Vertices within a scale-relative epsilon of the boundary
/// count as inside so that grazing contacts do not flicker.
fn clip_polygon(poly: &[CPoint], hp: &HalfPlane) -> Vec<CPoint> {
    let mut out = Vec::with_capacity(poly.len() + 2);
    let n = poly.len();
    for i in 0..n {
        let cur = poly[i];
        let nxt = poly[(i + 1) % n];
        let ec = hp.excess(cur);
        let en = hp.excess(nxt);
        let eps_c = 1e-12 * (1.0 + cur.norm() + hp.d.abs());
        let eps_n = 1e-12 * (1.0 + nxt.norm() + hp.d.abs());
        let cur_in = ec <= eps_c;
        let nxt_in = en <= eps_n;
        if cur_in {
            out.push(cur);
        }
        if cur_in != nxt_in {
            // Boundary crossing: interpolate along the edge.
            let t = ec / (ec - en);
            if t.is_finite() {
                out.push(cur + (nxt - cur) * t.clamp(0.0, 1.0));
            }
        }
    }
    out
}

/// Classify the vertex loop produced by clipping or hulling.  The loop is
/// assumed counterclockwise; `merge_tol` controls when nearby vertices merge
/// and when a flat polygon collapses to a segment or point.
fn classify_ccw_loop(pts: &[CPoint], merge_tol: f64) -> ConvexRegion {
    if pts.is_empty() {
        return ConvexRegion::Empty;
    }
    // Cluster cyclically-adjacent vertices within merge_tol (running means).
    let mut clusters: Vec<(CPoint, usize)> = Vec::new();
    for &p in pts {
        match clusters.last_mut() {
            Some((mean, cnt)) if (p - *mean).norm() <= merge_tol => {
                let c = *cnt as f64;
                *mean = (*mean * c + p) / (c + 1.0);
                *cnt += 1;
            }
            _ => clusters.push((p, 1)),
        }
    }
    if clusters.len() > 1 {
        let first = clusters[0];
        let last = *clusters.last().unwrap();
        if (first.0 - last.0).norm() <= merge_tol {
            let total = (first.1 + last.1) as f64;
            clusters[0].0 = (first.0 * first.1 as f64 + last.0 * last.1 as f64) / total;
            clusters[0].1 = first.1 + last.1;
            clusters.pop();
        }
    }
    let means: Vec<CPoint> = clusters.iter().map(|c| c.0).collect();
    if means.len() == 1 {
        return ConvexRegion::Point(means[0]);
    }
    // Overall diameter: collapse to a point when everything coincides.
    let mut diam: f64 = 0.0;
    for i in 0..means.len() {
        for j in (i + 1)..means.len() {
            diam = diam.max((means[i] - means[j]).norm());
        }
    }
    if diam <= merge_tol {
        let c = means.iter().sum::<CPoint>() / means.len() as f64;
        return ConvexRegion::Point(c);
    }
    if means.len() == 2 {
        return segment_ordered(means[0], means[1]);
    }
    // Principal-direction width: collapse flat loops to a segment.
    let c = means.iter().sum::<CPoint>() / means.len() as f64;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for m in &means {
        let dx = m.re - c.re;
        let dy = m.im - c.im;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    let theta = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let dir = CPoint::from_polar(1.0, theta);
    let width = means
        .iter()
        .map(|m| ((m - c) * dir.conj()).im.abs())
        .fold(0.0, f64::max);
    if width <= merge_tol {
        let mut lo = means[0];
        let mut hi = means[0];
        let (mut tlo, mut thi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &m in &means {
            let t = ((m - c) * dir.conj()).re;
            if t < tlo {
                tlo = t;
                lo = m;
            }
            if t > thi {
                thi = t;
                hi = m;
            }
        }
        return segment_ordered(lo, hi);
    }
    // Genuine polygon: drop near-collinear middle vertices, iterate until stable.
    let mut keep = means;
    loop {
        let n = keep.len();
        if n <= 3 {
            break;
        }
        let mut dropped = false;
        let mut next: Vec<CPoint> = Vec::with_capacity(n);
        let mut i = 0;
        while i < n {
            let prev = if next.is_empty() {
                keep[(i + n - 1) % n]
            } else {
                *next.last().unwrap()
            };
            let cur = keep[i];
            let nxt = keep[(i + 1) % n];
            let w = nxt - prev;
            let len = w.norm();
            let perp = if len == 0.0 {
                0.0
            } else {
                ((cur - prev) * w.conj()).im.abs() / len
            };
            if perp <= merge_tol && next.len() + (n - i) > 3 {
                dropped = true;
            } else {
                next.push(cur);
            }
            i += 1;
        }
        keep = next;
        if !dropped {
            break;
        }
    }
    match keep.len() {
        0 => ConvexRegion::Empty,
        1 => ConvexRegion::Point(keep[0]),
        2 => segment_ordered(keep[0], keep[1]),
        _ => {
            // Defensive: guarantee CCW orientation before canonical rotation.
            let mut s = 0.0;
            for i in 0..keep.len() {
                let a = keep[i];
                let b = keep[(i + 1) % keep.len()];
                s += a.re * b.im - b.re * a.im;
            }
            if s < 0.0 {
                keep.reverse();
            }
            let start = (0..keep.len())
                .min_by(|&i, &j| {
                    (keep[i].re, keep[i].im)
                        .partial_cmp(&(keep[j].re, keep[j].im))
                        .unwrap()
                })
                .unwrap();
            keep.rotate_left(start);
            ConvexRegion::Polygon(keep)
        }
    }
}

/// Segment with endpoints in lexicographic order.
fn segment_ordered(a: CPoint, b: CPoint) -> ConvexRegion {
    if (b.re, b.im) < (a.re, a.im) {
        ConvexRegion::Segment(b, a)
    } else {
        ConvexRegion::Segment(a, b)
    }
}

/// Clip the canonical family against a square window and classify.
///
/// With `half_width: None` the window is derived from the family itself and
/// grown on contact; a clipped result that still touches the window after the
/// growth budget is reported as [`Error::UnboundedRegion`].  With an explicit
/// `half_width` the window is fixed and contacts are accepted (the clipped
/// view used for rendering).
fn clip_and_classify(canon: &[HalfPlane], half_width: Option<f64>) -> Result<ConvexRegion> {
    let dmax = canon
        .iter()
        .map(|h| h.d)
        .fold(f64::NEG_INFINITY, f64::max)
        .max(0.0);
    let growable = half_width.is_none();
    let mut r = match half_width {
        Some(w) => {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidInput("window half-width must be positive".into()));
            }
            w
        }
        None => {
            // Any point of the region lies within 2(1+dmax)/sin(δ/2) of the
            // origin, where δ is the slack between the largest normal gap and π;
            // doubling that keeps the region strictly inside the window.
            let delta = (PI - max_cyclic_gap(canon)).max(1e-9);
            (4.0 * (1.0 + dmax) / (delta / 2.0).sin().max(1e-9)).min(1e12)
        }
    };
    for _attempt in 0..5 {
        let mut poly = vec![
            CPoint::new(-r, -r),
            CPoint::new(r, -r),
            CPoint::new(r, r),
            CPoint::new(-r, r),
        ];
        for hp in canon {
            poly = clip_polygon(&poly, hp);
            if poly.is_empty() {
                return Ok(ConvexRegion::Empty);
            }
        }
        let touched = poly
            .iter()
            .any(|v| v.re.abs() >= r * (1.0 - 1e-9) || v.im.abs() >= r * (1.0 - 1e-9));
        if touched && growable {
            if r >= 1e12 {
                return Err(Error::UnboundedRegion);
            }
            r = (r * 8.0).min(1e12);
            continue;
        }
        let scale = poly.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if growable {
            // Defensive feasibility audit of the clipped vertices.
            let vtol = 1e-6 * (1.0 + scale);
            for v in &poly {
                for hp in canon {
                    if hp.excess(*v) > vtol {
                        return Err(Error::VerificationFailed(format!(
                            "clipped vertex {v} violates a constraint by {}",
                            hp.excess(*v)
                        )));
                    }
                }
            }
        }
        let merge_tol = 10.0 * tol::ABS * (1.0 + scale);
        return Ok(classify_ccw_loop(&poly, merge_tol));
    }
    Err(Error::UnboundedRegion)
}

/// Intersect a non-empty family of closed half planes and classify the result.
///
/// Returns [`Error::UnboundedRegion`] when the intersection cannot be bounded —
/// equivalently, when the outward normals leave an open semicircle uncovered
/// (up to tolerance) and no opposed pair already empties the region.
pub fn intersect_half_planes(planes: &[HalfPlane]) -> Result<ConvexRegion> {
    if planes.is_empty() {
        return Err(Error::EmptyInput);
    }
    let canon = canonicalize(planes);
    if has_antipodal_contradiction(&canon) {
        return Ok(ConvexRegion::Empty);
    }
    if max_cyclic_gap(&canon) >= PI - GAP_TOL {
        return Err(Error::UnboundedRegion);
    }
    clip_and_classify(&canon, None)
}

/// Intersect half planes inside a fixed square window `[-w, w]²`, accepting
/// unbounded families: the result is the visible portion of the (possibly
/// unbounded) region.  Used for rendering.
pub fn intersect_half_planes_clipped(planes: &[HalfPlane], half_width: f64) -> Result<ConvexRegion> {
    if planes.is_empty() {
        return Err(Error::EmptyInput);
    }
    let canon = canonicalize(planes);
    if has_antipodal_contradiction(&canon) {
        return Ok(ConvexRegion::Empty);
    }
    clip_and_classify(&canon, Some(half_width))
}

/// Convex hull of a point set, classified like an intersection result
/// (point, segment, or CCW polygon).
pub fn convex_hull(pts: &[CPoint]) -> ConvexRegion {
    if pts.is_empty() {
        return ConvexRegion::Empty;
    }
    let mut p: Vec<CPoint> = pts.to_vec();
    p.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    p.dedup_by(|a, b| a == b);
    let scale = p.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let merge_tol = 10.0 * tol::ABS * (1.0 + scale);
    if p.len() < 3 {
        return classify_ccw_loop(&p, merge_tol);
    }
    let eps = 1e-12 * (1.0 + scale * scale);
    let cross = |o: CPoint, a: CPoint, b: CPoint| -> f64 {
        (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
    };
    let mut lower: Vec<CPoint> = Vec::new();
    for &pt in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], pt) <= eps {
            lower.pop();
        }
        lower.push(pt);
    }
    let mut upper: Vec<CPoint> = Vec::new();
    for &pt in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], pt) <= eps {
            upper.pop();
        }
        upper.push(pt);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    classify_ccw_loop(&lower, merge_tol)
}
