//! JSON input/output formats and structured reports for the command line.
//!
//! Conventions: complex numbers are `[re, im]` pairs, spectra are arrays of
//! `[re, im]` or `[re, im, multiplicity]` rows, angles are radians, and every
//! floating-point number emitted is rounded to 12 significant digits so that
//! reports re-parse bit-identically.

pub mod svg;

use crate::error::{Error, Result};
use crate::geometry::{CPoint, ConvexRegion};
use crate::spectrum::NormalSpectrum;
use crate::synthesis::PolygonSpec;
use serde::{Deserialize, Serialize};

/// Round to 12 significant digits.  Emitted JSON numbers pass through this so
/// a report parsed back compares equal to the one in memory.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Parse a spectrum file: a JSON array of `[re, im]` or `[re, im, mult]` rows.
pub fn parse_spectrum_json(text: &str) -> Result<NormalSpectrum> {
    let rows: Vec<Vec<f64>> = serde_json::from_str(text)?;
    let mut entries = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        match row.len() {
            2 => entries.push((CPoint::new(row[0], row[1]), 1)),
            3 => {
                let m = row[2];
                if !(m >= 1.0 && m.fract() == 0.0 && m <= 1e6) {
                    return Err(Error::InvalidInput(format!(
                        "row {i}: multiplicity must be a positive integer, got {m}"
                    )));
                }
                entries.push((CPoint::new(row[0], row[1]), m as usize));
            }
            len => {
                return Err(Error::InvalidInput(format!(
                    "row {i}: expected [re, im] or [re, im, multiplicity], got {len} numbers"
                )))
            }
        }
    }
    NormalSpectrum::from_entries(entries)
}

/// Spectrum as emitted rows `[re, im, multiplicity]`, rounded.
pub fn spectrum_rows(sp: &NormalSpectrum) -> Vec<[f64; 3]> {
    sp.entries()
        .iter()
        .map(|e| [sig12(e.value.re), sig12(e.value.im), e.multiplicity as f64])
        .collect()
}

#[derive(Debug, Clone, Deserialize)]
struct PolygonFile {
    #[serde(default)]
    vertices: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    support: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    directions: Option<Vec<f64>>,
}

/// Parse a polygon file: `{"vertices": [[re, im], …]}` or
/// `{"support": [[d, xi], …]}`.
pub fn parse_polygon_json(text: &str) -> Result<PolygonSpec> {
    let file: PolygonFile = serde_json::from_str(text)?;
    match (file.vertices, file.support) {
        (Some(vs), None) => {
            let pts: Vec<CPoint> = vs.iter().map(|v| CPoint::new(v[0], v[1])).collect();
            PolygonSpec::from_vertices(&pts)
        }
        (None, Some(lines)) => {
            let ls: Vec<(f64, f64)> = lines.iter().map(|r| (r[0], r[1])).collect();
            PolygonSpec::from_support(&ls)
        }
        (Some(_), Some(_)) => Err(Error::InvalidInput(
            "polygon file must not carry both \"vertices\" and \"support\"".into(),
        )),
        (None, None) => Err(Error::InvalidInput(
            "polygon file needs a \"vertices\" or \"support\" key".into(),
        )),
    }
}

/// Parse a direction-set file: `{"directions": [angle, …]}` (radians), or any
/// polygon file, whose outward edge normals are used.
pub fn parse_directions_json(text: &str) -> Result<Vec<f64>> {
    let file: PolygonFile = serde_json::from_str(text)?;
    if let Some(ds) = file.directions {
        if ds.is_empty() {
            return Err(Error::EmptyInput);
        }
        return Ok(ds);
    }
    if file.vertices.is_some() || file.support.is_some() {
        let poly = parse_polygon_json(text)?;
        return Ok(poly.directions().to_vec());
    }
    Err(Error::InvalidInput(
        "direction file needs a \"directions\", \"vertices\", or \"support\" key".into(),
    ))
}

/// A classified region in wire form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionJson {
    /// One of `"empty"`, `"point"`, `"segment"`, `"polygon"`.
    pub kind: String,
    /// No points, the point, both endpoints, or the CCW vertex list.
    pub points: Vec<[f64; 2]>,
}

/// Region to wire form (rounded).
pub fn region_to_json(r: &ConvexRegion) -> RegionJson {
    let kind = match r {
        ConvexRegion::Empty => "empty",
        ConvexRegion::Point(_) => "point",
        ConvexRegion::Segment(..) => "segment",
        ConvexRegion::Polygon(_) => "polygon",
    };
    RegionJson {
        kind: kind.into(),
        points: r
            .vertices()
            .iter()
            .map(|v| [sig12(v.re), sig12(v.im)])
            .collect(),
    }
}

/// Wire form back to a region (inverse of [`region_to_json`]).
pub fn region_from_json(r: &RegionJson) -> Result<ConvexRegion> {
    let pts: Vec<CPoint> = r.points.iter().map(|p| CPoint::new(p[0], p[1])).collect();
    match (r.kind.as_str(), pts.len()) {
        ("empty", 0) => Ok(ConvexRegion::Empty),
        ("point", 1) => Ok(ConvexRegion::Point(pts[0])),
        ("segment", 2) => Ok(ConvexRegion::Segment(pts[0], pts[1])),
        ("polygon", n) if n >= 3 => Ok(ConvexRegion::Polygon(pts)),
        _ => Err(Error::InvalidInput(format!(
            "region kind {:?} does not match {} points",
            r.kind,
            pts.len()
        ))),
    }
}

/// Report for `range` and `verify` runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeReport {
    pub op: String,
    pub k: usize,
    pub n: usize,
    pub region: RegionJson,
    /// Present when an oracle cross-check was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_region: Option<RegionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_region: Option<RegionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
}

/// Report for `check-regular` runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularReport {
    pub op: String,
    pub p: usize,
    pub k: usize,
    pub is_regular: bool,
    /// Minimum number of directions to add for k-regularity.
    pub q: usize,
    pub added: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_removed: Option<Vec<f64>>,
}

/// Report for `synthesize` runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisReport {
    pub op: String,
    pub k: usize,
    pub p: usize,
    pub q: usize,
    pub n: usize,
    pub spectrum: Vec<[f64; 3]>,
    pub directions: Vec<f64>,
    pub offsets: Vec<f64>,
    pub region: RegionJson,
}

/// Report for `prune` runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PruneReport {
    pub op: String,
    pub k: usize,
    pub n_before: usize,
    pub n_after: usize,
    pub removed: Vec<[f64; 3]>,
    pub spectrum: Vec<[f64; 3]>,
    pub region: RegionJson,
}

/// Round a list of angles for emission.
pub fn rounded(xs: &[f64]) -> Vec<f64> {
    xs.iter().map(|&x| sig12(x)).collect()
}
