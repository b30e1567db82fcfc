//! Eigenvalue multisets of normal matrices and their collinearity structure.
//!
//! A [`NormalSpectrum`] stores distinct eigenvalues with positive integer
//! multiplicities; values closer than the crate tolerance are merged (weighted
//! mean) so every downstream strict/non-strict side count is well defined.

use crate::error::{Error, Result};
use crate::geometry::{normalize_angle, CPoint};
use crate::tol;
use std::f64::consts::PI;

/// One distinct eigenvalue with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub value: CPoint,
    pub multiplicity: usize,
}

/// The eigenvalue multiset of a normal matrix: distinct values sorted
/// lexicographically by (re, im), each with multiplicity ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalSpectrum {
    entries: Vec<SpectrumEntry>,
}

/// How the distinct eigenvalues sit in the plane.
#[derive(Debug, Clone, PartialEq)]
pub enum Collinearity {
    /// A single distinct eigenvalue (scalar matrix).
    Scalar,
    /// All distinct eigenvalues on one line: `a = anchor + t · e^{iθ}` with the
    /// offsets `t` listed with multiplicity in descending order.
    Collinear {
        /// Line direction in `[0, π)`.
        theta: f64,
        /// Projections `Re(e^{-iθ} a_j)` with multiplicity, descending.
        offsets: Vec<f64>,
        /// Foot of the line: the point with zero projection.
        anchor: CPoint,
    },
    /// At least three affinely independent eigenvalues.
    General,
}

impl NormalSpectrum {
    /// Spectrum from a list of eigenvalues, each with multiplicity one
    /// (coincident values merge into higher multiplicities).
    pub fn from_values(vals: &[CPoint]) -> Result<Self> {
        Self::from_entries(vals.iter().map(|&v| (v, 1)).collect())
    }

    /// Spectrum from (value, multiplicity) pairs.  Values within the crate
    /// tolerance of each other merge into one entry with summed multiplicity
    /// at their multiplicity-weighted mean.
    pub fn from_entries(list: Vec<(CPoint, usize)>) -> Result<Self> {
        if list.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut items: Vec<(CPoint, usize)> = Vec::with_capacity(list.len());
        for (v, m) in list {
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::InvalidInput("non-finite eigenvalue".into()));
            }
            if m == 0 {
                return Err(Error::InvalidInput("zero multiplicity".into()));
            }
            items.push((v, m));
        }
        // Merge until no two entries are within tolerance (weighted means can
        // drift, so iterate to a fixed point).
        loop {
            items.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).unwrap());
            let mut merged = false;
            let mut out: Vec<(CPoint, usize)> = Vec::with_capacity(items.len());
            'outer: for (v, m) in items.drain(..) {
                for (w, wm) in out.iter_mut() {
                    if (*w - v).norm() <= tol::ABS {
                        let total = (*wm + m) as f64;
                        *w = (*w * *wm as f64 + v * m as f64) / total;
                        *wm += m;
                        merged = true;
                        continue 'outer;
                    }
                }
                out.push((v, m));
            }
            items = out;
            if !merged {
                break;
            }
        }
        items.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).unwrap());
        Ok(NormalSpectrum {
            entries: items
                .into_iter()
                .map(|(value, multiplicity)| SpectrumEntry {
                    value,
                    multiplicity,
                })
                .collect(),
        })
    }

    /// Matrix dimension: total multiplicity.
    pub fn n(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Number of distinct eigenvalues.
    pub fn m(&self) -> usize {
        self.entries.len()
    }

    /// Distinct entries, sorted lexicographically.
    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    /// The `i`-th distinct eigenvalue.
    pub fn value(&self, i: usize) -> CPoint {
        self.entries[i].value
    }

    /// All eigenvalues expanded with multiplicity (length [`Self::n`]).
    pub fn values_with_multiplicity(&self) -> Vec<CPoint> {
        let mut out = Vec::with_capacity(self.n());
        for e in &self.entries {
            for _ in 0..e.multiplicity {
                out.push(e.value);
            }
        }
        out
    }

    /// Classify the geometric arrangement of the distinct eigenvalues.
    ///
    /// The line test is scale-aware: the principal-axis residual must not
    /// exceed `tol · (1 + spread)` where `spread` is the largest distance from
    /// the centroid.
    pub fn collinearity(&self) -> Collinearity {
        if self.m() == 1 {
            return Collinearity::Scalar;
        }
        let vals: Vec<CPoint> = self.entries.iter().map(|e| e.value).collect();
        let c = vals.iter().sum::<CPoint>() / vals.len() as f64;
        let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
        let mut spread: f64 = 0.0;
        for v in &vals {
            let dx = v.re - c.re;
            let dy = v.im - c.im;
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
            spread = spread.max((v - c).norm());
        }
        let mut theta = 0.5 * (2.0 * sxy).atan2(sxx - syy);
        theta = normalize_angle(theta);
        if theta >= PI {
            theta -= PI;
        }
        let dir = CPoint::from_polar(1.0, theta);
        let residual = vals
            .iter()
            .map(|v| ((v - c) * dir.conj()).im.abs())
            .fold(0.0, f64::max);
        if residual > tol::ABS * (1.0 + spread) {
            return Collinearity::General;
        }
        // Offsets with multiplicity, descending.
        let mut offsets: Vec<f64> = Vec::with_capacity(self.n());
        for e in &self.entries {
            let t = e.value.re * theta.cos() + e.value.im * theta.sin();
            for _ in 0..e.multiplicity {
                offsets.push(t);
            }
        }
        offsets.sort_by(|a, b| b.total_cmp(a));
        // Anchor: the component of the line orthogonal to its direction, so
        // that every eigenvalue is anchor + offset · e^{iθ}.
        let along = c.re * theta.cos() + c.im * theta.sin();
        let anchor = c - dir * along;
        Collinearity::Collinear {
            theta,
            offsets,
            anchor,
        }
    }

    /// Affine image `μ·A + ν`: scales/rotates and shifts every eigenvalue.
    /// Rejects `|μ|` at or below tolerance (the image would be scalar noise).
    pub fn transform(&self, mu: CPoint, nu: CPoint) -> Result<NormalSpectrum> {
        if mu.norm() <= tol::ABS {
            return Err(Error::DegenerateScale);
        }
        Self::from_entries(
            self.entries
                .iter()
                .map(|e| (mu * e.value + nu, e.multiplicity))
                .collect(),
        )
    }
}
