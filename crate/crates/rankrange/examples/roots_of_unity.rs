//! The rank-k range of the n-th roots of unity is a concentric regular n-gon,
//! scaled by cos(k*pi/n) relative to the constraint offset and rotated by
//! k*pi/n.  This example prints the predicted and computed circumradii.
//!
//! Run with: cargo run --example roots_of_unity

use rankrange::error::Result;
use rankrange::geometry::{CPoint, ConvexRegion};
use rankrange::rank_range::lambda_k;
use rankrange::spectrum::NormalSpectrum;
use std::f64::consts::PI;

fn main() -> Result<()> {
    let n = 9usize;
    let roots: Vec<CPoint> = (0..n)
        .map(|j| CPoint::from_polar(1.0, 2.0 * PI * j as f64 / n as f64))
        .collect();
    let sp = NormalSpectrum::from_values(&roots)?;
    println!("spectrum: the {n}-th roots of unity");

    for k in 1..=4usize {
        let region = lambda_k(&sp, k)?;
        // Support offset cos(k*pi/n) in each of the n constraint directions
        // puts the polygon vertices at radius cos(k*pi/n) / cos(pi/n).
        let predicted = (k as f64 * PI / n as f64).cos() / (PI / n as f64).cos();
        match region {
            ConvexRegion::Polygon(vs) => {
                let radii: Vec<f64> = vs.iter().map(|v| v.norm()).collect();
                let min = radii.iter().cloned().fold(f64::INFINITY, f64::min);
                let max = radii.iter().cloned().fold(0.0, f64::max);
                println!(
                    "  k = {k}: {} vertices, circumradius {:.12} (predicted {:.12}, spread {:.2e})",
                    vs.len(),
                    max,
                    predicted,
                    max - min
                );
            }
            other => println!("  k = {k}: unexpected region {other:?}"),
        }
    }
    Ok(())
}
