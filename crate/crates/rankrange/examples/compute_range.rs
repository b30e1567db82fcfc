//! Compute the rank-k numerical range of a small normal spectrum for every
//! admissible k and print the resulting regions.
//!
//! Run with: cargo run --example compute_range

use rankrange::error::Result;
use rankrange::geometry::{CPoint, ConvexRegion};
use rankrange::rank_range::lambda_k;
use rankrange::spectrum::NormalSpectrum;

fn show(region: &ConvexRegion) -> String {
    match region {
        ConvexRegion::Empty => "empty".to_string(),
        ConvexRegion::Point(z) => format!("point {z}"),
        ConvexRegion::Segment(a, b) => format!("segment from {a} to {b}"),
        ConvexRegion::Polygon(vs) => {
            let pts: Vec<String> = vs.iter().map(|v| format!("{v}")).collect();
            format!("polygon [{}]", pts.join(", "))
        }
    }
}

fn main() -> Result<()> {
    // A five-dimensional normal matrix given by its eigenvalues, with the
    // repeated ones carried as multiplicities.
    let sp = NormalSpectrum::from_entries(vec![
        (CPoint::new(0.0, 0.0), 2),
        (CPoint::new(1.0, 0.0), 2),
        (CPoint::new(0.0, 1.0), 1),
    ])?;
    println!("spectrum: 0, 0, 1, 1, i  (n = {})", sp.n());
    for k in 1..=sp.n() {
        println!("  rank-{k} range: {}", show(&lambda_k(&sp, k)?));
    }

    // A generic spectrum: the ranges shrink from the convex hull (k = 1)
    // down to nothing.
    let generic = NormalSpectrum::from_values(&[
        CPoint::new(3.0, 0.2),
        CPoint::new(1.0, 2.5),
        CPoint::new(-2.0, 1.8),
        CPoint::new(-2.5, -1.0),
        CPoint::new(0.5, -2.2),
        CPoint::new(2.0, -1.4),
    ])?;
    println!("\na generic 6-point spectrum:");
    for k in 1..=generic.n() {
        println!("  rank-{k} range: {}", show(&lambda_k(&generic, k)?));
    }
    Ok(())
}
