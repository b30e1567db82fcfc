//! Render rank-k ranges to SVG: the region is shaded, eigenvalues appear as
//! small asterisks.  Files are written to the system temp directory.
//!
//! Run with: cargo run --example render_svg

use rankrange::error::Result;
use rankrange::geometry::CPoint;
use rankrange::io::svg::render_svg;
use rankrange::rank_range::lambda_k;
use rankrange::spectrum::NormalSpectrum;

fn main() -> Result<()> {
    let mut values = Vec::new();
    for r in [1.0, 2.0, 3.0] {
        values.extend([
            CPoint::new(r, 0.0),
            CPoint::new(0.0, r),
            CPoint::new(-r, 0.0),
            CPoint::new(0.0, -r),
        ]);
    }
    let sp = NormalSpectrum::from_values(&values)?;

    let dir = std::env::temp_dir();
    for k in 1..=4usize {
        let region = lambda_k(&sp, k)?;
        let svg = render_svg(&region, Some(&sp));
        let path = dir.join(format!("rank_range_k{k}.svg"));
        std::fs::write(&path, &svg)?;
        println!("wrote {} ({} bytes)", path.display(), svg.len());
    }
    Ok(())
}
