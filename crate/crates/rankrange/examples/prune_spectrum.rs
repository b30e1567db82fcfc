//! Eigenvalues that lie inside the rank-k range without being extreme points
//! of it do not shape the region; pruning removes them while provably
//! preserving the range.  The same points can be removable at one rank and
//! essential at another.
//!
//! Run with: cargo run --example prune_spectrum

use rankrange::error::Result;
use rankrange::geometry::CPoint;
use rankrange::spectrum::NormalSpectrum;
use rankrange::synthesis::prune_spectrum;

fn main() -> Result<()> {
    // Three concentric 4-point crosses: radii 1, 2 and 3.
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
    println!("spectrum: crosses of radius 1, 2, 3 (n = {})", sp.n());

    for k in [2usize, 3] {
        let out = prune_spectrum(&sp, k)?;
        println!("\nk = {k}: kept n = {}", out.spectrum.n());
        if out.removed.is_empty() {
            println!("  nothing removable; every eigenvalue in the region is extreme");
        }
        for e in &out.removed {
            println!(
                "  removed {:+.3} {:+.3}i (interior to the rank-{k} range)",
                e.value.re, e.value.im
            );
        }
    }
    // At k = 2 the unit cross is strictly inside the range and gets pruned;
    // at k = 3 those same four points are vertices of the range and stay.
    Ok(())
}
