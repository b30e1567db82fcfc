//! Cross-check the half-plane construction of the rank-k range against two
//! independent oracles: the exhaustive hull-of-subsets intersection and a
//! support-function sweep over critical angles.
//!
//! Run with: cargo run --example oracle_cross_check

use rankrange::error::Result;
use rankrange::geometry::{region_equal, CPoint};
use rankrange::oracle::{angle_sweep, subset_hull_range, sweep_region};
use rankrange::rank_range::lambda_k;
use rankrange::spectrum::NormalSpectrum;

fn main() -> Result<()> {
    let sp = NormalSpectrum::from_entries(vec![
        (CPoint::new(1.2, 0.3), 1),
        (CPoint::new(-0.4, 1.1), 2),
        (CPoint::new(-1.3, -0.2), 1),
        (CPoint::new(0.1, -1.4), 1),
        (CPoint::new(0.9, 0.9), 1),
        (CPoint::new(-0.6, -0.9), 1),
    ])?;
    println!(
        "spectrum with {} distinct eigenvalues, n = {}",
        sp.m(),
        sp.n()
    );

    for k in 1..sp.n() {
        let fast = lambda_k(&sp, k)?;
        let hull = subset_hull_range(&sp, k)?;
        let swept = sweep_region(&angle_sweep(&sp, k, 360)?)?;
        let vs_hull = region_equal(&fast, &hull, 1e-9);
        let vs_sweep = region_equal(&fast, &swept, 1e-9);
        println!(
            "  k = {k}: {:8} | agrees with subset hull: {vs_hull} | with sweep: {vs_sweep}",
            match &fast {
                r if r.is_empty() => "empty",
                rankrange::geometry::ConvexRegion::Point(_) => "point",
                rankrange::geometry::ConvexRegion::Segment(..) => "segment",
                _ => "polygon",
            }
        );
        assert!(vs_hull && vs_sweep, "oracle disagreement at k = {k}");
    }
    println!("all ranks agree with both oracles");
    Ok(())
}
