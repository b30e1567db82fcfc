//! Inverse problem: given a convex polygon P and a rank k, build a normal
//! spectrum of minimum dimension whose rank-k numerical range equals P, then
//! verify the round trip.
//!
//! Run with: cargo run --example synthesize_polygon

use rankrange::error::Result;
use rankrange::geometry::{region_equal, CPoint};
use rankrange::rank_range::lambda_k;
use rankrange::synthesis::{synthesize, PolygonSpec};

fn main() -> Result<()> {
    // An irregular convex pentagon.
    let target = PolygonSpec::from_vertices(&[
        CPoint::new(2.0, 0.0),
        CPoint::new(1.2, 1.8),
        CPoint::new(-1.0, 1.5),
        CPoint::new(-1.8, -0.6),
        CPoint::new(0.5, -1.6),
    ])?;
    println!("target: a convex pentagon (p = {})", target.p());

    for k in 1..=3usize {
        let out = synthesize(&target, k)?;
        println!("\nk = {k}: n = {} eigenvalues, {} beyond the edge count", out.n, out.q);
        for e in out.spectrum.entries() {
            println!(
                "  {:+.6} {:+.6}i  (multiplicity {})",
                e.value.re, e.value.im, e.multiplicity
            );
        }
        let achieved = lambda_k(&out.spectrum, k)?;
        let ok = region_equal(&achieved, &target.region(), 1e-7);
        println!("  rank-{k} range reproduces the pentagon: {ok}");
        assert!(ok);
    }
    Ok(())
}
