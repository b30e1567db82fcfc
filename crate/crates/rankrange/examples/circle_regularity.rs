//! k-regularity of direction sets on the circle: a set is k-regular when
//! every open semicircle contains at least k of its members.  This drives
//! how many eigenvalues a polygon's supporting half planes really need.
//!
//! Run with: cargo run --example circle_regularity

use rankrange::error::Result;
use rankrange::kregular::{
    brute_force_min_extension, is_k_regular, minimal_extension, regular_lower_bound, DirectionSet,
};
use std::f64::consts::PI;

fn report(name: &str, angles: &[f64], k: usize) -> Result<()> {
    let ds = DirectionSet::new(angles)?;
    println!("{name} (p = {}):", ds.len());
    println!("  {k}-regular: {}", is_k_regular(&ds, k));
    println!(
        "  cardinality lower bound for {k}-regularity: {}",
        regular_lower_bound(&ds, k)
    );
    let ext = minimal_extension(&ds, k)?;
    println!("  minimal additions: q = {}", ext.q);
    for t in &ext.added {
        println!("    add angle {:.6} rad ({:.1} deg)", t, t.to_degrees());
    }
    let brute = brute_force_min_extension(&ds, k, 64)?;
    println!("  exhaustive search confirms q = {}", brute.q);
    assert_eq!(ext.q, brute.q);
    Ok(())
}

fn main() -> Result<()> {
    // The four 4th roots of unity: antipodal pairs force two extra
    // directions before every open semicircle holds two members.
    report(
        "4th roots of unity",
        &[0.0, PI / 2.0, PI, 3.0 * PI / 2.0],
        2,
    )?;

    // Four of the five 5th roots of unity: a single well-placed direction
    // restores 2-regularity.
    let fifths: Vec<f64> = (0..4).map(|j| 2.0 * PI * j as f64 / 5.0).collect();
    report("\n5th roots of unity, one removed", &fifths, 2)?;

    // Six of the seven 7th roots, pushed to 3-regularity.
    let sevenths: Vec<f64> = (0..6).map(|j| 2.0 * PI * j as f64 / 7.0).collect();
    report("\n7th roots of unity, one removed", &sevenths, 3)?;
    Ok(())
}
