//! k-regular direction sets on the unit circle.
//!
//! A finite set of directions is *k-regular* when every open semicircle
//! contains at least `k` of them.  The synthesis of minimum-dimension spectra
//! reduces to extending a polygon's edge-normal directions to a k-regular set
//! with as few additions as possible; this module computes that minimum, the
//! certified extension itself, and the addition/deletion witnesses the
//! construction is built from.

use crate::error::{Error, Result};
use crate::geometry::normalize_angle;
use itertools::Itertools;
use std::f64::consts::{PI, TAU};

/// Angular separation below which two directions count as the same direction
/// (also the slack used for open-semicircle boundary decisions).
const SEP: f64 = 1e-9;

/// Cyclic angular distance between two angles.
fn angular_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % TAU;
    d.min(TAU - d)
}

fn insert_sorted(v: &mut Vec<f64>, x: f64) {
    let idx = v.partition_point(|&y| y < x);
    v.insert(idx, x);
}

/// A set of distinct unit-circle directions, stored as sorted angles in
/// `[0, 2π)` with pairwise separation above the working tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSet {
    angles: Vec<f64>,
}

impl DirectionSet {
    /// Build from raw angles: normalize into `[0, 2π)`, sort, and merge
    /// directions within tolerance (cyclically, so near-`2π` merges with `0`).
    pub fn new(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        if raw.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidInput("non-finite direction angle".into()));
        }
        let mut a: Vec<f64> = raw.iter().map(|&t| normalize_angle(t)).collect();
        a.sort_by(f64::total_cmp);
        let mut out: Vec<f64> = Vec::with_capacity(a.len());
        for x in a {
            match out.last() {
                Some(&last) if x - last <= SEP => {}
                _ => out.push(x),
            }
        }
        if out.len() > 1 && out[0] + TAU - out.last().unwrap() <= SEP {
            out.pop();
        }
        Ok(DirectionSet { angles: out })
    }

    /// Sorted angles in `[0, 2π)`.
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Number of directions.
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    /// Never true: construction rejects empty input.
    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Whether some member lies within tolerance of `t` (cyclically).
    pub fn contains_angle(&self, t: f64) -> bool {
        let t = normalize_angle(t);
        self.angles.iter().any(|&a| angular_dist(a, t) <= SEP)
    }
}

/// Every open semicircle contains at least `k` members.
///
/// It suffices to test the semicircles anchored at members: the count over
/// `(θ, θ+π)` only changes when the boundary crosses a member, and shrinking
/// an arbitrary semicircle to the next anchored one never increases the count.
pub fn is_k_regular(ds: &DirectionSet, k: usize) -> bool {
    sorted_angles_k_regular(ds.angles(), k)
}

/// Same check on a raw sorted slice of pairwise-distinct angles.
fn sorted_angles_k_regular(angles: &[f64], k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if angles.len() < 2 * k + 1 {
        return false;
    }
    for &a in angles {
        let mut cnt = 0usize;
        for &b in angles {
            let rel = normalize_angle(b - a);
            if rel > SEP && rel < PI - SEP {
                cnt += 1;
            }
        }
        if cnt < k {
            return false;
        }
    }
    true
}

/// Number of antipodal pairs `{α, α+π}` contained in the set.
pub fn count_antipodal(ds: &DirectionSet) -> usize {
    let a = ds.angles();
    let mut s = 0usize;
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            if (normalize_angle(a[j] - a[i]) - PI).abs() <= SEP {
                s += 1;
            }
        }
    }
    s
}

/// Minimum possible size of a k-regular superset of `ds`: `2k+1` in general,
/// `2k+2` once the set contains an antipodal pair (the pair contributes to no
/// open semicircle bordered by it, forcing one extra member).
pub fn regular_lower_bound(ds: &DirectionSet, k: usize) -> usize {
    if count_antipodal(ds) > 0 {
        2 * k + 2
    } else {
        2 * k + 1
    }
}

/// Result of a minimum extension: `q` added directions making the union
/// k-regular, plus (when the search went through a deletion witness) the
/// members whose removal certified the intermediate regularity ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionResult {
    /// Number of directions added (the certified minimum for
    /// [`minimal_extension`]).
    pub q: usize,
    /// The added directions, sorted ascending in `[0, 2π)`.
    pub added: Vec<f64>,
    /// For the deletion-ladder route: the removed members `T` with
    /// `Π \ T` being `(k-|T|)`-regular, sorted ascending.
    pub witness_removed: Option<Vec<f64>>,
}

/// Extend a 1-regular direction set to a k-regular one with the minimum
/// number `q` of added directions, returning the additions themselves.
///
/// Writing `p = |Π|` and `s` for the number of antipodal pairs:
/// - `k ≥ p - s`: the minimum is `2k+1-p` (`s = 0`) or `2k+2-p` (`s > 0`),
///   achieved by an explicit construction that completes the set to `k+1`
///   antipodal pairs (perturbed off exact antipodality when `s = 0`).
/// - `k < p - s`: the minimum is the smallest `t` such that deleting some
///   `t` non-antipodal members leaves a `(k-t)`-regular set; the additions are
///   rebuilt by walking the deletions back with per-level addition witnesses.
///
/// Already-regular input returns `q = 0`; input that is not even 1-regular is
/// rejected with [`Error::NotOneRegular`].
pub fn minimal_extension(ds: &DirectionSet, k: usize) -> Result<ExtensionResult> {
    if is_k_regular(ds, k) {
        return Ok(ExtensionResult {
            q: 0,
            added: vec![],
            witness_removed: None,
        });
    }
    if !is_k_regular(ds, 1) {
        return Err(Error::NotOneRegular);
    }
    let p = ds.len();
    let s = count_antipodal(ds);
    let result = if k >= p - s {
        pair_completion_extension(ds, k, s)?
    } else {
        deletion_ladder_extension(ds, k, s)?
    };
    // Final certification: the union has exactly p + q distinct members and is
    // k-regular.
    let mut union_angles = ds.angles().to_vec();
    union_angles.extend_from_slice(&result.added);
    let union = DirectionSet::new(&union_angles)?;
    if union.len() != p + result.q || !is_k_regular(&union, k) {
        return Err(Error::VerificationFailed(
            "extension postcondition violated".into(),
        ));
    }
    Ok(result)
}

/// Insert `need` fresh antipodal pairs into a symmetric sorted arrangement,
/// each at the midpoint of the currently largest gap (and its twin).  Returns
/// the inserted angles.
fn fresh_antipodal_pairs(sym: &mut Vec<f64>, need: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * need);
    for _ in 0..need {
        let n = sym.len();
        let (mut best_i, mut best_gap) = (0usize, f64::NEG_INFINITY);
        for i in 0..n {
            let a = sym[i];
            let b = if i + 1 < n { sym[i + 1] } else { sym[0] + TAU };
            if b - a > best_gap {
                best_gap = b - a;
                best_i = i;
            }
        }
        let m = normalize_angle(sym[best_i] + best_gap / 2.0);
        let m2 = normalize_angle(m + PI);
        for x in [m, m2] {
            insert_sorted(sym, x);
            out.push(x);
        }
    }
    out
}

/// Case `k ≥ p - s`: complete the set to `k+1` antipodal pairs.
fn pair_completion_extension(ds: &DirectionSet, k: usize, s: usize) -> Result<ExtensionResult> {
    let p = ds.len();
    if s > 0 {
        // Add the antipode of every non-antipodal member plus k+1-(p-s) fresh
        // pairs: the union consists of exactly k+1 antipodal pairs, and a set
        // of j antipodal pairs (distinct directions) is (j-1)-regular.
        let q = 2 * k + 2 - p;
        let mut sym: Vec<f64> = ds.angles().to_vec();
        for &a in ds.angles() {
            let anti = normalize_angle(a + PI);
            if !ds.contains_angle(anti) {
                insert_sorted(&mut sym, anti);
            }
        }
        let mut added: Vec<f64> = sym
            .iter()
            .copied()
            .filter(|&a| !ds.contains_angle(a))
            .collect();
        let need = k + 1 - (p - s);
        added.extend(fresh_antipodal_pairs(&mut sym, need));
        added.sort_by(f64::total_cmp);
        return Ok(ExtensionResult {
            q,
            added,
            witness_removed: None,
        });
    }
    // s = 0 (so k ≥ p): build the full antipodal completion, drop the antipode
    // of one member γ, and perturb every added direction off exact
    // antipodality — toward γ's side of the circle — so the union has no
    // antipodal pair at all and still meets every open semicircle k times.
    let q = 2 * k + 1 - p;
    let gamma = ds.angles()[0];
    let mut sym: Vec<f64> = ds.angles().to_vec();
    for &a in ds.angles() {
        insert_sorted(&mut sym, normalize_angle(a + PI));
    }
    let mut base: Vec<f64> = ds
        .angles()
        .iter()
        .skip(1) // γ itself: its antipode is the dropped one
        .map(|&a| normalize_angle(a + PI))
        .collect();
    base.extend(fresh_antipodal_pairs(&mut sym, k + 1 - p));
    // Minimal gap of the full symmetric arrangement bounds safe perturbation.
    let mut min_gap = TAU;
    for i in 0..sym.len() {
        let a = sym[i];
        let b = if i + 1 < sym.len() {
            sym[i + 1]
        } else {
            sym[0] + TAU
        };
        min_gap = min_gap.min(b - a);
    }
    let mut delta = (min_gap / 8.0).max(4.0 * SEP);
    for _ in 0..4 {
        let added: Vec<f64> = base
            .iter()
            .map(|&a| {
                let rel = normalize_angle(a - gamma);
                if rel < PI {
                    normalize_angle(a + delta)
                } else {
                    normalize_angle(a - delta)
                }
            })
            .sorted_by(f64::total_cmp)
            .collect();
        let mut union_angles = ds.angles().to_vec();
        union_angles.extend_from_slice(&added);
        let union = DirectionSet::new(&union_angles)?;
        if union.len() == p + q && is_k_regular(&union, k) {
            return Ok(ExtensionResult {
                q,
                added,
                witness_removed: None,
            });
        }
        delta /= 2.0;
    }
    Err(Error::VerificationFailed(
        "perturbed antipodal completion failed regularity".into(),
    ))
}

/// Case `k < p - s`: find the smallest `t` with a `t`-element deletion of
/// non-antipodal members leaving a `(k-t)`-regular set, then invert the
/// deletions into additions.
fn deletion_ladder_extension(ds: &DirectionSet, k: usize, s: usize) -> Result<ExtensionResult> {
    let p = ds.len();
    let non_anti: Vec<f64> = ds
        .angles()
        .iter()
        .copied()
        .filter(|&a| !ds.contains_angle(a + PI))
        .collect();
    let t_min = regular_lower_bound(ds, k).saturating_sub(p).max(1);
    let t_max = k.min(non_anti.len());
    for t in t_min..=t_max {
        for combo in (0..non_anti.len()).combinations(t) {
            let removed: Vec<f64> = combo.iter().map(|&i| non_anti[i]).collect();
            let rest: Vec<f64> = ds
                .angles()
                .iter()
                .copied()
                .filter(|a| !removed.contains(a))
                .collect();
            let rest_set = DirectionSet::new(&rest)?;
            if is_k_regular(&rest_set, k - t) {
                let added = invert_deletions(ds, &removed, k, t)?;
                return Ok(ExtensionResult {
                    q: t,
                    added,
                    witness_removed: Some(removed),
                });
            }
        }
    }
    // Unreachable in theory: deleting all non-antipodal members (s > 0) or any
    // k members (reaching 0-regularity) always succeeds within the bounds.
    let _ = s;
    Err(Error::VerificationFailed(
        "no deletion witness within theoretical bounds".into(),
    ))
}

/// Walk a deletion witness back up: restore the removed members one at a time
/// (largest first) and pair each restoration with an addition that lifts the
/// regularity level by one.
fn invert_deletions(ds: &DirectionSet, removed: &[f64], k: usize, t: usize) -> Result<Vec<f64>> {
    let mut current: Vec<f64> = ds
        .angles()
        .iter()
        .copied()
        .filter(|a| !removed.contains(a))
        .collect();
    let mut reg = k - t;
    let mut added: Vec<f64> = Vec::with_capacity(t);
    for (step, &gamma) in removed.iter().rev().enumerate() {
        current.push(gamma);
        reg += 1;
        let remaining = &removed[..removed.len() - 1 - step];
        let beta = find_level_addition(&current, gamma, reg, remaining)?;
        current.push(beta);
        added.push(beta);
    }
    added.sort_by(f64::total_cmp);
    Ok(added)
}

/// Find one direction whose addition makes `current` (which just regained
/// `gamma`) `reg`-regular: try the closed-form addition witness first, then
/// fall back to midpoints of the cells cut by `current ∪ -current` (regularity
/// of a single addition depends only on which cell it lands in).
///
/// Candidates colliding with members, with soon-to-be-restored members, or
/// with their antipodes are skipped so later restorations keep their
/// non-antipodality premise.
fn find_level_addition(
    current_angles: &[f64],
    gamma: f64,
    reg: usize,
    remaining: &[f64],
) -> Result<f64> {
    let set = DirectionSet::new(current_angles)?;
    let mut candidates: Vec<f64> = Vec::new();
    if reg >= 2 {
        if let Some(b) = addition_witness(&set, gamma, reg) {
            candidates.push(b);
        }
    }
    let mut sym: Vec<f64> = set.angles().to_vec();
    for &a in set.angles() {
        let anti = normalize_angle(a + PI);
        if !set.contains_angle(anti) {
            insert_sorted(&mut sym, anti);
        }
    }
    for i in 0..sym.len() {
        let a = sym[i];
        let b = if i + 1 < sym.len() {
            sym[i + 1]
        } else {
            sym[0] + TAU
        };
        let gap = b - a;
        if gap > 4.0 * SEP {
            candidates.push(normalize_angle(a + gap / 2.0));
            candidates.push(normalize_angle(a + gap * 3.0 / 8.0));
            candidates.push(normalize_angle(a + gap * 5.0 / 8.0));
        }
    }
    for c in candidates {
        if set.contains_angle(c) {
            continue;
        }
        let collides = remaining.iter().any(|&g| {
            angular_dist(c, g) <= SEP || angular_dist(c, normalize_angle(g + PI)) <= SEP
        });
        if collides {
            continue;
        }
        let mut aug = current_angles.to_vec();
        aug.push(c);
        let aug_set = DirectionSet::new(&aug)?;
        if aug_set.len() == set.len() + 1 && is_k_regular(&aug_set, reg) {
            return Ok(c);
        }
    }
    Err(Error::VerificationFailed(format!(
        "no admissible addition found at regularity level {reg}"
    )))
}

/// Closed-form addition witness: given a set containing the non-antipodal
/// member `gamma` such that the set minus `gamma` is `(reg-1)`-regular,
/// produce a direction whose addition makes the whole set `reg`-regular.
///
/// Measured from `gamma`, let `0 < θ_1 < … < θ_m < π < θ_{m+1} < … < θ_{p-1}`
/// be the other members and `m` the count below `π`.  Then the witness sits at
/// relative angle `max(π + θ_m, θ_{p-1})/2` when `m = reg - 1`, and at
/// `min(2π + θ_1, π + θ_{m+1})/2` when `reg ≤ m ≤ p - reg`.  Returns `None`
/// when the premises fail (antipode present, `reg < 2`, or `m` out of range);
/// callers must verify the result.
pub fn addition_witness(set: &DirectionSet, gamma: f64, reg: usize) -> Option<f64> {
    if reg < 2 || !set.contains_angle(gamma) {
        return None;
    }
    let g = normalize_angle(gamma);
    let mut rels: Vec<f64> = Vec::with_capacity(set.len().saturating_sub(1));
    for &a in set.angles() {
        if angular_dist(a, g) <= SEP {
            continue;
        }
        let rel = normalize_angle(a - g);
        if (rel - PI).abs() <= SEP {
            return None; // gamma has an antipode: premise broken
        }
        rels.push(rel);
    }
    if rels.len() + 1 != set.len() {
        return None;
    }
    rels.sort_by(f64::total_cmp);
    let p = set.len();
    let m = rels.iter().filter(|&&r| r < PI).count();
    let theta = if m + 1 == reg {
        // m = reg - 1 ≥ 1 because reg ≥ 2.
        if m == 0 {
            return None;
        }
        (PI + rels[m - 1]).max(rels[p - 2]) / 2.0
    } else if reg <= m && m + reg <= p {
        if m >= rels.len() {
            return None;
        }
        (TAU + rels[0]).min(PI + rels[m]) / 2.0
    } else {
        return None;
    };
    Some(normalize_angle(g + theta))
}

/// Deletion witness: given that `ds ∪ {beta}` is k-regular with `beta ∉ ds`,
/// find a non-antipodal member `γ` whose removal leaves `ds \ {γ}`
/// `(k-1)`-regular.
///
/// Recipe: if `-beta ∈ ds` take `γ = -beta`; otherwise rotate `beta` to `π`,
/// reflect so the upper open semicircle holds at least as many members as the
/// lower, and take the non-antipodal member of smallest positive rotated
/// angle.  Every candidate is verified; if the recipe's pick fails
/// numerically, all non-antipodal members are scanned.
pub fn deletion_witness(ds: &DirectionSet, beta: f64, k: usize) -> Option<f64> {
    if k == 0 {
        return None;
    }
    let b = normalize_angle(beta);
    if ds.contains_angle(b) {
        return None;
    }
    let mut union_angles = ds.angles().to_vec();
    union_angles.push(b);
    let union = DirectionSet::new(&union_angles).ok()?;
    if union.len() != ds.len() + 1 || !is_k_regular(&union, k) {
        return None;
    }
    let verify = |gamma: f64| -> bool {
        let rest: Vec<f64> = ds
            .angles()
            .iter()
            .copied()
            .filter(|&a| a != gamma)
            .collect();
        match DirectionSet::new(&rest) {
            Ok(r) => r.len() == ds.len() - 1 && is_k_regular(&r, k - 1),
            Err(_) => false,
        }
    };
    let non_anti: Vec<f64> = ds
        .angles()
        .iter()
        .copied()
        .filter(|&a| !ds.contains_angle(a + PI))
        .collect();
    // Primary pick per the recipe.
    let primary = if let Some(&g) = ds
        .angles()
        .iter()
        .find(|&&a| angular_dist(a, b + PI) <= SEP)
    {
        Some(g)
    } else {
        let shift = PI - b;
        let phis: Vec<(f64, f64)> = ds
            .angles()
            .iter()
            .map(|&a| (normalize_angle(a + shift), a))
            .collect();
        let upper = phis.iter().filter(|(f, _)| *f > SEP && *f < PI - SEP).count();
        let lower = phis
            .iter()
            .filter(|(f, _)| *f > PI + SEP && *f < TAU - SEP)
            .count();
        let reflect = upper < lower;
        phis.iter()
            .filter(|(_, a)| non_anti.contains(a))
            .map(|&(f, a)| {
                let f = if reflect { normalize_angle(-f) } else { f };
                (f, a)
            })
            .min_by(|x, y| x.0.total_cmp(&y.0))
            .map(|(_, a)| a)
    };
    if let Some(g) = primary {
        if verify(g) {
            return Some(g);
        }
    }
    non_anti.iter().copied().find(|&g| verify(g))
}

/// Separate angles that coincide within `min_sep` by spreading each
/// coincident group symmetrically around its mean, preserving input order and
/// never crossing the midpoint toward a neighboring group.
pub fn spread_duplicate_angles(angles: &[f64], min_sep: f64) -> Vec<f64> {
    let n = angles.len();
    if n <= 1 || min_sep <= 0.0 {
        return angles.to_vec();
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let norm: Vec<f64> = angles.iter().map(|&a| normalize_angle(a)).collect();
    idx.sort_by(|&i, &j| norm[i].total_cmp(&norm[j]));
    // Group sorted positions whose consecutive separation is below min_sep,
    // wrapping the last group into the first when they touch across 2π.
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &idx {
        match groups.last_mut() {
            Some(g) if norm[i] - norm[*g.last().unwrap()] <= min_sep => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    if groups.len() > 1 {
        let first_lo = norm[groups[0][0]];
        let last_hi = norm[*groups.last().unwrap().last().unwrap()];
        if first_lo + TAU - last_hi <= min_sep {
            let tail = groups.pop().unwrap();
            // Members of the wrapped tail sit just below 2π: splice them in
            // front of the first group (they precede it cyclically).
            let mut merged = tail;
            merged.extend(groups[0].iter().copied());
            groups[0] = merged;
        }
    }
    let mut out = angles.to_vec();
    let g_count = groups.len();
    for (gi, g) in groups.iter().enumerate() {
        if g.len() < 2 {
            continue;
        }
        // Mean on the circle via the first member as reference.
        let base = norm[g[0]];
        let mean = base
            + g.iter()
                .map(|&i| normalize_angle(norm[i] - base))
                .sum::<f64>()
                / g.len() as f64;
        // Keep the spread inside half the gap to each neighboring group.
        let prev_hi = if g_count == 1 {
            mean - PI
        } else {
            let pg = &groups[(gi + g_count - 1) % g_count];
            norm[*pg.last().unwrap()]
        };
        let next_lo = if g_count == 1 {
            mean + PI
        } else {
            let ng = &groups[(gi + 1) % g_count];
            norm[ng[0]]
        };
        let room = normalize_angle(next_lo - mean)
            .min(normalize_angle(mean - prev_hi))
            .max(4.0 * min_sep);
        let step = min_sep.min(room / (g.len() as f64 + 1.0));
        let g_len = g.len() as f64;
        for (pos, &i) in g.iter().enumerate() {
            out[i] = normalize_angle(mean + (pos as f64 - (g_len - 1.0) / 2.0) * step);
        }
    }
    out
}

/// Exhaustive reference for the minimum extension, independent of the
/// structure theory: enumerate candidate direction multisets of growing size
/// and return the first size admitting a k-regular union.
///
/// The candidate pool holds the midpoints of consecutive member gaps, the
/// antipodes of those midpoints, and the members' antipodes — each kept
/// as-is and also perturbed by plus/minus one grid step of its local gap.
/// Membership of an added direction in the decisive semicircles changes only
/// when it crosses a member, a member's antipode, or another addition's
/// antipode, so "exactly at" plus "just beside" every such landmark covers
/// all combinatorially distinct placements at this grid resolution.
pub fn brute_force_min_extension(
    ds: &DirectionSet,
    k: usize,
    grid: usize,
) -> Result<ExtensionResult> {
    let p = ds.len();
    if p + 2 * k > 18 {
        return Err(Error::TooLarge(format!(
            "brute-force extension limited to p + 2k ≤ 18 (got p = {p}, k = {k})"
        )));
    }
    if grid < 4 {
        return Err(Error::InvalidInput("grid must be at least 4".into()));
    }
    if is_k_regular(ds, k) {
        return Ok(ExtensionResult {
            q: 0,
            added: vec![],
            witness_removed: None,
        });
    }
    if !is_k_regular(ds, 1) {
        return Err(Error::NotOneRegular);
    }

    let members = ds.angles();
    // Gap i runs from members[i] to the next member counterclockwise.
    let gap_len = |i: usize| -> f64 {
        if i + 1 < p {
            members[i + 1] - members[i]
        } else {
            members[0] + TAU - members[p - 1]
        }
    };
    // Index of the gap containing x (a member belongs to the gap it starts).
    let locate = |x: f64| -> usize {
        let i = members.partition_point(|&m| m <= x);
        if i == 0 {
            p - 1
        } else {
            i - 1
        }
    };
    let member_at = |x: f64| -> Option<usize> {
        members.iter().position(|&m| {
            let d = (x - m).abs();
            d <= SEP || TAU - d <= SEP
        })
    };

    let mut bases: Vec<f64> = Vec::with_capacity(3 * p);
    for i in 0..p {
        let mid = normalize_angle(members[i] + gap_len(i) / 2.0);
        bases.push(mid);
        bases.push(normalize_angle(mid + PI));
    }
    for &m in members {
        bases.push(normalize_angle(m + PI));
    }

    let mut pool: Vec<f64> = Vec::new();
    for &b in &bases {
        if let Some(mi) = member_at(b) {
            // The base collides with a member; only the just-off placements
            // on either side are meaningful.
            let right = gap_len(mi) / grid as f64;
            let left = gap_len((mi + p - 1) % p) / grid as f64;
            pool.push(normalize_angle(b + right));
            pool.push(normalize_angle(b - left));
        } else {
            let step = gap_len(locate(b)) / grid as f64;
            for x in [b, normalize_angle(b - step), normalize_angle(b + step)] {
                if member_at(x).is_none() {
                    pool.push(x);
                }
            }
        }
    }
    pool.sort_by(f64::total_cmp);
    pool.dedup_by(|a, b| (*a - *b).abs() <= SEP);
    if pool.len() > 1 && pool[0] + TAU - pool[pool.len() - 1] <= SEP {
        pool.pop();
    }

    let q_cap = 2 * k + 2;
    let mut buf: Vec<f64> = Vec::with_capacity(p + q_cap);
    for q in 1..=q_cap {
        for combo in (0..pool.len()).combinations_with_replacement(q) {
            // A direction picked twice merges away, leaving a smaller union.
            if combo.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            buf.clear();
            buf.extend_from_slice(members);
            buf.extend(combo.iter().map(|&ci| pool[ci]));
            buf.sort_unstable_by(f64::total_cmp);
            let merges = buf.windows(2).any(|w| w[1] - w[0] <= SEP)
                || buf[0] + TAU - buf[buf.len() - 1] <= SEP;
            if merges {
                continue;
            }
            if sorted_angles_k_regular(&buf, k) {
                let mut added: Vec<f64> = combo.iter().map(|&ci| pool[ci]).collect();
                added.sort_by(f64::total_cmp);
                return Ok(ExtensionResult {
                    q,
                    added,
                    witness_removed: None,
                });
            }
        }
    }
    Err(Error::VerificationFailed(
        "no extension found within the candidate budget".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(d: f64) -> f64 {
        d * PI / 180.0
    }

    fn set(degs: &[f64]) -> DirectionSet {
        DirectionSet::new(&degs.iter().map(|&d| deg(d)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn construction_normalizes_and_dedups() {
        let ds = DirectionSet::new(&[TAU - 1e-12, 0.0, PI, -PI]).unwrap();
        assert_eq!(ds.len(), 2);
        assert!(ds.contains_angle(0.0));
        assert!(ds.contains_angle(PI));
        assert!(matches!(DirectionSet::new(&[]), Err(Error::EmptyInput)));
        assert!(matches!(
            DirectionSet::new(&[f64::INFINITY]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn uniform_roots_regularity() {
        // p uniform directions are k-regular exactly for k ≤ ⌈p/2⌉ - 1.
        for p in 3..=9usize {
            let ds = DirectionSet::new(
                &(0..p).map(|j| TAU * j as f64 / p as f64).collect::<Vec<_>>(),
            )
            .unwrap();
            for k in 0..=5usize {
                let expect = 2 * k + 1 <= p;
                assert_eq!(is_k_regular(&ds, k), expect, "p = {p}, k = {k}");
            }
        }
    }

    #[test]
    fn half_turn_triple_is_not_one_regular() {
        // {0, π/2, π}: the semicircle just past π is empty.
        assert!(!is_k_regular(&set(&[0.0, 90.0, 180.0]), 1));
    }

    #[test]
    fn antipodal_counting() {
        assert_eq!(count_antipodal(&set(&[0.0, 90.0, 180.0, 270.0])), 2);
        assert_eq!(count_antipodal(&set(&[0.0, 90.0, 180.0])), 1);
        assert_eq!(count_antipodal(&set(&[10.0, 100.0, 200.0])), 0);
        assert_eq!(regular_lower_bound(&set(&[10.0, 100.0, 200.0]), 2), 5);
        assert_eq!(regular_lower_bound(&set(&[0.0, 90.0, 180.0]), 2), 6);
    }

    #[test]
    fn already_regular_means_zero_additions() {
        let ds = set(&[0.0, 72.0, 144.0, 216.0, 288.0]);
        let r = minimal_extension(&ds, 2).unwrap();
        assert_eq!(r.q, 0);
        assert!(r.added.is_empty());
    }

    #[test]
    fn non_regular_input_is_rejected() {
        assert!(matches!(
            minimal_extension(&set(&[0.0, 90.0, 180.0]), 2),
            Err(Error::NotOneRegular)
        ));
    }

    #[test]
    fn four_fifth_roots_need_one_addition_for_two_regular() {
        let ds = set(&[0.0, 72.0, 144.0, 216.0]);
        let r = minimal_extension(&ds, 2).unwrap();
        assert_eq!(r.q, 1);
        assert!(r.witness_removed.is_some());
        let mut union = ds.angles().to_vec();
        union.extend_from_slice(&r.added);
        assert!(is_k_regular(&DirectionSet::new(&union).unwrap(), 2));
    }

    #[test]
    fn axis_cross_needs_two_additions_for_two_regular() {
        // {0, π/2, π, 3π/2}: two antipodal pairs, 1-regular, not 2-regular;
        // the completion route adds one fresh antipodal pair.
        let ds = set(&[0.0, 90.0, 180.0, 270.0]);
        let r = minimal_extension(&ds, 2).unwrap();
        assert_eq!(r.q, 2);
        assert_eq!(r.added.len(), 2);
        let pair_gap = normalize_angle(r.added[1] - r.added[0]);
        assert!((pair_gap - PI).abs() <= 1e-9, "additions form an antipodal pair");
    }

    #[test]
    fn addition_witness_matches_hand_trace() {
        // Set {0°, 72°, 144°, 216°}, γ = 72°, level 2: relative angles sorted
        // are [72°, 144°, 288°], m = 2, witness at relative 216° → 288°.
        let s = set(&[0.0, 72.0, 144.0, 216.0]);
        let b = addition_witness(&s, deg(72.0), 2).unwrap();
        assert!((b - deg(288.0)).abs() < 1e-9);
        let mut union = s.angles().to_vec();
        union.push(b);
        assert!(is_k_regular(&DirectionSet::new(&union).unwrap(), 2));
    }

    #[test]
    fn addition_witness_rejects_broken_premises() {
        let s = set(&[0.0, 72.0, 144.0, 216.0]);
        assert!(addition_witness(&s, deg(33.0), 2).is_none()); // not a member
        assert!(addition_witness(&s, deg(72.0), 1).is_none()); // level too low
        let with_anti = set(&[0.0, 72.0, 180.0, 252.0]);
        assert!(addition_witness(&with_anti, deg(0.0), 2).is_none()); // antipode present
    }

    #[test]
    fn deletion_witness_matches_hand_trace() {
        // Π = {0°, 72°, 144°, 216°}, β = 288° (the missing fifth root), k = 2:
        // rotating β to π puts 144° at 36°, the smallest positive angle.
        let ds = set(&[0.0, 72.0, 144.0, 216.0]);
        let g = deletion_witness(&ds, deg(288.0), 2).unwrap();
        assert!((g - deg(144.0)).abs() < 1e-9);
        let rest: Vec<f64> = ds
            .angles()
            .iter()
            .copied()
            .filter(|&a| (a - g).abs() > 1e-12)
            .collect();
        assert!(is_k_regular(&DirectionSet::new(&rest).unwrap(), 1));
    }

    #[test]
    fn deletion_witness_prefers_existing_antipode() {
        // β = 270° has its antipode 90° in the set.
        let ds = set(&[0.0, 72.0, 90.0, 144.0, 216.0]);
        let mut union = ds.angles().to_vec();
        union.push(deg(270.0));
        assert!(is_k_regular(&DirectionSet::new(&union).unwrap(), 2));
        let g = deletion_witness(&ds, deg(270.0), 2).unwrap();
        assert!((g - deg(90.0)).abs() < 1e-9);
    }

    #[test]
    fn spread_separates_coincident_groups() {
        let raw = [1.0, 1.0, 2.0, 1.0 + 1e-12];
        let out = spread_duplicate_angles(&raw, 1e-6);
        assert_eq!(out.len(), 4);
        // Pairwise separation of the formerly coincident trio.
        for i in [0usize, 1, 3] {
            for j in [0usize, 1, 3] {
                if i != j {
                    assert!(angular_dist(out[i], out[j]) > 1e-7, "{i} vs {j}");
                }
            }
        }
        // The untouched angle stays put.
        assert!((out[2] - 2.0).abs() < 1e-12);
        // Idempotent once separated.
        let again = spread_duplicate_angles(&out, 1e-6);
        for (a, b) in out.iter().zip(again.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn brute_force_agrees_on_small_fixtures() {
        for (degs, k, expect) in [
            (vec![0.0, 72.0, 144.0, 216.0], 2usize, 1usize),
            (vec![0.0, 90.0, 180.0, 270.0], 2, 2),
        ] {
            let ds = set(&degs);
            let fast = minimal_extension(&ds, k).unwrap();
            let slow = brute_force_min_extension(&ds, k, 64).unwrap();
            assert_eq!(fast.q, expect);
            assert_eq!(slow.q, expect);
        }
    }

    #[test]
    fn brute_force_guard_rails() {
        let ds = set(&[0.0, 120.0, 240.0]);
        assert!(matches!(
            brute_force_min_extension(&ds, 8, 64),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            brute_force_min_extension(&ds, 2, 1),
            Err(Error::InvalidInput(_))
        ));
    }
}
