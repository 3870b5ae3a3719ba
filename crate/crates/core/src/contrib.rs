//! Exclusive hypervolume contributions: single points, pairs, whole fronts,
//! and constant-size updates of a contribution table as points come and go.

use std::collections::HashMap;

use crate::error::{HvError, Result};
use crate::geometry::{weak, Front, Point, ReferencePoint};
use crate::hv::{exclusive_volume_3d, hv, hv_2d_on_pairs, UpdateMode};
use crate::kahan::KahanSum;

/// Per-point exclusive contributions, aligned with the front's point order.
///
/// `values[i]` is the hypervolume lost when the point at index `i` is removed
/// while every other index stays: points with an exact duplicate elsewhere in
/// the front therefore carry zero, as do dominated points and points outside
/// the reference box.
#[derive(Debug, Clone, PartialEq)]
pub struct ContributionTable {
    /// One entry per front index, in input order.
    pub values: Vec<f64>,
    /// Hypervolume of the whole front.
    pub total_hv: f64,
}

/// Bit-normalised coordinate key so `-0.0` and `0.0` collide, as they compare equal.
fn coord_key(point: &Point) -> Vec<u64> {
    point
        .coords()
        .iter()
        .map(|&c| (if c == 0.0 { 0.0f64 } else { c }).to_bits())
        .collect()
}

fn duplicate_flags(front: &Front) -> Vec<bool> {
    let mut counts: HashMap<Vec<u64>, usize> = HashMap::new();
    for p in front.iter() {
        *counts.entry(coord_key(p)).or_insert(0) += 1;
    }
    front.iter().map(|p| counts[&coord_key(p)] > 1).collect()
}

/// Hypervolume the point `p` adds on top of the rest of the front.
///
/// Any exact copies of `p` already present are set aside first, so the result
/// answers "what does `p` dominate that nothing else does". Points outside the
/// reference box contribute zero.
pub fn one_contribution(p: &Point, front: &Front, reference: &ReferencePoint) -> Result<f64> {
    reference.check_dim(front.dim())?;
    reference.check_dim(p.dim())?;
    if !weak(p.coords(), reference.coords()) {
        return Ok(0.0);
    }
    let others: Vec<&Point> = front.iter().filter(|q| *q != p).collect();
    let mut inclusive = 1.0;
    for (c, rc) in p.coords().iter().zip(reference.coords()) {
        inclusive *= rc - c;
    }
    if others.is_empty() {
        return Ok(inclusive);
    }
    let dim = p.dim();
    match dim {
        2 => {
            let mut joins: Vec<(f64, f64)> = others
                .iter()
                .map(|q| {
                    (
                        q.coords()[0].max(p.coords()[0]),
                        q.coords()[1].max(p.coords()[1]),
                    )
                })
                .collect();
            let covered = hv_2d_on_pairs(&mut joins, reference.coords()[0], reference.coords()[1]);
            Ok(inclusive - covered)
        }
        3 => {
            let rows: Vec<Vec<f64>> = others.iter().map(|q| q.coords().to_vec()).collect();
            Ok(exclusive_volume_3d(p.coords(), &rows, reference.coords()))
        }
        _ => {
            let joins = others
                .iter()
                .map(|q| p.join(q))
                .collect::<Result<Vec<_>>>()?;
            let join_front = Front::new(joins)?;
            let covered = hv(&join_front, reference)?;
            Ok(inclusive - covered.value)
        }
    }
}

/// Hypervolume dominated by `p` and `q` jointly and by nothing else in the front.
///
/// Exact copies of `p` and `q` are set aside; if the componentwise maximum of
/// the pair coincides with a remaining front point the joint region is already
/// covered and the result is zero.
pub fn joint_contribution(
    p: &Point,
    q: &Point,
    front: &Front,
    reference: &ReferencePoint,
) -> Result<f64> {
    reference.check_dim(p.dim())?;
    reference.check_dim(q.dim())?;
    let join = p.join(q)?;
    if !weak(join.coords(), reference.coords()) {
        return Ok(0.0);
    }
    let rest: Vec<Point> = front
        .iter()
        .filter(|s| *s != p && *s != q)
        .cloned()
        .collect();
    if rest.iter().any(|s| s == &join) {
        return Ok(0.0);
    }
    let rest_front = Front::from_points(rest, join.dim())?;
    one_contribution(&join, &rest_front, reference)
}

/// All contributions of a two-objective front by neighbour differences on the
/// sorted nondominated subset. Runs in `O(n log n)`.
pub fn all_contributions_2d(
    front: &Front,
    reference: &ReferencePoint,
) -> Result<ContributionTable> {
    let dim = front.dim();
    if dim != 2 {
        return Err(HvError::AlgorithmDimensionMismatch {
            algorithm: "contributions-2d",
            dim,
        });
    }
    reference.check_dim(2)?;
    let rx = reference.coords()[0];
    let ry = reference.coords()[1];
    let mut values = vec![0.0; front.len()];

    let kept: Vec<usize> = (0..front.len())
        .filter(|&i| weak(front.get(i).unwrap().coords(), reference.coords()))
        .collect();
    let kept_front = Front::from_points(
        kept.iter()
            .map(|&i| front.get(i).unwrap().clone())
            .collect(),
        2,
    )?;
    let survivors: Vec<usize> = kept_front
        .nondominated_indices()
        .into_iter()
        .map(|local| kept[local])
        .collect();

    let mut sorted = survivors.clone();
    sorted.sort_by(|&a, &b| {
        let pa = front.get(a).unwrap().coords();
        let pb = front.get(b).unwrap().coords();
        pa[0].total_cmp(&pb[0])
    });
    // Survivors have strictly increasing x and strictly decreasing y.
    let stair: Vec<[f64; 2]> = sorted
        .iter()
        .map(|&i| {
            let c = front.get(i).unwrap().coords();
            [c[0], c[1]]
        })
        .collect();
    let x_next = |pos: usize| {
        if pos + 1 < stair.len() {
            stair[pos + 1][0]
        } else {
            rx
        }
    };
    let y_prev = |pos: usize| if pos > 0 { stair[pos - 1][1] } else { ry };
    let mut total = KahanSum::new();
    for (pos, &i) in sorted.iter().enumerate() {
        values[i] = (x_next(pos) - stair[pos][0]) * (y_prev(pos) - stair[pos][1]);
        total.add((rx - stair[pos][0]) * (y_prev(pos) - stair[pos][1]));
    }

    // A dominated member survives the removal of the point above it, so the
    // loss from removing a staircase point shrinks by whatever the dominated
    // members cover inside its exclusive rectangle. Such a member's region
    // only ever reaches the rectangle of its dominator, and only when that
    // dominator is unique; with two dominators every rectangle stays clear.
    let mut is_survivor = vec![false; front.len()];
    for &i in &sorted {
        is_survivor[i] = true;
    }
    let mut resurrected: Vec<Vec<(f64, f64)>> = vec![Vec::new(); sorted.len()];
    for &i in &kept {
        if is_survivor[i] {
            continue;
        }
        let d = front.get(i).unwrap().coords();
        let hi = stair.partition_point(|c| c[0] <= d[0]);
        let lo = stair[..hi].partition_point(|c| c[1] > d[1]);
        if hi - lo == 1 {
            resurrected[lo].push((d[0], d[1]));
        }
    }
    for (pos, group) in resurrected.iter_mut().enumerate() {
        if !group.is_empty() {
            values[sorted[pos]] -= hv_2d_on_pairs(group, x_next(pos), y_prev(pos));
        }
    }

    for (i, dup) in duplicate_flags(front).iter().enumerate() {
        if *dup {
            values[i] = 0.0;
        }
    }
    Ok(ContributionTable {
        values,
        total_hv: total.value(),
    })
}

/// All contributions of a front, dispatching on dimension: neighbour
/// differences for two objectives, a sweep for three, and per-point exclusive
/// volumes otherwise.
pub fn all_contributions(front: &Front, reference: &ReferencePoint) -> Result<ContributionTable> {
    let dim = front.dim();
    reference.check_dim(dim)?;
    if front.is_empty() {
        return Ok(ContributionTable {
            values: Vec::new(),
            total_hv: 0.0,
        });
    }
    match dim {
        2 => all_contributions_2d(front, reference),
        3 => crate::contrib3d::all_contributions_3d(front, reference),
        _ => {
            let dups = duplicate_flags(front);
            let mut values = vec![0.0; front.len()];
            for (i, p) in front.iter().enumerate() {
                if !dups[i] {
                    values[i] = one_contribution(p, front, reference)?;
                }
            }
            let total = hv(front, reference)?.value;
            Ok(ContributionTable {
                values,
                total_hv: total,
            })
        }
    }
}

/// Index and contribution of the point whose removal loses the least
/// hypervolume; ties resolve to the lowest index.
pub fn least_contributor(front: &Front, reference: &ReferencePoint) -> Result<(usize, f64)> {
    if front.is_empty() {
        return Err(HvError::EmptyFront);
    }
    let table = all_contributions(front, reference)?;
    let mut best = 0;
    for (i, &v) in table.values.iter().enumerate() {
        if v < table.values[best] {
            best = i;
        }
    }
    Ok((best, table.values[best]))
}

/// Rewrites a contribution table after one point joins or leaves the front,
/// using pairwise joint contributions instead of recomputing every entry.
///
/// `front` and `table` describe the state *before* the change. Incremental
/// mode returns a table for `front` plus `p` (appended at the end);
/// decremental mode returns a table with the first copy of `p` dropped.
/// Exact duplicates break the pairwise identities, so their presence forces a
/// fresh computation of the resulting table.
pub fn update_all_contributions(
    front: &Front,
    reference: &ReferencePoint,
    table: &ContributionTable,
    p: &Point,
    mode: UpdateMode,
) -> Result<ContributionTable> {
    let dim = front.dim();
    reference.check_dim(dim)?;
    reference.check_dim(p.dim())?;
    if table.values.len() != front.len() {
        return Err(HvError::TableSizeMismatch {
            expected: front.len(),
            found: table.values.len(),
        });
    }
    match mode {
        UpdateMode::Incremental => {
            if front.position_of(p).is_some() {
                return Err(HvError::AlreadyMember);
            }
            let mut grown = front.clone();
            grown.push(p.clone())?;
            if duplicate_flags(front).iter().any(|&d| d) {
                return all_contributions(&grown, reference);
            }
            if dim == 2 && front.is_nondominated() {
                return update_2d_incremental(front, reference, table, p);
            }
            let mut values = Vec::with_capacity(front.len() + 1);
            for (i, q) in front.iter().enumerate() {
                values.push(table.values[i] - joint_contribution(p, q, front, reference)?);
            }
            let own = one_contribution(p, front, reference)?;
            values.push(own);
            Ok(ContributionTable {
                values,
                total_hv: table.total_hv + own,
            })
        }
        UpdateMode::Decremental => {
            let removed = front.position_of(p).ok_or(HvError::NotAMember)?;
            let mut shrunk = front.clone();
            shrunk.remove(removed)?;
            if duplicate_flags(front).iter().any(|&d| d) {
                return all_contributions(&shrunk, reference);
            }
            if dim == 2 && front.is_nondominated() {
                return update_2d_decremental(front, reference, table, removed);
            }
            let mut values = Vec::with_capacity(front.len() - 1);
            for (i, q) in front.iter().enumerate() {
                if i == removed {
                    continue;
                }
                values.push(table.values[i] + joint_contribution(p, q, &shrunk, reference)?);
            }
            Ok(ContributionTable {
                values,
                total_hv: table.total_hv - table.values[removed],
            })
        }
    }
}

/// Positions of the clipped points of a verified-nondominated 2D front,
/// sorted by first coordinate.
fn sorted_clipped_2d(front: &Front, reference: &ReferencePoint) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..front.len())
        .filter(|&i| weak(front.get(i).unwrap().coords(), reference.coords()))
        .collect();
    idx.sort_by(|&a, &b| {
        front.get(a).unwrap().coords()[0].total_cmp(&front.get(b).unwrap().coords()[0])
    });
    idx
}

fn update_2d_incremental(
    front: &Front,
    reference: &ReferencePoint,
    table: &ContributionTable,
    p: &Point,
) -> Result<ContributionTable> {
    let rx = reference.coords()[0];
    let ry = reference.coords()[1];
    let mut values = table.values.clone();
    let px = p.coords()[0];
    let py = p.coords()[1];
    if !weak(p.coords(), reference.coords()) {
        values.push(0.0);
        return Ok(ContributionTable {
            values,
            total_hv: table.total_hv,
        });
    }
    let sorted = sorted_clipped_2d(front, reference);
    let coords = |pos: usize| front.get(sorted[pos]).unwrap().coords();
    // First staircase member at or right of p in x.
    let split = sorted.partition_point(|&i| front.get(i).unwrap().coords()[0] < px);
    // p is dominated as soon as some member to its left (or at its x) sits at
    // or below it in y; the candidates are the last member before `split` and
    // a member sharing p's x exactly, which lands at `split` itself.
    let dominated_from_left = split > 0 && coords(split - 1)[1] <= py;
    let dominated_at_same_x =
        split < sorted.len() && coords(split)[0] == px && coords(split)[1] <= py;
    if dominated_from_left || dominated_at_same_x {
        // p adds no volume, but if exactly one member dominates it, that
        // member's removal now resurrects p: its loss shrinks by the part
        // of p's box that no other member covers. With two or more
        // dominators every loss is unchanged.
        let hi = if split < sorted.len() && coords(split)[0] == px {
            split + 1
        } else {
            split
        };
        let lo = sorted[..hi].partition_point(|&i| front.get(i).unwrap().coords()[1] > py);
        if hi - lo == 1 {
            let q = lo;
            let x_next = if q + 1 < sorted.len() {
                coords(q + 1)[0]
            } else {
                rx
            };
            let y_prev = if q > 0 { coords(q - 1)[1] } else { ry };
            values[sorted[q]] -= (x_next - px) * (y_prev - py);
        }
        values.push(0.0);
        return Ok(ContributionTable {
            values,
            total_hv: table.total_hv,
        });
    }
    // Members p dominates form a run starting at `split`.
    let mut run_end = split;
    let mut dominated_pairs: Vec<(f64, f64)> = Vec::new();
    while run_end < sorted.len() && coords(run_end)[1] >= py {
        let c = coords(run_end);
        dominated_pairs.push((c[0], c[1]));
        values[sorted[run_end]] = 0.0;
        run_end += 1;
    }
    let x_right = if run_end < sorted.len() {
        coords(run_end)[0]
    } else {
        rx
    };
    let y_left = if split > 0 { coords(split - 1)[1] } else { ry };
    // Contribution of p against the old front: its bounded box minus whatever
    // the dominated run already covered inside that box.
    let own =
        (x_right - px) * (y_left - py) - hv_2d_on_pairs(&mut dominated_pairs, x_right, y_left);
    // Surviving neighbours get p as their new delimiter.
    if split > 0 {
        let l = coords(split - 1);
        let y_ll = if split > 1 { coords(split - 2)[1] } else { ry };
        values[sorted[split - 1]] = (px - l[0]) * (y_ll - l[1]);
    }
    if run_end < sorted.len() {
        let rgt = coords(run_end);
        let x_rr = if run_end + 1 < sorted.len() {
            coords(run_end + 1)[0]
        } else {
            rx
        };
        values[sorted[run_end]] = (x_rr - rgt[0]) * (py - rgt[1]);
    }
    values.push(own);
    Ok(ContributionTable {
        values,
        total_hv: table.total_hv + own,
    })
}

fn update_2d_decremental(
    front: &Front,
    reference: &ReferencePoint,
    table: &ContributionTable,
    removed: usize,
) -> Result<ContributionTable> {
    let rx = reference.coords()[0];
    let ry = reference.coords()[1];
    let mut values = table.values.clone();
    let total = table.total_hv - table.values[removed];
    let p = front.get(removed).unwrap();
    if weak(p.coords(), reference.coords()) {
        let sorted = sorted_clipped_2d(front, reference);
        let pos = sorted.iter().position(|&i| i == removed).unwrap();
        let coords = |q: usize| front.get(sorted[q]).unwrap().coords();
        // The two neighbours absorb p's slice of the staircase.
        if pos > 0 {
            let l = coords(pos - 1);
            let x_next = if pos + 1 < sorted.len() {
                coords(pos + 1)[0]
            } else {
                rx
            };
            let y_ll = if pos > 1 { coords(pos - 2)[1] } else { ry };
            values[sorted[pos - 1]] = (x_next - l[0]) * (y_ll - l[1]);
        }
        if pos + 1 < sorted.len() {
            let rgt = coords(pos + 1);
            let x_rr = if pos + 2 < sorted.len() {
                coords(pos + 2)[0]
            } else {
                rx
            };
            let y_left = if pos > 0 { coords(pos - 1)[1] } else { ry };
            values[sorted[pos + 1]] = (x_rr - rgt[0]) * (y_left - rgt[1]);
        }
    }
    values.remove(removed);
    Ok(ContributionTable {
        values,
        total_hv: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Front, Point, ReferencePoint};
    use crate::oracle::contribution_oracle;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    fn front(rows: &[&[f64]]) -> Front {
        Front::new(rows.iter().map(|r| pt(r)).collect()).unwrap()
    }

    fn rp(coords: &[f64]) -> ReferencePoint {
        ReferencePoint::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn one_contribution_middle_point() {
        let s = front(&[&[1.0, 3.0], &[3.0, 1.0]]);
        let r = rp(&[4.0, 4.0]);
        let c = one_contribution(&pt(&[2.0, 2.0]), &s, &r).unwrap();
        assert_eq!(c, 1.0);
    }

    #[test]
    fn one_contribution_empty_front_is_inclusive_volume() {
        let s = Front::empty(2).unwrap();
        let r = rp(&[5.0, 5.0]);
        let c = one_contribution(&pt(&[2.0, 4.0]), &s, &r).unwrap();
        assert_eq!(c, 3.0);
    }

    #[test]
    fn one_contribution_of_member_matches_removal_loss() {
        let s = front(&[&[1.0, 3.0], &[2.0, 2.0], &[3.0, 1.0]]);
        let r = rp(&[4.0, 4.0]);
        for i in 0..3 {
            let c = one_contribution(s.get(i).unwrap(), &s, &r).unwrap();
            assert_eq!(c, 1.0, "index {i}");
        }
    }

    #[test]
    fn one_contribution_matches_oracle_in_3d() {
        let s = front(&[
            &[5.0, 5.0, 1.0],
            &[7.0, 3.0, 2.0],
            &[1.0, 7.0, 4.0],
            &[8.0, 1.0, 5.0],
            &[4.0, 2.0, 6.0],
            &[2.0, 4.0, 8.0],
        ]);
        let r = rp(&[10.0, 10.0, 10.0]);
        for i in 0..s.len() {
            let fast = one_contribution(s.get(i).unwrap(), &s, &r).unwrap();
            let slow = contribution_oracle(
                s.get(i).unwrap(),
                &s,
                &r,
                crate::oracle::DEFAULT_GRID_BUDGET,
            )
            .unwrap();
            assert!((fast - slow).abs() < 1e-9, "index {i}: {fast} vs {slow}");
        }
    }

    #[test]
    fn joint_contribution_of_two_points_alone() {
        let s = Front::empty(2).unwrap();
        let r = rp(&[5.0, 5.0]);
        let c = joint_contribution(&pt(&[1.0, 4.0]), &pt(&[2.0, 2.0]), &s, &r).unwrap();
        assert_eq!(c, 3.0);
    }

    #[test]
    fn joint_contribution_is_symmetric() {
        let s = front(&[&[1.0, 6.0], &[6.0, 1.0]]);
        let r = rp(&[8.0, 8.0]);
        let a = pt(&[2.0, 4.0]);
        let b = pt(&[3.0, 2.0]);
        let ab = joint_contribution(&a, &b, &s, &r).unwrap();
        let ba = joint_contribution(&b, &a, &s, &r).unwrap();
        assert_eq!(ab, ba);
        assert!(ab > 0.0);
    }

    #[test]
    fn joint_contribution_zero_when_join_is_a_member() {
        let s = front(&[&[3.0, 1.0], &[3.0, 3.0]]);
        let r = rp(&[4.0, 4.0]);
        let c = joint_contribution(&pt(&[1.0, 3.0]), &pt(&[3.0, 1.0]), &s, &r).unwrap();
        assert_eq!(c, 0.0);
    }

    #[test]
    fn all_contributions_2d_staircase() {
        let s = front(&[&[1.0, 3.0], &[2.0, 2.0], &[3.0, 1.0]]);
        let r = rp(&[4.0, 4.0]);
        let t = all_contributions_2d(&s, &r).unwrap();
        assert_eq!(t.values, vec![1.0, 1.0, 1.0]);
        assert_eq!(t.total_hv, 6.0);
    }

    #[test]
    fn all_contributions_2d_zeroes_dominated_and_outside_points() {
        let s = front(&[&[1.0, 3.0], &[3.0, 3.0], &[3.0, 1.0], &[9.0, 1.0]]);
        let r = rp(&[4.0, 4.0]);
        let t = all_contributions_2d(&s, &r).unwrap();
        assert_eq!(t.values[1], 0.0);
        assert_eq!(t.values[3], 0.0);
        assert!(t.values[0] > 0.0 && t.values[2] > 0.0);
    }

    #[test]
    fn all_contributions_2d_zeroes_every_duplicate_copy() {
        let s = front(&[&[2.0, 2.0], &[2.0, 2.0], &[1.0, 3.0]]);
        let r = rp(&[4.0, 4.0]);
        let t = all_contributions_2d(&s, &r).unwrap();
        assert_eq!(t.values, vec![0.0, 0.0, 1.0]);
        assert_eq!(t.total_hv, 5.0);
    }

    #[test]
    fn all_contributions_matches_removal_loss_in_4d() {
        let s = front(&[
            &[1.0, 5.0, 3.0, 2.0],
            &[4.0, 2.0, 1.0, 5.0],
            &[2.0, 3.0, 5.0, 1.0],
            &[5.0, 1.0, 2.0, 4.0],
        ]);
        let r = rp(&[6.0, 6.0, 6.0, 6.0]);
        let t = all_contributions(&s, &r).unwrap();
        let total = hv(&s, &r).unwrap().value;
        assert_eq!(t.total_hv, total);
        for i in 0..s.len() {
            let mut reduced = s.clone();
            reduced.remove(i).unwrap();
            let rest = hv(&reduced, &r).unwrap().value;
            assert!(
                (t.values[i] - (total - rest)).abs() < 1e-9,
                "index {i}: {} vs {}",
                t.values[i],
                total - rest
            );
        }
    }

    #[test]
    fn least_contributor_prefers_lowest_index_on_ties() {
        let s = front(&[&[1.0, 3.0], &[2.0, 2.0], &[3.0, 1.0]]);
        let r = rp(&[4.0, 4.0]);
        let (idx, val) = least_contributor(&s, &r).unwrap();
        assert_eq!(idx, 0);
        assert_eq!(val, 1.0);
    }

    #[test]
    fn least_contributor_rejects_empty_front() {
        let r = rp(&[4.0, 4.0]);
        assert!(matches!(
            least_contributor(&Front::empty(2).unwrap(), &r),
            Err(HvError::EmptyFront)
        ));
    }

    #[test]
    fn update_incremental_matches_fresh_table_2d() {
        let s = front(&[&[1.0, 5.0], &[4.0, 2.0], &[6.0, 1.0]]);
        let r = rp(&[8.0, 8.0]);
        let table = all_contributions(&s, &r).unwrap();
        let p = pt(&[2.0, 3.0]);
        let updated =
            update_all_contributions(&s, &r, &table, &p, UpdateMode::Incremental).unwrap();
        let mut grown = s.clone();
        grown.push(p).unwrap();
        let fresh = all_contributions(&grown, &r).unwrap();
        assert_eq!(updated.values.len(), fresh.values.len());
        for i in 0..fresh.values.len() {
            assert!(
                (updated.values[i] - fresh.values[i]).abs() < 1e-12,
                "index {i}"
            );
        }
        assert!((updated.total_hv - fresh.total_hv).abs() < 1e-12);
    }

    #[test]
    fn update_incremental_handles_newly_dominated_members_2d() {
        let s = front(&[&[1.0, 5.0], &[4.0, 2.0], &[6.0, 1.0]]);
        let r = rp(&[8.0, 8.0]);
        let table = all_contributions(&s, &r).unwrap();
        // Dominates (4, 2).
        let p = pt(&[3.0, 2.0]);
        let updated =
            update_all_contributions(&s, &r, &table, &p, UpdateMode::Incremental).unwrap();
        let mut grown = s.clone();
        grown.push(p).unwrap();
        let fresh = all_contributions(&grown, &r).unwrap();
        assert_eq!(updated.values[1], 0.0);
        for i in 0..fresh.values.len() {
            assert!(
                (updated.values[i] - fresh.values[i]).abs() < 1e-12,
                "index {i}"
            );
        }
    }

    #[test]
    fn update_incremental_dominated_point_shrinks_its_unique_dominator() {
        let s = front(&[&[1.0, 5.0], &[4.0, 2.0], &[6.0, 1.0]]);
        let r = rp(&[8.0, 8.0]);
        let table = all_contributions(&s, &r).unwrap();
        // Dominated only by (4, 2); removing (4, 2) would resurrect it.
        let p = pt(&[5.0, 4.0]);
        let updated =
            update_all_contributions(&s, &r, &table, &p, UpdateMode::Incremental).unwrap();
        let mut grown = s.clone();
        grown.push(p).unwrap();
        let fresh = all_contributions(&grown, &r).unwrap();
        assert_eq!(updated.values[3], 0.0);
        assert!(updated.values[1] < table.values[1]);
        for i in 0..fresh.values.len() {
            assert!(
                (updated.values[i] - fresh.values[i]).abs() < 1e-12,
                "index {i}: {} vs {}",
                updated.values[i],
                fresh.values[i]
            );
        }
        assert_eq!(updated.total_hv, table.total_hv);
    }

    #[test]
    fn update_incremental_doubly_dominated_point_changes_nothing() {
        let s = front(&[&[1.0, 5.0], &[4.0, 2.0], &[6.0, 1.0]]);
        let r = rp(&[8.0, 8.0]);
        let table = all_contributions(&s, &r).unwrap();
        // Under both (1, 5) and (4, 2): no single removal resurrects it.
        let p = pt(&[5.0, 6.0]);
        let updated =
            update_all_contributions(&s, &r, &table, &p, UpdateMode::Incremental).unwrap();
        let mut grown = s.clone();
        grown.push(p).unwrap();
        let fresh = all_contributions(&grown, &r).unwrap();
        assert_eq!(&updated.values[..3], &table.values[..]);
        assert_eq!(updated.values[3], 0.0);
        for i in 0..fresh.values.len() {
            assert!(
                (updated.values[i] - fresh.values[i]).abs() < 1e-12,
                "index {i}"
            );
        }
    }

    #[test]
    fn update_incremental_with_dominated_member_uses_generic_path() {
        let s = front(&[&[1.0, 5.0], &[4.0, 2.0], &[5.0, 3.0]]);
        let r = rp(&[8.0, 8.0]);
        let table = all_contributions(&s, &r).unwrap();
        let p = pt(&[2.0, 3.0]);
        let updated =
            update_all_contributions(&s, &r, &table, &p, UpdateMode::Incremental).unwrap();
        let mut grown = s.clone();
        grown.push(p).unwrap();
        let fresh = all_contributions(&grown, &r).unwrap();
        for i in 0..fresh.values.len() {
            assert!(
                (updated.values[i] - fresh.values[i]).abs() < 1e-12,
                "index {i}"
            );
        }
    }

    #[test]
    fn update_decremental_matches_fresh_table_2d() {
        let s = front(&[&[1.0, 5.0], &[2.0, 3.0], &[4.0, 2.0], &[6.0, 1.0]]);
        let r = rp(&[8.0, 8.0]);
        let table = all_contributions(&s, &r).unwrap();
        let p = pt(&[2.0, 3.0]);
        let updated =
            update_all_contributions(&s, &r, &table, &p, UpdateMode::Decremental).unwrap();
        let mut shrunk = s.clone();
        shrunk.remove(1).unwrap();
        let fresh = all_contributions(&shrunk, &r).unwrap();
        for i in 0..fresh.values.len() {
            assert!(
                (updated.values[i] - fresh.values[i]).abs() < 1e-12,
                "index {i}"
            );
        }
        assert!((updated.total_hv - fresh.total_hv).abs() < 1e-12);
    }

    #[test]
    fn update_roundtrip_3d() {
        let s = front(&[
            &[5.0, 5.0, 1.0],
            &[7.0, 3.0, 2.0],
            &[1.0, 7.0, 4.0],
            &[8.0, 1.0, 5.0],
        ]);
        let r = rp(&[10.0, 10.0, 10.0]);
        let table = all_contributions(&s, &r).unwrap();
        let p = pt(&[4.0, 2.0, 6.0]);
        let grown_table =
            update_all_contributions(&s, &r, &table, &p, UpdateMode::Incremental).unwrap();
        let mut grown = s.clone();
        grown.push(p.clone()).unwrap();
        let fresh = all_contributions(&grown, &r).unwrap();
        for i in 0..fresh.values.len() {
            assert!(
                (grown_table.values[i] - fresh.values[i]).abs() < 1e-9,
                "index {i}: {} vs {}",
                grown_table.values[i],
                fresh.values[i]
            );
        }
        let back = update_all_contributions(&grown, &r, &grown_table, &p, UpdateMode::Decremental)
            .unwrap();
        for i in 0..table.values.len() {
            assert!((back.values[i] - table.values[i]).abs() < 1e-9, "index {i}");
        }
    }

    #[test]
    fn update_rejects_membership_violations() {
        let s = front(&[&[1.0, 3.0], &[3.0, 1.0]]);
        let r = rp(&[4.0, 4.0]);
        let table = all_contributions(&s, &r).unwrap();
        assert!(matches!(
            update_all_contributions(&s, &r, &table, &pt(&[1.0, 3.0]), UpdateMode::Incremental),
            Err(HvError::AlreadyMember)
        ));
        assert!(matches!(
            update_all_contributions(&s, &r, &table, &pt(&[2.0, 2.0]), UpdateMode::Decremental),
            Err(HvError::NotAMember)
        ));
    }

    #[test]
    fn update_rejects_mismatched_table() {
        let s = front(&[&[1.0, 3.0], &[3.0, 1.0]]);
        let r = rp(&[4.0, 4.0]);
        let bad = ContributionTable {
            values: vec![1.0],
            total_hv: 6.0,
        };
        assert!(matches!(
            update_all_contributions(&s, &r, &bad, &pt(&[2.0, 2.0]), UpdateMode::Incremental),
            Err(HvError::TableSizeMismatch {
                expected: 2,
                found: 1
            })
        ));
    }
}
