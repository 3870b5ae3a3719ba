//! All contributions of a three-objective front in one sweep.
//!
//! Points are processed in ascending third coordinate. Each active point
//! carries a staircase of "carvers": joins with its staircase neighbours and
//! with later points that landed inside its slice. The exclusive area of a
//! point at any height is its unobstructed projection area minus the carved
//! area, and its contribution is that area integrated over the sweep. Every
//! event touches a contiguous run of active points, which keeps the whole
//! sweep at `O(n log n)` for nondominated inputs.

use std::collections::BTreeMap;
use std::ops::Bound::{Excluded, Included, Unbounded};

use crate::contrib::ContributionTable;
use crate::error::{HvError, Result};
use crate::geometry::{weak, Front, ReferencePoint};
use crate::hv::hv_3d_on_rows;
use crate::kahan::KahanSum;
use crate::staircase::{OrdF64, Staircase2};

struct ActiveEntry {
    x: f64,
    idx: usize,
    /// Unobstructed projection area `(rx - x)(ry - y)`.
    incl: f64,
    /// Height up to which the accumulator is current.
    last_z: f64,
    /// Joins with neighbours and inner carvers; its area is what other
    /// points take away from the projection area.
    carved: Staircase2,
    acc: KahanSum,
}

fn flush(entry: &mut ActiveEntry, z: f64) {
    let excl = entry.incl - entry.carved.area();
    entry.acc.add(excl * (z - entry.last_z));
    entry.last_z = z;
}

/// All contributions of a three-objective front by a single sweep over the
/// third coordinate.
pub fn all_contributions_3d(
    front: &Front,
    reference: &ReferencePoint,
) -> Result<ContributionTable> {
    if front.dim() != 3 {
        return Err(HvError::AlgorithmDimensionMismatch {
            algorithm: "contributions-3d",
            dim: front.dim(),
        });
    }
    reference.check_dim(3)?;
    let r = reference.coords();
    let (rx, ry, rz) = (r[0], r[1], r[2]);
    let mut values = vec![0.0; front.len()];

    let kept: Vec<usize> = (0..front.len())
        .filter(|&i| weak(front.get(i).unwrap().coords(), r))
        .collect();
    let rows: Vec<Vec<f64>> = kept
        .iter()
        .map(|&i| front.get(i).unwrap().coords().to_vec())
        .collect();
    let total_hv = hv_3d_on_rows(&rows, r);

    let mut order: Vec<usize> = (0..kept.len()).collect();
    order.sort_by(|&a, &b| {
        let pa = &rows[a];
        let pb = &rows[b];
        pa[2]
            .total_cmp(&pb[2])
            .then(pa[1].total_cmp(&pb[1]))
            .then(pa[0].total_cmp(&pb[0]))
            .then(a.cmp(&b))
    });

    let mut active: BTreeMap<OrdF64, ActiveEntry> = BTreeMap::new();
    for &local in &order {
        let p = &rows[local];
        let (qx, qy, qz) = (p[0], p[1], p[2]);
        let qy_key = OrdF64::new(qy);
        let dominated = active
            .range((Unbounded, Included(qy_key)))
            .next_back()
            .is_some_and(|(_, e)| e.x <= qx);
        if dominated {
            // Inner event: the projection adds nothing of its own but carves
            // the active points whose exclusive strip it overlaps. That run
            // starts at the nearest active at or below this y and extends
            // upward while the left delimiter still lies right of `qx`.
            let start = active
                .range((Unbounded, Included(qy_key)))
                .next_back()
                .map(|(k, _)| *k);
            let mut run: Vec<OrdF64> = Vec::new();
            if let Some(k0) = start {
                let mut prev_x = active
                    .range((Unbounded, Excluded(k0)))
                    .next_back()
                    .map_or(rx, |(_, e)| e.x);
                let mut cur = Some(k0);
                while let Some(ck) = cur {
                    if prev_x <= qx {
                        break;
                    }
                    run.push(ck);
                    prev_x = active[&ck].x;
                    cur = active
                        .range((Excluded(ck), Unbounded))
                        .next()
                        .map(|(k, _)| *k);
                }
            }
            for k in run {
                let e = active.get_mut(&k).unwrap();
                flush(e, qz);
                let jx = qx.max(e.x);
                let jy = qy.max(k.get());
                e.carved.insert(jx, jy);
            }
        } else {
            // The new point retires every active point it dominates; each
            // becomes an inner carver of the newcomer.
            let removed_keys: Vec<OrdF64> = active
                .range((Included(qy_key), Unbounded))
                .take_while(|(_, e)| e.x >= qx)
                .map(|(k, _)| *k)
                .collect();
            let mut carved = Staircase2::new(rx, ry);
            for k in &removed_keys {
                let mut e = active.remove(k).unwrap();
                flush(&mut e, qz);
                values[kept[e.idx]] = e.acc.value();
                carved.insert(e.x, k.get());
            }
            // Surviving neighbours swap delimiters with the newcomer.
            if let Some(lk) = active
                .range((Unbounded, Excluded(qy_key)))
                .next_back()
                .map(|(k, _)| *k)
            {
                let lx = active[&lk].x;
                carved.insert(lx, qy);
                let e = active.get_mut(&lk).unwrap();
                flush(e, qz);
                e.carved.insert(lx, qy);
            }
            if let Some(rk) = active
                .range((Excluded(qy_key), Unbounded))
                .next()
                .map(|(k, _)| *k)
            {
                let e = active.get_mut(&rk).unwrap();
                flush(e, qz);
                e.carved.insert(qx, rk.get());
                carved.insert(qx, rk.get());
            }
            active.insert(
                qy_key,
                ActiveEntry {
                    x: qx,
                    idx: local,
                    incl: (rx - qx) * (ry - qy),
                    last_z: qz,
                    carved,
                    acc: KahanSum::new(),
                },
            );
        }
    }
    for (_, mut e) in std::mem::take(&mut active) {
        flush(&mut e, rz);
        values[kept[e.idx]] = e.acc.value();
    }
    Ok(ContributionTable { values, total_hv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::hv::hv_3d;

    fn front(rows: &[[f64; 3]]) -> Front {
        Front::new(
            rows.iter()
                .map(|r| Point::new(r.to_vec()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn rp(coords: [f64; 3]) -> ReferencePoint {
        ReferencePoint::new(coords.to_vec()).unwrap()
    }

    fn removal_losses(f: &Front, r: &ReferencePoint) -> Vec<f64> {
        let total = hv_3d(f, r).unwrap().value;
        (0..f.len())
            .map(|i| {
                let mut reduced = f.clone();
                reduced.remove(i).unwrap();
                total - hv_3d(&reduced, r).unwrap().value
            })
            .collect()
    }

    #[test]
    fn nested_boxes() {
        let f = front(&[[1.0, 1.0, 1.0], [2.0, 2.0, 2.0]]);
        let r = rp([3.0, 3.0, 3.0]);
        let t = all_contributions_3d(&f, &r).unwrap();
        assert_eq!(t.values, vec![7.0, 0.0]);
        assert_eq!(t.total_hv, 8.0);
    }

    #[test]
    fn six_point_front_matches_removal_losses() {
        let f = front(&[
            [5.0, 5.0, 1.0],
            [7.0, 3.0, 2.0],
            [1.0, 7.0, 4.0],
            [8.0, 1.0, 5.0],
            [4.0, 2.0, 6.0],
            [2.0, 4.0, 8.0],
        ]);
        let r = rp([10.0, 10.0, 10.0]);
        let t = all_contributions_3d(&f, &r).unwrap();
        assert_eq!(t.total_hv, 425.0);
        let slow = removal_losses(&f, &r);
        for (i, (got, want)) in t.values.iter().zip(&slow).enumerate() {
            assert!((got - want).abs() < 1e-12, "index {i}: {got} vs {want}");
        }
    }

    #[test]
    fn exact_duplicates_carry_zero() {
        let f = front(&[[1.0, 1.0, 1.0], [1.0, 1.0, 1.0], [0.5, 2.0, 2.0]]);
        let r = rp([3.0, 3.0, 3.0]);
        let t = all_contributions_3d(&f, &r).unwrap();
        assert_eq!(t.values[0], 0.0);
        assert_eq!(t.values[1], 0.0);
        assert!(t.values[2] > 0.0);
    }

    #[test]
    fn repeated_projection_at_higher_z_caps_the_column() {
        let f = front(&[[1.0, 1.0, 1.0], [1.0, 1.0, 2.0]]);
        let r = rp([3.0, 3.0, 3.0]);
        let t = all_contributions_3d(&f, &r).unwrap();
        assert_eq!(t.values, vec![4.0, 0.0]);
    }

    #[test]
    fn dominated_and_outside_points_carry_zero() {
        let f = front(&[
            [1.0, 2.0, 3.0],
            [2.0, 3.0, 4.0],
            [9.0, 1.0, 1.0],
            [2.0, 1.0, 9.0],
        ]);
        let r = rp([5.0, 5.0, 5.0]);
        let t = all_contributions_3d(&f, &r).unwrap();
        assert_eq!(t.values[1], 0.0);
        assert_eq!(t.values[2], 0.0);
        let slow = removal_losses(&f, &r);
        for (i, (got, want)) in t.values.iter().zip(&slow).enumerate() {
            assert!((got - want).abs() < 1e-12, "index {i}: {got} vs {want}");
        }
    }

    #[test]
    fn pseudorandom_fronts_match_removal_losses() {
        // Deterministic congruential stream; plenty of dominated points and
        // coordinate ties.
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 33) as f64 / (1u64 << 31) as f64 * 8.0
        };
        for case in 0..40 {
            let n = 3 + (case % 10);
            let rows: Vec<[f64; 3]> = (0..n)
                .map(|_| [next().floor(), next().floor(), next().floor()])
                .collect();
            let f = front(&rows);
            let r = rp([8.0, 8.0, 8.0]);
            let t = all_contributions_3d(&f, &r).unwrap();
            let slow = removal_losses(&f, &r);
            for (i, (got, want)) in t.values.iter().zip(&slow).enumerate() {
                assert!(
                    (got - want).abs() < 1e-9,
                    "case {case} index {i}: {got} vs {want} rows {rows:?}"
                );
            }
        }
    }

    #[test]
    fn rejects_wrong_dimension() {
        let f = Front::new(vec![Point::new(vec![1.0, 2.0]).unwrap()]).unwrap();
        let r = ReferencePoint::new(vec![3.0, 3.0]).unwrap();
        assert!(matches!(
            all_contributions_3d(&f, &r),
            Err(HvError::AlgorithmDimensionMismatch { dim: 2, .. })
        ));
    }
}
