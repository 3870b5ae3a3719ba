//! Brute-force reference computations. Three exact routes with different
//! failure modes (inclusion-exclusion over subsets, a compressed grid,
//! and a plain recursive slicing) plus a Monte Carlo estimator. The fast
//! algorithms elsewhere in the crate are tested against these; nothing
//! here shares code with them beyond the 2D base case.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HvError, Result};
use crate::geometry::{validate_front, weak, Front, Point, ReferencePoint, ValidationPolicy};
use crate::hv::hv_2d_on_pairs;
use crate::kahan::KahanSum;

/// Largest front the inclusion-exclusion oracle accepts; the term count
/// doubles per point.
pub const MAX_INCLUSION_EXCLUSION_POINTS: usize = 20;

/// Default cell budget for the grid oracle.
pub const DEFAULT_GRID_BUDGET: u64 = 100_000_000;

/// Sum over all nonempty subsets of the signed volume of the subset's
/// common dominated box. Exponential and utterly direct, which is the
/// point.
pub fn hv_inclusion_exclusion(front: &Front, reference: &ReferencePoint) -> Result<f64> {
    reference.check_dim(front.dim())?;
    let n = front.len();
    if n > MAX_INCLUSION_EXCLUSION_POINTS {
        return Err(HvError::TooManyPoints {
            what: "inclusion-exclusion oracle",
            max: MAX_INCLUSION_EXCLUSION_POINTS,
            found: n,
        });
    }
    if n == 0 {
        return Ok(0.0);
    }
    let d = front.dim();
    let r = reference.coords();
    let mut total = KahanSum::new();
    let mut join = vec![0.0f64; d];
    for mask in 1u32..(1u32 << n) {
        for x in join.iter_mut() {
            *x = f64::NEG_INFINITY;
        }
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            for (x, c) in join.iter_mut().zip(front.points()[i].coords()) {
                *x = x.max(*c);
            }
        }
        let mut vol = 1.0;
        for i in 0..d {
            if join[i] > r[i] {
                vol = 0.0;
                break;
            }
            vol *= r[i] - join[i];
        }
        if mask.count_ones() % 2 == 1 {
            total.add(vol);
        } else {
            total.add(-vol);
        }
    }
    Ok(total.value())
}

/// Exact measure by coordinate compression: cut space along every
/// coordinate that occurs in the front, then count whole cells. The
/// cell count is checked against `budget` before any work happens.
pub fn hv_grid(front: &Front, reference: &ReferencePoint, budget: u64) -> Result<f64> {
    let clipped = validate_front(front, reference, ValidationPolicy::Clip)?.front;
    if clipped.is_empty() {
        return Ok(0.0);
    }
    let d = clipped.dim();
    let r = reference.coords();
    let mut axes: Vec<Vec<f64>> = Vec::with_capacity(d);
    for (i, &ri) in r.iter().enumerate() {
        let mut vals: Vec<f64> = clipped
            .iter()
            .map(|p| p.coords()[i])
            .filter(|&v| v < ri)
            .collect();
        vals.sort_by(f64::total_cmp);
        vals.dedup();
        vals.push(ri);
        axes.push(vals);
    }
    let mut cells: u128 = 1;
    for ax in &axes {
        cells = cells.saturating_mul((ax.len() - 1).max(1) as u128);
    }
    if cells > budget as u128 {
        return Err(HvError::BudgetExceeded {
            needed: cells,
            budget: budget as u128,
        });
    }
    if axes.iter().any(|ax| ax.len() < 2) {
        // Some axis has no coordinate below the reference: every box is
        // flat in that direction.
        return Ok(0.0);
    }
    // For each point and axis, the first cell index at or past the
    // point's coordinate; the point covers a cell iff every cell index
    // reaches its threshold.
    let thresholds: Vec<Vec<usize>> = clipped
        .iter()
        .map(|p| {
            (0..d)
                .map(|i| axes[i].partition_point(|&v| v < p.coords()[i]))
                .collect()
        })
        .collect();
    let mut idx = vec![0usize; d];
    let mut total = KahanSum::new();
    loop {
        let covered = thresholds
            .iter()
            .any(|t| t.iter().zip(&idx).all(|(&ti, &ci)| ci >= ti));
        if covered {
            let mut vol = 1.0;
            for i in 0..d {
                vol *= axes[i][idx[i] + 1] - axes[i][idx[i]];
            }
            total.add(vol);
        }
        // odometer
        let mut i = 0;
        loop {
            idx[i] += 1;
            if idx[i] + 1 < axes[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
            if i == d {
                return Ok(total.value());
            }
        }
    }
}

/// Plain recursive slicing: sort by the last coordinate and charge each
/// slice the full lower-dimensional measure of everything below it.
/// No bounding, no caching.
pub fn hv_hso(front: &Front, reference: &ReferencePoint) -> Result<f64> {
    let clipped = validate_front(front, reference, ValidationPolicy::Clip)?.front;
    if clipped.is_empty() {
        return Ok(0.0);
    }
    let rows: Vec<&[f64]> = clipped.iter().map(|p| p.coords()).collect();
    Ok(hso_recurse(&rows, reference.coords()))
}

fn hso_recurse(rows: &[&[f64]], r: &[f64]) -> f64 {
    let d = r.len();
    if d == 2 {
        let mut pairs: Vec<(f64, f64)> = rows.iter().map(|p| (p[0], p[1])).collect();
        return hv_2d_on_pairs(&mut pairs, r[0], r[1]);
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| rows[a][d - 1].total_cmp(&rows[b][d - 1]));
    let mut total = KahanSum::new();
    let mut slab: Vec<Vec<f64>> = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        slab.push(rows[i][..d - 1].to_vec());
        let top = if k + 1 < order.len() {
            rows[order[k + 1]][d - 1]
        } else {
            r[d - 1]
        };
        let height = top - rows[i][d - 1];
        if height > 0.0 {
            let slab_rows: Vec<&[f64]> = slab.iter().map(|v| v.as_slice()).collect();
            total.add(height * hso_recurse(&slab_rows, &r[..d - 1]));
        }
    }
    total.value()
}

/// A Monte Carlo hypervolume estimate with its 95% confidence half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub half_width_95: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Estimate the hypervolume by uniform sampling of the box spanned by
/// the componentwise minimum of the front and the reference point.
/// Deterministic for a given seed.
pub fn hv_monte_carlo(
    front: &Front,
    reference: &ReferencePoint,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    reference.check_dim(front.dim())?;
    let done = |estimate: f64, half_width_95: f64| McEstimate {
        estimate,
        half_width_95,
        samples,
        seed,
    };
    if front.is_empty() {
        return Ok(done(0.0, 0.0));
    }
    let d = front.dim();
    let r = reference.coords();
    let mut lo = vec![f64::INFINITY; d];
    for p in front.iter() {
        for (l, c) in lo.iter_mut().zip(p.coords()) {
            *l = l.min(*c);
        }
    }
    let mut box_vol = 1.0;
    for i in 0..d {
        box_vol *= r[i] - lo[i];
    }
    if box_vol <= 0.0 {
        return Ok(done(0.0, 0.0));
    }
    if samples == 0 {
        return Ok(done(0.0, f64::INFINITY));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = vec![0.0f64; d];
    let mut hits = 0u64;
    for _ in 0..samples {
        for i in 0..d {
            sample[i] = lo[i] + rng.gen::<f64>() * (r[i] - lo[i]);
        }
        if front.iter().any(|p| weak(p.coords(), &sample)) {
            hits += 1;
        }
    }
    let p_hat = hits as f64 / samples as f64;
    let half = 1.96 * (p_hat * (1.0 - p_hat) / samples as f64).sqrt() * box_vol;
    Ok(done(p_hat * box_vol, half))
}

/// Contribution of `p` to `front` measured entirely by the grid oracle:
/// the difference between the measures with `p` present and with every
/// copy of `p` removed.
pub fn contribution_oracle(
    p: &Point,
    front: &Front,
    reference: &ReferencePoint,
    budget: u64,
) -> Result<f64> {
    reference.check_dim(front.dim())?;
    if p.dim() != front.dim() {
        return Err(HvError::DimensionMismatch {
            expected: front.dim(),
            found: p.dim(),
        });
    }
    let without: Vec<Point> = front.iter().filter(|q| *q != p).cloned().collect();
    let mut with = without.clone();
    with.push(p.clone());
    let hv_with = hv_grid(
        &Front::new(with).expect("nonempty by construction"),
        reference,
        budget,
    )?;
    let hv_without = if without.is_empty() {
        0.0
    } else {
        hv_grid(&Front::new(without).unwrap(), reference, budget)?
    };
    Ok(hv_with - hv_without)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn front(rows: &[&[f64]]) -> Front {
        Front::new(
            rows.iter()
                .map(|r| Point::new(r.to_vec()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn rp(coords: &[f64]) -> ReferencePoint {
        ReferencePoint::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn three_point_staircase() {
        let f = front(&[&[1.0, 3.0], &[2.0, 2.0], &[3.0, 1.0]]);
        let r = rp(&[4.0, 4.0]);
        assert_eq!(hv_inclusion_exclusion(&f, &r).unwrap(), 6.0);
        assert_eq!(hv_grid(&f, &r, 1000).unwrap(), 6.0);
        assert_eq!(hv_hso(&f, &r).unwrap(), 6.0);
    }

    #[test]
    fn routes_agree_on_a_3d_front() {
        let f = front(&[
            &[5.0, 5.0, 1.0],
            &[7.0, 3.0, 2.0],
            &[1.0, 7.0, 4.0],
            &[8.0, 1.0, 5.0],
            &[4.0, 2.0, 6.0],
            &[2.0, 4.0, 8.0],
        ]);
        let r = rp(&[10.0, 10.0, 10.0]);
        let ie = hv_inclusion_exclusion(&f, &r).unwrap();
        let grid = hv_grid(&f, &r, 1_000_000).unwrap();
        let hso = hv_hso(&f, &r).unwrap();
        assert!((ie - 425.0).abs() < 1e-9);
        assert!((grid - 425.0).abs() < 1e-9);
        assert!((hso - 425.0).abs() < 1e-9);
    }

    #[test]
    fn points_outside_the_reference_add_nothing() {
        let inside = front(&[&[1.0, 3.0], &[2.0, 2.0], &[3.0, 1.0]]);
        let mixed = front(&[
            &[1.0, 3.0],
            &[5.0, 0.0],
            &[2.0, 2.0],
            &[0.0, 9.0],
            &[3.0, 1.0],
        ]);
        let r = rp(&[4.0, 4.0]);
        for f in [&inside, &mixed] {
            assert_eq!(hv_inclusion_exclusion(f, &r).unwrap(), 6.0);
            assert_eq!(hv_grid(f, &r, 1000).unwrap(), 6.0);
            assert_eq!(hv_hso(f, &r).unwrap(), 6.0);
        }
    }

    #[test]
    fn duplicates_do_not_change_the_measure() {
        let f = front(&[&[2.0, 2.0], &[2.0, 2.0], &[1.0, 3.0]]);
        let r = rp(&[4.0, 4.0]);
        assert_eq!(hv_inclusion_exclusion(&f, &r).unwrap(), 5.0);
        assert_eq!(hv_grid(&f, &r, 1000).unwrap(), 5.0);
    }

    #[test]
    fn empty_front_measures_zero() {
        let f = Front::empty(3).unwrap();
        let r = rp(&[1.0, 1.0, 1.0]);
        assert_eq!(hv_inclusion_exclusion(&f, &r).unwrap(), 0.0);
        assert_eq!(hv_grid(&f, &r, 10).unwrap(), 0.0);
        assert_eq!(hv_hso(&f, &r).unwrap(), 0.0);
        assert_eq!(hv_monte_carlo(&f, &r, 100, 7).unwrap().estimate, 0.0);
    }

    #[test]
    fn grid_budget_is_enforced() {
        let f = front(&[&[1.0, 3.0], &[2.0, 2.0], &[3.0, 1.0]]);
        let r = rp(&[4.0, 4.0]);
        match hv_grid(&f, &r, 5) {
            Err(HvError::BudgetExceeded { needed, budget }) => {
                assert_eq!(needed, 9);
                assert_eq!(budget, 5);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn inclusion_exclusion_size_cap() {
        let rows: Vec<Vec<f64>> = (0..21).map(|i| vec![i as f64, 21.0 - i as f64]).collect();
        let f = Front::from_coords(&rows, 2).unwrap();
        assert!(matches!(
            hv_inclusion_exclusion(&f, &rp(&[30.0, 30.0])),
            Err(HvError::TooManyPoints { .. })
        ));
    }

    #[test]
    fn monte_carlo_full_box_is_exact() {
        let f = front(&[&[0.0, 0.0]]);
        let r = rp(&[1.0, 2.0]);
        let est = hv_monte_carlo(&f, &r, 1000, 42).unwrap();
        assert_eq!(est.estimate, 2.0);
        assert_eq!(est.half_width_95, 0.0);
    }

    #[test]
    fn monte_carlo_is_deterministic_and_converges() {
        let f = front(&[&[1.0, 3.0], &[2.0, 2.0], &[3.0, 1.0]]);
        let r = rp(&[4.0, 4.0]);
        let a = hv_monte_carlo(&f, &r, 200_000, 9).unwrap();
        let b = hv_monte_carlo(&f, &r, 200_000, 9).unwrap();
        assert_eq!(a, b);
        assert!((a.estimate - 6.0).abs() <= 1.5 * a.half_width_95);
        assert!(a.half_width_95 < 0.1);
    }

    #[test]
    fn contribution_oracle_matches_difference() {
        let p = Point::new(vec![2.0, 2.0]).unwrap();
        let s = front(&[&[1.0, 3.0], &[3.0, 1.0]]);
        let r = rp(&[4.0, 4.0]);
        assert_eq!(contribution_oracle(&p, &s, &r, 1000).unwrap(), 1.0);
        // A copy of p in the set is excluded before measuring, so the
        // contribution is unchanged.
        let s2 = front(&[&[1.0, 3.0], &[2.0, 2.0], &[3.0, 1.0]]);
        assert_eq!(contribution_oracle(&p, &s2, &r, 1000).unwrap(), 1.0);
    }
}
