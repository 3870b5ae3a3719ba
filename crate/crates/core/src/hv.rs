//! Exact hypervolume algorithms, one per dimension regime, behind a
//! single dispatching entry point. All of them clip against the
//! reference point first and report how many points survived.

use crate::contrib::one_contribution;
use crate::error::{HvError, Result};
use crate::geometry::{validate_front, Front, Point, ReferencePoint, ValidationPolicy};
use crate::kahan::KahanSum;
use crate::staircase::Staircase2;

/// Which algorithm produced a value. The string forms double as the CLI
/// names and the benchmark record identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgorithmId {
    Auto,
    Hv2d,
    Hv3d,
    Hv4d,
    Wfg,
    Hso,
    InclusionExclusion,
    Grid,
}

impl AlgorithmId {
    pub fn as_str(&self) -> &'static str {
        match self {
            AlgorithmId::Auto => "auto",
            AlgorithmId::Hv2d => "2d",
            AlgorithmId::Hv3d => "3d",
            AlgorithmId::Hv4d => "4d",
            AlgorithmId::Wfg => "wfg",
            AlgorithmId::Hso => "hso",
            AlgorithmId::InclusionExclusion => "ie",
            AlgorithmId::Grid => "grid",
        }
    }
}

impl std::fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for AlgorithmId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(AlgorithmId::Auto),
            "2d" => Ok(AlgorithmId::Hv2d),
            "3d" => Ok(AlgorithmId::Hv3d),
            "4d" => Ok(AlgorithmId::Hv4d),
            "wfg" => Ok(AlgorithmId::Wfg),
            "hso" => Ok(AlgorithmId::Hso),
            "ie" => Ok(AlgorithmId::InclusionExclusion),
            "grid" => Ok(AlgorithmId::Grid),
            _ => Err(format!("unknown algorithm `{s}`")),
        }
    }
}

/// A hypervolume value together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HvResult {
    pub value: f64,
    pub algorithm_id: AlgorithmId,
    /// Points remaining after clipping against the reference point.
    pub n_used: usize,
}

/// 2D staircase measure on raw coordinate pairs. Clips, drops dominated
/// pairs, then accumulates one horizontal slab per surviving point.
/// Shared base case of every recursive algorithm in the crate.
pub(crate) fn hv_2d_on_pairs(pairs: &mut Vec<(f64, f64)>, rx: f64, ry: f64) -> f64 {
    pairs.retain(|&(x, y)| x <= rx && y <= ry);
    if pairs.is_empty() {
        return 0.0;
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut total = KahanSum::new();
    let mut prev_y = ry;
    for &(x, y) in pairs.iter() {
        if y < prev_y {
            total.add((rx - x) * (prev_y - y));
            prev_y = y;
        }
    }
    total.value()
}

fn clip_rows(front: &Front, reference: &ReferencePoint) -> Result<Vec<Vec<f64>>> {
    let clipped = validate_front(front, reference, ValidationPolicy::Clip)?.front;
    Ok(clipped.iter().map(|p| p.coords().to_vec()).collect())
}

fn expect_dim(front: &Front, want: usize, algorithm: &'static str) -> Result<()> {
    if front.dim() != want {
        return Err(HvError::AlgorithmDimensionMismatch {
            algorithm,
            dim: front.dim(),
        });
    }
    Ok(())
}

/// Exact hypervolume of a 2D front.
pub fn hv_2d(front: &Front, reference: &ReferencePoint) -> Result<HvResult> {
    expect_dim(front, 2, "2d")?;
    let rows = clip_rows(front, reference)?;
    let n_used = rows.len();
    let mut pairs: Vec<(f64, f64)> = rows.iter().map(|p| (p[0], p[1])).collect();
    let r = reference.coords();
    Ok(HvResult {
        value: hv_2d_on_pairs(&mut pairs, r[0], r[1]),
        algorithm_id: AlgorithmId::Hv2d,
        n_used,
    })
}

/// Sweep already-clipped 3D rows in ascending third coordinate, keeping
/// the area of the active projections in a staircase.
pub(crate) fn hv_3d_on_rows(rows: &[Vec<f64>], r: &[f64]) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| {
        rows[a][2]
            .total_cmp(&rows[b][2])
            .then(rows[a][1].total_cmp(&rows[b][1]))
            .then(rows[a][0].total_cmp(&rows[b][0]))
    });
    let mut st = Staircase2::new(r[0], r[1]);
    let mut vol = KahanSum::new();
    let mut prev_z = rows[order[0]][2];
    for &i in &order {
        let p = &rows[i];
        vol.add(st.area() * (p[2] - prev_z));
        prev_z = p[2];
        st.insert(p[0], p[1]);
    }
    vol.add(st.area() * (r[2] - prev_z));
    vol.value()
}

/// Exact hypervolume of a 3D front in O(n log n).
pub fn hv_3d(front: &Front, reference: &ReferencePoint) -> Result<HvResult> {
    expect_dim(front, 3, "3d")?;
    let rows = clip_rows(front, reference)?;
    Ok(HvResult {
        value: hv_3d_on_rows(&rows, reference.coords()),
        algorithm_id: AlgorithmId::Hv3d,
        n_used: rows.len(),
    })
}

/// Volume a 3D point adds to the union over `others`, computed by
/// bounding: its own box minus the measure of the joins.
pub(crate) fn exclusive_volume_3d(p: &[f64], others: &[Vec<f64>], r: &[f64]) -> f64 {
    let own = (r[0] - p[0]) * (r[1] - p[1]) * (r[2] - p[2]);
    if others.is_empty() {
        return own;
    }
    let joins: Vec<Vec<f64>> = others
        .iter()
        .map(|q| vec![p[0].max(q[0]), p[1].max(q[1]), p[2].max(q[2])])
        .collect();
    own - hv_3d_on_rows(&joins, r)
}

/// Exact hypervolume of a 4D front: sweep the fourth coordinate and pay
/// one 3D exclusive-volume computation per point.
pub fn hv_4d(front: &Front, reference: &ReferencePoint) -> Result<HvResult> {
    expect_dim(front, 4, "4d")?;
    let rows = clip_rows(front, reference)?;
    let n_used = rows.len();
    if rows.is_empty() {
        return Ok(HvResult {
            value: 0.0,
            algorithm_id: AlgorithmId::Hv4d,
            n_used,
        });
    }
    let r = reference.coords();
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| rows[a][3].total_cmp(&rows[b][3]));
    let mut seen: Vec<Vec<f64>> = Vec::with_capacity(rows.len());
    let mut base = KahanSum::new();
    let mut vol = KahanSum::new();
    let mut prev_w = rows[order[0]][3];
    for &i in &order {
        let p = &rows[i];
        vol.add(base.value() * (p[3] - prev_w));
        prev_w = p[3];
        let proj = p[..3].to_vec();
        base.add(exclusive_volume_3d(&proj, &seen, &r[..3]));
        seen.push(proj);
    }
    vol.add(base.value() * (r[3] - prev_w));
    Ok(HvResult {
        value: vol.value(),
        algorithm_id: AlgorithmId::Hv4d,
        n_used,
    })
}

/// Nondominated filtering on raw rows, first duplicate kept.
pub(crate) fn nondominated_rows(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let d = if let Some(first) = rows.first() {
        first.len()
    } else {
        return Vec::new();
    };
    if d == 2 {
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by(|&a, &b| {
            rows[a][0]
                .total_cmp(&rows[b][0])
                .then(rows[a][1].total_cmp(&rows[b][1]))
                .then(a.cmp(&b))
        });
        let mut keep = Vec::new();
        let mut best_y = f64::INFINITY;
        for &i in &order {
            if rows[i][1] < best_y {
                keep.push(i);
                best_y = rows[i][1];
            }
        }
        keep.sort_unstable();
        return keep.into_iter().map(|i| rows[i].clone()).collect();
    }
    if d == 3 {
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by(|&a, &b| {
            rows[a][2]
                .total_cmp(&rows[b][2])
                .then(rows[a][0].total_cmp(&rows[b][0]))
                .then(rows[a][1].total_cmp(&rows[b][1]))
                .then(a.cmp(&b))
        });
        let mut st = Staircase2::unbounded();
        let mut keep = Vec::new();
        for &i in &order {
            if !st.dominates(rows[i][0], rows[i][1]) {
                st.insert(rows[i][0], rows[i][1]);
                keep.push(i);
            }
        }
        keep.sort_unstable();
        return keep.into_iter().map(|i| rows[i].clone()).collect();
    }
    let weak = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| x <= y);
    (0..rows.len())
        .filter(|&i| {
            !(0..rows.len()).any(|j| {
                if i == j {
                    return false;
                }
                let jw = weak(&rows[j], &rows[i]);
                let iw = weak(&rows[i], &rows[j]);
                (jw && !iw) || (jw && iw && j < i)
            })
        })
        .map(|i| rows[i].clone())
        .collect()
}

fn wfg_recurse(rows: &[Vec<f64>], r: &[f64]) -> f64 {
    let d = r.len();
    if d == 2 {
        let mut pairs: Vec<(f64, f64)> = rows.iter().map(|p| (p[0], p[1])).collect();
        return hv_2d_on_pairs(&mut pairs, r[0], r[1]);
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| rows[a][d - 1].total_cmp(&rows[b][d - 1]).then(a.cmp(&b)));
    let mut total = KahanSum::new();
    for (k, &i) in order.iter().enumerate() {
        let p = &rows[i];
        let mut own = 1.0;
        for j in 0..d - 1 {
            own *= r[j] - p[j];
        }
        let mut excl = own;
        if k > 0 {
            let limited: Vec<Vec<f64>> = order[..k]
                .iter()
                .map(|&q| (0..d - 1).map(|j| p[j].max(rows[q][j])).collect())
                .collect();
            excl -= wfg_recurse(&nondominated_rows(&limited), &r[..d - 1]);
        }
        total.add((r[d - 1] - p[d - 1]) * excl);
    }
    total.value()
}

/// Exact hypervolume by recursive bounding, usable in any dimension;
/// the dispatcher reserves it for five objectives and up. Objectives are
/// reordered once, most spread first, which keeps the recursion narrow.
pub fn hv_wfg(front: &Front, reference: &ReferencePoint) -> Result<HvResult> {
    if front.dim() < 2 {
        return Err(HvError::DimensionTooSmall {
            min: 2,
            found: front.dim(),
        });
    }
    let rows = clip_rows(front, reference)?;
    let n_used = rows.len();
    let d = front.dim();
    let r = reference.coords();
    if rows.is_empty() {
        return Ok(HvResult {
            value: 0.0,
            algorithm_id: AlgorithmId::Wfg,
            n_used,
        });
    }
    // Order objectives by descending coordinate variance.
    let n = rows.len() as f64;
    let mut spread: Vec<(usize, f64)> = (0..d)
        .map(|j| {
            let mean = rows.iter().map(|p| p[j]).sum::<f64>() / n;
            let var = rows.iter().map(|p| (p[j] - mean).powi(2)).sum::<f64>() / n;
            (j, var)
        })
        .collect();
    spread.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let perm: Vec<usize> = spread.into_iter().map(|(j, _)| j).collect();
    let rows: Vec<Vec<f64>> = rows
        .iter()
        .map(|p| perm.iter().map(|&j| p[j]).collect())
        .collect();
    let r_perm: Vec<f64> = perm.iter().map(|&j| r[j]).collect();
    Ok(HvResult {
        value: wfg_recurse(&rows, &r_perm),
        algorithm_id: AlgorithmId::Wfg,
        n_used,
    })
}

/// Exact hypervolume with the algorithm chosen by dimension: staircase
/// in 2D, sweeps in 3D and 4D, recursive bounding beyond.
pub fn hv(front: &Front, reference: &ReferencePoint) -> Result<HvResult> {
    reference.check_dim(front.dim())?;
    match front.dim() {
        2 => hv_2d(front, reference),
        3 => hv_3d(front, reference),
        4 => hv_4d(front, reference),
        _ => hv_wfg(front, reference),
    }
}

/// Exact hypervolume with the algorithm pinned by the caller. `Auto`
/// defers to the dimension dispatch; the reference algorithms are
/// exposed here so results can be cross-checked from the outside.
pub fn hv_with_algorithm(
    front: &Front,
    reference: &ReferencePoint,
    algorithm: AlgorithmId,
    grid_budget: u64,
) -> Result<HvResult> {
    reference.check_dim(front.dim())?;
    let oracle_result = |value: f64, id: AlgorithmId| -> Result<HvResult> {
        Ok(HvResult {
            value,
            algorithm_id: id,
            n_used: clip_rows(front, reference)?.len(),
        })
    };
    match algorithm {
        AlgorithmId::Auto => hv(front, reference),
        AlgorithmId::Hv2d => hv_2d(front, reference),
        AlgorithmId::Hv3d => hv_3d(front, reference),
        AlgorithmId::Hv4d => hv_4d(front, reference),
        AlgorithmId::Wfg => hv_wfg(front, reference),
        AlgorithmId::Hso => {
            let value = crate::oracle::hv_hso(front, reference)?;
            oracle_result(value, AlgorithmId::Hso)
        }
        AlgorithmId::InclusionExclusion => {
            let value = crate::oracle::hv_inclusion_exclusion(front, reference)?;
            oracle_result(value, AlgorithmId::InclusionExclusion)
        }
        AlgorithmId::Grid => {
            let value = crate::oracle::hv_grid(front, reference, grid_budget)?;
            oracle_result(value, AlgorithmId::Grid)
        }
    }
}

/// Direction of a structural update.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateMode {
    /// A point is being added; it must not already be a member.
    Incremental,
    /// A member is being removed.
    Decremental,
}

/// New hypervolume after adding or removing `p`, paid for with a single
/// contribution computation instead of a recomputation from scratch.
pub fn update_hv(
    front: &Front,
    reference: &ReferencePoint,
    known_hv: f64,
    p: &Point,
    mode: UpdateMode,
) -> Result<f64> {
    reference.check_dim(front.dim())?;
    let copies = front.iter().filter(|q| *q == p).count();
    match mode {
        UpdateMode::Incremental => {
            if copies > 0 {
                return Err(HvError::AlreadyMember);
            }
            Ok(known_hv + one_contribution(p, front, reference)?)
        }
        UpdateMode::Decremental => {
            if copies == 0 {
                return Err(HvError::NotAMember);
            }
            if copies > 1 {
                // A surviving copy keeps covering the same region, so
                // dropping one of them leaves the value unchanged.
                return Ok(known_hv);
            }
            Ok(known_hv - one_contribution(p, front, reference)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{hv_grid, hv_inclusion_exclusion};

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
    fn staircase_2d_value() {
        let f = front(&[&[1.0, 3.0], &[2.0, 2.0], &[3.0, 1.0]]);
        let res = hv_2d(&f, &rp(&[4.0, 4.0])).unwrap();
        assert_eq!(res.value, 6.0);
        assert_eq!(res.n_used, 3);
        assert_eq!(res.algorithm_id, AlgorithmId::Hv2d);
    }

    #[test]
    fn clipping_is_reported() {
        let f = front(&[&[1.0, 3.0], &[3.0, 5.0]]);
        let res = hv_2d(&f, &rp(&[4.0, 4.0])).unwrap();
        assert_eq!(res.n_used, 1);
        assert_eq!(res.value, 3.0);
    }

    #[test]
    fn six_point_3d_front() {
        let f = front(&[
            &[5.0, 5.0, 1.0],
            &[7.0, 3.0, 2.0],
            &[1.0, 7.0, 4.0],
            &[8.0, 1.0, 5.0],
            &[4.0, 2.0, 6.0],
            &[2.0, 4.0, 8.0],
        ]);
        let res = hv_3d(&f, &rp(&[10.0, 10.0, 10.0])).unwrap();
        assert_eq!(res.value, 425.0);
    }

    #[test]
    fn dominated_and_duplicate_points_are_harmless() {
        let f = front(&[
            &[5.0, 5.0, 1.0],
            &[5.0, 5.0, 1.0],
            &[6.0, 6.0, 2.0],
            &[7.0, 3.0, 2.0],
        ]);
        let r = rp(&[10.0, 10.0, 10.0]);
        let fast = hv_3d(&f, &r).unwrap().value;
        let slow = hv_inclusion_exclusion(&f, &r).unwrap();
        assert!((fast - slow).abs() < 1e-12);
    }

    #[test]
    fn four_d_matches_the_oracles() {
        let f = front(&[
            &[1.0, 9.0, 3.0, 2.0],
            &[4.0, 2.0, 7.0, 3.0],
            &[6.0, 5.0, 1.0, 5.0],
            &[2.0, 4.0, 8.0, 1.0],
            &[8.0, 3.0, 2.0, 4.0],
        ]);
        let r = rp(&[10.0, 10.0, 10.0, 10.0]);
        let fast = hv_4d(&f, &r).unwrap().value;
        let ie = hv_inclusion_exclusion(&f, &r).unwrap();
        let grid = hv_grid(&f, &r, 1_000_000).unwrap();
        assert!((fast - ie).abs() < 1e-9 * ie.abs());
        assert!((fast - grid).abs() < 1e-9 * grid.abs());
    }

    #[test]
    fn wfg_matches_in_five_dimensions() {
        let f = front(&[
            &[1.0, 9.0, 3.0, 2.0, 5.0],
            &[4.0, 2.0, 7.0, 3.0, 6.0],
            &[6.0, 5.0, 1.0, 5.0, 2.0],
            &[2.0, 4.0, 8.0, 1.0, 7.0],
            &[8.0, 3.0, 2.0, 4.0, 1.0],
            &[3.0, 6.0, 5.0, 6.0, 4.0],
        ]);
        let r = rp(&[10.0; 5]);
        let fast = hv_wfg(&f, &r).unwrap().value;
        let ie = hv_inclusion_exclusion(&f, &r).unwrap();
        assert!((fast - ie).abs() < 1e-9 * ie.abs());
    }

    #[test]
    fn dispatch_picks_by_dimension() {
        let f2 = front(&[&[1.0, 3.0]]);
        assert_eq!(
            hv(&f2, &rp(&[4.0, 4.0])).unwrap().algorithm_id,
            AlgorithmId::Hv2d
        );
        let f5 = front(&[&[1.0; 5]]);
        assert_eq!(
            hv(&f5, &rp(&[2.0; 5])).unwrap().algorithm_id,
            AlgorithmId::Wfg
        );
    }

    #[test]
    fn empty_front_is_zero() {
        for d in 2..=6 {
            let f = Front::empty(d).unwrap();
            let r = ReferencePoint::new(vec![1.0; d]).unwrap();
            assert_eq!(hv(&f, &r).unwrap().value, 0.0);
        }
    }

    #[test]
    fn update_roundtrip() {
        let f = front(&[&[1.0, 3.0], &[3.0, 1.0]]);
        let r = rp(&[4.0, 4.0]);
        let base = hv(&f, &r).unwrap().value;
        let p = Point::new(vec![2.0, 2.0]).unwrap();
        let up = update_hv(&f, &r, base, &p, UpdateMode::Incremental).unwrap();
        assert_eq!(up, 6.0);
        let mut g = f.clone();
        g.push(p.clone()).unwrap();
        let down = update_hv(&g, &r, up, &p, UpdateMode::Decremental).unwrap();
        assert_eq!(down, base);
    }

    #[test]
    fn removing_one_of_two_copies_keeps_the_value() {
        let f = front(&[&[1.0, 3.0], &[2.0, 2.0], &[2.0, 2.0]]);
        let r = rp(&[4.0, 4.0]);
        let base = hv(&f, &r).unwrap().value;
        assert_eq!(base, 5.0);
        let p = Point::new(vec![2.0, 2.0]).unwrap();
        let down = update_hv(&f, &r, base, &p, UpdateMode::Decremental).unwrap();
        assert_eq!(down, 5.0);
    }

    #[test]
    fn update_membership_preconditions() {
        let f = front(&[&[1.0, 3.0]]);
        let r = rp(&[4.0, 4.0]);
        let inside = Point::new(vec![1.0, 3.0]).unwrap();
        let outside = Point::new(vec![2.0, 2.0]).unwrap();
        assert!(matches!(
            update_hv(&f, &r, 3.0, &inside, UpdateMode::Incremental),
            Err(HvError::AlreadyMember)
        ));
        assert!(matches!(
            update_hv(&f, &r, 3.0, &outside, UpdateMode::Decremental),
            Err(HvError::NotAMember)
        ));
    }
}
