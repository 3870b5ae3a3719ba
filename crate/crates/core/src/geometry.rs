//! Points, fronts, dominance relations, and the set operations the
//! algorithms build on. Minimization throughout: smaller coordinates are
//! better, and the region measured by the hypervolume lies between a
//! point and the reference point.

use crate::error::{HvError, Result};
use crate::staircase::Staircase2;

/// A point in objective space: at least two coordinates, all finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(HvError::DimensionTooSmall {
                min: 2,
                found: coords.len(),
            });
        }
        for (i, c) in coords.iter().enumerate() {
            if !c.is_finite() {
                return Err(HvError::NonFiniteCoordinate { index: 0, coord: i });
            }
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    fn check_dim(&self, other: &Point) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(HvError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// `self` is at least as good as `other` in every coordinate.
    pub fn weakly_dominates(&self, other: &Point) -> Result<bool> {
        self.check_dim(other)?;
        Ok(weak(&self.coords, &other.coords))
    }

    /// Weak dominance that `other` does not return.
    pub fn strictly_dominates(&self, other: &Point) -> Result<bool> {
        self.check_dim(other)?;
        Ok(weak(&self.coords, &other.coords) && !weak(&other.coords, &self.coords))
    }

    /// Strictly better in every coordinate.
    pub fn strongly_dominates(&self, other: &Point) -> Result<bool> {
        self.check_dim(other)?;
        Ok(strong(&self.coords, &other.coords))
    }

    /// Componentwise maximum: the worst point dominated by both inputs.
    pub fn join(&self, other: &Point) -> Result<Point> {
        self.check_dim(other)?;
        Ok(Point {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.max(*b))
                .collect(),
        })
    }

    /// Drop the last coordinate. The result must still be a valid point,
    /// so this is only defined from three dimensions up.
    pub fn project_drop_last(&self) -> Result<Point> {
        if self.dim() < 3 {
            return Err(HvError::DimensionTooSmall {
                min: 3,
                found: self.dim(),
            });
        }
        Ok(Point {
            coords: self.coords[..self.dim() - 1].to_vec(),
        })
    }
}

pub(crate) fn weak(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn strong(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x < y)
}

/// The corner that closes the measured region. Carried explicitly by
/// every evaluation; nothing in the crate assumes a global default.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferencePoint {
    coords: Vec<f64>,
}

impl ReferencePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let p = Point::new(coords)?;
        Ok(Self { coords: p.coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn project_drop_last(&self) -> Result<ReferencePoint> {
        if self.dim() < 3 {
            return Err(HvError::DimensionTooSmall {
                min: 3,
                found: self.dim(),
            });
        }
        Ok(ReferencePoint {
            coords: self.coords[..self.dim() - 1].to_vec(),
        })
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(HvError::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

/// What is currently known about mutual nondominance of a front.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NondominanceFlag {
    Unknown,
    Verified,
    Violated,
}

/// An ordered multiset of equal-dimension points. Duplicates and
/// dominated points are allowed; operations that need a nondominated
/// input say so and check.
#[derive(Debug, Clone)]
pub struct Front {
    points: Vec<Point>,
    dim: usize,
    flag: NondominanceFlag,
}

impl Front {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first = points.first().ok_or(HvError::EmptyFront)?;
        let dim = first.dim();
        for p in &points {
            if p.dim() != dim {
                return Err(HvError::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        Ok(Self {
            points,
            dim,
            flag: NondominanceFlag::Unknown,
        })
    }

    /// An empty front still needs a dimension so later pushes and
    /// evaluations can be checked.
    pub fn empty(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(HvError::DimensionTooSmall { min: 2, found: dim });
        }
        Ok(Self {
            points: Vec::new(),
            dim,
            flag: NondominanceFlag::Verified,
        })
    }

    pub fn from_coords(rows: &[Vec<f64>], dim_if_empty: usize) -> Result<Self> {
        if rows.is_empty() {
            return Front::empty(dim_if_empty);
        }
        let points = rows
            .iter()
            .map(|r| Point::new(r.clone()))
            .collect::<Result<Vec<_>>>()?;
        Front::new(points)
    }

    pub fn from_points(points: Vec<Point>, dim_if_empty: usize) -> Result<Self> {
        if points.is_empty() {
            return Front::empty(dim_if_empty);
        }
        Front::new(points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, index: usize) -> Result<&Point> {
        self.points.get(index).ok_or(HvError::IndexOutOfRange {
            index,
            len: self.points.len(),
        })
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn nondominance(&self) -> NondominanceFlag {
        self.flag
    }

    pub fn push(&mut self, p: Point) -> Result<()> {
        if p.dim() != self.dim {
            return Err(HvError::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        self.points.push(p);
        self.flag = NondominanceFlag::Unknown;
        Ok(())
    }

    /// Remove by index. Removing a point cannot introduce domination, so
    /// a verified front stays verified.
    pub fn remove(&mut self, index: usize) -> Result<Point> {
        if index >= self.points.len() {
            return Err(HvError::IndexOutOfRange {
                index,
                len: self.points.len(),
            });
        }
        if self.flag == NondominanceFlag::Violated {
            self.flag = NondominanceFlag::Unknown;
        }
        Ok(self.points.remove(index))
    }

    /// Index of the first point equal to `p`, if any. Membership
    /// throughout the crate means value equality.
    pub fn position_of(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// Indices of the points that survive nondominated filtering, in
    /// input order. A point is dropped if another point strictly
    /// dominates it, or if an identical point occurs earlier.
    pub fn nondominated_indices(&self) -> Vec<usize> {
        match self.dim {
            2 => self.nondominated_indices_2d(),
            3 => self.nondominated_indices_3d(),
            _ => self.nondominated_indices_general(),
        }
    }

    fn nondominated_indices_2d(&self) -> Vec<usize> {
        let n = self.points.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let pa = self.points[a].coords();
            let pb = self.points[b].coords();
            pa[0]
                .total_cmp(&pb[0])
                .then(pa[1].total_cmp(&pb[1]))
                .then(a.cmp(&b))
        });
        let mut keep = vec![false; n];
        let mut best_y = f64::INFINITY;
        for &i in &order {
            let y = self.points[i].coords()[1];
            if y < best_y {
                keep[i] = true;
                best_y = y;
            }
        }
        (0..n).filter(|&i| keep[i]).collect()
    }

    fn nondominated_indices_3d(&self) -> Vec<usize> {
        let n = self.points.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let pa = self.points[a].coords();
            let pb = self.points[b].coords();
            pa[2]
                .total_cmp(&pb[2])
                .then(pa[0].total_cmp(&pb[0]))
                .then(pa[1].total_cmp(&pb[1]))
                .then(a.cmp(&b))
        });
        let mut keep = vec![false; n];
        let mut st = Staircase2::unbounded();
        for &i in &order {
            let c = self.points[i].coords();
            if !st.dominates(c[0], c[1]) {
                keep[i] = true;
                st.insert(c[0], c[1]);
            }
        }
        (0..n).filter(|&i| keep[i]).collect()
    }

    fn nondominated_indices_general(&self) -> Vec<usize> {
        let n = self.points.len();
        (0..n)
            .filter(|&i| {
                let pi = self.points[i].coords();
                !(0..n).any(|j| {
                    if i == j {
                        return false;
                    }
                    let pj = self.points[j].coords();
                    let j_weak = weak(pj, pi);
                    let i_weak = weak(pi, pj);
                    (j_weak && !i_weak) || (j_weak && i_weak && j < i)
                })
            })
            .collect()
    }

    /// The nondominated subset, in input order, first occurrence of any
    /// duplicate kept. The result is flagged as verified.
    pub fn nondominated_filter(&self) -> Front {
        let points = self
            .nondominated_indices()
            .into_iter()
            .map(|i| self.points[i].clone())
            .collect();
        Front {
            points,
            dim: self.dim,
            flag: NondominanceFlag::Verified,
        }
    }

    /// Check mutual nondominance, caching the answer in the flag.
    pub fn verify_nondominance(&mut self) -> bool {
        match self.flag {
            NondominanceFlag::Verified => true,
            NondominanceFlag::Violated => false,
            NondominanceFlag::Unknown => {
                let ok = self.nondominated_indices().len() == self.points.len();
                self.flag = if ok {
                    NondominanceFlag::Verified
                } else {
                    NondominanceFlag::Violated
                };
                ok
            }
        }
    }

    pub fn is_nondominated(&self) -> bool {
        match self.flag {
            NondominanceFlag::Verified => true,
            NondominanceFlag::Violated => false,
            NondominanceFlag::Unknown => self.nondominated_indices().len() == self.points.len(),
        }
    }

    /// Drop the last coordinate of every point. Projection can create
    /// dominated points and duplicates, so the flag resets to unknown.
    pub fn project_drop_last(&self) -> Result<Front> {
        if self.dim < 3 {
            return Err(HvError::DimensionTooSmall {
                min: 3,
                found: self.dim,
            });
        }
        let points = self
            .points
            .iter()
            .map(|p| p.project_drop_last())
            .collect::<Result<Vec<_>>>()?;
        Ok(Front {
            points,
            dim: self.dim - 1,
            flag: NondominanceFlag::Unknown,
        })
    }
}

/// How to treat points that do not dominate the reference point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValidationPolicy {
    /// Keep only points weakly dominating the reference point and count
    /// the rest. Dropped points cannot dominate anything inside the
    /// measured region, so every evaluation is unaffected.
    #[default]
    Clip,
    /// Fail unless every point strongly dominates the reference point.
    Strict,
}

/// Result of [`validate_front`]: the usable front plus how many points
/// were dropped (always 0 under the strict policy).
#[derive(Debug, Clone)]
pub struct ValidatedFront {
    pub front: Front,
    pub dropped: usize,
}

/// Pre-flight a front against a reference point under the given policy.
pub fn validate_front(
    front: &Front,
    reference: &ReferencePoint,
    policy: ValidationPolicy,
) -> Result<ValidatedFront> {
    reference.check_dim(front.dim())?;
    match policy {
        ValidationPolicy::Clip => {
            let points: Vec<Point> = front
                .points
                .iter()
                .filter(|p| weak(p.coords(), reference.coords()))
                .cloned()
                .collect();
            let dropped = front.len() - points.len();
            let mut clipped = Front {
                points,
                dim: front.dim(),
                flag: NondominanceFlag::Unknown,
            };
            if front.flag == NondominanceFlag::Verified || clipped.points.is_empty() {
                clipped.flag = NondominanceFlag::Verified;
            }
            Ok(ValidatedFront {
                front: clipped,
                dropped,
            })
        }
        ValidationPolicy::Strict => {
            for (i, p) in front.points.iter().enumerate() {
                if !strong(p.coords(), reference.coords()) {
                    return Err(HvError::ReferenceNotStronglyDominated { index: i });
                }
            }
            Ok(ValidatedFront {
                front: front.clone(),
                dropped: 0,
            })
        }
    }
}

/// The delimiters of the contribution of `p` to a front: for every other
/// point, its join with `p` traces where the two dominated regions meet,
/// and the nondominated joins bound the exclusive region of `p`.
#[derive(Debug, Clone)]
pub struct DelimiterSet {
    /// Indices of points weakly dominated by `p` (their joins are the
    /// points themselves, carving holes inside the region of `p`).
    pub inner: Vec<usize>,
    /// Indices of the remaining points whose join survives filtering.
    pub outer: Vec<usize>,
    /// The nondominated joins; the exclusive contribution of `p` is its
    /// own dominated volume minus the volume dominated by these.
    pub joined_points: Front,
}

/// Join `p` with every point of `front` (skipping copies of `p` itself)
/// and keep the nondominated joins. Classifies each source index as an
/// inner or outer delimiter; indices whose join is filtered away and are
/// not dominated by `p` appear in neither list.
pub fn bound_and_filter(p: &Point, front: &Front) -> Result<DelimiterSet> {
    if p.dim() != front.dim() {
        return Err(HvError::DimensionMismatch {
            expected: front.dim(),
            found: p.dim(),
        });
    }
    let mut sources = Vec::new();
    let mut joins = Vec::new();
    for (i, q) in front.points.iter().enumerate() {
        if q == p {
            continue;
        }
        sources.push(i);
        joins.push(p.join(q)?);
    }
    let mut inner = Vec::new();
    let mut outer = Vec::new();
    if joins.is_empty() {
        return Ok(DelimiterSet {
            inner,
            outer,
            joined_points: Front::empty(p.dim())?,
        });
    }
    let join_front = Front {
        points: joins,
        dim: p.dim(),
        flag: NondominanceFlag::Unknown,
    };
    let surviving = join_front.nondominated_indices();
    let survivors: std::collections::HashSet<usize> = surviving.iter().copied().collect();
    for (pos, &src) in sources.iter().enumerate() {
        if weak(p.coords(), front.points[src].coords()) {
            inner.push(src);
        } else if survivors.contains(&pos) {
            outer.push(src);
        }
    }
    let joined_points = Front {
        points: surviving
            .iter()
            .map(|&pos| join_front.points[pos].clone())
            .collect(),
        dim: p.dim(),
        flag: NondominanceFlag::Verified,
    };
    Ok(DelimiterSet {
        inner,
        outer,
        joined_points,
    })
}
