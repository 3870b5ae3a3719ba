//! Local upper bounds of a front inside the box below a reference point.
//!
//! For a nondominated set `S` the local upper bounds are the maximal points
//! of the region not strictly dominated by any member of `S`: every point
//! weakly below some bound is reachable without dominating `S`, and the
//! bounds themselves are pairwise nondominating. The set starts as the
//! reference point alone and is maintained incrementally as points arrive.

use crate::error::{HvError, Result};
use crate::geometry::{strong, weak, Front, Point, ReferencePoint};

/// The maximal points of the non-dominated region, kept current under
/// point insertion.
#[derive(Debug, Clone)]
pub struct LocalUpperBoundSet {
    dim: usize,
    reference: ReferencePoint,
    bounds: Vec<Point>,
}

impl LocalUpperBoundSet {
    /// The bound set of an empty front: the reference point alone.
    pub fn new(reference: &ReferencePoint) -> Self {
        let dim = reference.dim();
        let root = Point::new(reference.coords().to_vec()).expect("reference has valid coords");
        LocalUpperBoundSet {
            dim,
            reference: reference.clone(),
            bounds: vec![root],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    pub fn bounds(&self) -> &[Point] {
        &self.bounds
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.bounds.iter()
    }

    /// Update the bound set for one new point. A point outside the
    /// reference box, or one that strictly dominates no current bound
    /// (because it is dominated by or equal to existing front members),
    /// leaves the set unchanged.
    pub fn insert(&mut self, p: &Point) -> Result<()> {
        if p.dim() != self.dim {
            return Err(HvError::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        if !weak(p.coords(), self.reference.coords()) {
            return Ok(());
        }
        let mut affected = Vec::new();
        let mut kept = Vec::new();
        for u in self.bounds.drain(..) {
            if strong(p.coords(), u.coords()) {
                affected.push(u);
            } else {
                kept.push(u);
            }
        }
        if affected.is_empty() {
            self.bounds = kept;
            return Ok(());
        }
        // Every dominated bound splits into one child per objective, with
        // that coordinate lowered to the new point's value.
        let mut candidates = kept;
        for u in &affected {
            for i in 0..self.dim {
                let mut coords = u.coords().to_vec();
                coords[i] = p.coords()[i];
                candidates.push(Point::new(coords)?);
            }
        }
        // Keep only the maximal candidates; among equal candidates the
        // first occurrence survives.
        let mut keep = vec![true; candidates.len()];
        for i in 0..candidates.len() {
            if !keep[i] {
                continue;
            }
            for j in 0..candidates.len() {
                if i == j || !keep[j] {
                    continue;
                }
                let i_below_j = weak(candidates[i].coords(), candidates[j].coords());
                if i_below_j {
                    let j_below_i = weak(candidates[j].coords(), candidates[i].coords());
                    if !j_below_i || j < i {
                        keep[i] = false;
                        break;
                    }
                }
            }
        }
        let mut bounds: Vec<Point> = candidates
            .into_iter()
            .zip(keep)
            .filter_map(|(c, k)| k.then_some(c))
            .collect();
        bounds.sort_by(|a, b| {
            a.coords()
                .iter()
                .zip(b.coords())
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        self.bounds = bounds;
        Ok(())
    }
}

/// Local upper bounds of a whole front at once. The front must be mutually
/// nondominated inside the reference box.
pub fn local_upper_bounds(front: &Front, reference: &ReferencePoint) -> Result<LocalUpperBoundSet> {
    reference.check_dim(front.dim())?;
    let kept: Vec<&Point> = front
        .iter()
        .filter(|p| weak(p.coords(), reference.coords()))
        .collect();
    for (i, p) in kept.iter().enumerate() {
        for (j, q) in kept.iter().enumerate() {
            if i != j && weak(p.coords(), q.coords()) {
                return Err(HvError::DominatedInput);
            }
        }
    }
    let mut set = LocalUpperBoundSet::new(reference);
    for p in kept {
        set.insert(p)?;
    }
    Ok(set)
}

/// Decide from first principles whether `u` is a local upper bound of
/// `front` below `reference`: `u` must lie in the box, no member may
/// strictly dominate it, and each coordinate must be pinned either by the
/// reference or by a member that attains it while staying strictly below
/// `u` everywhere else.
pub fn is_local_upper_bound(u: &Point, front: &Front, reference: &ReferencePoint) -> Result<bool> {
    reference.check_dim(front.dim())?;
    if u.dim() != front.dim() {
        return Err(HvError::DimensionMismatch {
            expected: front.dim(),
            found: u.dim(),
        });
    }
    let r = reference.coords();
    if !weak(u.coords(), r) {
        return Ok(false);
    }
    for p in front.iter() {
        if strong(p.coords(), u.coords()) {
            return Ok(false);
        }
    }
    for (i, (uc, rc)) in u.coords().iter().zip(r).enumerate() {
        if uc == rc {
            continue;
        }
        let pinned = front.iter().any(|p| {
            p.coords()[i] <= *uc && (0..u.dim()).all(|j| j == i || p.coords()[j] < u.coords()[j])
        });
        if !pinned {
            return Ok(false);
        }
    }
    Ok(true)
}
