//! Contributions of a candidate pool relative to an accepted set that grows
//! and shrinks, without recomputing every candidate from scratch.
//!
//! The state tracks, for every candidate `s`, the hypervolume `s` would add
//! to the accepted set. Accepting or removing a point changes each tracked
//! value by the volume jointly dominated by that point and the candidate and
//! nothing else accepted; in two dimensions only the candidates between the
//! nearest accepted delimiters are touched, so a whole greedy selection costs
//! `O((|candidates| + |accepted|)^2)` instead of cubic.

use crate::contrib::one_contribution;
use crate::error::{HvError, Result};
use crate::geometry::{weak, Front, Point, ReferencePoint};
use crate::hv::UpdateMode;

#[derive(Debug, Clone)]
struct Entry {
    point: Point,
    accepted: bool,
    /// External accepted points leave a tombstone when removed.
    active: bool,
    contribution: f64,
}

/// Candidate contributions maintained across accepted-set updates.
///
/// For two and three objectives the merged candidate/accepted set must be
/// mutually nondominated and stay that way; higher dimensions skip the check.
#[derive(Debug, Clone)]
pub struct TwoSetContributionState {
    dim: usize,
    reference: ReferencePoint,
    entries: Vec<Entry>,
    n_candidates: usize,
    /// Active entry indices ascending by first coordinate (2D only).
    sorted: Vec<usize>,
}

impl TwoSetContributionState {
    pub fn new(candidates: &Front, accepted: &Front, reference: &ReferencePoint) -> Result<Self> {
        let dim = candidates.dim();
        if accepted.dim() != dim {
            return Err(HvError::DimensionMismatch {
                expected: dim,
                found: accepted.dim(),
            });
        }
        reference.check_dim(dim)?;
        let mut entries: Vec<Entry> = candidates
            .iter()
            .map(|p| Entry {
                point: p.clone(),
                accepted: false,
                active: true,
                contribution: 0.0,
            })
            .collect();
        entries.extend(accepted.iter().map(|p| Entry {
            point: p.clone(),
            accepted: true,
            active: true,
            contribution: 0.0,
        }));
        let n_candidates = candidates.len();
        let mut state = Self {
            dim,
            reference: reference.clone(),
            entries,
            n_candidates,
            sorted: Vec::new(),
        };
        if dim <= 3 {
            state.check_merged_nondominated()?;
        }
        if dim == 2 {
            state.sorted = (0..state.entries.len()).collect();
            let entries = &state.entries;
            state.sorted.sort_by(|&a, &b| {
                entries[a].point.coords()[0].total_cmp(&entries[b].point.coords()[0])
            });
            state.init_contributions_2d();
        } else {
            state.init_contributions_generic()?;
        }
        Ok(state)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Current contribution of every candidate, in candidate order. A
    /// candidate moved into the accepted set reports zero until it leaves.
    pub fn contributions(&self) -> Vec<f64> {
        self.entries[..self.n_candidates]
            .iter()
            .map(|e| e.contribution)
            .collect()
    }

    pub fn candidate_is_accepted(&self, index: usize) -> Result<bool> {
        if index >= self.n_candidates {
            return Err(HvError::IndexOutOfRange {
                index,
                len: self.n_candidates,
            });
        }
        Ok(self.entries[index].accepted)
    }

    /// Accept the candidate at `index`, updating the remaining candidates.
    pub fn move_to_accepted(&mut self, index: usize) -> Result<()> {
        if index >= self.n_candidates {
            return Err(HvError::IndexOutOfRange {
                index,
                len: self.n_candidates,
            });
        }
        if self.entries[index].accepted {
            return Err(HvError::AlreadyMember);
        }
        let p = self.entries[index].point.clone();
        self.add_accepted(p, Some(index))
    }

    /// Add `p` to the accepted set (a candidate of equal value is moved), or
    /// remove it from the accepted set.
    pub fn update(&mut self, p: &Point, mode: UpdateMode) -> Result<()> {
        if p.dim() != self.dim {
            return Err(HvError::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        match mode {
            UpdateMode::Incremental => {
                let mover = self
                    .entries
                    .iter()
                    .take(self.n_candidates)
                    .position(|e| !e.accepted && e.point == *p);
                self.add_accepted(p.clone(), mover)
            }
            UpdateMode::Decremental => self.remove_accepted(p),
        }
    }

    fn check_merged_nondominated(&self) -> Result<()> {
        let points: Vec<Point> = self
            .entries
            .iter()
            .filter(|e| e.active)
            .map(|e| e.point.clone())
            .collect();
        let n = points.len();
        if n == 0 {
            return Ok(());
        }
        let merged = Front::from_points(points, self.dim)?;
        if merged.nondominated_indices().len() != n {
            return Err(HvError::DominatedInput);
        }
        Ok(())
    }

    fn accepted_front(&self, skip: Option<usize>) -> Result<Front> {
        let points: Vec<Point> = self
            .entries
            .iter()
            .enumerate()
            .filter(|(i, e)| e.active && e.accepted && Some(*i) != skip)
            .map(|(_, e)| e.point.clone())
            .collect();
        Front::from_points(points, self.dim)
    }

    fn init_contributions_generic(&mut self) -> Result<()> {
        let accepted = self.accepted_front(None)?;
        for entry in self.entries[..self.n_candidates].iter_mut() {
            entry.contribution = if accepted.position_of(&entry.point).is_some() {
                0.0
            } else {
                one_contribution(&entry.point, &accepted, &self.reference)?
            };
        }
        Ok(())
    }

    fn init_contributions_2d(&mut self) {
        let r = self.reference.coords();
        let (rx, ry) = (r[0], r[1]);
        // Nearest in-box accepted delimiter on each side of every position.
        let m = self.sorted.len();
        let mut next_acc_x = vec![rx; m];
        let mut cur = rx;
        for (slot, &idx) in next_acc_x.iter_mut().zip(&self.sorted).rev() {
            *slot = cur;
            let e = &self.entries[idx];
            if e.accepted && weak(e.point.coords(), r) {
                cur = e.point.coords()[0];
            }
        }
        let mut last_acc_y = ry;
        for (&idx, &next_x) in self.sorted.iter().zip(&next_acc_x) {
            let e = &self.entries[idx];
            let c = e.point.coords();
            if e.accepted {
                if weak(c, r) {
                    last_acc_y = c[1];
                }
                continue;
            }
            self.entries[idx].contribution = if weak(c, r) {
                (next_x - c[0]) * (last_acc_y - c[1])
            } else {
                0.0
            };
        }
    }

    /// Position of the active entry with first coordinate `x`, or the
    /// insertion position for a new `x` (2D; first coordinates are unique
    /// under the merged-nondominance precondition).
    fn sorted_position(&self, x: f64) -> usize {
        self.sorted
            .partition_point(|&i| self.entries[i].point.coords()[0] < x)
    }

    fn add_accepted(&mut self, p: Point, mover: Option<usize>) -> Result<()> {
        if self
            .entries
            .iter()
            .any(|e| e.active && e.accepted && e.point == p)
        {
            return Err(HvError::AlreadyMember);
        }
        if self.dim <= 3 && mover.is_none() {
            for e in self.entries.iter().filter(|e| e.active) {
                if weak(e.point.coords(), p.coords()) || weak(p.coords(), e.point.coords()) {
                    return Err(HvError::DominatedInput);
                }
            }
        }
        if self.dim == 2 {
            self.add_accepted_2d(p, mover);
            return Ok(());
        }
        let accepted = self.accepted_front(None)?;
        let r = self.reference.coords();
        for i in 0..self.n_candidates {
            if self.entries[i].accepted || Some(i) == mover {
                continue;
            }
            let join = self.entries[i].point.join(&p)?;
            let delta = if !weak(join.coords(), r) || accepted.position_of(&join).is_some() {
                0.0
            } else {
                one_contribution(&join, &accepted, &self.reference)?
            };
            self.entries[i].contribution -= delta;
        }
        self.commit_accept(p, mover);
        Ok(())
    }

    fn add_accepted_2d(&mut self, p: Point, mover: Option<usize>) {
        let r = self.reference.coords();
        let (rx, ry) = (r[0], r[1]);
        let c = p.coords();
        let (px, py) = (c[0], c[1]);
        if weak(c, r) {
            let pos = self.sorted_position(px);
            let scan_left_from = pos;
            let scan_right_from = if mover.is_some() { pos + 1 } else { pos };
            let mut left_affected: Vec<usize> = Vec::new();
            let mut y_left = ry;
            for q in (0..scan_left_from).rev() {
                let idx = self.sorted[q];
                let e = &self.entries[idx];
                if !weak(e.point.coords(), r) {
                    continue;
                }
                if e.accepted {
                    y_left = e.point.coords()[1];
                    break;
                }
                left_affected.push(idx);
            }
            let mut right_affected: Vec<usize> = Vec::new();
            let mut x_right = rx;
            for q in scan_right_from..self.sorted.len() {
                let idx = self.sorted[q];
                let e = &self.entries[idx];
                if !weak(e.point.coords(), r) {
                    continue;
                }
                if e.accepted {
                    x_right = e.point.coords()[0];
                    break;
                }
                right_affected.push(idx);
            }
            for idx in left_affected {
                let sy = self.entries[idx].point.coords()[1];
                self.entries[idx].contribution -= (x_right - px) * (y_left - sy);
            }
            for idx in right_affected {
                let sx = self.entries[idx].point.coords()[0];
                self.entries[idx].contribution -= (x_right - sx) * (y_left - py);
            }
        }
        self.commit_accept(p, mover);
    }

    fn commit_accept(&mut self, p: Point, mover: Option<usize>) {
        match mover {
            Some(i) => {
                self.entries[i].accepted = true;
                self.entries[i].contribution = 0.0;
            }
            None => {
                let idx = self.entries.len();
                if self.dim == 2 {
                    let pos = self.sorted_position(p.coords()[0]);
                    self.sorted.insert(pos, idx);
                }
                self.entries.push(Entry {
                    point: p,
                    accepted: true,
                    active: true,
                    contribution: 0.0,
                });
            }
        }
    }

    fn remove_accepted(&mut self, p: &Point) -> Result<()> {
        let target = self
            .entries
            .iter()
            .position(|e| e.active && e.accepted && e.point == *p)
            .ok_or(HvError::NotAMember)?;
        if self.dim == 2 {
            self.remove_accepted_2d(target);
            return Ok(());
        }
        let remaining = self.accepted_front(Some(target))?;
        let r = self.reference.coords();
        for i in 0..self.n_candidates {
            if self.entries[i].accepted {
                continue;
            }
            let join = self.entries[i].point.join(p)?;
            let delta = if !weak(join.coords(), r) || remaining.position_of(&join).is_some() {
                0.0
            } else {
                one_contribution(&join, &remaining, &self.reference)?
            };
            self.entries[i].contribution += delta;
        }
        if target < self.n_candidates {
            self.entries[target].accepted = false;
            self.entries[target].contribution = if remaining.position_of(p).is_some() {
                0.0
            } else {
                one_contribution(p, &remaining, &self.reference)?
            };
        } else {
            self.entries[target].active = false;
        }
        Ok(())
    }

    fn remove_accepted_2d(&mut self, target: usize) {
        let r = self.reference.coords();
        let (rx, ry) = (r[0], r[1]);
        let p = self.entries[target].point.clone();
        let c = p.coords();
        let (px, py) = (c[0], c[1]);
        let pos = self.sorted_position(px);
        if weak(c, r) {
            let mut left_affected: Vec<usize> = Vec::new();
            let mut y_left = ry;
            for q in (0..pos).rev() {
                let idx = self.sorted[q];
                let e = &self.entries[idx];
                if !weak(e.point.coords(), r) {
                    continue;
                }
                if e.accepted {
                    y_left = e.point.coords()[1];
                    break;
                }
                left_affected.push(idx);
            }
            let mut right_affected: Vec<usize> = Vec::new();
            let mut x_right = rx;
            for q in pos + 1..self.sorted.len() {
                let idx = self.sorted[q];
                let e = &self.entries[idx];
                if !weak(e.point.coords(), r) {
                    continue;
                }
                if e.accepted {
                    x_right = e.point.coords()[0];
                    break;
                }
                right_affected.push(idx);
            }
            for &idx in &left_affected {
                let sy = self.entries[idx].point.coords()[1];
                self.entries[idx].contribution += (x_right - px) * (y_left - sy);
            }
            for &idx in &right_affected {
                let sx = self.entries[idx].point.coords()[0];
                self.entries[idx].contribution += (x_right - sx) * (y_left - py);
            }
            if target < self.n_candidates {
                self.entries[target].accepted = false;
                self.entries[target].contribution = (x_right - px) * (y_left - py);
            } else {
                self.entries[target].active = false;
                self.sorted.remove(pos);
            }
        } else if target < self.n_candidates {
            self.entries[target].accepted = false;
            self.entries[target].contribution = 0.0;
        } else {
            self.entries[target].active = false;
            self.sorted.remove(pos);
        }
    }
}
