//! A 2D staircase: a set of mutually nondominated points (minimization)
//! kept sorted by the second coordinate, together with the area of the
//! region they dominate below a reference corner. This is the workhorse
//! of the 3D sweep algorithms and of the per-point delimiter lists in
//! the all-contributions sweep.

use std::collections::BTreeMap;
use std::ops::Bound::{Excluded, Unbounded};

use crate::kahan::KahanSum;

/// Total-order wrapper so finite f64 keys can live in a BTreeMap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct OrdF64(u64);

impl OrdF64 {
    pub fn new(x: f64) -> Self {
        // total_cmp order realized as a sortable integer key; coordinates
        // are finite so this coincides with the numeric order.
        let bits = x.to_bits();
        let key = if bits >> 63 == 0 {
            bits | (1 << 63)
        } else {
            !bits
        };
        OrdF64(key)
    }

    pub fn get(self) -> f64 {
        let bits = if self.0 >> 63 == 1 {
            self.0 & !(1 << 63)
        } else {
            !self.0
        };
        f64::from_bits(bits)
    }
}

/// Mutually nondominated 2D points keyed by y (ascending, so x is
/// strictly descending), with the dominated area relative to `(rx, ry)`
/// maintained incrementally.
///
/// When constructed with an infinite reference the structure still
/// answers dominance queries and keeps the point set correct, but the
/// reported areas are meaningless.
#[derive(Debug, Clone)]
pub(crate) struct Staircase2 {
    rx: f64,
    ry: f64,
    map: BTreeMap<OrdF64, f64>, // y -> x
    area: KahanSum,
}

impl Staircase2 {
    pub fn new(rx: f64, ry: f64) -> Self {
        Self {
            rx,
            ry,
            map: BTreeMap::new(),
            area: KahanSum::new(),
        }
    }

    pub fn unbounded() -> Self {
        Self::new(f64::INFINITY, f64::INFINITY)
    }

    pub fn area(&self) -> f64 {
        self.area.value()
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.map.len()
    }

    /// Does some member weakly dominate `(x, y)`?
    pub fn dominates(&self, x: f64, y: f64) -> bool {
        // Among members with y' <= y the nearest one has the smallest x'.
        self.map
            .range((Unbounded, Excluded(OrdF64::new(y))))
            .next_back()
            .is_some_and(|(_, &px)| px <= x)
            || self.map.get(&OrdF64::new(y)).is_some_and(|&px| px <= x)
    }

    /// Insert `(x, y)`, removing members it dominates. Returns the area
    /// gained, which is 0 exactly when the point is weakly dominated (in
    /// that case the staircase is unchanged).
    pub fn insert(&mut self, x: f64, y: f64) -> f64 {
        if self.dominates(x, y) {
            return 0.0;
        }
        // Integrate the strip left of the existing boundary, walking the
        // members at or above y; those with x' >= x are dominated.
        let mut cur_x = self
            .map
            .range((Unbounded, Excluded(OrdF64::new(y))))
            .next_back()
            .map_or(self.rx, |(_, &px)| px);
        let mut cur_y = y;
        let mut gain = KahanSum::new();
        loop {
            let next = self
                .map
                .range((Excluded(OrdF64::new(cur_y)), Unbounded))
                .next()
                .map(|(k, &px)| (k.get(), px));
            // An equal-y member can only exist on the first round; it is
            // dominated (its x exceeds ours or `dominates` would have hit).
            if cur_y == y {
                if let Some(&px) = self.map.get(&OrdF64::new(y)) {
                    debug_assert!(px >= x);
                    self.map.remove(&OrdF64::new(y));
                    cur_x = px.min(cur_x);
                }
            }
            match next {
                Some((sy, sx)) => {
                    gain.add((cur_x - x) * (sy - cur_y));
                    if sx >= x {
                        self.map.remove(&OrdF64::new(sy));
                        cur_x = sx;
                        cur_y = sy;
                    } else {
                        break;
                    }
                }
                None => {
                    gain.add((cur_x - x) * (self.ry - cur_y));
                    break;
                }
            }
        }
        self.map.insert(OrdF64::new(y), x);
        let g = gain.value();
        self.area.add(g);
        g
    }
}
