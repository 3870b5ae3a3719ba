//! Hypervolume subset selection: pick at most `k` of `n` points so the
//! selected subset dominates as much volume as possible.
//!
//! Exact answers come from a dynamic program over the sorted staircase in two
//! dimensions and from subset enumeration in general; the heuristics cover
//! the usual ground (greedy in both directions, swap-based local search, and
//! a bi-objective evolutionary search) with their known quality bounds
//! reported alongside.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::contrib::{all_contributions, update_all_contributions};
use crate::error::{HvError, Result};
use crate::geometry::{weak, Front, Point, ReferencePoint};
use crate::hv::{hv, UpdateMode};
use crate::kahan::KahanSum;
use crate::twoset::TwoSetContributionState;

/// Default enumeration budget for exhaustive subset selection.
pub const DEFAULT_SUBSET_BUDGET: u64 = 2_000_000;

/// Largest front the bitmask-based evolutionary search accepts.
pub const GSEMO_MAX_POINTS: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsspMethod {
    Exact2d,
    Exhaustive,
    GreedyIncremental,
    GreedyDecremental,
    LocalSearch,
    Gsemo,
}

impl HsspMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            HsspMethod::Exact2d => "exact2d",
            HsspMethod::Exhaustive => "exhaustive",
            HsspMethod::GreedyIncremental => "greedy-inc",
            HsspMethod::GreedyDecremental => "greedy-dec",
            HsspMethod::LocalSearch => "local-search",
            HsspMethod::Gsemo => "gsemo",
        }
    }
}

impl fmt::Display for HsspMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HsspMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exact2d" => Ok(HsspMethod::Exact2d),
            "exhaustive" => Ok(HsspMethod::Exhaustive),
            "greedy-inc" => Ok(HsspMethod::GreedyIncremental),
            "greedy-dec" => Ok(HsspMethod::GreedyDecremental),
            "local-search" | "ls" => Ok(HsspMethod::LocalSearch),
            "gsemo" => Ok(HsspMethod::Gsemo),
            other => Err(format!("unknown subset selection method `{other}`")),
        }
    }
}

/// One recorded step of a selection run. The meaning of `index` depends on
/// the method: the point chosen (greedy, exact chain), the point removed
/// (decremental greedy), or absent for whole-subset events where `value` is
/// the hypervolume reached.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub index: Option<usize>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HsspSolution {
    /// Selected indices into the input front, ascending.
    pub selected: Vec<usize>,
    pub hypervolume: f64,
    pub method: HsspMethod,
    pub trace: Vec<TraceStep>,
}

fn check_k(front: &Front, k: usize) -> Result<()> {
    if k > front.len() {
        return Err(HvError::SubsetSizeOutOfRange { k, n: front.len() });
    }
    Ok(())
}

fn empty_solution(method: HsspMethod) -> HsspSolution {
    HsspSolution {
        selected: Vec::new(),
        hypervolume: 0.0,
        method,
        trace: Vec::new(),
    }
}

fn hv_of_indices(front: &Front, indices: &[usize], reference: &ReferencePoint) -> Result<f64> {
    let points: Vec<Point> = indices
        .iter()
        .map(|&i| front.get(i).cloned())
        .collect::<Result<Vec<_>>>()?;
    let sub = Front::from_points(points, front.dim())?;
    Ok(hv(&sub, reference)?.value)
}

/// Optimal subset of a two-objective front by dynamic programming over the
/// staircase, `O(k n^2)`. Among equally good subsets the one whose sorted
/// staircase positions come first lexicographically is returned.
pub fn hssp_exact_2d(front: &Front, reference: &ReferencePoint, k: usize) -> Result<HsspSolution> {
    if front.dim() != 2 {
        return Err(HvError::AlgorithmDimensionMismatch {
            algorithm: "hssp-exact-2d",
            dim: front.dim(),
        });
    }
    reference.check_dim(2)?;
    check_k(front, k)?;
    if k == 0 {
        return Ok(empty_solution(HsspMethod::Exact2d));
    }
    let r = reference.coords();
    let (rx, ry) = (r[0], r[1]);
    let kept: Vec<usize> = (0..front.len())
        .filter(|&i| weak(front.get(i).unwrap().coords(), r))
        .collect();
    let kept_front = Front::from_points(
        kept.iter()
            .map(|&i| front.get(i).unwrap().clone())
            .collect(),
        2,
    )?;
    let mut survivors: Vec<usize> = kept_front
        .nondominated_indices()
        .into_iter()
        .map(|local| kept[local])
        .collect();
    survivors.sort_by(|&a, &b| {
        front.get(a).unwrap().coords()[0].total_cmp(&front.get(b).unwrap().coords()[0])
    });
    let m = survivors.len();
    let x = |pos: usize| front.get(survivors[pos - 1]).unwrap().coords()[0];
    let y = |pos: usize| {
        if pos == 0 {
            ry
        } else {
            front.get(survivors[pos - 1]).unwrap().coords()[1]
        }
    };
    if m == 0 {
        return Ok(empty_solution(HsspMethod::Exact2d));
    }
    if k >= m {
        let mut selected = survivors.clone();
        selected.sort_unstable();
        let mut trace = Vec::with_capacity(m);
        for pos in 1..=m {
            trace.push(TraceStep {
                index: Some(survivors[pos - 1]),
                value: (rx - x(pos)) * (y(pos - 1) - y(pos)),
            });
        }
        let hypervolume = hv_of_indices(front, &selected, reference)?;
        return Ok(HsspSolution {
            selected,
            hypervolume,
            method: HsspMethod::Exact2d,
            trace,
        });
    }
    // best[t][j]: most volume a chain of t more points can add when the
    // previous pick is at position j (0 = the reference-top sentinel).
    let mut best = vec![vec![0.0f64; m + 1]; k + 1];
    let mut choice = vec![vec![0usize; m + 1]; k + 1];
    // The candidate index couples the coordinate accessors and both
    // tables, so a range loop is the readable form here.
    #[allow(clippy::needless_range_loop)]
    for t in 1..=k {
        for j in 0..=m {
            if j + t > m {
                best[t][j] = f64::NEG_INFINITY;
                continue;
            }
            let mut best_val = f64::NEG_INFINITY;
            let mut best_i = 0;
            for i in j + 1..=m - t + 1 {
                let val = (rx - x(i)) * (y(j) - y(i)) + best[t - 1][i];
                if val > best_val {
                    best_val = val;
                    best_i = i;
                }
            }
            best[t][j] = best_val;
            choice[t][j] = best_i;
        }
    }
    let mut chain = Vec::with_capacity(k);
    let mut j = 0usize;
    for t in (1..=k).rev() {
        let i = choice[t][j];
        chain.push(i);
        j = i;
    }
    let trace = chain
        .iter()
        .scan(0usize, |prev, &i| {
            let term = (rx - x(i)) * (y(*prev) - y(i));
            *prev = i;
            Some(TraceStep {
                index: Some(survivors[i - 1]),
                value: term,
            })
        })
        .collect();
    let mut selected: Vec<usize> = chain.iter().map(|&i| survivors[i - 1]).collect();
    selected.sort_unstable();
    Ok(HsspSolution {
        selected,
        hypervolume: best[k][0],
        method: HsspMethod::Exact2d,
        trace,
    })
}

fn binomial_saturating(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Optimal subset by enumerating every size-`k` combination in lexicographic
/// order. Refuses instances whose combination count exceeds `budget`. Ties
/// keep the earliest combination.
pub fn hssp_exhaustive(
    front: &Front,
    reference: &ReferencePoint,
    k: usize,
    budget: u64,
) -> Result<HsspSolution> {
    reference.check_dim(front.dim())?;
    check_k(front, k)?;
    if k == 0 {
        return Ok(empty_solution(HsspMethod::Exhaustive));
    }
    let n = front.len();
    let needed = binomial_saturating(n, k);
    if needed > budget as u128 {
        return Err(HvError::BudgetExceeded {
            needed,
            budget: budget as u128,
        });
    }
    let mut combo: Vec<usize> = (0..k).collect();
    let mut best_value = f64::NEG_INFINITY;
    let mut best_combo: Vec<usize> = Vec::new();
    let mut trace = Vec::new();
    loop {
        let value = hv_of_indices(front, &combo, reference)?;
        if value > best_value {
            best_value = value;
            best_combo = combo.clone();
            trace.push(TraceStep { index: None, value });
        }
        // Advance to the next combination.
        let mut pos = k;
        let mut advanced = false;
        while pos > 0 {
            pos -= 1;
            if combo[pos] != pos + n - k {
                combo[pos] += 1;
                for q in pos + 1..k {
                    combo[q] = combo[q - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    Ok(HsspSolution {
        selected: best_combo,
        hypervolume: best_value,
        method: HsspMethod::Exhaustive,
        trace,
    })
}

/// Greedy selection, best contribution first, ties to the lowest index.
/// Guaranteed to reach at least `1 - 1/e` of the optimum.
pub fn hssp_greedy_incremental(
    front: &Front,
    reference: &ReferencePoint,
    k: usize,
) -> Result<HsspSolution> {
    reference.check_dim(front.dim())?;
    check_k(front, k)?;
    if k == 0 {
        return Ok(empty_solution(HsspMethod::GreedyIncremental));
    }
    let pool: Vec<usize> = front.nondominated_indices();
    let pool_front = Front::from_points(
        pool.iter()
            .map(|&i| front.get(i).unwrap().clone())
            .collect(),
        front.dim(),
    )?;
    let mut state =
        TwoSetContributionState::new(&pool_front, &Front::empty(front.dim())?, reference)?;
    let steps = k.min(pool.len());
    let mut running = KahanSum::new();
    let mut selected = Vec::with_capacity(steps);
    let mut trace = Vec::with_capacity(steps);
    for _ in 0..steps {
        let contributions = state.contributions();
        let mut best: Option<usize> = None;
        for (i, &c) in contributions.iter().enumerate() {
            if state.candidate_is_accepted(i)? {
                continue;
            }
            if best.is_none() || c > contributions[best.unwrap()] {
                best = Some(i);
            }
        }
        let chosen = best.expect("pool not exhausted");
        running.add(contributions[chosen]);
        state.move_to_accepted(chosen)?;
        selected.push(pool[chosen]);
        trace.push(TraceStep {
            index: Some(pool[chosen]),
            value: running.value(),
        });
    }
    selected.sort_unstable();
    let hypervolume = hv_of_indices(front, &selected, reference)?;
    Ok(HsspSolution {
        selected,
        hypervolume,
        method: HsspMethod::GreedyIncremental,
        trace,
    })
}

/// Greedy elimination: repeatedly drop the least contributor until `k`
/// points remain. Guaranteed to keep at least `k/n` of the optimum.
pub fn hssp_greedy_decremental(
    front: &Front,
    reference: &ReferencePoint,
    k: usize,
) -> Result<HsspSolution> {
    reference.check_dim(front.dim())?;
    check_k(front, k)?;
    if k == 0 {
        return Ok(empty_solution(HsspMethod::GreedyDecremental));
    }
    let mut current = front.clone();
    let mut mapping: Vec<usize> = (0..front.len()).collect();
    let mut table = all_contributions(&current, reference)?;
    let mut trace = Vec::with_capacity(front.len() - k);
    while current.len() > k {
        let mut worst = 0;
        for (i, &v) in table.values.iter().enumerate() {
            if v < table.values[worst] {
                worst = i;
            }
        }
        let p = current.get(worst)?.clone();
        table = update_all_contributions(&current, reference, &table, &p, UpdateMode::Decremental)?;
        current.remove(worst)?;
        let orig = mapping.remove(worst);
        trace.push(TraceStep {
            index: Some(orig),
            value: table.total_hv,
        });
    }
    let selected = mapping;
    let hypervolume = hv_of_indices(front, &selected, reference)?;
    Ok(HsspSolution {
        selected,
        hypervolume,
        method: HsspMethod::GreedyDecremental,
        trace,
    })
}

/// Stochastic local search over `k`-subsets: start from a seeded random
/// subset and accept swaps that strictly improve the hypervolume. The trace
/// holds the accepted values and is therefore nondecreasing.
pub fn hssp_local_search(
    front: &Front,
    reference: &ReferencePoint,
    k: usize,
    swaps_per_move: usize,
    max_iters: u64,
    seed: u64,
) -> Result<HsspSolution> {
    reference.check_dim(front.dim())?;
    check_k(front, k)?;
    if k == 0 {
        return Ok(empty_solution(HsspMethod::LocalSearch));
    }
    let n = front.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut selected: Vec<usize> = order[..k].to_vec();
    let mut others: Vec<usize> = order[k..].to_vec();
    let mut current = hv_of_indices(front, &selected, reference)?;
    let mut trace = vec![TraceStep {
        index: None,
        value: current,
    }];
    let swaps = swaps_per_move.max(1).min(k).min(n - k);
    if swaps > 0 {
        for _ in 0..max_iters {
            let out = sample(&mut rng, k, swaps);
            let inn = sample(&mut rng, n - k, swaps);
            let mut candidate = selected.clone();
            for (slot, take) in out.iter().zip(inn.iter()) {
                candidate[slot] = others[take];
            }
            let value = hv_of_indices(front, &candidate, reference)?;
            if value > current {
                for (slot, take) in out.iter().zip(inn.iter()) {
                    std::mem::swap(&mut selected[slot], &mut others[take]);
                }
                debug_assert_eq!(
                    {
                        let mut a = candidate.clone();
                        a.sort_unstable();
                        a
                    },
                    {
                        let mut b = selected.clone();
                        b.sort_unstable();
                        b
                    }
                );
                current = value;
                trace.push(TraceStep { index: None, value });
            }
        }
    }
    selected.sort_unstable();
    Ok(HsspSolution {
        selected,
        hypervolume: current,
        method: HsspMethod::LocalSearch,
        trace,
    })
}

/// Iteration budget `n^2 (ceil(ln n) + k)` commonly used for the
/// evolutionary subset search.
pub fn gsemo_default_budget(n: usize, k: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    let log = (n as f64).ln().ceil() as u64;
    (n as u64 * n as u64).saturating_mul(log + k as u64).max(1)
}

/// Evolutionary subset search on bitmasks with two objectives: hypervolume
/// (invalid once more than `k` bits are set) and number of unused points.
/// The population keeps mutually nondominating individuals only; the best
/// feasible individual is returned.
pub fn hssp_gsemo(
    front: &Front,
    reference: &ReferencePoint,
    k: usize,
    iterations: u64,
    seed: u64,
) -> Result<HsspSolution> {
    reference.check_dim(front.dim())?;
    check_k(front, k)?;
    let n = front.len();
    if n > GSEMO_MAX_POINTS {
        return Err(HvError::TooManyPoints {
            what: "evolutionary subset search",
            max: GSEMO_MAX_POINTS,
            found: n,
        });
    }
    if k == 0 || n == 0 {
        return Ok(empty_solution(HsspMethod::Gsemo));
    }
    let mask_hv = |mask: u128| -> Result<f64> {
        let indices: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        hv_of_indices(front, &indices, reference)
    };
    let evaluate = |mask: u128| -> Result<(f64, f64)> {
        let count = mask.count_ones() as usize;
        let fitness = if count <= k { mask_hv(mask)? } else { -1.0 };
        Ok((fitness, (n - count.min(n)) as f64))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut population: Vec<(u128, f64, f64)> = vec![(0, 0.0, n as f64)];
    let mut best_mask = 0u128;
    let mut best_value = 0.0f64;
    let mut trace = vec![TraceStep {
        index: None,
        value: 0.0,
    }];
    let flip_p = 1.0 / n as f64;
    for _ in 0..iterations {
        let parent = population[rng.gen_range(0..population.len())].0;
        let mut child = parent;
        for bit in 0..n {
            if rng.gen::<f64>() < flip_p {
                child ^= 1 << bit;
            }
        }
        let (c1, c2) = evaluate(child)?;
        if population.iter().any(|&(_, m1, m2)| m1 >= c1 && m2 >= c2) {
            continue;
        }
        population.retain(|&(_, m1, m2)| !(c1 >= m1 && c2 >= m2));
        population.push((child, c1, c2));
        if child.count_ones() as usize <= k && c1 > best_value {
            best_value = c1;
            best_mask = child;
            trace.push(TraceStep {
                index: None,
                value: c1,
            });
        }
    }
    let selected: Vec<usize> = (0..n).filter(|&i| best_mask >> i & 1 == 1).collect();
    Ok(HsspSolution {
        selected,
        hypervolume: best_value,
        method: HsspMethod::Gsemo,
        trace,
    })
}

/// Quality of one method on one instance, relative to the enumerated
/// optimum. `guarantee` is the proven worst-case ratio where one exists;
/// `secondary_guarantee` is a sharper known bound reported for information.
#[derive(Debug, Clone)]
pub struct MethodReport {
    pub method: HsspMethod,
    pub value: f64,
    pub ratio: f64,
    pub guarantee: Option<f64>,
    pub secondary_guarantee: Option<f64>,
    pub meets_guarantee: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct ApproximationReport {
    pub optimum: f64,
    pub k: usize,
    pub reports: Vec<MethodReport>,
}

/// Run every applicable method against the enumerated optimum and report
/// achieved ratios next to the proven bounds.
pub fn approximation_report(
    front: &Front,
    reference: &ReferencePoint,
    k: usize,
    exhaustive_budget: u64,
    seed: u64,
) -> Result<ApproximationReport> {
    let optimum = hssp_exhaustive(front, reference, k, exhaustive_budget)?.hypervolume;
    let n = front.len();
    let ratio_of = |value: f64| if optimum > 0.0 { value / optimum } else { 1.0 };
    let entry = |method: HsspMethod, value: f64, guarantee: Option<f64>, secondary: Option<f64>| {
        let ratio = ratio_of(value);
        MethodReport {
            method,
            value,
            ratio,
            guarantee,
            secondary_guarantee: secondary,
            meets_guarantee: guarantee.map(|g| ratio + 1e-12 >= g),
        }
    };
    let mut reports = Vec::new();
    if front.dim() == 2 {
        let sol = hssp_exact_2d(front, reference, k)?;
        reports.push(entry(HsspMethod::Exact2d, sol.hypervolume, Some(1.0), None));
    }
    let inc = hssp_greedy_incremental(front, reference, k)?;
    reports.push(entry(
        HsspMethod::GreedyIncremental,
        inc.hypervolume,
        Some(1.0 - (-1.0f64).exp()),
        None,
    ));
    let dec = hssp_greedy_decremental(front, reference, k)?;
    let base = if n > 0 { k as f64 / n as f64 } else { 1.0 };
    let secondary = if 2 * k > n && k > 0 {
        let m = (2 * k - n) as f64;
        let kf = k as f64;
        Some(1.0 - (1.0 - m / kf) * (1.0 - 1.0 / kf).powf(kf - m))
    } else {
        None
    };
    reports.push(entry(
        HsspMethod::GreedyDecremental,
        dec.hypervolume,
        Some(base),
        secondary,
    ));
    let ls_iters = ((n * k.max(1)) as u64).max(64);
    let ls = hssp_local_search(front, reference, k, 1, ls_iters, seed)?;
    reports.push(entry(HsspMethod::LocalSearch, ls.hypervolume, None, None));
    let gsemo = hssp_gsemo(front, reference, k, gsemo_default_budget(n, k), seed)?;
    reports.push(entry(HsspMethod::Gsemo, gsemo.hypervolume, None, None));
    Ok(ApproximationReport {
        optimum,
        k,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    fn front(rows: &[&[f64]]) -> Front {
        Front::from_points(rows.iter().map(|r| pt(r)).collect(), rows[0].len()).unwrap()
    }

    fn rp(coords: &[f64]) -> ReferencePoint {
        ReferencePoint::new(coords.to_vec()).unwrap()
    }

    fn stair3() -> (Front, ReferencePoint) {
        (
            front(&[&[1.0, 3.0], &[2.0, 2.0], &[3.0, 1.0]]),
            rp(&[4.0, 4.0]),
        )
    }

    #[test]
    fn exact_2d_picks_lexicographically_smallest_optimum() {
        let (s, r) = stair3();
        let sol = hssp_exact_2d(&s, &r, 2).unwrap();
        assert_eq!(sol.selected, vec![0, 1]);
        assert_eq!(sol.hypervolume, 5.0);
    }

    #[test]
    fn exact_2d_with_k_equal_n_keeps_the_whole_front() {
        let (s, r) = stair3();
        let sol = hssp_exact_2d(&s, &r, 3).unwrap();
        assert_eq!(sol.selected, vec![0, 1, 2]);
        assert_eq!(sol.hypervolume, 6.0);
    }

    #[test]
    fn exact_2d_matches_enumeration_on_uneven_staircases() {
        let s = front(&[
            &[1.0, 13.0],
            &[2.0, 9.0],
            &[4.0, 8.0],
            &[5.0, 5.0],
            &[8.0, 4.0],
            &[9.0, 2.0],
            &[12.0, 1.0],
        ]);
        let r = rp(&[14.0, 14.0]);
        for k in 0..=s.len() {
            let dp = hssp_exact_2d(&s, &r, k).unwrap();
            let enumerated = hssp_exhaustive(&s, &r, k, DEFAULT_SUBSET_BUDGET).unwrap();
            assert!(
                (dp.hypervolume - enumerated.hypervolume).abs() < 1e-12,
                "k={k}: {} vs {}",
                dp.hypervolume,
                enumerated.hypervolume
            );
        }
    }

    #[test]
    fn exact_2d_ignores_dominated_and_outside_points() {
        let s = front(&[&[1.0, 3.0], &[2.0, 4.0], &[3.0, 1.0], &[9.0, 1.0]]);
        let r = rp(&[4.0, 4.0]);
        let sol = hssp_exact_2d(&s, &r, 3).unwrap();
        assert_eq!(sol.selected, vec![0, 2]);
        assert_eq!(sol.hypervolume, 5.0);
    }

    #[test]
    fn exhaustive_prefers_earliest_combination_on_ties() {
        let (s, r) = stair3();
        let sol = hssp_exhaustive(&s, &r, 2, DEFAULT_SUBSET_BUDGET).unwrap();
        assert_eq!(sol.selected, vec![0, 1]);
        assert_eq!(sol.hypervolume, 5.0);
    }

    #[test]
    fn exhaustive_enforces_budget() {
        let s = front(&[
            &[1.0, 12.0],
            &[2.0, 11.0],
            &[3.0, 10.0],
            &[4.0, 9.0],
            &[5.0, 8.0],
            &[6.0, 7.0],
            &[7.0, 6.0],
            &[8.0, 5.0],
            &[9.0, 4.0],
            &[10.0, 3.0],
            &[11.0, 2.0],
            &[12.0, 1.0],
        ]);
        let r = rp(&[13.0, 13.0]);
        match hssp_exhaustive(&s, &r, 6, 100) {
            Err(HvError::BudgetExceeded { needed, budget }) => {
                assert_eq!(needed, 924);
                assert_eq!(budget, 100);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn greedy_incremental_on_a_tie_takes_lowest_indices() {
        let (s, r) = stair3();
        let sol = hssp_greedy_incremental(&s, &r, 2).unwrap();
        assert_eq!(sol.selected, vec![0, 1]);
        assert_eq!(sol.hypervolume, 5.0);
        assert_eq!(sol.trace.len(), 2);
        assert_eq!(sol.trace[0].index, Some(1));
        assert!((sol.trace[1].value - 5.0).abs() < 1e-12);
    }

    #[test]
    fn greedy_decremental_removes_least_contributors() {
        let (s, r) = stair3();
        let sol = hssp_greedy_decremental(&s, &r, 2).unwrap();
        assert_eq!(sol.selected, vec![1, 2]);
        assert_eq!(sol.hypervolume, 5.0);
        assert_eq!(sol.trace[0].index, Some(0));
    }

    #[test]
    fn k_zero_selects_nothing_everywhere() {
        let (s, r) = stair3();
        for sol in [
            hssp_exact_2d(&s, &r, 0).unwrap(),
            hssp_exhaustive(&s, &r, 0, 10).unwrap(),
            hssp_greedy_incremental(&s, &r, 0).unwrap(),
            hssp_greedy_decremental(&s, &r, 0).unwrap(),
            hssp_local_search(&s, &r, 0, 1, 10, 7).unwrap(),
            hssp_gsemo(&s, &r, 0, 10, 7).unwrap(),
        ] {
            assert!(sol.selected.is_empty());
            assert_eq!(sol.hypervolume, 0.0);
        }
    }

    #[test]
    fn oversized_k_is_rejected_everywhere() {
        let (s, r) = stair3();
        assert!(matches!(
            hssp_exact_2d(&s, &r, 4),
            Err(HvError::SubsetSizeOutOfRange { k: 4, n: 3 })
        ));
        assert!(matches!(
            hssp_greedy_incremental(&s, &r, 4),
            Err(HvError::SubsetSizeOutOfRange { .. })
        ));
        assert!(matches!(
            hssp_gsemo(&s, &r, 4, 10, 0),
            Err(HvError::SubsetSizeOutOfRange { .. })
        ));
    }

    #[test]
    fn local_search_trace_is_nondecreasing_and_seeded_runs_repeat() {
        let s = front(&[
            &[1.0, 13.0],
            &[2.0, 9.0],
            &[4.0, 8.0],
            &[5.0, 5.0],
            &[8.0, 4.0],
            &[9.0, 2.0],
            &[12.0, 1.0],
        ]);
        let r = rp(&[14.0, 14.0]);
        let a = hssp_local_search(&s, &r, 3, 1, 200, 11).unwrap();
        let b = hssp_local_search(&s, &r, 3, 1, 200, 11).unwrap();
        assert_eq!(a.selected, b.selected);
        assert_eq!(a.hypervolume, b.hypervolume);
        for w in a.trace.windows(2) {
            assert!(w[1].value >= w[0].value);
        }
        let opt = hssp_exhaustive(&s, &r, 3, DEFAULT_SUBSET_BUDGET).unwrap();
        assert!(a.hypervolume <= opt.hypervolume + 1e-12);
    }

    #[test]
    fn gsemo_finds_the_small_optimum() {
        let (s, r) = stair3();
        let sol = hssp_gsemo(&s, &r, 2, gsemo_default_budget(3, 2), 5).unwrap();
        assert!(sol.selected.len() <= 2);
        assert_eq!(sol.hypervolume, 5.0);
    }

    #[test]
    fn gsemo_rejects_fronts_beyond_the_bitmask_width() {
        let rows: Vec<Vec<f64>> = (0..130).map(|i| vec![i as f64, (200 - i) as f64]).collect();
        let s = Front::from_coords(&rows, 2).unwrap();
        let r = rp(&[300.0, 300.0]);
        assert!(matches!(
            hssp_gsemo(&s, &r, 3, 10, 0),
            Err(HvError::TooManyPoints { found: 130, .. })
        ));
    }

    #[test]
    fn greedy_beats_its_bound_in_3d() {
        let s = front(&[
            &[5.0, 5.0, 1.0],
            &[7.0, 3.0, 2.0],
            &[1.0, 7.0, 4.0],
            &[8.0, 1.0, 5.0],
            &[4.0, 2.0, 6.0],
            &[2.0, 4.0, 8.0],
        ]);
        let r = rp(&[10.0, 10.0, 10.0]);
        let opt = hssp_exhaustive(&s, &r, 3, DEFAULT_SUBSET_BUDGET).unwrap();
        let inc = hssp_greedy_incremental(&s, &r, 3).unwrap();
        let dec = hssp_greedy_decremental(&s, &r, 3).unwrap();
        assert!(inc.hypervolume >= (1.0 - (-1.0f64).exp()) * opt.hypervolume - 1e-12);
        assert!(dec.hypervolume >= 0.5 * opt.hypervolume - 1e-12);
    }

    #[test]
    fn approximation_report_holds_every_guarantee() {
        let s = front(&[
            &[1.0, 13.0],
            &[2.0, 9.0],
            &[4.0, 8.0],
            &[5.0, 5.0],
            &[8.0, 4.0],
            &[9.0, 2.0],
            &[12.0, 1.0],
        ]);
        let r = rp(&[14.0, 14.0]);
        let report = approximation_report(&s, &r, 4, DEFAULT_SUBSET_BUDGET, 3).unwrap();
        assert!(report.optimum > 0.0);
        for m in &report.reports {
            assert!(m.ratio <= 1.0 + 1e-12, "{:?}", m);
            if let Some(ok) = m.meets_guarantee {
                assert!(ok, "{:?}", m);
            }
            if m.method == HsspMethod::Exact2d {
                assert!((m.ratio - 1.0).abs() < 1e-12);
            }
            if m.method == HsspMethod::GreedyDecremental {
                assert!(m.secondary_guarantee.is_some());
            }
        }
    }
}
