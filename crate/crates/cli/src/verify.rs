//! Randomized self-check: every fast algorithm is compared against an
//! independent reference computation on freshly drawn instances. The
//! instance stream is a pure function of the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hvkit::{
    all_contributions, hssp_exact_2d, hssp_exhaustive, hssp_greedy_decremental,
    hssp_greedy_incremental, hv, hv_grid, hv_hso, hv_inclusion_exclusion, hv_wfg,
    is_local_upper_bound, local_upper_bounds, one_contribution, update_all_contributions,
    update_hv, Front, HvError, Point, ReferencePoint, TwoSetContributionState, UpdateMode,
};

use crate::gen::{self, GenKind};
use crate::Failure;

/// Environment variable that, when set to `1`, perturbs the fast
/// hypervolume values before comparison. Exists solely so tests can
/// confirm the harness notices a wrong answer.
pub const INJECT_FAULT_ENV: &str = "HVKIT_VERIFY_INJECT_FAULT";

const REL_TOL: f64 = 1e-9;

/// Pass/fail tally of one section, keeping the first mismatch verbatim.
struct Check {
    name: &'static str,
    passed: usize,
    total: usize,
    first_failure: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            passed: 0,
            total: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(detail());
        }
    }

    fn close(&mut self, label: &str, got: f64, want: f64) -> bool {
        let ok = rel_close(got, want);
        self.record(ok, || format!("{label}: got {got}, want {want}"));
        ok
    }
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL_TOL * b.abs().max(1.0)
}

/// Run every section; any recorded mismatch fails the whole run.
pub fn run(budget: u64, seed: u64) -> Result<(), Failure> {
    let inject = std::env::var(INJECT_FAULT_ENV).as_deref() == Ok("1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sections = [
        section_hv_oracles(&mut rng, budget, inject),
        section_contributions(&mut rng),
        section_updates(&mut rng),
        section_two_set(&mut rng),
        section_subset_selection(&mut rng),
        section_local_upper_bounds(&mut rng),
    ];
    let mut failed = Vec::new();
    for section in &sections {
        println!("{:<28} {}/{}", section.name, section.passed, section.total);
        if section.passed != section.total {
            let detail = section
                .first_failure
                .clone()
                .unwrap_or_else(|| "mismatch".into());
            failed.push(format!("{}: {detail}", section.name));
        }
    }
    if failed.is_empty() {
        println!("VERIFY PASS");
        Ok(())
    } else {
        println!("VERIFY FAIL");
        Err(Failure::verify(failed.join("; ")))
    }
}

/// Random front on the integer grid `{0..8}^d` (duplicates and dominated
/// points welcome — every code path must cope with them).
fn grid_front(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Front {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..d).map(|_| rng.gen_range(0..9) as f64).collect())
        .collect();
    Front::from_coords(&rows, d).expect("grid coordinates are finite")
}

/// Exactly `n` mutually nondominated points with continuous coordinates
/// (on the unit simplex), pairwise distinct in every axis almost surely.
fn simplex_points(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Vec<Point> {
    let rows =
        gen::generate(GenKind::Linear, n, d, rng.gen()).expect("simplex sampling always succeeds");
    rows.into_iter()
        .map(|row| Point::new(row).expect("simplex coordinates are finite"))
        .collect()
}

fn reference(d: usize, value: f64) -> ReferencePoint {
    ReferencePoint::new(vec![value; d]).expect("constant reference is valid")
}

fn section_hv_oracles(rng: &mut ChaCha8Rng, budget: u64, inject: bool) -> Check {
    let mut check = Check::new("hypervolume vs oracles");
    for i in 0..40 {
        let d = 2 + i % 4;
        let n = 1 + (i / 4) % 9;
        let front = grid_front(rng, d, n);
        let r = reference(d, 9.0);
        let mut fast = hv(&front, &r)
            .expect("dispatch accepts any dimension >= 2")
            .value;
        if inject {
            fast *= 1.0 + 1e-3;
        }
        let label = format!("instance {i} (d={d}, n={n})");
        let hso = hv_hso(&front, &r).expect("splitting oracle accepts this input");
        check.close(&format!("{label} vs hso"), fast, hso);
        let ie = hv_inclusion_exclusion(&front, &r).expect("front is small enough");
        check.close(&format!("{label} vs ie"), fast, ie);
        match hv_grid(&front, &r, budget) {
            Ok(grid) => {
                check.close(&format!("{label} vs grid"), fast, grid);
            }
            // A caller-imposed budget too small for this instance skips
            // the comparison rather than failing it.
            Err(HvError::BudgetExceeded { .. }) => {}
            Err(e) => check.record(false, || format!("{label}: grid oracle error {e}")),
        }
        let wfg = hv_wfg(&front, &r)
            .expect("generic algorithm accepts this input")
            .value;
        check.close(&format!("{label} wfg vs hso"), wfg, hso);
    }
    check
}

fn section_contributions(rng: &mut ChaCha8Rng) -> Check {
    let mut check = Check::new("contribution identities");
    for i in 0..25 {
        let d = 2 + i % 4;
        let n = 2 + (i / 4) % 8;
        let front = grid_front(rng, d, n);
        let r = reference(d, 9.0);
        let table = all_contributions(&front, &r).expect("any front has a table");
        let total = hv(&front, &r).expect("value exists").value;
        let label = format!("instance {i} (d={d}, n={n})");
        let mut ok = rel_close(table.total_hv, total);
        let mut detail = format!("{label}: table total {} vs {}", table.total_hv, total);
        for idx in 0..front.len() {
            let mut shrunk = front.clone();
            shrunk.remove(idx).expect("index in range");
            let expected = total - hv(&shrunk, &r).expect("value exists").value;
            if ok && !rel_close(table.values[idx], expected) {
                ok = false;
                detail = format!(
                    "{label}: contribution[{idx}] = {}, removal gives {expected}",
                    table.values[idx]
                );
            }
            let p = front.get(idx).expect("index in range");
            // The direct contribution sets exact copies aside, so it only
            // matches the removal difference when no copy remains.
            if shrunk.position_of(p).is_none() {
                let single = one_contribution(p, &shrunk, &r).expect("value exists");
                if ok && !rel_close(single, expected) {
                    ok = false;
                    detail =
                        format!("{label}: one_contribution[{idx}] = {single}, want {expected}");
                }
            }
        }
        check.record(ok, || detail);
    }
    check
}

fn section_updates(rng: &mut ChaCha8Rng) -> Check {
    let mut check = Check::new("structural updates");
    for i in 0..15 {
        let d = 2 + i % 3;
        let mut front = grid_front(rng, d, 4);
        let r = reference(d, 9.0);
        let mut known_hv = hv(&front, &r).expect("value exists").value;
        let mut table = all_contributions(&front, &r).expect("any front has a table");
        for step in 0..6 {
            let label = format!("sequence {i} step {step} (d={d}, n={})", front.len());
            let remove = !front.is_empty() && rng.gen_bool(0.5);
            let (next_front, p, mode) = if remove {
                let idx = rng.gen_range(0..front.len());
                let p = front.get(idx).expect("index in range").clone();
                let mut next = front.clone();
                let first = next.position_of(&p).expect("member exists");
                next.remove(first).expect("index in range");
                (next, p, UpdateMode::Decremental)
            } else {
                let p = loop {
                    let coords: Vec<f64> = (0..d).map(|_| rng.gen_range(0..9) as f64).collect();
                    let p = Point::new(coords).expect("grid coordinates are finite");
                    if front.position_of(&p).is_none() {
                        break p;
                    }
                };
                let mut next = front.clone();
                next.push(p.clone()).expect("dimensions match");
                (next, p, UpdateMode::Incremental)
            };
            let updated_hv =
                update_hv(&front, &r, known_hv, &p, mode).expect("membership was checked");
            let updated_table = update_all_contributions(&front, &r, &table, &p, mode)
                .expect("membership was checked");
            let fresh_hv = hv(&next_front, &r).expect("value exists").value;
            let fresh_table = all_contributions(&next_front, &r).expect("any front has a table");
            let mut ok = rel_close(updated_hv, fresh_hv)
                && rel_close(updated_table.total_hv, fresh_table.total_hv)
                && updated_table.values.len() == fresh_table.values.len();
            if ok {
                for (a, b) in updated_table.values.iter().zip(&fresh_table.values) {
                    if !rel_close(*a, *b) {
                        ok = false;
                        break;
                    }
                }
            }
            check.record(ok, || {
                format!(
                    "{label}: updated hv {updated_hv} vs {fresh_hv}; table {:?} vs {:?}",
                    updated_table.values, fresh_table.values
                )
            });
            front = next_front;
            known_hv = updated_hv;
            table = updated_table;
        }
    }
    check
}

fn section_two_set(rng: &mut ChaCha8Rng) -> Check {
    let mut check = Check::new("two-set contributions");
    for i in 0..10 {
        let d = 2 + i % 2;
        // One antichain supplies candidates, initial accepted points, and
        // the external points added later, so the merged set stays
        // mutually nondominated throughout.
        let points = simplex_points(rng, d, 14);
        let candidates =
            Front::from_points(points[..6].to_vec(), d).expect("consistent dimensions");
        let accepted_init =
            Front::from_points(points[6..8].to_vec(), d).expect("consistent dimensions");
        let externals: Vec<Point> = points[8..].to_vec();
        let r = reference(d, 2.0);
        let mut state = TwoSetContributionState::new(&candidates, &accepted_init, &r)
            .expect("merged pool is an antichain");
        let mut moved: Vec<usize> = Vec::new();
        let mut active_externals: Vec<Point> = Vec::new();
        let mut shadow_accepted: Vec<Point> = accepted_init.iter().cloned().collect();
        for step in 0..6 {
            let unmoved: Vec<usize> = (0..candidates.len())
                .filter(|idx| !moved.contains(idx))
                .collect();
            let op = rng.gen_range(0..3);
            if op == 0 && !unmoved.is_empty() {
                let idx = unmoved[rng.gen_range(0..unmoved.len())];
                state
                    .move_to_accepted(idx)
                    .expect("candidate not yet accepted");
                moved.push(idx);
                shadow_accepted.push(candidates.get(idx).expect("index in range").clone());
            } else if op == 1 && active_externals.len() < externals.len() {
                let p = externals[active_externals.len()].clone();
                state
                    .update(&p, UpdateMode::Incremental)
                    .expect("point is fresh");
                active_externals.push(p.clone());
                shadow_accepted.push(p);
            } else if !active_externals.is_empty() {
                let p = active_externals.pop().expect("nonempty");
                state
                    .update(&p, UpdateMode::Decremental)
                    .expect("point was added");
                let pos = shadow_accepted
                    .iter()
                    .position(|q| q == &p)
                    .expect("shadow tracks the accepted set");
                shadow_accepted.remove(pos);
            } else {
                // Nothing to remove and the other draws missed: accept a
                // candidate if any remain, else skip the step.
                if unmoved.is_empty() {
                    continue;
                }
                let idx = unmoved[0];
                state
                    .move_to_accepted(idx)
                    .expect("candidate not yet accepted");
                moved.push(idx);
                shadow_accepted.push(candidates.get(idx).expect("index in range").clone());
            }
            let accepted_front =
                Front::from_points(shadow_accepted.clone(), d).expect("consistent dimensions");
            let got = state.contributions();
            let mut ok = true;
            let mut detail = String::new();
            for (idx, &g) in got.iter().enumerate() {
                let expected = if moved.contains(&idx) {
                    0.0
                } else {
                    one_contribution(
                        candidates.get(idx).expect("index in range"),
                        &accepted_front,
                        &r,
                    )
                    .expect("value exists")
                };
                if !rel_close(g, expected) {
                    ok = false;
                    detail = format!(
                        "sequence {i} step {step} (d={d}): candidate {idx} reports {g}, \
                         fresh value {expected}"
                    );
                    break;
                }
            }
            check.record(ok, || detail);
        }
    }
    check
}

fn section_subset_selection(rng: &mut ChaCha8Rng) -> Check {
    let mut check = Check::new("subset selection");
    for i in 0..15 {
        let n = 3 + i % 7;
        let front = grid_front(rng, 2, n);
        let r = reference(2, 9.0);
        for k in 0..=n {
            let label = format!("instance {i} (n={n}, k={k})");
            let best = hssp_exhaustive(&front, &r, k, 1_000_000).expect("tiny search space");
            let dp = hssp_exact_2d(&front, &r, k).expect("two-objective input");
            let ginc = hssp_greedy_incremental(&front, &r, k).expect("k is in range");
            let gdec = hssp_greedy_decremental(&front, &r, k).expect("k is in range");
            let opt = best.hypervolume;
            let mut ok = rel_close(dp.hypervolume, opt);
            let mut detail = format!("{label}: dp {} vs optimum {opt}", dp.hypervolume);
            let inc_floor = (1.0 - (-1.0f64).exp()) * opt - 1e-9;
            if ok && ginc.hypervolume < inc_floor {
                ok = false;
                detail = format!(
                    "{label}: greedy-inc {} below floor {inc_floor}",
                    ginc.hypervolume
                );
            }
            let dec_floor = (k as f64 / n as f64) * opt - 1e-9;
            if ok && gdec.hypervolume < dec_floor {
                ok = false;
                detail = format!(
                    "{label}: greedy-dec {} below floor {dec_floor}",
                    gdec.hypervolume
                );
            }
            check.record(ok, || detail);
        }
    }
    check
}

fn section_local_upper_bounds(rng: &mut ChaCha8Rng) -> Check {
    let mut check = Check::new("local upper bounds");
    for i in 0..20 {
        let d = 2 + i % 2;
        let n = 1 + i % 8;
        let front =
            Front::from_points(simplex_points(rng, d, n), d).expect("consistent dimensions");
        let r = reference(d, 2.0);
        let bounds = local_upper_bounds(&front, &r).expect("input is an antichain");
        // Continuous coordinates are pairwise distinct per axis, so the
        // closed-form bound counts apply.
        let expected_count = if d == 2 { n + 1 } else { 2 * n + 1 };
        let mut ok = bounds.len() == expected_count;
        let mut detail = format!(
            "instance {i} (d={d}, n={n}): {} bounds, expected {expected_count}",
            bounds.len()
        );
        if ok {
            for u in bounds.iter() {
                if !is_local_upper_bound(u, &front, &r).expect("dimensions match") {
                    ok = false;
                    detail = format!(
                        "instance {i} (d={d}, n={n}): {:?} fails the membership test",
                        u.coords()
                    );
                    break;
                }
            }
        }
        check.record(ok, || detail);
    }
    check
}
