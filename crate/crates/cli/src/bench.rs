//! Wall-clock benchmark harness. Emits one CSV row per timed repetition
//! with a fixed column order:
//! `algorithm_id,d,n,k,wall_time_ns,value,seed,git_describe`.

use std::path::Path;
use std::time::Instant;

use hvkit::{all_contributions, hssp_greedy_incremental, hv, Front, ReferencePoint};

use crate::gen::{self, GenKind};
use crate::io::fmt17;
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Hypervolume of the whole front.
    Hv,
    /// All contributions at once.
    Contrib,
    /// Greedy subset selection with k = n/2.
    Hssp,
}

/// One timed call on one instance.
struct Timing {
    algorithm_id: String,
    k: Option<usize>,
    wall_time_ns: u128,
    value: f64,
}

pub fn run(
    suite: Suite,
    sizes: &[usize],
    dims: &[usize],
    reps: usize,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let git = git_describe();
    let mut rows = String::new();
    for &n in sizes {
        for &d in dims {
            // One untimed call warms caches and lazy allocations before
            // any timed repetition of this configuration.
            let warm_seed = instance_seed(n, d, 0);
            let (front, r) = instance(n, d, warm_seed)?;
            let _ = measure(suite, &front, &r)?;
            for rep in 0..reps {
                let seed = instance_seed(n, d, rep);
                let (front, r) = instance(n, d, seed)?;
                let t = measure(suite, &front, &r)?;
                let k_col = t.k.map(|k| k.to_string()).unwrap_or_default();
                rows.push_str(&format!(
                    "{},{d},{n},{k_col},{},{},{seed},{git}\n",
                    t.algorithm_id,
                    t.wall_time_ns,
                    fmt17(t.value),
                ));
            }
        }
    }
    match out {
        Some(path) => std::fs::write(path, rows)
            .map_err(|e| Failure::other(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{rows}");
            Ok(())
        }
    }
}

fn instance_seed(n: usize, d: usize, rep: usize) -> u64 {
    (n as u64) * 1_000_003 + (d as u64) * 10_007 + rep as u64
}

/// Deterministic instance: a linear front inside the unit box with a
/// reference comfortably outside it.
fn instance(n: usize, d: usize, seed: u64) -> Result<(Front, ReferencePoint), Failure> {
    let rows = gen::generate(GenKind::Linear, n, d, seed).map_err(Failure::other)?;
    let front = Front::from_coords(&rows, d).map_err(|e| Failure::other(e.to_string()))?;
    let r = ReferencePoint::new(vec![2.0; d]).map_err(|e| Failure::other(e.to_string()))?;
    Ok((front, r))
}

fn measure(suite: Suite, front: &Front, r: &ReferencePoint) -> Result<Timing, Failure> {
    match suite {
        Suite::Hv => {
            let start = Instant::now();
            let res = hv(front, r).map_err(|e| Failure::other(e.to_string()))?;
            let wall_time_ns = start.elapsed().as_nanos();
            Ok(Timing {
                algorithm_id: res.algorithm_id.as_str().to_string(),
                k: None,
                wall_time_ns,
                value: res.value,
            })
        }
        Suite::Contrib => {
            let start = Instant::now();
            let table = all_contributions(front, r).map_err(|e| Failure::other(e.to_string()))?;
            let wall_time_ns = start.elapsed().as_nanos();
            Ok(Timing {
                algorithm_id: format!("contrib-{}d", front.dim()),
                k: None,
                wall_time_ns,
                value: table.total_hv,
            })
        }
        Suite::Hssp => {
            let k = front.len() / 2;
            let start = Instant::now();
            let sol =
                hssp_greedy_incremental(front, r, k).map_err(|e| Failure::other(e.to_string()))?;
            let wall_time_ns = start.elapsed().as_nanos();
            Ok(Timing {
                algorithm_id: "greedy-inc".to_string(),
                k: Some(k),
                wall_time_ns,
                value: sol.hypervolume,
            })
        }
    }
}

/// Current source revision for the record, best effort.
fn git_describe() -> String {
    std::process::Command::new("git")
        .args(["describe", "--always", "--dirty"])
        .output()
        .ok()
        .filter(|out| out.status.success())
        .and_then(|out| String::from_utf8(out.stdout).ok())
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "unknown".to_string())
}
