//! Deterministic front generators for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hvkit::Front;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GenKind {
    /// Points on the simplex slice where the coordinates sum to 1.
    Linear,
    /// Points on the positive octant of the unit sphere (a concave front).
    Spherical,
    /// Uniform points in the unit box, filtered to the nondominated ones.
    Random,
}

/// How many refill rounds the `random` kind attempts before giving up.
const RANDOM_MAX_ROUNDS: usize = 200;

/// Generate `n` mutually nondominated `d`-dimensional points. Every kind
/// is a pure function of `(kind, n, d, seed)`. `Err` means the request is
/// infeasible within the retry budget.
pub fn generate(kind: GenKind, n: usize, d: usize, seed: u64) -> Result<Vec<Vec<f64>>, String> {
    assert!(d >= 2, "points need at least 2 coordinates");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        GenKind::Linear => Ok((0..n).map(|_| simplex_point(d, &mut rng)).collect()),
        GenKind::Spherical => Ok((0..n).map(|_| sphere_octant_point(d, &mut rng)).collect()),
        GenKind::Random => random_nondominated(n, d, &mut rng),
    }
}

/// Uniform point on the standard simplex via normalized exponentials.
fn simplex_point(d: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let draws: Vec<f64> = (0..d).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let sum: f64 = draws.iter().sum();
        if sum > 0.0 && sum.is_finite() {
            return draws.into_iter().map(|e| e / sum).collect();
        }
    }
}

/// Uniform direction in the positive octant, scaled to unit length.
fn sphere_octant_point(d: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let mut coords = Vec::with_capacity(d + 1);
        while coords.len() < d {
            // Box-Muller transform; draws are in (0, 1] to keep ln finite.
            let u1: f64 = 1.0 - rng.gen::<f64>();
            let u2: f64 = rng.gen();
            let radius = (-2.0 * u1.ln()).sqrt();
            let (s, c) = (2.0 * std::f64::consts::PI * u2).sin_cos();
            coords.push((radius * c).abs());
            coords.push((radius * s).abs());
        }
        coords.truncate(d);
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 0.0 && norm.is_finite() {
            return coords.into_iter().map(|c| c / norm).collect();
        }
    }
}

fn random_nondominated(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<f64>>, String> {
    let batch = n.max(64);
    let mut archive: Vec<Vec<f64>> = Vec::new();
    for _ in 0..RANDOM_MAX_ROUNDS {
        for _ in 0..batch {
            archive.push((0..d).map(|_| rng.gen::<f64>()).collect());
        }
        let front = Front::from_coords(&archive, d)
            .expect("uniform draws are finite")
            .nondominated_filter();
        archive = front.iter().map(|p| p.coords().to_vec()).collect();
        if archive.len() >= n {
            archive.truncate(n);
            return Ok(archive);
        }
    }
    Err(format!(
        "could not assemble {n} mutually nondominated points in {d} dimensions \
         after {RANDOM_MAX_ROUNDS} sampling rounds ({} found)",
        archive.len()
    ))
}
