use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{domain, Result};

/// Trials are split into this many chunks, each with its own ChaCha stream,
/// so results do not depend on the thread count.
const CHUNKS: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub t: u64,
    pub d: u64,
    pub trials: u64,
    pub seed: u64,
    pub hits: u64,
    pub probability: f64,
    /// `√(p(1 − p)/trials)` at the estimated `p`.
    pub std_error: f64,
}

/// Net displacement of `t` fair ±1 steps drawn from `rng`.
fn displacement(t: u64, rng: &mut ChaCha8Rng) -> i64 {
    let mut remaining = t;
    let mut ups = 0u64;
    while remaining > 0 {
        let take = remaining.min(64);
        let bits = rng.next_u64();
        let mask = if take == 64 { u64::MAX } else { (1u64 << take) - 1 };
        ups += (bits & mask).count_ones() as u64;
        remaining -= take;
    }
    2 * ups as i64 - t as i64
}

/// Fraction of trials in which two walkers started at 0 and `2d` occupy
/// the same site after `t` steps.
pub fn cl_monte_carlo(t: u64, d: u64, trials: u64, seed: u64) -> Result<MonteCarloEstimate> {
    if trials == 0 {
        return Err(domain("Monte Carlo needs at least one trial"));
    }
    let hits = if d > t {
        0
    } else {
        (0..CHUNKS)
            .into_par_iter()
            .map(|chunk| {
                let n = trials / CHUNKS + u64::from(chunk < trials % CHUNKS);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(chunk);
                let mut hits = 0u64;
                for _ in 0..n {
                    let x = displacement(t, &mut rng);
                    let y = 2 * d as i64 + displacement(t, &mut rng);
                    hits += u64::from(x == y);
                }
                hits
            })
            .sum()
    };
    let p = hits as f64 / trials as f64;
    Ok(MonteCarloEstimate {
        t,
        d,
        trials,
        seed,
        hits,
        probability: p,
        std_error: (p * (1.0 - p) / trials as f64).sqrt(),
    })
}
