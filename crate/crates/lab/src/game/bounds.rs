//! Parameter arithmetic for witness-guessing: a W-bit witness shared
//! across k rounds buys at most a 2^{W/k} factor per round over the
//! witnessless success probability 1/2 + 1/sqrt(N) + cK/N.

use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct WitnessBound {
    /// Per-round bound 2^{W/k} (1/2 + 1/sqrt(N) + ck/N).
    pub per_round: f64,
    /// Linearized single-round cap 1/2 + 1/sqrt(N) + ck/N + W/(2k).
    pub cap: f64,
    /// per_round - cap: the higher-order remainder dropped by the
    /// linearization (can be negative only outside the flagged regime).
    pub remainder: f64,
    /// Set when W/k > 1, where 2^{W/k} <= 1 + W/k fails and the
    /// linearized cap is not a valid upper-bound surrogate.
    pub flagged: bool,
}

pub fn witness_guess_bound(w: usize, k: usize, n: usize, c: f64) -> WitnessBound {
    assert!(k >= 1 && n >= 2);
    let base = 0.5 + 1.0 / (n as f64).sqrt() + c * k as f64 / n as f64;
    let per_round = 2f64.powf(w as f64 / k as f64) * base;
    let cap = base + w as f64 / (2.0 * k as f64);
    WitnessBound { per_round, cap, remainder: per_round - cap, flagged: w > k }
}

/// Scan k and report the k minimizing the linearized cap: the witness term
/// shrinks with k until the ck/N term takes over.
pub fn best_round_count(w: usize, n: usize, c: f64, k_max: usize) -> (usize, f64) {
    (1..=k_max)
        .map(|k| (k, witness_guess_bound(w, k, n, c).cap))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap()
}
