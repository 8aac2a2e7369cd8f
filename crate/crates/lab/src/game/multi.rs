//! Sequential multi-round harness: each round gets a fresh oracle and a
//! fresh uniform challenge, the adversary carries its own state between
//! rounds, and the transcript records everything in order.

use super::{sample_game_oracle, NoisyPermOracle};
use crate::rng::LabRng;
use rand::Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct GameTranscript {
    pub rounds: usize,
    pub challenges: Vec<usize>,
    pub outcomes: Vec<bool>,
    pub witness_length: usize,
    pub queries_per_round: Vec<usize>,
}

impl GameTranscript {
    pub fn won_all(&self) -> bool {
        self.outcomes.iter().all(|&b| b)
    }
}

/// Metered oracle access: counts queries and refuses past the budget.
pub struct OracleHandle<'a> {
    oracle: &'a NoisyPermOracle,
    queries: usize,
    budget: usize,
}

impl<'a> OracleHandle<'a> {
    pub fn n(&self) -> usize {
        self.oracle.n()
    }

    pub fn r(&self) -> usize {
        self.oracle.r()
    }

    pub fn queries(&self) -> usize {
        self.queries
    }

    pub fn over_budget(&self) -> bool {
        self.queries > self.budget
    }

    /// One oracle query; returns None once the budget is exhausted.
    pub fn query(&mut self, row: usize, inverse: bool, x: usize) -> Option<usize> {
        self.queries += 1;
        if self.over_budget() {
            return None;
        }
        Some(self.oracle.eval(row, inverse, x))
    }
}

/// A strategy for the sequential game. Carried state lives inside the
/// implementor; `witness_length` is recorded in the transcript.
pub trait Adversary {
    fn witness_length(&self) -> usize {
        0
    }
    fn play(&mut self, round: usize, oracle: &mut OracleHandle, challenge: usize, rng: &mut LabRng)
        -> bool;
}

/// Run k sequential rounds with independent oracles and uniform challenges.
/// A round that exceeds the query budget is forfeited.
pub fn run_multi_instance(
    adversary: &mut dyn Adversary,
    n: usize,
    r: usize,
    eta: f64,
    k: usize,
    budget: usize,
    rng: &mut LabRng,
) -> GameTranscript {
    assert!(k >= 1);
    let mut challenges = Vec::with_capacity(k);
    let mut outcomes = Vec::with_capacity(k);
    let mut queries = Vec::with_capacity(k);
    for round in 0..k {
        let oracle = sample_game_oracle(n, r, eta, rng);
        let challenge = rng.gen_range(0..r);
        let mut handle = OracleHandle { oracle: &oracle, queries: 0, budget };
        let guess = adversary.play(round, &mut handle, challenge, rng);
        let outcome = guess && !handle.over_budget();
        challenges.push(challenge);
        outcomes.push(outcome);
        queries.push(handle.queries());
    }
    GameTranscript {
        rounds: k,
        challenges,
        outcomes,
        witness_length: adversary.witness_length(),
        queries_per_round: queries,
    }
}

/// Guesses a fair coin each round; wins a round with probability 1/2.
pub struct CoinFlip;

impl Adversary for CoinFlip {
    fn play(&mut self, _round: usize, _o: &mut OracleHandle, _c: usize, rng: &mut LabRng) -> bool {
        rng.gen_bool(0.5)
    }
}

/// Toy adversary whose conditional per-round success probability is exactly
/// delta regardless of history.
pub struct Bernoulli {
    pub delta: f64,
}

impl Adversary for Bernoulli {
    fn play(&mut self, _round: usize, _o: &mut OracleHandle, _c: usize, rng: &mut LabRng) -> bool {
        rng.gen_bool(self.delta)
    }
}

/// Queries until cut off; always over budget, so every round is forfeited.
pub struct QueryHog;

impl Adversary for QueryHog {
    fn play(&mut self, _round: usize, o: &mut OracleHandle, c: usize, _rng: &mut LabRng) -> bool {
        let mut x = 0;
        loop {
            match o.query(c, false, x) {
                Some(y) => x = y,
                None => return true,
            }
        }
    }
}
