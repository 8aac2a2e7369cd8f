//! Generic two-distribution distinguishing harness, plus query algorithms
//! over bit-string oracles (used by the parity distinguisher).

use super::state::StateVector;
use crate::rng::LabRng;
use crate::stats;
use num_complex::Complex64;

/// Outcome of a sampled distinguishing experiment between two oracle
/// distributions.
#[derive(Clone, Debug)]
pub struct DistinguisherReport {
    pub accept_a: f64,
    pub accept_b: f64,
    pub ci_a: (f64, f64),
    pub ci_b: (f64, f64),
    pub bias: f64,
    pub trials: u64,
    pub confidence: f64,
}

impl DistinguisherReport {
    /// True when the confidence intervals certify a nonzero bias.
    pub fn separated(&self) -> bool {
        self.ci_a.0 > self.ci_b.1 || self.ci_b.0 > self.ci_a.1
    }
}

/// Run `alg` on fresh samples from each distribution and report acceptance
/// frequencies with Wilson intervals.
pub fn run_distinguisher<T>(
    mut alg: impl FnMut(&T, &mut LabRng) -> bool,
    mut sample_a: impl FnMut(&mut LabRng) -> T,
    mut sample_b: impl FnMut(&mut LabRng) -> T,
    trials: u64,
    confidence: f64,
    rng: &mut LabRng,
) -> DistinguisherReport {
    let mut hits_a = 0;
    let mut hits_b = 0;
    for _ in 0..trials {
        let a = sample_a(rng);
        if alg(&a, rng) {
            hits_a += 1;
        }
        let b = sample_b(rng);
        if alg(&b, rng) {
            hits_b += 1;
        }
    }
    let accept_a = hits_a as f64 / trials as f64;
    let accept_b = hits_b as f64 / trials as f64;
    DistinguisherReport {
        accept_a,
        accept_b,
        ci_a: stats::wilson_interval(hits_a, trials, confidence),
        ci_b: stats::wilson_interval(hits_b, trials, confidence),
        bias: accept_a - accept_b,
        trials,
        confidence,
    }
}

/// Deterministic parity extraction: for each adjacent index pair prepare a
/// superposition against a `|->` target, make one XOR query, and read the
/// pair's parity from the sign. Uses exactly `n/2` queries and accepts iff
/// the total parity is even.
pub fn parity_accepts(bits: &[bool]) -> bool {
    let n = bits.len();
    assert!(n % 2 == 0);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut parity = false;
    for k in 0..n / 2 {
        let mut amps = vec![Complex64::ZERO; n * 2];
        // (|2k> + |2k+1>)/sqrt2 tensor |->
        for (i, sign) in [(2 * k, 1.0), (2 * k + 1, 1.0)] {
            amps[i * 2] = Complex64::new(sign * h * h, 0.0);
            amps[i * 2 + 1] = Complex64::new(-sign * h * h, 0.0);
        }
        let mut st = StateVector::from_amplitudes(&[n, 2], amps);
        st.apply_reversible(|v| {
            if bits[v[0]] {
                v[1] ^= 1;
            }
        });
        // Project onto (|2k> + |2k+1>)/sqrt2 tensor |->.
        let mut target = vec![Complex64::ZERO; n * 2];
        for i in [2 * k, 2 * k + 1] {
            target[i * 2] = Complex64::new(h * h, 0.0);
            target[i * 2 + 1] = Complex64::new(-h * h, 0.0);
        }
        let overlap = StateVector::from_amplitudes(&[n, 2], target).inner(&st);
        let p_same = overlap.norm_sqr();
        // The outcome is deterministic: overlap 1 when the pair agrees, 0
        // when it differs.
        assert!((p_same - 1.0).abs() < 1e-9 || p_same < 1e-9);
        if p_same < 0.5 {
            parity = !parity;
        }
    }
    !parity
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use rand::Rng;

    #[test]
    fn parity_circuit_computes_parity_exactly() {
        let mut r = rng::seeded(71);
        for _ in 0..50 {
            let bits: Vec<bool> = (0..8).map(|_| r.gen_bool(0.5)).collect();
            let parity = bits.iter().filter(|&&b| b).count() % 2;
            assert_eq!(parity_accepts(&bits), parity == 0);
        }
    }

    #[test]
    fn distinguisher_separates_biased_coins() {
        let mut r = rng::seeded(72);
        let report = run_distinguisher(
            |x: &bool, _| *x,
            |rng| rng.gen_bool(0.8),
            |rng| rng.gen_bool(0.2),
            2000,
            0.99,
            &mut r,
        );
        assert!(report.separated());
        assert!(report.bias > 0.5);
    }

    #[test]
    fn distinguisher_reports_no_separation_for_identical() {
        let mut r = rng::seeded(73);
        let report = run_distinguisher(
            |x: &bool, _| *x,
            |rng| rng.gen_bool(0.5),
            |rng| rng.gen_bool(0.5),
            2000,
            0.99,
            &mut r,
        );
        assert!(!report.separated());
    }
}
