//! Small statistics toolbox shared by the experiment harnesses.

use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

/// Total-variation distance between two distributions given as weight slices.
/// Panics if the lengths differ.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len());
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// Chi-squared goodness-of-fit p-value for observed counts against expected
/// counts. Expected cells must be positive.
pub fn chi2_pvalue(observed: &[u64], expected: &[f64]) -> f64 {
    assert_eq!(observed.len(), expected.len());
    let mut stat = 0.0;
    let mut dof = 0usize;
    for (&o, &e) in observed.iter().zip(expected) {
        assert!(e > 0.0, "expected count must be positive");
        stat += (o as f64 - e).powi(2) / e;
        dof += 1;
    }
    assert!(dof > 1);
    let chi = ChiSquared::new((dof - 1) as f64).unwrap();
    1.0 - chi.cdf(stat)
}

/// Wilson score interval for a binomial proportion.
/// Returns `(low, high)` at the given confidence level (e.g. 0.99).
pub fn wilson_interval(successes: u64, trials: u64, confidence: f64) -> (f64, f64) {
    assert!(trials > 0);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z = Normal::new(0.0, 1.0)
        .unwrap()
        .inverse_cdf(0.5 + confidence / 2.0);
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Standard error of an empirical TV estimate over `cells` histogram cells
/// with `samples` draws; the usual conservative sqrt(cells / samples) / 2.
pub fn tv_sampling_sigma(cells: usize, samples: usize) -> f64 {
    0.5 * (cells as f64 / samples as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tv_basics() {
        assert_eq!(total_variation(&[1.0, 0.0], &[0.0, 1.0]), 1.0);
        assert!(total_variation(&[0.5, 0.5], &[0.5, 0.5]).abs() < 1e-15);
    }

    #[test]
    fn chi2_uniform_counts_have_high_pvalue() {
        let obs = [250u64, 248, 252, 250];
        let exp = [250.0; 4];
        assert!(chi2_pvalue(&obs, &exp) > 0.9);
    }

    #[test]
    fn chi2_skewed_counts_rejected() {
        let obs = [400u64, 100, 250, 250];
        let exp = [250.0; 4];
        assert!(chi2_pvalue(&obs, &exp) < 1e-6);
    }

    #[test]
    fn wilson_contains_truth() {
        let (lo, hi) = wilson_interval(500, 1000, 0.99);
        assert!(lo < 0.5 && 0.5 < hi);
        assert!(hi - lo < 0.1);
    }
}
