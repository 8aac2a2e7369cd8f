//! The two-test verifier for the components problem: a balancedness check
//! against the uniform state and a row-invariance check via a controlled
//! in-place application of a random row.

use super::state::StateVector;
use crate::oracle::{spectral, GraphOracle};
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

/// The acceptance operator whose expectation in a witness is the verifier's
/// acceptance probability: half the projector away from the uniform state
/// plus half of `I - L/2` for the normalized Laplacian `L`.
pub fn acceptance_operator(oracle: &GraphOracle) -> DMatrix<f64> {
    let n = oracle.n();
    let u = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let proj_u = &u * u.transpose();
    let lap = spectral::normalized_laplacian(oracle);
    (DMatrix::identity(n, n) - proj_u) * 0.5
        + (DMatrix::identity(n, n) - lap * 0.5) * 0.5
}

/// Acceptance probability on a given witness, computed from the operator.
pub fn accept_prob_operator(oracle: &GraphOracle, witness: &[Complex64]) -> Result<f64> {
    let n = oracle.n();
    if witness.len() != n {
        return Err(Error::Dimension("witness length != n".into()));
    }
    let norm: f64 = witness.iter().map(|a| a.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Dimension("witness not normalized".into()));
    }
    let m = acceptance_operator(oracle);
    let mut acc = Complex64::ZERO;
    for i in 0..n {
        for j in 0..n {
            acc += witness[i].conj() * m[(i, j)] * witness[j];
        }
    }
    Ok(acc.re)
}

/// Acceptance probability by direct circuit simulation: with probability 1/2
/// run the balancedness test (Hadamard the witness, reject on all-zeros) and
/// with probability 1/2 the invariance test (control qubit in `|+>`, apply
/// the sampled row in place through two oracle calls and a controlled swap,
/// accept on control `|0>`), averaged over the row choice.
pub fn accept_prob_circuit(oracle: &GraphOracle, witness: &[Complex64]) -> Result<f64> {
    let n = oracle.n();
    if !n.is_power_of_two() {
        return Err(Error::Dimension("circuit route needs n to be a power of two".into()));
    }
    if witness.len() != n {
        return Err(Error::Dimension("witness length != n".into()));
    }

    // Balancedness: Hadamard transform, accept unless the outcome is 0.
    let mut bal = StateVector::from_amplitudes(&[n], witness.to_vec());
    bal.apply_hadamard(0);
    let p_balanced = 1.0 - bal.prob_where(|v| v[0] == 0);

    // Invariance, averaged over the classical row sample.
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = vec![Complex64::new(h, 0.0); 2];
    let mut p_inv = 0.0;
    for r in 0..oracle.r() {
        let mut st = StateVector::product(&[
            plus.clone(),
            witness.to_vec(),
            {
                let mut zero = vec![Complex64::ZERO; n];
                zero[0] = Complex64::ONE;
                zero
            },
        ]);
        // Forward query into the ancilla, inverse query to erase the input,
        // then swap; all controlled on the first register. Rows are
        // involutions, so the inverse query reuses the forward table.
        st.apply_reversible(|v| {
            if v[0] == 1 {
                v[2] ^= oracle.eval(r, v[1]);
            }
        });
        st.apply_reversible(|v| {
            if v[0] == 1 {
                v[1] ^= oracle.eval(r, v[2]);
            }
        });
        st.apply_reversible(|v| {
            if v[0] == 1 {
                v.swap(1, 2);
            }
        });
        st.apply_hadamard(0);
        p_inv += st.prob_where(|v| v[0] == 0);
    }
    p_inv /= oracle.r() as f64;

    Ok(0.5 * p_balanced + 0.5 * p_inv)
}

/// The canonical witness for a balanced partition: uniform magnitudes with
/// a sign split along the given side.
pub fn witness_for_partition(n: usize, side: &[usize]) -> Vec<Complex64> {
    let amp = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|v| {
            if side.contains(&v) {
                Complex64::new(amp, 0.0)
            } else {
                Complex64::new(-amp, 0.0)
            }
        })
        .collect()
}

/// Canonical witness from any balanced grouping of the oracle's components.
pub fn canonical_witness(oracle: &GraphOracle) -> Result<Vec<Complex64>> {
    let s = oracle.yes_partition()?;
    Ok(witness_for_partition(oracle.n(), &s))
}

/// Maximum acceptance probability over all witnesses: the top eigenvalue of
/// the acceptance operator.
pub fn max_acceptance(oracle: &GraphOracle) -> f64 {
    let eig = SymmetricEigen::new(acceptance_operator(oracle));
    eig.eigenvalues.iter().fold(f64::MIN, |a, &b| a.max(b))
}

/// Closed form for connected instances: the best witness is either the
/// constant-on-half style vector scoring 1/2 from balancedness alone, or the
/// second Laplacian eigenvector scoring `1 - gap/4`.
pub fn max_acceptance_closed_form(gap: f64) -> f64 {
    (0.5f64).max(1.0 - gap / 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{sample_uniform, sample_yes};
    use crate::perm::Permutation;
    use crate::rng;
    use approx::assert_relative_eq;

    #[test]
    fn canonical_witness_accepted_with_certainty() {
        let mut r = rng::seeded(61);
        for &n in &[4usize, 8, 16] {
            for rr in 1..=3 {
                let inst = sample_yes(n, rr, &mut r);
                let w = witness_for_partition(n, &inst.partition);
                let p = accept_prob_operator(&inst.oracle, &w).unwrap();
                assert!((p - 1.0).abs() < 1e-12, "n={n} r={rr} p={p}");
                let w2 = canonical_witness(&inst.oracle).unwrap();
                let p2 = accept_prob_operator(&inst.oracle, &w2).unwrap();
                assert!((p2 - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn circuit_and_operator_routes_agree() {
        let mut r = rng::seeded(62);
        for &n in &[4usize, 8, 16] {
            for _ in 0..20 {
                let o = if n == 4 {
                    sample_uniform(n, 2, &mut r)
                } else {
                    sample_uniform(n, 3, &mut r)
                };
                let w = random_witness(n, &mut r);
                let a = accept_prob_operator(&o, &w).unwrap();
                let b = accept_prob_circuit(&o, &w).unwrap();
                assert!((a - b).abs() < 1e-10, "n={n} a={a} b={b}");
            }
        }
    }

    fn random_witness(n: usize, rng: &mut crate::rng::LabRng) -> Vec<Complex64> {
        let u = super::super::state::random_unitary(n, rng);
        (0..n).map(|i| u[(i, 0)]).collect()
    }

    #[test]
    fn k4_max_acceptance_is_two_thirds() {
        let o = crate::oracle::GraphOracle::new(4, Permutation::enumerate_matchings(4)).unwrap();
        assert_relative_eq!(max_acceptance(&o), 2.0 / 3.0, epsilon = 1e-12);
        let gap = spectral::spectral_gap(&o);
        assert_relative_eq!(max_acceptance_closed_form(gap), 2.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn single_edge_max_acceptance_is_half() {
        let o =
            crate::oracle::GraphOracle::new(2, vec![Permutation::from_vec(vec![1, 0]).unwrap()])
                .unwrap();
        assert_relative_eq!(max_acceptance(&o), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn max_acceptance_matches_closed_form_on_connected() {
        let mut r = rng::seeded(63);
        let mut tested = 0;
        while tested < 30 {
            let o = sample_uniform(8, 3, &mut r);
            if !o.is_connected() {
                continue;
            }
            let gap = spectral::spectral_gap(&o);
            assert_relative_eq!(
                max_acceptance(&o),
                max_acceptance_closed_form(gap),
                epsilon = 1e-10
            );
            tested += 1;
        }
    }
}
