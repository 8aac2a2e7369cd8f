//! Per-challenge verifier: with challenge row r*, flip a fair coin between
//! a balancedness test (map the uniform superposition to zero and reject on
//! zero) and an invariance test under the in-place row permutation, built
//! from one forward and one inverse query. Row permutations are not
//! involutions here, so the invariance statistic is (I+P)†(I+P)/4.

use super::NoisyPermOracle;
use crate::perm::Permutation;
use crate::qsim::StateVector;
use crate::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// (2I + P + Pᵀ)/4 for the permutation matrix P.
pub fn invariance_operator(p: &Permutation) -> DMatrix<f64> {
    let n = p.n();
    let mut m = DMatrix::identity(n, n) * 0.5;
    for x in 0..n {
        m[(p.apply(x), x)] += 0.25;
        m[(x, p.apply(x))] += 0.25;
    }
    m
}

/// Acceptance operator of the two-test verifier for one row permutation:
/// half balancedness, half invariance.
pub fn acceptance_operator(p: &Permutation) -> DMatrix<f64> {
    let n = p.n();
    let u = DMatrix::from_element(n, 1, 1.0 / (n as f64).sqrt());
    (DMatrix::identity(n, n) - &u * u.transpose()) * 0.5 + invariance_operator(p) * 0.5
}

fn check_witness(n: usize, witness: &[Complex64]) -> Result<()> {
    if witness.len() != n {
        return Err(Error::Dimension(format!(
            "witness has {} amplitudes, oracle needs {n}",
            witness.len()
        )));
    }
    let norm: f64 = witness.iter().map(|a| a.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Dimension(format!("witness norm^2 = {norm}, not 1")));
    }
    Ok(())
}

/// Exact acceptance probability via the operator.
pub fn accept_prob_operator(
    oracle: &NoisyPermOracle,
    r_star: usize,
    witness: &[Complex64],
) -> Result<f64> {
    check_witness(oracle.n(), witness)?;
    let m = acceptance_operator(oracle.row(r_star));
    let n = oracle.n();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += witness[i].conj() * m[(i, j)] * witness[j];
        }
    }
    Ok(acc.re)
}

/// Same probability computed by running the circuits: Hadamard balancedness
/// and a |+>-controlled in-place row application compiled as
/// controlled-forward-query, controlled swap, controlled-inverse-query.
/// Needs N to be a power of two for the balancedness Hadamards.
pub fn accept_prob_circuit(
    oracle: &NoisyPermOracle,
    r_star: usize,
    witness: &[Complex64],
) -> Result<f64> {
    let n = oracle.n();
    check_witness(n, witness)?;
    assert!(n.is_power_of_two(), "balancedness test needs a power-of-two domain");

    let mut bal = StateVector::from_amplitudes(&[n], witness.to_vec());
    bal.apply_hadamard(0);
    let p_balanced = bal.prob_where(|v| v[0] != 0);

    let plus = vec![Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0); 2];
    let mut st = StateVector::product(&[
        plus,
        witness.to_vec(),
        StateVector::basis(&[n], &[0]).amplitudes().to_vec(),
    ]);
    // Forward query into the ancilla, controlled on the coin.
    st.apply_reversible(|v| {
        if v[0] == 1 {
            v[2] = (v[2] + oracle.eval(r_star, false, v[1])) % n;
        }
    });
    // Swap the row value into place.
    st.apply_reversible(|v| {
        if v[0] == 1 {
            v.swap(1, 2);
        }
    });
    // Erase the leftover preimage with an inverse query.
    st.apply_reversible(|v| {
        if v[0] == 1 {
            v[2] = (v[2] + n - oracle.eval(r_star, true, v[1])) % n;
        }
    });
    st.apply_hadamard(0);
    let p_invariant = st.prob_where(|v| v[0] == 0);

    Ok(0.5 * p_balanced + 0.5 * p_invariant)
}

/// The ±1 witness for a balanced partition, reused from the
/// non-interactive verifier.
pub fn canonical_witness(n: usize, side: &[usize]) -> Vec<Complex64> {
    crate::qsim::verifier::witness_for_partition(n, side)
}

/// Best acceptance over all witnesses for one challenge row.
pub fn max_acceptance(p: &Permutation) -> f64 {
    let vals = acceptance_operator(p).symmetric_eigen().eigenvalues;
    vals.iter().fold(f64::MIN, |a, &b| a.max(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::sample_game_oracle;
    use crate::rng;
    use rand::Rng;

    #[test]
    fn proper_rows_accept_canonical_witness_exactly() {
        let mut r = rng::seeded(74);
        for &n in &[8usize, 16, 32] {
            for _ in 0..10 {
                let o = sample_game_oracle(n, 4, 0.5, &mut r);
                let w = canonical_witness(n, o.partition());
                for row in 0..o.r() {
                    if o.is_proper(row) {
                        let p = accept_prob_operator(&o, row, &w).unwrap();
                        assert!((p - 1.0).abs() < 1e-12, "n={n} row={row}: {p}");
                        let pc = accept_prob_circuit(&o, row, &w).unwrap();
                        assert!((pc - 1.0).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn improper_rows_have_an_acceptance_gap() {
        let mut r = rng::seeded(75);
        for &n in &[8usize, 16, 32] {
            let mut worst = 1.0f64;
            for _ in 0..10 {
                let o = sample_game_oracle(n, 4, 0.5, &mut r);
                for &row in o.improper_rows() {
                    let top = max_acceptance(o.row(row));
                    assert!(top < 1.0 - 1e-9);
                    worst = worst.min(1.0 - top);
                }
            }
            eprintln!("n={n}: measured improper-row gap >= {worst:.6}");
            assert!(worst > 0.0);
        }
    }

    #[test]
    fn uniform_witness_fails_balancedness() {
        let mut r = rng::seeded(76);
        let o = sample_game_oracle(8, 2, 0.5, &mut r);
        let u = vec![Complex64::new(1.0 / 8f64.sqrt(), 0.0); 8];
        for row in 0..o.r() {
            // Balancedness rejects with probability 1, so the total cannot
            // exceed the invariance half.
            let p = accept_prob_circuit(&o, row, &u).unwrap();
            assert!(p <= 0.5 + 1e-12);
        }
    }

    #[test]
    fn operator_and_circuit_agree_on_random_witnesses() {
        let mut r = rng::seeded(77);
        for &n in &[8usize, 16] {
            for _ in 0..20 {
                let o = sample_game_oracle(n, 3, 0.5, &mut r);
                let mut w: Vec<Complex64> = (0..n)
                    .map(|_| Complex64::new(r.gen::<f64>() - 0.5, r.gen::<f64>() - 0.5))
                    .collect();
                let norm: f64 = w.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                for a in &mut w {
                    *a /= norm;
                }
                let row = r.gen_range(0..o.r());
                let po = accept_prob_operator(&o, row, &w).unwrap();
                let pc = accept_prob_circuit(&o, row, &w).unwrap();
                assert!((po - pc).abs() < 1e-10, "{po} vs {pc}");
            }
        }
    }
}
