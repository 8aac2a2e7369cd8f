//! Densities on the Boolean hypercube, the even-parity source, and the
//! polynomial-bias probe for low-degree acceptance functions.

use crate::qsim::state::StateVector;
use crate::rng::LabRng;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

/// A density on `{0,1}^n` stored as relative weights against uniform:
/// `Pr[x] = density[x] / 2^n`.
#[derive(Clone, Debug)]
pub struct HypercubeDensity {
    pub n: usize,
    pub density: Vec<f64>,
}

impl HypercubeDensity {
    pub fn uniform(n: usize) -> Self {
        Self { n, density: vec![1.0; 1 << n] }
    }

    /// Uniform over even-parity strings: density 2 on even, 0 on odd.
    pub fn even_parity(n: usize) -> Self {
        let density = (0..1usize << n)
            .map(|x| if x.count_ones() % 2 == 0 { 2.0 } else { 0.0 })
            .collect();
        Self { n, density }
    }

    pub fn prob(&self, x: usize) -> f64 {
        self.density[x] / (1 << self.n) as f64
    }

    /// Marginal density on a coordinate subset given as a bitmask.
    pub fn marginal(&self, mask: usize) -> Vec<f64> {
        let k = mask.count_ones() as usize;
        let positions: Vec<usize> =
            (0..self.n).filter(|i| mask >> i & 1 == 1).collect();
        let mut out = vec![0.0; 1 << k];
        for (x, d) in self.density.iter().enumerate() {
            let mut key = 0;
            for (slot, &pos) in positions.iter().enumerate() {
                if x >> pos & 1 == 1 {
                    key |= 1 << slot;
                }
            }
            out[key] += d / (1 << (self.n - k)) as f64;
        }
        out
    }

    /// Entropy deficit of a subset: `log2` of the largest marginal density.
    pub fn deficit(&self, mask: usize) -> f64 {
        self.marginal(mask).iter().fold(0.0f64, |a, &b| a.max(b)).log2()
    }

    /// Density defect: the largest per-coordinate deficit over nonempty
    /// subsets.
    pub fn delta(&self) -> f64 {
        (1usize..1 << self.n)
            .map(|mask| self.deficit(mask) / mask.count_ones() as f64)
            .fold(0.0f64, f64::max)
    }

    pub fn tv_from_uniform(&self) -> f64 {
        0.5 * self
            .density
            .iter()
            .map(|d| (d - 1.0).abs() / (1 << self.n) as f64)
            .sum::<f64>()
    }

    /// Expectation of a function given by its value table.
    pub fn expect(&self, f: &[f64]) -> f64 {
        assert_eq!(f.len(), self.density.len());
        f.iter().zip(&self.density).map(|(v, d)| v * d).sum::<f64>() / (1 << self.n) as f64
    }
}

/// Sample an even-parity string.
pub fn sample_even_parity(n: usize, rng: &mut LabRng) -> Vec<bool> {
    let mut bits: Vec<bool> = (0..n - 1).map(|_| rng.gen_bool(0.5)).collect();
    let parity = bits.iter().filter(|&&b| b).count() % 2 == 1;
    bits.push(parity);
    bits
}

/// A T-query algorithm over bit-string XOR oracles: index register of
/// dimension `n`, one target qubit, Haar-random interleaving unitaries.
pub struct BitAlgorithm {
    pub n: usize,
    pub unitaries: Vec<DMatrix<Complex64>>,
}

impl BitAlgorithm {
    pub fn random(n: usize, queries: usize, rng: &mut LabRng) -> Self {
        let dim = 2 * n;
        Self {
            n,
            unitaries: (0..=queries)
                .map(|_| crate::qsim::state::random_unitary(dim, rng))
                .collect(),
        }
    }

    pub fn queries(&self) -> usize {
        self.unitaries.len() - 1
    }

    /// Exact acceptance probability on one oracle string (accept = target
    /// qubit measures 1).
    pub fn accept_prob(&self, bits: usize) -> f64 {
        let mut st = StateVector::basis(&[self.n, 2], &[0, 0]);
        for (i, u) in self.unitaries.iter().enumerate() {
            st.apply_unitary(&[0, 1], u);
            if i < self.unitaries.len() - 1 {
                st.apply_reversible(|v| {
                    if bits >> v[0] & 1 == 1 {
                        v[1] ^= 1;
                    }
                });
            }
        }
        st.prob_where(|v| v[1] == 1)
    }

    /// Value table of the acceptance function over all oracle strings.
    pub fn acceptance_table(&self) -> Vec<f64> {
        (0..1usize << self.n).map(|x| self.accept_prob(x)).collect()
    }
}

/// Bias bound for degree-2T acceptance functions against a delta-defective
/// source, with the frozen constants c = 3 and c' = 2:
/// `sqrt(delta) * 2^{3T} / eps + 2 * (delta * n)^{T/2} * eps`.
pub fn bias_bound(delta: f64, n: usize, queries: usize, eps: f64) -> f64 {
    let t = queries as f64;
    delta.sqrt() * (2.0f64).powf(3.0 * t) / eps
        + 2.0 * (delta * n as f64).powf(t / 2.0) * eps
}
