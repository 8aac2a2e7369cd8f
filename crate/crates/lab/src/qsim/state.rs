//! Dense state vectors over named-size registers.
//!
//! A state lives in the tensor product of registers with arbitrary
//! dimensions; register 0 varies slowest in the flat index.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

#[derive(Clone, Debug)]
pub struct StateVector {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(dims: &[usize], values: &[usize]) -> Self {
        assert_eq!(dims.len(), values.len());
        let dim: usize = dims.iter().product();
        let mut amps = vec![Complex64::ZERO; dim];
        amps[flat_index(dims, values)] = Complex64::ONE;
        Self {
            dims: dims.to_vec(),
            amps,
        }
    }

    pub fn from_amplitudes(dims: &[usize], amps: Vec<Complex64>) -> Self {
        assert_eq!(dims.iter().product::<usize>(), amps.len());
        Self {
            dims: dims.to_vec(),
            amps,
        }
    }

    /// Tensor product of per-register amplitude lists.
    pub fn product(regs: &[Vec<Complex64>]) -> Self {
        let dims: Vec<usize> = regs.iter().map(|r| r.len()).collect();
        let mut amps = vec![Complex64::ONE];
        for reg in regs {
            let mut next = Vec::with_capacity(amps.len() * reg.len());
            for a in &amps {
                for b in reg {
                    next.push(a * b);
                }
            }
            amps = next;
        }
        Self { dims, amps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dims, other.dims);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dims, other.dims);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Probability mass on basis states satisfying a predicate over register
    /// values.
    pub fn prob_where<F: Fn(&[usize]) -> bool>(&self, pred: F) -> f64 {
        let mut vals = vec![0; self.dims.len()];
        self.amps
            .iter()
            .enumerate()
            .map(|(i, a)| {
                unflat_index(&self.dims, i, &mut vals);
                if pred(&vals) {
                    a.norm_sqr()
                } else {
                    0.0
                }
            })
            .sum()
    }

    /// Apply a classical reversible map over register values in place:
    /// `|v> -> |f(v)>`. The map must be a bijection on the joint value space.
    pub fn apply_reversible<F: Fn(&mut [usize])>(&mut self, f: F) {
        let mut new = vec![Complex64::ZERO; self.amps.len()];
        let mut vals = vec![0; self.dims.len()];
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            unflat_index(&self.dims, i, &mut vals);
            f(&mut vals);
            let j = flat_index(&self.dims, &vals);
            assert!(new[j] == Complex64::ZERO, "map is not a bijection");
            new[j] = *a;
        }
        self.amps = new;
    }

    /// Apply a dense unitary acting on a subset of registers (in the order
    /// given, which fixes the row/column convention of the matrix).
    pub fn apply_unitary(&mut self, regs: &[usize], u: &DMatrix<Complex64>) {
        let k: usize = regs.iter().map(|&r| self.dims[r]).product();
        assert_eq!(u.nrows(), k);
        assert_eq!(u.ncols(), k);
        let strides = strides(&self.dims);
        let sub_strides: Vec<usize> = regs.iter().map(|&r| strides[r]).collect();
        let sub_dims: Vec<usize> = regs.iter().map(|&r| self.dims[r]).collect();

        // Offsets of the k basis states of the target registers.
        let mut offsets = Vec::with_capacity(k);
        let mut vals = vec![0; regs.len()];
        for idx in 0..k {
            unflat_index(&sub_dims, idx, &mut vals);
            offsets.push(vals.iter().zip(&sub_strides).map(|(v, s)| v * s).sum::<usize>());
        }

        // Enumerate base indices where all target registers are zero.
        let total = self.amps.len();
        let mut in_vec = vec![Complex64::ZERO; k];
        let mut base_vals = vec![0; self.dims.len()];
        for i in 0..total {
            unflat_index(&self.dims, i, &mut base_vals);
            if regs.iter().any(|&r| base_vals[r] != 0) {
                continue;
            }
            for (slot, &off) in offsets.iter().enumerate() {
                in_vec[slot] = self.amps[i + off];
            }
            for (row, &off) in offsets.iter().enumerate() {
                let mut acc = Complex64::ZERO;
                for col in 0..k {
                    acc += u[(row, col)] * in_vec[col];
                }
                self.amps[i + off] = acc;
            }
        }
    }

    /// Full Hadamard (Fourier over Z_2^k) transform on one register whose
    /// dimension must be a power of two.
    pub fn apply_hadamard(&mut self, reg: usize) {
        let d = self.dims[reg];
        assert!(d.is_power_of_two());
        let strides = strides(&self.dims);
        let stride = strides[reg];
        let scale = 1.0 / (2.0f64).sqrt();
        let total = self.amps.len();
        let mut bit = 1;
        while bit < d {
            let mut base_vals = vec![0; self.dims.len()];
            for i in 0..total {
                unflat_index(&self.dims, i, &mut base_vals);
                let v = base_vals[reg];
                if v & bit != 0 {
                    continue;
                }
                // i has reg-value v with the current bit clear; pair with +bit.
                let a = self.amps[i];
                let b = self.amps[i + bit * stride];
                self.amps[i] = (a + b) * scale;
                self.amps[i + bit * stride] = (a - b) * scale;
            }
            bit <<= 1;
        }
    }
}

pub fn flat_index(dims: &[usize], values: &[usize]) -> usize {
    let mut idx = 0;
    for (d, v) in dims.iter().zip(values) {
        debug_assert!(v < d);
        idx = idx * d + v;
    }
    idx
}

pub fn unflat_index(dims: &[usize], mut idx: usize, out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Haar-ish random unitary via QR of a complex Ginibre matrix with the phase
/// convention fixed on the diagonal of R.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    use rand::distributions::Distribution;
    let normal = rand::distributions::Uniform::new(0.0f64, 1.0);
    let mut g = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            // Box-Muller from two uniforms.
            let (u1, u2) = (normal.sample(rng).max(1e-300), normal.sample(rng));
            let r = (-2.0 * u1.ln()).sqrt();
            let theta = 2.0 * std::f64::consts::PI * u2;
            g[(i, j)] = Complex64::new(r * theta.cos(), r * theta.sin());
        }
    }
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut u = q;
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() == 0.0 { Complex64::ONE } else { d / d.norm() };
        for i in 0..dim {
            u[(i, j)] *= phase.conj();
        }
    }
    u
}
