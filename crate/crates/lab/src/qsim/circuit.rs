//! Serializable query algorithms over graph oracles, with per-query weight
//! tracking and the hybrid-argument deviation bound.

use super::state::{self, StateVector};
use crate::oracle::GraphOracle;
use crate::rng::LabRng;
use crate::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A named register with a fixed dimension.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegisterSpec {
    pub name: String,
    pub dim: usize,
}

/// Complex matrix serialized as rows of `[re, im]` pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixSpec(pub Vec<Vec<[f64; 2]>>);

impl MatrixSpec {
    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let rows = self.0.len();
        let cols = self.0.first().map_or(0, |r| r.len());
        DMatrix::from_fn(rows, cols, |i, j| {
            Complex64::new(self.0[i][j][0], self.0[i][j][1])
        })
    }

    pub fn from_matrix(m: &DMatrix<Complex64>) -> Self {
        Self(
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Op {
    /// Dense unitary on the listed registers, first-listed slowest.
    Unitary { targets: Vec<String>, matrix: MatrixSpec },
    /// XOR query: `|r, x, t> -> |r, x, t ^ F(r, x)>`. The target register
    /// dimension must be a power of two covering the oracle range.
    OracleQuery { row: String, query: String, target: String },
}

/// Accept iff the named register's measured value is in `values`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AcceptSpec {
    pub register: String,
    pub values: Vec<usize>,
}

/// A straight-line quantum query algorithm. The initial state is all-zeros.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QueryAlgorithm {
    pub registers: Vec<RegisterSpec>,
    pub ops: Vec<Op>,
    pub accept: AcceptSpec,
}

/// Query mass per `(row, query-value)` pair, one entry per oracle call.
/// Each row sums to at most 1 (exactly 1 for uncontrolled queries).
#[derive(Clone, Debug, Serialize)]
pub struct QueryWeightTrace {
    pub n: usize,
    pub r: usize,
    /// `weights[call][row * n + x]`
    pub weights: Vec<Vec<f64>>,
}

impl QueryWeightTrace {
    /// Total weight the algorithm places on the given oracle positions,
    /// summed over all calls.
    pub fn mass_on(&self, positions: &[(usize, usize)]) -> f64 {
        self.weights
            .iter()
            .map(|w| positions.iter().map(|&(r, x)| w[r * self.n + x]).sum::<f64>())
            .sum()
    }

    /// Hybrid-argument bound on the final-state deviation when the oracle is
    /// changed on `positions`, in the commonly quoted form
    /// `sqrt(T * total mass)`. This form undercounts XOR queries by sqrt(2)
    /// and can be exceeded; see `certified_bound`.
    pub fn deviation_bound(&self, positions: &[(usize, usize)]) -> f64 {
        (self.weights.len() as f64 * self.mass_on(positions)).sqrt()
    }

    /// The provable bound: each query's error vector has norm at most
    /// `2 * sqrt(mass on changed inputs)` by the triangle inequality, so the
    /// telescoped deviation is at most `2 * sqrt(T * total mass)`.
    pub fn certified_bound(&self, positions: &[(usize, usize)]) -> f64 {
        2.0 * (self.weights.len() as f64 * self.mass_on(positions)).sqrt()
    }
}

pub struct RunOutcome {
    pub accept_prob: f64,
    pub final_state: StateVector,
    pub trace: QueryWeightTrace,
}

impl QueryAlgorithm {
    fn reg_index(&self, name: &str) -> Result<usize> {
        self.registers
            .iter()
            .position(|r| r.name == name)
            .ok_or_else(|| Error::Dimension(format!("unknown register {name}")))
    }

    pub fn query_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|o| matches!(o, Op::OracleQuery { .. }))
            .count()
    }

    /// Execute against a concrete oracle, recording query weights.
    pub fn run(&self, oracle: &GraphOracle) -> Result<RunOutcome> {
        let dims: Vec<usize> = self.registers.iter().map(|r| r.dim).collect();
        let mut st = StateVector::basis(&dims, &vec![0; dims.len()]);
        let mut weights = Vec::new();
        for op in &self.ops {
            match op {
                Op::Unitary { targets, matrix } => {
                    let regs: Vec<usize> = targets
                        .iter()
                        .map(|t| self.reg_index(t))
                        .collect::<Result<_>>()?;
                    st.apply_unitary(&regs, &matrix.to_matrix());
                }
                Op::OracleQuery { row, query, target } => {
                    let (ri, xi, ti) =
                        (self.reg_index(row)?, self.reg_index(query)?, self.reg_index(target)?);
                    if dims[ri] < oracle.r() || dims[xi] < oracle.n() {
                        return Err(Error::Dimension("query registers too small".into()));
                    }
                    if !dims[ti].is_power_of_two() || dims[ti] < oracle.n() {
                        return Err(Error::Dimension("target register must be a power of two covering the range".into()));
                    }
                    let mut w = vec![0.0; oracle.r() * oracle.n()];
                    let mut probe = vec![0.0f64; oracle.r() * oracle.n()];
                    for (slot, p) in probe.iter_mut().enumerate() {
                        let (r, x) = (slot / oracle.n(), slot % oracle.n());
                        *p = st.prob_where(|v| v[ri] == r && v[xi] == x);
                    }
                    w.copy_from_slice(&probe);
                    weights.push(w);
                    st.apply_reversible(|v| {
                        if v[ri] < oracle.r() && v[xi] < oracle.n() {
                            v[ti] ^= oracle.eval(v[ri], v[xi]);
                        }
                    });
                }
            }
        }
        let ai = self.reg_index(&self.accept.register)?;
        let accept_prob = st.prob_where(|v| self.accept.values.contains(&v[ai]));
        Ok(RunOutcome {
            accept_prob,
            final_state: st,
            trace: QueryWeightTrace {
                n: oracle.n(),
                r: oracle.r(),
                weights,
            },
        })
    }
}

/// Random T-query algorithm over `[R] x [N]` oracles with a small workspace,
/// interleaving Haar-random unitaries on the full space with queries.
pub fn random_algorithm(n: usize, r: usize, queries: usize, rng: &mut LabRng) -> QueryAlgorithm {
    let t_dim = n.next_power_of_two();
    let registers = vec![
        RegisterSpec { name: "row".into(), dim: r },
        RegisterSpec { name: "query".into(), dim: n },
        RegisterSpec { name: "target".into(), dim: t_dim },
    ];
    let full: Vec<String> = registers.iter().map(|s| s.name.clone()).collect();
    let dim = r * n * t_dim;
    let mut ops = Vec::new();
    for _ in 0..queries {
        ops.push(Op::Unitary {
            targets: full.clone(),
            matrix: MatrixSpec::from_matrix(&state::random_unitary(dim, rng)),
        });
        ops.push(Op::OracleQuery {
            row: "row".into(),
            query: "query".into(),
            target: "target".into(),
        });
    }
    ops.push(Op::Unitary {
        targets: full.clone(),
        matrix: MatrixSpec::from_matrix(&state::random_unitary(dim, rng)),
    });
    QueryAlgorithm {
        registers,
        ops,
        accept: AcceptSpec {
            register: "target".into(),
            values: (0..t_dim / 2).collect(),
        },
    }
}
