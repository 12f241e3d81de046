//! Propagation of basis-rate perturbations to the full ensemble.
//!
//! Perturbations are always declared against a [`BasisSpec`]; raw edits of
//! individual entries are not accepted here.

use crate::basis::{epsilon_matrices, BasisSpec, EpsilonBasis};
use crate::error::{Error, Result};
use crate::exchange::{check_no_arbitrage, exp_of, LogRateMatrix, RateMatrix, DEFAULT_TOLERANCE};

/// Log-domain changes `delta e*_k` to the basis entries.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationVector {
    spec: BasisSpec,
    deltas: Vec<f64>,
}

impl PerturbationVector {
    pub fn new(spec: BasisSpec, deltas: Vec<f64>) -> Result<Self> {
        if deltas.len() != spec.dimension() {
            return Err(Error::LengthMismatch {
                expected: spec.dimension(),
                actual: deltas.len(),
            });
        }
        if let Some(k) = deltas.iter().position(|d| !d.is_finite()) {
            let (i, j) = spec.entries()[k];
            return Err(Error::InvalidEntry {
                i,
                j,
                reason: format!("delta {} is not finite", deltas[k]),
            });
        }
        Ok(Self { spec, deltas })
    }

    pub fn spec(&self) -> &BasisSpec {
        &self.spec
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }
}

/// Linear map from basis deltas to the matrix delta, held as the stacked
/// unit-response matrices. Component `(i, j, k)` is `eps_k(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationOperator {
    response: EpsilonBasis,
}

impl PerturbationOperator {
    pub fn spec(&self) -> &BasisSpec {
        self.response.spec()
    }

    pub fn response(&self) -> &EpsilonBasis {
        &self.response
    }

    /// `sum_k deltas[k] * eps_k`.
    pub fn apply(&self, deltas: &[f64]) -> Result<LogRateMatrix> {
        self.response.combine(deltas)
    }

    /// One component of the `n x n x t` response tensor; goods are 1-based, `k` is 0-based.
    pub fn component(&self, i: usize, j: usize, k: usize) -> f64 {
        self.response.matrices()[k].get(i, j)
    }
}

pub fn build_operator(spec: &BasisSpec) -> PerturbationOperator {
    PerturbationOperator {
        response: epsilon_matrices(spec),
    }
}

/// Matrix delta induced by a basis perturbation. Stays arbitrage-free.
pub fn propagate_log(op: &PerturbationOperator, d: &PerturbationVector) -> Result<LogRateMatrix> {
    if op.spec() != d.spec() {
        return Err(Error::SpecMismatch);
    }
    op.apply(&d.deltas)
}

/// First-order change of the multiplicative matrix, entrywise `rate(i, j) * dE(i, j)`.
/// Row-major `n x n`; pairs that are not edges hold 0.
#[derive(Debug, Clone, PartialEq)]
pub struct RateDelta {
    n: usize,
    entries: Vec<f64>,
}

impl RateDelta {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

pub fn propagate_multiplicative_first_order(
    r: &RateMatrix,
    d_e: &LogRateMatrix,
) -> Result<RateDelta> {
    if r.graph() != d_e.graph() {
        return Err(Error::GraphMismatch);
    }
    let n = r.order();
    let mut entries = vec![0.0; n * n];
    for i in 1..=n {
        for j in 1..=n {
            if r.graph().has_edge(i, j) {
                entries[(i - 1) * n + (j - 1)] = r.get(i, j) * d_e.get(i, j);
            }
        }
    }
    Ok(RateDelta { n, entries })
}

/// `r + delta`, the first-order updated rates. Not guaranteed positive for large deltas.
pub fn first_order_rates(r: &RateMatrix, delta: &RateDelta) -> Vec<f64> {
    r.entries()
        .iter()
        .zip(&delta.entries)
        .map(|(x, d)| x + d)
        .collect()
}

/// Exact update `E + dE` and its rates. Both inputs must be arbitrage-free at
/// the default tolerance.
pub fn apply_exact(e: &LogRateMatrix, d_e: &LogRateMatrix) -> Result<(LogRateMatrix, RateMatrix)> {
    apply_exact_with_tol(e, d_e, DEFAULT_TOLERANCE)
}

pub fn apply_exact_with_tol(
    e: &LogRateMatrix,
    d_e: &LogRateMatrix,
    tol: f64,
) -> Result<(LogRateMatrix, RateMatrix)> {
    if e.graph() != d_e.graph() {
        return Err(Error::GraphMismatch);
    }
    for m in [e, d_e] {
        if let Some(w) = check_no_arbitrage(m, tol)?.witness {
            return Err(Error::NotNoArbitrage(w.log_gain.abs()));
        }
    }
    let updated = e.plus_scaled(1.0, d_e)?;
    let rates = exp_of(&updated)?;
    Ok((updated, rates))
}
