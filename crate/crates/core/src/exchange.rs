//! Exchange matrices over a market graph and the no-arbitrage verdict.
//!
//! Entry `(i, j)` of a [`RateMatrix`] is the price of good `i` in units of good
//! `j`: one unit of `i` trades for `rate(i, j)` units of `j`. The additive
//! [`LogRateMatrix`] holds the natural logarithms. Pairs that are not edges of
//! the graph hold exactly `1` (multiplicative) or `0` (additive) and never take
//! part in a cycle.

use crate::error::{Error, Result};
use crate::graph::{
    enumerate_simple_cycles_with_limit, fundamental_cycles, spanning_tree, MarketGraph,
    DEFAULT_ORACLE_LIMIT,
};

/// Tolerance on log-domain cycle sums.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Multiplicative exchange matrix: positive finite rates, `1` off the graph.
#[derive(Debug, Clone, PartialEq)]
pub struct RateMatrix {
    graph: MarketGraph,
    entries: Vec<f64>,
}

impl RateMatrix {
    /// Wraps a row-major `n x n` array.
    pub fn new(graph: MarketGraph, entries: Vec<f64>) -> Result<Self> {
        let n = graph.order();
        check_len(n, &entries)?;
        for i in 1..=n {
            for j in 1..=n {
                let x = entries[(i - 1) * n + (j - 1)];
                if !(x.is_finite() && x > 0.0) {
                    return Err(invalid(i, j, format!("rate {x} is not positive and finite")));
                }
                if !graph.has_edge(i, j) && x != 1.0 {
                    return Err(invalid(i, j, format!("absent pair must hold 1, got {x}")));
                }
            }
        }
        Ok(Self { graph, entries })
    }

    /// Builds a matrix from `rate(i, j)` on edges; absent pairs are set to 1.
    pub fn from_fn(graph: MarketGraph, mut rate: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let entries = fill(&graph, 1.0, &mut rate);
        Self::new(graph, entries)
    }

    pub fn ones(graph: MarketGraph) -> Self {
        let n = graph.order();
        Self {
            graph,
            entries: vec![1.0; n * n],
        }
    }

    pub fn graph(&self) -> &MarketGraph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i - 1) * self.order() + (j - 1)]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

/// Additive exchange matrix: finite reals, exactly `0` off the graph.
#[derive(Debug, Clone, PartialEq)]
pub struct LogRateMatrix {
    graph: MarketGraph,
    entries: Vec<f64>,
}

impl LogRateMatrix {
    /// Wraps a row-major `n x n` array.
    pub fn new(graph: MarketGraph, entries: Vec<f64>) -> Result<Self> {
        let n = graph.order();
        check_len(n, &entries)?;
        for i in 1..=n {
            for j in 1..=n {
                let x = entries[(i - 1) * n + (j - 1)];
                if !x.is_finite() {
                    return Err(invalid(i, j, format!("log rate {x} is not finite")));
                }
                if !graph.has_edge(i, j) && x != 0.0 {
                    return Err(invalid(i, j, format!("absent pair must hold 0, got {x}")));
                }
            }
        }
        Ok(Self { graph, entries })
    }

    /// Builds a matrix from `value(i, j)` on edges; absent pairs are set to 0.
    pub fn from_fn(graph: MarketGraph, mut value: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let entries = fill(&graph, 0.0, &mut value);
        Self::new(graph, entries)
    }

    pub fn zeros(graph: MarketGraph) -> Self {
        let n = graph.order();
        Self {
            graph,
            entries: vec![0.0; n * n],
        }
    }

    pub fn graph(&self) -> &MarketGraph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i - 1) * self.order() + (j - 1)]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Returns a copy with `(i, j)` replaced. `{i, j}` must be an edge.
    pub fn with_entry(&self, i: usize, j: usize, value: f64) -> Result<Self> {
        if !self.graph.has_edge(i, j) {
            return Err(Error::NotAnEdge(i, j));
        }
        if !value.is_finite() {
            return Err(invalid(i, j, format!("log rate {value} is not finite")));
        }
        let mut out = self.clone();
        let n = self.order();
        out.entries[(i - 1) * n + (j - 1)] = value;
        Ok(out)
    }

    /// `self + c * other`, entrywise.
    pub fn plus_scaled(&self, c: f64, other: &LogRateMatrix) -> Result<Self> {
        if self.graph != other.graph {
            return Err(Error::GraphMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + c * b)
            .collect();
        Self::new(self.graph.clone(), entries)
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(
            self.graph.clone(),
            self.entries.iter().map(|x| c * x).collect(),
        )
    }

    /// Largest entrywise absolute difference. Panics if the orders differ.
    pub fn max_abs_diff(&self, other: &LogRateMatrix) -> f64 {
        assert_eq!(self.order(), other.order());
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn check_len(n: usize, entries: &[f64]) -> Result<()> {
    if entries.len() != n * n {
        return Err(Error::LengthMismatch {
            expected: n * n,
            actual: entries.len(),
        });
    }
    Ok(())
}

fn invalid(i: usize, j: usize, reason: String) -> Error {
    Error::InvalidEntry { i, j, reason }
}

fn fill(g: &MarketGraph, absent: f64, f: &mut impl FnMut(usize, usize) -> f64) -> Vec<f64> {
    let n = g.order();
    let mut entries = vec![absent; n * n];
    for i in 1..=n {
        for j in 1..=n {
            if g.has_edge(i, j) {
                entries[(i - 1) * n + (j - 1)] = f(i, j);
            }
        }
    }
    entries
}

/// Entrywise natural logarithm.
pub fn log_of(r: &RateMatrix) -> LogRateMatrix {
    let n = r.order();
    let mut entries = vec![0.0; n * n];
    for (i, j) in r.graph.edges().iter().copied() {
        entries[(i - 1) * n + (j - 1)] = r.get(i, j).ln();
        entries[(j - 1) * n + (i - 1)] = r.get(j, i).ln();
    }
    LogRateMatrix {
        graph: r.graph.clone(),
        entries,
    }
}

/// Entrywise exponential. Fails if an entry overflows to infinity or underflows to zero.
pub fn exp_of(e: &LogRateMatrix) -> Result<RateMatrix> {
    let n = e.order();
    let mut entries = vec![1.0; n * n];
    for i in 1..=n {
        for j in 1..=n {
            if e.graph.has_edge(i, j) {
                let value = e.get(i, j);
                let x = value.exp();
                if !(x.is_finite() && x > 0.0) {
                    return Err(Error::Overflow { i, j, value });
                }
                entries[(i - 1) * n + (j - 1)] = x;
            }
        }
    }
    Ok(RateMatrix {
        graph: e.graph.clone(),
        entries,
    })
}

fn check_walk(g: &MarketGraph, walk: &[usize]) -> Result<()> {
    if walk.len() < 2 || walk.first() != walk.last() {
        return Err(Error::NotClosed);
    }
    for w in walk.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(Error::NotAWalk(w[0], w[1]));
        }
    }
    Ok(())
}

/// Sum of `E(a, b)` over the consecutive steps of a closed walk `(v1, ..., vt, v1)`.
/// Zero on every closed walk is the no-arbitrage condition.
pub fn cycle_log_gain(e: &LogRateMatrix, walk: &[usize]) -> Result<f64> {
    check_walk(&e.graph, walk)?;
    Ok(walk.windows(2).map(|w| e.get(w[0], w[1])).sum())
}

/// Product of rates around a closed walk: the units of the starting good held
/// after trading one unit all the way round.
pub fn cycle_gain(r: &RateMatrix, walk: &[usize]) -> Result<f64> {
    check_walk(&r.graph, walk)?;
    Ok(walk.windows(2).map(|w| r.get(w[0], w[1])).product())
}

/// A pair whose two entries do not cancel, or a loop with a nonzero entry (`i == j`).
#[derive(Debug, Clone, PartialEq)]
pub struct AntisymmetryViolation {
    pub i: usize,
    pub j: usize,
    /// `E(i, j) + E(j, i)`, or `E(i, i)` for a loop.
    pub residual: f64,
}

/// Pairs violating `E(i, j) = -E(j, i)` beyond `tol`, in ascending `(i, j)` order.
/// Empty means the matrix is antisymmetric.
pub fn check_antisymmetry(e: &LogRateMatrix, tol: f64) -> Result<Vec<AntisymmetryViolation>> {
    check_tol(tol)?;
    let n = e.order();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            let residual = if i == j {
                e.get(i, i)
            } else {
                e.get(i, j) + e.get(j, i)
            };
            let violated = if e.graph.has_edge(i, j) {
                residual.abs() > tol
            } else {
                e.get(i, j) != 0.0 || e.get(j, i) != 0.0
            };
            if violated {
                out.push(AntisymmetryViolation { i, j, residual });
            }
        }
    }
    Ok(out)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::BadTolerance(tol))
    }
}

/// A closed walk along which trading yields a strict gain or loss.
#[derive(Debug, Clone, PartialEq)]
pub struct ArbitrageWitness {
    /// Starts and ends at its lowest vertex, oriented in the profitable direction.
    pub cycle: Vec<usize>,
    pub log_gain: f64,
    pub multiplicative_gain: f64,
}

/// Outcome of a no-arbitrage check.
#[derive(Debug, Clone, PartialEq)]
pub struct NoArbitrageCheck {
    /// `None` iff every checked condition held.
    pub witness: Option<ArbitrageWitness>,
    /// Number of conditions evaluated: pairs, loops and cycles.
    pub conditions_checked: usize,
    pub max_abs_log_gain: f64,
}

impl NoArbitrageCheck {
    pub fn is_ok(&self) -> bool {
        self.witness.is_none()
    }
}

struct Candidate {
    key: (usize, usize),
    cycle: Vec<usize>,
    log_gain: f64,
}

fn pair_candidates(e: &LogRateMatrix) -> impl Iterator<Item = Candidate> + '_ {
    e.graph.edges().iter().map(move |&(i, j)| Candidate {
        key: (i, j),
        cycle: if i == j { vec![i, i] } else { vec![i, j, i] },
        log_gain: if i == j {
            e.get(i, i)
        } else {
            e.get(i, j) + e.get(j, i)
        },
    })
}

fn summarize(e: &LogRateMatrix, candidates: Vec<Candidate>, tol: f64) -> NoArbitrageCheck {
    let conditions_checked = candidates.len();
    let max_abs_log_gain = candidates
        .iter()
        .map(|c| c.log_gain.abs())
        .fold(0.0, f64::max);
    let mut worst: Option<&Candidate> = None;
    for c in candidates.iter().filter(|c| c.log_gain.abs() > tol) {
        let better = match worst {
            None => true,
            Some(w) => {
                c.log_gain.abs() > w.log_gain.abs()
                    || (c.log_gain.abs() == w.log_gain.abs() && c.key < w.key)
            }
        };
        if better {
            worst = Some(c);
        }
    }
    NoArbitrageCheck {
        witness: worst.map(|c| witness(e, &c.cycle, c.log_gain)),
        conditions_checked,
        max_abs_log_gain,
    }
}

fn witness(e: &LogRateMatrix, cycle: &[usize], log_gain: f64) -> ArbitrageWitness {
    let mut best = (cycle.to_vec(), log_gain);
    let reversed: Vec<usize> = cycle.iter().rev().copied().collect();
    let reversed_gain = cycle_log_gain(e, &reversed).expect("reversal of a walk is a walk");
    if reversed_gain > log_gain {
        best = (reversed, reversed_gain);
    }
    let (cycle, log_gain) = best;
    ArbitrageWitness {
        cycle: rotate_to_min(&cycle),
        log_gain,
        multiplicative_gain: log_gain.exp(),
    }
}

fn rotate_to_min(cycle: &[usize]) -> Vec<usize> {
    let body = &cycle[..cycle.len() - 1];
    let start = (0..body.len()).min_by_key(|&k| body[k]).unwrap_or(0);
    let mut out: Vec<usize> = body[start..].iter().chain(&body[..start]).copied().collect();
    out.push(out[0]);
    out
}

/// Checks antisymmetry on every pair and loop, then the cycle sum of every
/// fundamental cycle of the breadth-first spanning tree. Together these imply
/// the condition on every closed walk.
///
/// On failure the witness is the condition with the largest `|log gain|`;
/// ties go to the lowest edge.
pub fn check_no_arbitrage(e: &LogRateMatrix, tol: f64) -> Result<NoArbitrageCheck> {
    check_tol(tol)?;
    let tree = spanning_tree(&e.graph)?;
    let mut candidates: Vec<Candidate> = pair_candidates(e).collect();
    for fc in fundamental_cycles(&e.graph, &tree)? {
        candidates.push(Candidate {
            key: fc.chord,
            log_gain: cycle_log_gain(e, &fc.cycle)?,
            cycle: fc.cycle,
        });
    }
    candidates.sort_by_key(|c| (c.key, c.cycle.len()));
    Ok(summarize(e, candidates, tol))
}

/// Brute-force counterpart of [`check_no_arbitrage`]: antisymmetry plus every
/// simple cycle of the graph. Limited to [`DEFAULT_ORACLE_LIMIT`] vertices.
pub fn check_no_arbitrage_oracle(e: &LogRateMatrix, tol: f64) -> Result<NoArbitrageCheck> {
    check_no_arbitrage_oracle_with_limit(e, tol, DEFAULT_ORACLE_LIMIT)
}

pub fn check_no_arbitrage_oracle_with_limit(
    e: &LogRateMatrix,
    tol: f64,
    limit: usize,
) -> Result<NoArbitrageCheck> {
    check_tol(tol)?;
    let n = e.order();
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    if !e.graph.is_connected() {
        return Err(Error::NotConnected);
    }
    let mut candidates: Vec<Candidate> = pair_candidates(e)
        .filter(|c| c.key.0 != c.key.1)
        .collect();
    for cycle in enumerate_simple_cycles_with_limit(&e.graph, n, limit)? {
        let key = (cycle[0], cycle[1]);
        candidates.push(Candidate {
            key,
            log_gain: cycle_log_gain(e, &cycle)?,
            cycle,
        });
    }
    Ok(summarize(e, candidates, tol))
}
