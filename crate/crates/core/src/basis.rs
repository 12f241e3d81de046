//! Bases of arbitrage-free ensembles, completion from basis values, unit-response
//! matrices, and the price-potential form `E(i, j) = p(j) - p(i)`.
//!
//! A set of `n - 1` entry coordinates determines an arbitrage-free additive
//! matrix uniquely exactly when their undirected edges form a spanning tree:
//! tree edges are free, and every chord is pinned by the cycle it closes.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exchange::{check_no_arbitrage, LogRateMatrix, DEFAULT_TOLERANCE};
use crate::graph::{bfs_tree, spanning_tree, MarketGraph};

/// Ordered entry coordinates `(i_k, j_k)` that minimally determine an ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSpec {
    graph: MarketGraph,
    entries: Vec<(usize, usize)>,
}

impl BasisSpec {
    pub fn new(graph: MarketGraph, entries: Vec<(usize, usize)>) -> Result<Self> {
        if !is_basis(&graph, &entries)? {
            return Err(Error::NotABasis(format!(
                "{} entries on {} goods do not span a tree",
                entries.len(),
                graph.order()
            )));
        }
        Ok(Self { graph, entries })
    }

    pub fn graph(&self) -> &MarketGraph {
        &self.graph
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    /// Number of entries, always `n - 1`.
    pub fn dimension(&self) -> usize {
        self.entries.len()
    }
}

/// True iff the entries are `n - 1` coordinates whose undirected edges form a
/// spanning tree of `g`. Every entry must be an edge of `g`.
pub fn is_basis(g: &MarketGraph, entries: &[(usize, usize)]) -> Result<bool> {
    if let Some(&(i, j)) = entries.iter().find(|&&(i, j)| !g.has_edge(i, j)) {
        return Err(Error::NotAnEdge(i, j));
    }
    if entries.len() != g.order() - 1 {
        return Ok(false);
    }
    let mut components = DisjointSets::new(g.order());
    Ok(entries
        .iter()
        .all(|&(i, j)| i != j && components.union(i - 1, j - 1)))
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Edges of the breadth-first spanning tree, as `(parent, child)` ordered by child.
pub fn canonical_basis(g: &MarketGraph) -> Result<BasisSpec> {
    let tree = spanning_tree(g)?;
    let mut entries = tree.edges().to_vec();
    entries.sort_by_key(|&(_, child)| child);
    Ok(BasisSpec {
        graph: g.clone(),
        entries,
    })
}

/// The star `(k, 1), ..., (k, n)` without `(k, k)`, valid on complete graphs.
pub fn row_basis(g: &MarketGraph, k: usize) -> Result<BasisSpec> {
    if !g.contains(k) {
        return Err(Error::IndexOutOfRange {
            index: k,
            n: g.order(),
        });
    }
    if !g.is_complete() {
        return Err(Error::NotComplete);
    }
    let entries = (1..=g.order()).filter(|&j| j != k).map(|j| (k, j)).collect();
    Ok(BasisSpec {
        graph: g.clone(),
        entries,
    })
}

/// Log-domain values for the coordinates of a basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisAssignment {
    spec: BasisSpec,
    values: Vec<f64>,
}

impl BasisAssignment {
    pub fn new(spec: BasisSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.dimension() {
            return Err(Error::LengthMismatch {
                expected: spec.dimension(),
                actual: values.len(),
            });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            let (i, j) = spec.entries[k];
            return Err(Error::InvalidEntry {
                i,
                j,
                reason: format!("basis value {} is not finite", values[k]),
            });
        }
        Ok(Self { spec, values })
    }

    pub fn spec(&self) -> &BasisSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// The unique arbitrage-free matrix taking the assigned values at the basis coordinates.
///
/// Potentials are propagated over the basis tree from vertex 1, every other edge
/// is filled with `p(j) - p(i)`, and the basis entries and their partners are
/// written verbatim so they read back bit-exact.
pub fn complete(a: &BasisAssignment) -> LogRateMatrix {
    let g = a.spec.graph();
    let n = g.order();
    let mut tree_adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (&(i, j), &v) in a.spec.entries.iter().zip(&a.values) {
        // p(j) - p(i) = v
        tree_adj[i - 1].push((j, v));
        tree_adj[j - 1].push((i, -v));
    }
    let mut potential = vec![0.0; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([1usize]);
    while let Some(v) = queue.pop_front() {
        for &(w, step) in &tree_adj[v - 1] {
            if !seen[w - 1] {
                seen[w - 1] = true;
                potential[w - 1] = potential[v - 1] + step;
                queue.push_back(w);
            }
        }
    }
    let mut entries = vec![0.0; n * n];
    for (i, j) in g.proper_edges() {
        entries[(i - 1) * n + (j - 1)] = potential[j - 1] - potential[i - 1];
        entries[(j - 1) * n + (i - 1)] = potential[i - 1] - potential[j - 1];
    }
    for (&(i, j), &v) in a.spec.entries.iter().zip(&a.values) {
        entries[(i - 1) * n + (j - 1)] = v;
        entries[(j - 1) * n + (i - 1)] = -v;
    }
    LogRateMatrix::new(g.clone(), entries).expect("completion stays on the graph")
}

/// Unit-response matrices: `matrices[k]` completes the assignment with 1 at
/// coordinate `k` and 0 at the other basis coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonBasis {
    spec: BasisSpec,
    matrices: Vec<LogRateMatrix>,
}

impl EpsilonBasis {
    pub fn spec(&self) -> &BasisSpec {
        &self.spec
    }

    pub fn matrices(&self) -> &[LogRateMatrix] {
        &self.matrices
    }

    /// `sum_k coefficients[k] * matrices[k]`.
    pub fn combine(&self, coefficients: &[f64]) -> Result<LogRateMatrix> {
        if coefficients.len() != self.matrices.len() {
            return Err(Error::LengthMismatch {
                expected: self.matrices.len(),
                actual: coefficients.len(),
            });
        }
        let mut out = LogRateMatrix::zeros(self.spec.graph.clone());
        for (eps, &c) in self.matrices.iter().zip(coefficients) {
            out = out.plus_scaled(c, eps)?;
        }
        Ok(out)
    }
}

pub fn epsilon_matrices(spec: &BasisSpec) -> EpsilonBasis {
    let t = spec.dimension();
    let matrices = (0..t)
        .map(|k| {
            let mut unit = vec![0.0; t];
            unit[k] = 1.0;
            complete(&BasisAssignment {
                spec: spec.clone(),
                values: unit,
            })
        })
        .collect();
    EpsilonBasis {
        spec: spec.clone(),
        matrices,
    }
}

/// Coefficients of `e` in the unit-response basis of `spec`: the basis entries of `e`.
pub fn decompose(e: &LogRateMatrix, spec: &BasisSpec) -> Result<Vec<f64>> {
    if e.graph() != spec.graph() {
        return Err(Error::GraphMismatch);
    }
    require_no_arbitrage(e)?;
    Ok(spec.entries.iter().map(|&(i, j)| e.get(i, j)).collect())
}

fn require_no_arbitrage(e: &LogRateMatrix) -> Result<()> {
    match check_no_arbitrage(e, DEFAULT_TOLERANCE)?.witness {
        None => Ok(()),
        Some(w) => Err(Error::NotNoArbitrage(w.log_gain.abs())),
    }
}

/// Dimension of the space of arbitrage-free additive matrices on `g`: `n - 1`.
pub fn dimension(g: &MarketGraph) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(g.order() - 1)
}

/// Potentials relative to a reference good, which is priced at exactly 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceVector {
    reference: usize,
    prices: Vec<f64>,
}

impl PriceVector {
    pub fn new(reference: usize, prices: Vec<f64>) -> Result<Self> {
        if reference == 0 || reference > prices.len() {
            return Err(Error::IndexOutOfRange {
                index: reference,
                n: prices.len(),
            });
        }
        if prices[reference - 1] != 0.0 {
            return Err(Error::InvalidEntry {
                i: reference,
                j: reference,
                reason: "reference good must be priced at 0".into(),
            });
        }
        if let Some(k) = prices.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidEntry {
                i: k + 1,
                j: k + 1,
                reason: "price is not finite".into(),
            });
        }
        Ok(Self { reference, prices })
    }

    pub fn reference(&self) -> usize {
        self.reference
    }

    /// Log-domain prices, indexed from good 1.
    pub fn prices(&self) -> &[f64] {
        &self.prices
    }

    pub fn get(&self, good: usize) -> f64 {
        self.prices[good - 1]
    }
}

/// Reads potentials off an arbitrage-free matrix by walking the breadth-first
/// tree from `reference`: `p(child) = p(parent) + E(parent, child)`.
pub fn price_vector(e: &LogRateMatrix, reference: usize) -> Result<PriceVector> {
    require_no_arbitrage(e)?;
    let tree = bfs_tree(e.graph(), reference)?;
    let mut prices = vec![0.0; e.order()];
    for &(parent, child) in tree.edges() {
        prices[child - 1] = prices[parent - 1] + e.get(parent, child);
    }
    PriceVector::new(reference, prices)
}

/// `E(i, j) = p(j) - p(i)` on every proper edge, 0 on loops and absent pairs.
pub fn matrix_from_prices(g: &MarketGraph, p: &PriceVector) -> Result<LogRateMatrix> {
    if p.prices.len() != g.order() {
        return Err(Error::LengthMismatch {
            expected: g.order(),
            actual: p.prices.len(),
        });
    }
    LogRateMatrix::from_fn(g.clone(), |i, j| {
        if i == j {
            0.0
        } else {
            p.get(j) - p.get(i)
        }
    })
}
