//! Seeded random market graphs for tests, examples and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::MarketGraph;

/// Topology families produced by [`generate_graph`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphKind {
    Complete,
    /// Uniform random recursive tree: vertex `v` attaches to a uniformly chosen earlier vertex.
    Tree,
    /// A random recursive tree overlaid with independent `G(n, p)` edges.
    Gnp { p: f64 },
    /// Preferential attachment: a seed clique on `m` vertices, then every new vertex
    /// links to `m` distinct existing vertices chosen with probability proportional to degree.
    PreferentialAttachment { m: usize },
}

/// Generates a connected graph of the given kind. Output depends only on `(kind, n, seed)`.
pub fn generate_graph(kind: GraphKind, n: usize, seed: u64) -> Result<MarketGraph> {
    if n == 0 {
        return Err(Error::BadParams("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = match kind {
        GraphKind::Complete => return MarketGraph::complete(n),
        GraphKind::Tree => random_tree(n, &mut rng),
        GraphKind::Gnp { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::BadParams(format!("p = {p} outside [0, 1]")));
            }
            let mut edges = random_tree(n, &mut rng);
            for i in 1..=n {
                for j in i + 1..=n {
                    if rng.gen_bool(p) {
                        edges.push((i, j));
                    }
                }
            }
            edges
        }
        GraphKind::PreferentialAttachment { m } => preferential_attachment(n, m, &mut rng)?,
    };
    MarketGraph::new(n, &edges)
}

fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    (2..=n).map(|v| (rng.gen_range(1..v), v)).collect()
}

/// Edge count is `C(m, 2) + m * (n - m)`.
fn preferential_attachment(
    n: usize,
    m: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(usize, usize)>> {
    if m == 0 {
        return Err(Error::BadParams("m must be at least 1".into()));
    }
    if m > n {
        return Err(Error::BadParams(format!("m = {m} exceeds n = {n}")));
    }
    let mut edges = Vec::new();
    // Each vertex appears here once per incident edge end.
    let mut ends: Vec<usize> = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            edges.push((i, j));
            ends.extend([i, j]);
        }
    }
    for v in m + 1..=n {
        let mut targets: Vec<usize> = Vec::with_capacity(m);
        while targets.len() < m {
            let t = if ends.is_empty() {
                // only reachable for m = 1 on the first new vertex
                rng.gen_range(1..v)
            } else {
                *ends.choose(rng).expect("non-empty")
            };
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for t in targets {
            edges.push((t, v));
            ends.extend([t, v]);
        }
    }
    Ok(edges)
}
