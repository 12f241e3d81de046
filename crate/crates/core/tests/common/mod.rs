#![allow(dead_code)]

use arbx::{BasisAssignment, BasisSpec, GraphKind, LogRateMatrix, MarketGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Cycles through tree, gnp, preferential attachment and complete kinds.
pub fn mixed_graph(seed: u64, n: usize) -> MarketGraph {
    let kind = match seed % 4 {
        0 => GraphKind::Tree,
        1 => GraphKind::Gnp { p: 0.4 },
        2 => GraphKind::PreferentialAttachment { m: 2.min(n) },
        _ => GraphKind::Complete,
    };
    arbx::generate_graph(kind, n, seed).unwrap()
}

/// A graph with at least one chord.
pub fn cyclic_graph(seed: u64, n: usize) -> MarketGraph {
    assert!(n >= 3);
    let mut s = seed;
    loop {
        let g = arbx::generate_graph(GraphKind::Gnp { p: 0.5 }, n, s).unwrap();
        if g.proper_size() >= n {
            return g;
        }
        s += 1_000_003;
    }
}

/// A random spanning tree of `g`, randomly oriented and ordered.
pub fn random_basis(g: &MarketGraph, rng: &mut ChaCha8Rng) -> BasisSpec {
    let mut edges: Vec<(usize, usize)> = g.proper_edges().collect();
    edges.shuffle(rng);
    let mut root: Vec<usize> = (0..g.order()).collect();
    fn find(root: &mut [usize], mut x: usize) -> usize {
        while root[x] != x {
            x = root[x];
        }
        x
    }
    let mut entries = Vec::new();
    for (i, j) in edges {
        let (a, b) = (find(&mut root, i - 1), find(&mut root, j - 1));
        if a != b {
            root[a] = b;
            entries.push(if rng.gen_bool(0.5) { (i, j) } else { (j, i) });
        }
    }
    BasisSpec::new(g.clone(), entries).unwrap()
}

pub fn random_values(t: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..t).map(|_| rng.gen_range(-2.0..2.0)).collect()
}

pub fn random_ensemble(g: &MarketGraph, rng: &mut ChaCha8Rng) -> (BasisAssignment, LogRateMatrix) {
    let spec = random_basis(g, rng);
    let values = random_values(spec.dimension(), rng);
    let a = BasisAssignment::new(spec, values).unwrap();
    let e = arbx::complete(&a);
    (a, e)
}

/// Non-basis proper edges of `spec`'s graph.
pub fn chords(spec: &BasisSpec) -> Vec<(usize, usize)> {
    spec.graph()
        .proper_edges()
        .filter(|&(i, j)| !spec.entries().iter().any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i)))
        .collect()
}

/// Shifts `E(i, j)` by `delta` and `E(j, i)` by `-delta`, keeping antisymmetry.
pub fn nudge_pair(e: &LogRateMatrix, i: usize, j: usize, delta: f64) -> LogRateMatrix {
    e.with_entry(i, j, e.get(i, j) + delta)
        .unwrap()
        .with_entry(j, i, e.get(j, i) - delta)
        .unwrap()
}
