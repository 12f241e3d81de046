//! Market graphs: goods as vertices, tradable pairs as undirected edges.
//!
//! Vertices are numbered `1..=n` in every public signature. Storage is 0-based.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Largest vertex count accepted by the brute-force cycle enumeration.
pub const DEFAULT_ORACLE_LIMIT: usize = 8;

/// An undirected graph of goods. Reflexive loops are allowed and stored,
/// but take no part in spanning trees or fundamental cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarketGraph {
    n: usize,
    /// Normalized `(i, j)` with `i <= j`, sorted.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<bool>,
    /// Ascending non-loop neighbors per vertex.
    neighbors: Vec<Vec<usize>>,
}

impl MarketGraph {
    /// Builds a graph on `n` goods, merging repeated pairs.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::build(n, edges, false)
    }

    /// Like [`MarketGraph::new`] but reports a repeated pair as [`Error::DuplicateEdge`].
    pub fn new_strict(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::build(n, edges, true)
    }

    fn build(n: usize, edges: &[(usize, usize)], strict: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adjacency = vec![false; n * n];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(Error::IndexOutOfRange { index: v, n });
                }
            }
            let (i, j) = if a <= b { (a, b) } else { (b, a) };
            if adjacency[(i - 1) * n + (j - 1)] {
                if strict {
                    return Err(Error::DuplicateEdge(i, j));
                }
                continue;
            }
            adjacency[(i - 1) * n + (j - 1)] = true;
            adjacency[(j - 1) * n + (i - 1)] = true;
            normalized.push((i, j));
        }
        normalized.sort_unstable();
        let mut neighbors = vec![Vec::new(); n];
        for &(i, j) in &normalized {
            if i != j {
                neighbors[i - 1].push(j);
                neighbors[j - 1].push(i);
            }
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            edges: normalized,
            adjacency,
            neighbors,
        })
    }

    /// The complete graph on `n` goods, without loops.
    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                edges.push((i, j));
            }
        }
        Self::new(n, &edges)
    }

    /// The path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::new(n, &edges)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// All edges, loops included, as sorted `(i, j)` with `i <= j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edges excluding reflexive loops.
    pub fn proper_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied().filter(|&(i, j)| i != j)
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .filter(|&&(i, j)| i == j)
            .map(|&(i, _)| i)
    }

    /// Edge count, loops included.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edge count, loops excluded.
    pub fn proper_size(&self) -> usize {
        self.proper_edges().count()
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=self.n).contains(&i)
    }

    /// Whether `{i, j}` is an edge. Out-of-range indices are never edges.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.contains(i) && self.contains(j) && self.adjacency[(i - 1) * self.n + (j - 1)]
    }

    /// Ascending neighbors of `v`, loops excluded.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v - 1].len()
    }

    /// True iff every vertex is reachable from vertex 1.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![1usize];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_complete(&self) -> bool {
        self.proper_size() == self.n * (self.n - 1) / 2
    }

    /// True iff `cycle` is closed, has distinct interior vertices and walks along edges.
    /// Loops `(i, i)` count as cycles when the loop is present.
    pub fn is_simple_cycle(&self, cycle: &[usize]) -> bool {
        if cycle.len() < 2 || cycle.first() != cycle.last() {
            return false;
        }
        let body = &cycle[..cycle.len() - 1];
        let mut seen = vec![false; self.n];
        for &v in body {
            if !self.contains(v) || seen[v - 1] {
                return false;
            }
            seen[v - 1] = true;
        }
        cycle.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}

/// A spanning tree recorded by parent pointers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    root: usize,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    /// `(parent, child)` in discovery order.
    edges: Vec<(usize, usize)>,
}

impl SpanningTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v - 1]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v - 1]
    }

    /// Tree edges as `(parent, child)`, in the order the traversal discovered them.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn contains_edge(&self, i: usize, j: usize) -> bool {
        self.parent(j) == Some(i) || self.parent(i) == Some(j)
    }

    /// The unique tree path from `from` to `to`, endpoints included.
    pub fn path(&self, from: usize, to: usize) -> Vec<usize> {
        let (mut a, mut b) = (from, to);
        let mut head = vec![a];
        let mut tail = vec![b];
        while a != b {
            if self.depth(a) >= self.depth(b) {
                a = self.parent(a).expect("non-root vertex has a parent");
                head.push(a);
            } else {
                b = self.parent(b).expect("non-root vertex has a parent");
                tail.push(b);
            }
        }
        // `a == b` is now the meeting vertex, present at the end of both halves.
        tail.pop();
        head.extend(tail.into_iter().rev());
        head
    }
}

/// Breadth-first spanning tree from vertex 1, visiting neighbors in ascending order.
pub fn spanning_tree(g: &MarketGraph) -> Result<SpanningTree> {
    bfs_tree(g, 1)
}

/// Breadth-first spanning tree from `root`, visiting neighbors in ascending order.
pub fn bfs_tree(g: &MarketGraph, root: usize) -> Result<SpanningTree> {
    if !g.contains(root) {
        return Err(Error::IndexOutOfRange {
            index: root,
            n: g.order(),
        });
    }
    let n = g.order();
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    let mut edges = Vec::with_capacity(n - 1);
    let mut queue = VecDeque::from([root]);
    seen[root - 1] = true;
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if !seen[w - 1] {
                seen[w - 1] = true;
                parent[w - 1] = Some(v);
                depth[w - 1] = depth[v - 1] + 1;
                edges.push((v, w));
                queue.push_back(w);
            }
        }
    }
    if edges.len() != n - 1 {
        return Err(Error::NotConnected);
    }
    Ok(SpanningTree {
        root,
        parent,
        depth,
        edges,
    })
}

/// A non-tree edge together with the cycle it closes through the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalCycle {
    /// `(k, m)` with `k < m`.
    pub chord: (usize, usize),
    /// `(k, m, ..., k)`: the chord followed by the tree path back from `m`.
    pub cycle: Vec<usize>,
}

/// One cycle per chord of `tree`, chords in ascending order. Loops are skipped.
pub fn fundamental_cycles(g: &MarketGraph, tree: &SpanningTree) -> Result<Vec<FundamentalCycle>> {
    if tree.order() != g.order() {
        return Err(Error::TreeMismatch(format!(
            "tree spans {} vertices, graph has {}",
            tree.order(),
            g.order()
        )));
    }
    if let Some(&(p, c)) = tree.edges().iter().find(|&&(p, c)| !g.has_edge(p, c)) {
        return Err(Error::TreeMismatch(format!("tree edge ({p}, {c}) not in graph")));
    }
    Ok(g.proper_edges()
        .filter(|&(k, m)| !tree.contains_edge(k, m))
        .map(|(k, m)| {
            let mut cycle = vec![k];
            cycle.extend(tree.path(m, k));
            FundamentalCycle {
                chord: (k, m),
                cycle,
            }
        })
        .collect())
}

/// Every simple cycle with at most `max_len` edges, each reported once.
///
/// Cycles start at their lowest vertex and are oriented so the second vertex
/// is lower than the last interior one. Loops appear as `(i, i)`. Two-step
/// walks `(i, j, i)` are not cycles and are not listed.
pub fn enumerate_simple_cycles(g: &MarketGraph, max_len: usize) -> Result<Vec<Vec<usize>>> {
    enumerate_simple_cycles_with_limit(g, max_len, DEFAULT_ORACLE_LIMIT)
}

pub fn enumerate_simple_cycles_with_limit(
    g: &MarketGraph,
    max_len: usize,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    let mut out = Vec::new();
    if max_len >= 1 {
        out.extend(g.loops().map(|v| vec![v, v]));
    }
    let mut on_path = vec![false; n];
    for start in 1..=n {
        let mut path = vec![start];
        on_path[start - 1] = true;
        extend_cycles(g, start, max_len, &mut path, &mut on_path, &mut out);
        on_path[start - 1] = false;
    }
    Ok(out)
}

fn extend_cycles(
    g: &MarketGraph,
    start: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if w == start && path.len() >= 3 && path[1] < last {
            let mut cycle = path.clone();
            cycle.push(start);
            out.push(cycle);
        } else if w > start && !on_path[w - 1] && path.len() < max_len {
            on_path[w - 1] = true;
            path.push(w);
            extend_cycles(g, start, max_len, path, on_path, out);
            path.pop();
            on_path[w - 1] = false;
        }
    }
}
