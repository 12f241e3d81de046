//! Exact-arithmetic dimension counting, independent of spanning trees.
//!
//! One unknown per undirected non-loop edge (antisymmetry already folded in),
//! one `+-1` row per simple cycle from the brute-force enumeration. The
//! dimension of the solution space is `unknowns - rank`, with the rank found
//! by exact Gaussian elimination.

use crate::error::Result;
use crate::graph::{enumerate_simple_cycles_with_limit, MarketGraph, DEFAULT_ORACLE_LIMIT};

/// Dimension of the arbitrage-free solution space of `g`, by exact rank.
/// Limited to [`DEFAULT_ORACLE_LIMIT`] vertices.
pub fn dimension_by_rank(g: &MarketGraph) -> Result<usize> {
    residual_freedom(g, &[])
}

/// Dimension left after additionally pinning the entries at `fixed`.
///
/// Zero means the pinned entries determine the whole matrix. Loops and
/// pairs that are not edges pin nothing and are ignored.
pub fn residual_freedom(g: &MarketGraph, fixed: &[(usize, usize)]) -> Result<usize> {
    residual_freedom_with_limit(g, fixed, DEFAULT_ORACLE_LIMIT)
}

pub fn residual_freedom_with_limit(
    g: &MarketGraph,
    fixed: &[(usize, usize)],
    limit: usize,
) -> Result<usize> {
    let edges: Vec<(usize, usize)> = g.proper_edges().collect();
    let column = |a: usize, b: usize| -> Option<(usize, i64)> {
        let (i, j, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        edges.binary_search(&(i, j)).ok().map(|c| (c, sign))
    };

    let mut rows: Vec<Vec<i64>> = Vec::new();
    for cycle in enumerate_simple_cycles_with_limit(g, g.order(), limit)? {
        if cycle.len() < 4 {
            continue; // loops carry no unknown
        }
        let mut row = vec![0i64; edges.len()];
        for w in cycle.windows(2) {
            let (c, sign) = column(w[0], w[1]).expect("cycle steps are edges");
            row[c] += sign;
        }
        rows.push(row);
    }
    for &(i, j) in fixed {
        if let Some((c, _)) = column(i, j).filter(|_| i != j) {
            let mut row = vec![0i64; edges.len()];
            row[c] = 1;
            rows.push(row);
        }
    }
    Ok(edges.len() - rank(edges.len(), rows))
}

/// Rank of integer rows by fraction-free elimination.
///
/// Rows stay integral: a pivot row `p` clears column `c` of row `r` via
/// `r * p[c] - p * r[c]`, and every stored row is divided by the gcd of its
/// entries. Overflow panics rather than rounding.
fn rank(width: usize, rows: Vec<Vec<i64>>) -> usize {
    let mut pivots: Vec<(usize, Vec<i128>)> = Vec::new();
    for row in rows {
        if pivots.len() == width {
            break;
        }
        let mut row: Vec<i128> = row.into_iter().map(i128::from).collect();
        for (col, pivot) in &pivots {
            let factor = row[*col];
            if factor == 0 {
                continue;
            }
            let lead = pivot[*col];
            for (x, &p) in row.iter_mut().zip(pivot) {
                *x = x
                    .checked_mul(lead)
                    .and_then(|a| p.checked_mul(factor).and_then(|b| a.checked_sub(b)))
                    .expect("rank elimination overflowed i128");
            }
            normalize(&mut row);
        }
        if let Some(col) = row.iter().position(|&x| x != 0) {
            pivots.push((col, row));
        }
    }
    pivots.len()
}

fn normalize(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |g, &x| gcd(g, x.abs()));
    if g > 1 {
        for x in row.iter_mut() {
            *x /= g;
        }
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn int_rows(rows: &[&[i64]]) -> Vec<Vec<i64>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(3, int_rows(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]])), 2);
        assert_eq!(rank(2, int_rows(&[&[2, 4], &[1, 2]])), 1);
        assert_eq!(rank(2, int_rows(&[&[0, 0]])), 0);
        assert_eq!(rank(3, int_rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, -1]])), 2);
        assert_eq!(rank(3, int_rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])), 3);
    }

    #[test]
    fn complete_graph_dimension() {
        let k4 = MarketGraph::complete(4).unwrap();
        assert_eq!(dimension_by_rank(&k4).unwrap(), 3);
    }

    #[test]
    fn tree_dimension_is_edge_count() {
        let g = MarketGraph::new(6, &[(1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]).unwrap();
        assert_eq!(dimension_by_rank(&g).unwrap(), 5);
    }

    #[test]
    fn disconnected_graph_counts_components() {
        let g = MarketGraph::new(5, &[(1, 2), (2, 3), (1, 3), (4, 5)]).unwrap();
        assert_eq!(dimension_by_rank(&g).unwrap(), 3);
    }

    #[test]
    fn loops_add_nothing() {
        let g = MarketGraph::new(3, &[(1, 2), (2, 3), (1, 3), (1, 1), (3, 3)]).unwrap();
        assert_eq!(dimension_by_rank(&g).unwrap(), 2);
    }

    #[test]
    fn pinning_a_path_in_a_triangle_determines_everything() {
        let k3 = MarketGraph::complete(3).unwrap();
        assert_eq!(residual_freedom(&k3, &[(1, 2), (2, 3)]).unwrap(), 0);
        assert_eq!(residual_freedom(&k3, &[(1, 2), (1, 3)]).unwrap(), 0);
        assert_eq!(residual_freedom(&k3, &[(1, 2)]).unwrap(), 1);
    }

    #[test]
    fn pinning_a_cycle_leaves_freedom() {
        let k4 = MarketGraph::complete(4).unwrap();
        assert_eq!(residual_freedom(&k4, &[(1, 2), (2, 3), (1, 3)]).unwrap(), 1);
    }

    #[test]
    fn too_large() {
        let g = MarketGraph::path(9).unwrap();
        assert_eq!(
            dimension_by_rank(&g),
            Err(Error::TooLarge { n: 9, limit: 8 })
        );
    }
}
