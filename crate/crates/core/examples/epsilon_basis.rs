//! Unit basis matrices: every arbitrage-free matrix is a unique combination
//! of them, with coefficients read straight off the basis entries.
//!
//!     cargo run --example epsilon_basis

use arbx::{
    canonical_basis, decompose, epsilon_matrices, log_of, row_basis, MarketGraph, RateMatrix,
};

fn main() -> arbx::Result<()> {
    let g = MarketGraph::complete(3)?;
    let spec = canonical_basis(&g)?;
    let eps = epsilon_matrices(&spec);

    for (entry, m) in spec.entries().iter().zip(eps.matrices()) {
        println!("epsilon for entry {entry:?}:");
        for i in 1..=3 {
            let row: Vec<String> = (1..=3).map(|j| format!("{:>3}", m.get(i, j) + 0.0)).collect();
            println!("  {}", row.join(""));
        }
    }

    // Prices 1, 2, 6 give rates r(i, j) = p(j) / p(i).
    let prices = [1.0, 2.0, 6.0];
    let r = RateMatrix::from_fn(g.clone(), |i, j| prices[j - 1] / prices[i - 1])?;
    let e = log_of(&r);

    let coeffs = decompose(&e, &spec)?;
    let rebuilt = eps.combine(&coeffs)?;
    println!("coefficients {coeffs:?}, rebuild error {:.1e}", e.max_abs_diff(&rebuilt));

    // The same matrix against the basis of row 2.
    let row2 = row_basis(&g, 2)?;
    println!("row-2 basis {:?}: {:?}", row2.entries(), decompose(&e, &row2)?);
    Ok(())
}
