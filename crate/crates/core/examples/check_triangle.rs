//! Check a three-currency market for arbitrage, then break it on purpose.
//!
//!     cargo run --example check_triangle

use arbx::{check_no_arbitrage, log_of, MarketGraph, RateMatrix, DEFAULT_TOLERANCE};

fn main() -> arbx::Result<()> {
    let g = MarketGraph::complete(3)?;

    // 1 -> 2 at 2, 2 -> 3 at 3, so 1 -> 3 must be 6.
    let consistent = [(1, 2, 2.0), (2, 3, 3.0), (1, 3, 6.0)];
    let broken = [(1, 2, 2.0), (2, 3, 3.0), (1, 3, 5.0)];

    for (name, quotes) in [("consistent", consistent), ("broken", broken)] {
        let r = RateMatrix::from_fn(g.clone(), |i, j| {
            quotes
                .iter()
                .find_map(|&(a, b, x)| {
                    if (a, b) == (i, j) {
                        Some(x)
                    } else if (b, a) == (i, j) {
                        Some(1.0 / x)
                    } else {
                        None
                    }
                })
                .unwrap_or(1.0)
        })?;
        let check = check_no_arbitrage(&log_of(&r), DEFAULT_TOLERANCE)?;
        println!(
            "{name}: {} conditions, max |log gain| {:.3e}",
            check.conditions_checked, check.max_abs_log_gain
        );
        match &check.witness {
            None => println!("  no arbitrage"),
            Some(w) => println!(
                "  arbitrage along {:?}: x{:.4} per round trip",
                w.cycle, w.multiplicative_gain
            ),
        }
    }
    Ok(())
}
