//! The fundamental-cycle check against brute force over every simple cycle,
//! on a small random market with one rate nudged.
//!
//!     cargo run --example arbitrage_oracle

use arbx::{
    check_no_arbitrage, check_no_arbitrage_oracle, enumerate_simple_cycles, generate_graph,
    GraphKind, LogRateMatrix, DEFAULT_TOLERANCE,
};

fn main() -> arbx::Result<()> {
    let g = generate_graph(GraphKind::Gnp { p: 0.5 }, 7, 5)?;
    let cycles = enumerate_simple_cycles(&g, g.order())?;
    println!("{} goods, {} pairs, {} simple cycles", g.order(), g.proper_size(), cycles.len());

    let prices = [0.0, 0.4, -0.1, 0.9, 0.2, -0.7, 0.5];
    let e = LogRateMatrix::from_fn(g.clone(), |i, j| prices[j - 1] - prices[i - 1])?;

    let (i, j) = g.proper_edges().last().expect("graph has edges");
    let nudged = e
        .with_entry(i, j, e.get(i, j) + 0.05)?
        .with_entry(j, i, e.get(j, i) - 0.05)?;

    for (name, m) in [("clean", &e), ("nudged", &nudged)] {
        let fast = check_no_arbitrage(m, DEFAULT_TOLERANCE)?;
        let slow = check_no_arbitrage_oracle(m, DEFAULT_TOLERANCE)?;
        println!(
            "{name}: fast {} ({} conditions), brute force {} ({} conditions)",
            verdict(fast.is_ok()),
            fast.conditions_checked,
            verdict(slow.is_ok()),
            slow.conditions_checked
        );
        if let Some(w) = fast.witness {
            println!("  witness {:?}, log gain {:.4}", w.cycle, w.log_gain);
        }
    }
    Ok(())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "arbitrage"
    }
}
