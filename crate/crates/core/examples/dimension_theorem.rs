//! The arbitrage-free space has dimension n - 1 on every connected graph.
//! Compare the spanning-tree count with an exact rank computation over all
//! simple cycles.
//!
//!     cargo run --example dimension_theorem

use arbx::{dimension, dimension_by_rank, generate_graph, GraphKind, MarketGraph};

fn main() -> arbx::Result<()> {
    let mut graphs: Vec<(String, MarketGraph)> = vec![
        ("path(6)".into(), MarketGraph::path(6)?),
        ("complete(6)".into(), MarketGraph::complete(6)?),
        (
            "triangle + loops".into(),
            MarketGraph::new(3, &[(1, 2), (2, 3), (1, 3), (1, 1), (2, 2)])?,
        ),
    ];
    for seed in 0..4 {
        graphs.push((
            format!("gnp(7, 0.5) seed {seed}"),
            generate_graph(GraphKind::Gnp { p: 0.5 }, 7, seed)?,
        ));
    }

    println!("{:<24} {:>5} {:>6} {:>10} {:>8}", "graph", "n", "edges", "n-1", "rank");
    for (name, g) in &graphs {
        println!(
            "{:<24} {:>5} {:>6} {:>10} {:>8}",
            name,
            g.order(),
            g.proper_size(),
            dimension(g)?,
            dimension_by_rank(g)?
        );
    }
    Ok(())
}
