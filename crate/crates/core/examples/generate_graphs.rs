//! Seeded random market graphs: trees, G(n, p) over a tree, and
//! preferential attachment.
//!
//!     cargo run --example generate_graphs

use arbx::{fundamental_cycles, generate_graph, spanning_tree, GraphKind};

fn main() -> arbx::Result<()> {
    let kinds = [
        ("tree", GraphKind::Tree),
        ("gnp p=0.1", GraphKind::Gnp { p: 0.1 }),
        ("pa m=2", GraphKind::PreferentialAttachment { m: 2 }),
        ("complete", GraphKind::Complete),
    ];
    println!("{:<10} {:>4} {:>6} {:>7} {:>10}", "kind", "n", "edges", "chords", "max deg");
    for (name, kind) in kinds {
        let g = generate_graph(kind, 50, 42)?;
        let tree = spanning_tree(&g)?;
        let chords = fundamental_cycles(&g, &tree)?.len();
        let max_deg = (1..=g.order()).map(|v| g.degree(v)).max().unwrap_or(0);
        println!(
            "{:<10} {:>4} {:>6} {:>7} {:>10}",
            name,
            g.order(),
            g.proper_size(),
            chords,
            max_deg
        );
    }

    // Same seed, same graph.
    let a = generate_graph(GraphKind::Gnp { p: 0.2 }, 20, 7)?;
    let b = generate_graph(GraphKind::Gnp { p: 0.2 }, 20, 7)?;
    println!("deterministic: {}", a == b);
    Ok(())
}
