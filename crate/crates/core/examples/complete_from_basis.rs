//! Quote n - 1 rates on a spanning tree and recover every cross rate.
//!
//!     cargo run --example complete_from_basis

use arbx::{
    check_no_arbitrage, complete, exp_of, is_basis, BasisAssignment, BasisSpec, MarketGraph,
    DEFAULT_TOLERANCE,
};

fn main() -> arbx::Result<()> {
    let names = ["USD", "EUR", "GBP", "JPY"];
    let g = MarketGraph::complete(4)?;

    // A chain rather than a star: still a spanning tree, so still a basis.
    let entries = vec![(1, 2), (2, 3), (4, 1)];
    assert!(is_basis(&g, &entries)?);
    let quotes: [f64; 3] = [0.92, 0.85, 1.0 / 150.0];

    let spec = BasisSpec::new(g, entries)?;
    let logs = quotes.iter().map(|q| q.ln()).collect();
    let e = complete(&BasisAssignment::new(spec, logs)?);
    let r = exp_of(&e)?;

    println!("{:>5} {}", "", names.map(|s| format!("{s:>12}")).join(""));
    for i in 1..=4 {
        let row: String = (1..=4).map(|j| format!("{:>12.6}", r.get(i, j))).collect();
        println!("{:>5} {row}", names[i - 1]);
    }

    let check = check_no_arbitrage(&e, DEFAULT_TOLERANCE)?;
    println!("arbitrage-free: {}", check.is_ok());

    // A pair with a cycle among its entries cannot be a basis.
    let bad = [(1, 2), (2, 3), (3, 1)];
    println!("{bad:?} is a basis: {}", is_basis(&MarketGraph::complete(4)?, &bad)?);
    Ok(())
}
