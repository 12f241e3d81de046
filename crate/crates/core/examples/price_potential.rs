//! Arbitrage-free rates are exactly price differences: pick a reference good,
//! read off prices, and rebuild the matrix from them.
//!
//!     cargo run --example price_potential

use arbx::{
    check_no_arbitrage, exp_of, generate_graph, matrix_from_prices, price_vector, GraphKind,
    LogRateMatrix, PriceVector, DEFAULT_TOLERANCE,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> arbx::Result<()> {
    let g = generate_graph(GraphKind::PreferentialAttachment { m: 2 }, 8, 11)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let hidden: Vec<f64> = (0..g.order()).map(|_| rng.gen_range(-2.0..2.0)).collect();

    let e = LogRateMatrix::from_fn(g.clone(), |i, j| hidden[j - 1] - hidden[i - 1])?;
    println!("arbitrage-free: {}", check_no_arbitrage(&e, DEFAULT_TOLERANCE)?.is_ok());

    let p = price_vector(&e, 1)?;
    println!("good  log price   price (in good 1)");
    for (k, lp) in p.prices().iter().enumerate() {
        println!("{:>4}  {:>9.5}  {:>9.5}", k + 1, lp, lp.exp());
    }

    let back = matrix_from_prices(&g, &p)?;
    println!("round-trip error {:.1e}", e.max_abs_diff(&back));

    // The hidden prices differ from the recovered ones only by a constant.
    let shift = hidden[0];
    let gap = (0..g.order())
        .map(|k| (hidden[k] - shift - p.prices()[k]).abs())
        .fold(0.0, f64::max);
    println!("gauge gap {gap:.1e}");

    // Re-referencing to another good is the same vector, shifted.
    let p5 = PriceVector::new(5, p.prices().iter().map(|x| x - p.get(5)).collect())?;
    println!("good 1 in units of good 5: {:.5}", exp_of(&matrix_from_prices(&g, &p5)?)?.get(5, 1));
    Ok(())
}
