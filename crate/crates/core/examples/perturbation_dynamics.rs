//! Move basis rates and watch the change propagate through every cross rate,
//! exactly in the log domain and to first order in rates.
//!
//!     cargo run --example perturbation_dynamics

use arbx::{
    apply_exact, build_operator, canonical_basis, exp_of, propagate_log,
    propagate_multiplicative_first_order, LogRateMatrix, MarketGraph, PerturbationVector,
};

fn main() -> arbx::Result<()> {
    let g = MarketGraph::complete(4)?;
    let prices = [0.0, 0.3, -0.2, 1.1];
    let e = LogRateMatrix::from_fn(g.clone(), |i, j| prices[j - 1] - prices[i - 1])?;
    let r = exp_of(&e)?;

    let spec = canonical_basis(&g)?;
    let op = build_operator(&spec);
    println!("basis {:?}", spec.entries());

    for h in [1e-1, 1e-2, 1e-3] {
        let d = PerturbationVector::new(spec.clone(), vec![h, 0.0, -h])?;
        let d_e = propagate_log(&op, &d)?;
        let (_, exact) = apply_exact(&e, &d_e)?;
        let linear = propagate_multiplicative_first_order(&r, &d_e)?;

        let mut worst: f64 = 0.0;
        for i in 1..=4 {
            for j in 1..=4 {
                let approx = r.get(i, j) + linear.get(i, j);
                worst = worst.max((exact.get(i, j) - approx).abs());
            }
        }
        println!(
            "h = {h:.0e}: dR(2,4) exact {:+.6}, first-order error {worst:.2e}",
            exact.get(2, 4) - r.get(2, 4)
        );
    }
    Ok(())
}
