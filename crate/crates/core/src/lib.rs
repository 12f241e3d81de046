//! Arbitrage-free exchange-rate ensembles over market graphs.
//!
//! Goods are vertices of an undirected [`MarketGraph`], tradable pairs are
//! edges. An ensemble of rates is arbitrage-free when trading around any
//! closed walk returns exactly what was put in. Such ensembles form a vector
//! space (in the log domain) of dimension `n - 1` on any connected graph, and
//! any spanning tree's edges are a basis for it.
//!
//! Vertices are 1-based in every public signature.

pub mod basis;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod exchange;
pub mod generate;
pub mod graph;
pub mod io;
pub mod rank;

pub use basis::{
    canonical_basis, complete, decompose, dimension, epsilon_matrices, is_basis,
    matrix_from_prices, price_vector, row_basis, BasisAssignment, BasisSpec, EpsilonBasis,
    PriceVector,
};
pub use dynamics::{
    apply_exact, build_operator, propagate_log, propagate_multiplicative_first_order,
    PerturbationOperator, PerturbationVector, RateDelta,
};
pub use error::{Error, Result};
pub use exchange::{
    check_antisymmetry, check_no_arbitrage, check_no_arbitrage_oracle, cycle_gain,
    cycle_log_gain, exp_of, log_of, ArbitrageWitness, LogRateMatrix, NoArbitrageCheck,
    RateMatrix, DEFAULT_TOLERANCE,
};
pub use generate::{generate_graph, GraphKind};
pub use graph::{
    enumerate_simple_cycles, fundamental_cycles, spanning_tree, FundamentalCycle, MarketGraph,
    SpanningTree,
};
pub use rank::{dimension_by_rank, residual_freedom};
