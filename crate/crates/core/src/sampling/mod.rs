//! Seeded samplers for every law with a constructive representation, plus
//! Monte Carlo aggregation and goodness-of-fit helpers.

mod ks;
mod lt_table;
mod rng;
mod stats;
mod variates;

pub use ks::{ks_statistic, ks_statistic_from_density, TabulatedCdf};
pub use lt_table::{sample_from_lt, LtTableSampler, MONOTONE_SLACK, TAIL_MASS};
pub use rng::RandomStream;
pub use stats::{draw_blocks, draw_many, monte_carlo, monte_carlo_multi, Accumulator, SampleStats, CHUNK};
pub use variates::*;
