//! Monopoly data selling over a network of information-sharing buyers.
//!
//! Buyers share the signals they purchase with their neighbors, so a seller
//! offering one data quality to everyone targets a set of buyers that free
//! ride on nobody. This crate computes that optimal contract, certifies it
//! against an exhaustive oracle, and analyses consumer and social welfare,
//! the socially efficient precision, and profit-improving edits to the
//! network.
//!
//! Modules, bottom up:
//! - [`graph`]: buyer networks, parsing, exact maximum independent sets and
//!   structural classifiers.
//! - [`contract`]: prices, willingness to pay, the optimal contract.
//! - [`oracle`]: brute-force search over every target set.
//! - [`welfare`]: consumer surplus, target comparisons, efficient precision.
//! - [`simulate`]: Monte-Carlo check of the Gaussian belief layer.
//! - [`interventions`]: link removal, node isolation, Pareto certificates.
//! - [`report`] and [`cli`]: JSON/text emission and the `netsale` command.

pub mod cli;
pub mod contract;
mod error;
pub mod graph;
pub mod interventions;
pub mod numeric;
pub mod oracle;
pub mod report;
pub mod simulate;
pub mod welfare;

pub use error::{Error, Result};
