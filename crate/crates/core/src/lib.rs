//! Solver toolkit for the bi-objective roadside-unit deployment problem.
//!
//! Given a road network annotated with traffic, a catalog of RSU types and a
//! VANET application profile, the crate computes Pareto fronts trading
//! service-time QoS against deployment cost:
//!
//! - [`scenario`]: instance model, file I/O, traffic patterns, synthetic generator
//! - [`geometry`]: local projection and circle/chord coverage
//! - [`objective`]: genome encoding, QoS and cost objectives
//! - [`nsga2`]: the NSGA-II engine and its operators
//! - [`heuristics`]: weighted-PageRank constructive and randomized knapsack baselines
//! - [`metrics`]: Pareto fronts, hypervolume and relative hypervolume
//! - [`harness`]: the experiment commands behind the `rsudp` binary

pub mod error;
pub mod geometry;
pub mod harness;
pub mod heuristics;
pub mod metrics;
pub mod nsga2;
pub mod objective;
pub mod scenario;

pub use error::{EngineError, EvalError, MetricError, ScenarioError};
pub use objective::{Deployment, Evaluator, Genome, ObjectiveVector, QosMode};
pub use scenario::Scenario;
