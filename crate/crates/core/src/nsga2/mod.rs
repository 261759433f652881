//! NSGA-II: fast non-dominated sorting, crowding, binary tournament, 2PX,
//! three-branch mutation and elitist replacement, with knapsack-seeded
//! initialization and a master-slave evaluation batch.

mod engine;
mod operators;
mod sorting;

use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::objective::{Genome, ObjectiveVector, QosMode};

pub use engine::{evaluate_batch, log_to_string, run, run_with_evaluator, write_log_csv, GenerationRecord, RunResult};
pub use operators::{
    crowded_cmp, mutate, mutate_gene, reflect_unit, tournament_pick, tournament_select, two_point_crossover,
    two_point_crossover_at, BranchCounts, MutationBranch,
};
pub use sorting::{crowding_distance, dominates, non_dominated_sort};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub p_crossover: f64,
    /// Per-gene mutation probability.
    pub p_mutation: f64,
    /// Probability of the remove branch.
    pub pi_a: f64,
    /// Probability of the retype branch. The shift branch gets the rest.
    pub pi_b: f64,
    pub sigma: f64,
    pub qos_mode: QosMode,
    pub seed: u64,
    pub workers: usize,
    /// Share of the initial population taken from knapsack solutions; the
    /// rest is uniform random.
    pub seed_fraction: f64,
}

impl Default for EaConfig {
    fn default() -> Self {
        EaConfig {
            population_size: 72,
            generations: 200,
            p_crossover: 0.7,
            p_mutation: 0.1,
            pi_a: 1.0 / 3.0,
            pi_b: 1.0 / 3.0,
            sigma: 0.1,
            qos_mode: QosMode::Literal,
            seed: 1,
            workers: 1,
            seed_fraction: 1.0,
        }
    }
}

impl EaConfig {
    pub fn validate(&self) -> Result<(), EngineError> {
        let bad = |m: String| Err(EngineError::Config(m));
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        if self.population_size < 4 || !self.population_size.is_multiple_of(2) {
            return bad(format!("population_size must be even and >= 4, got {}", self.population_size));
        }
        for (name, v) in [
            ("p_crossover", self.p_crossover),
            ("p_mutation", self.p_mutation),
            ("pi_a", self.pi_a),
            ("pi_b", self.pi_b),
            ("seed_fraction", self.seed_fraction),
        ] {
            if !unit(v) {
                return bad(format!("{name} must lie in [0, 1], got {v}"));
            }
        }
        if self.pi_a + self.pi_b > 1.0 + 1e-12 {
            return bad(format!("pi_a + pi_b must not exceed 1, got {}", self.pi_a + self.pi_b));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return bad(format!("sigma must be positive, got {}", self.sigma));
        }
        if self.workers == 0 {
            return bad("workers must be >= 1".into());
        }
        Ok(())
    }
}

/// A population member after sorting. `rank` starts at 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedIndividual {
    pub genome: Genome,
    pub objectives: ObjectiveVector,
    pub rank: usize,
    pub crowding: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        EaConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_bad_configs() {
        let odd = EaConfig {
            population_size: 7,
            ..EaConfig::default()
        };
        assert!(odd.validate().is_err());
        let heavy = EaConfig {
            pi_a: 0.6,
            pi_b: 0.6,
            ..EaConfig::default()
        };
        assert!(heavy.validate().is_err());
        let idle = EaConfig {
            workers: 0,
            ..EaConfig::default()
        };
        assert!(idle.validate().is_err());
    }
}
