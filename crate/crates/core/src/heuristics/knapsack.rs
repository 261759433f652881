//! Randomized multiple-choice knapsack over segments.
//!
//! Each (segment, type) pair gets one random location per seed. A dynamic
//! program over whole-dollar budgets estimates the best standalone value
//! reachable with the first `i` segments; reconstruction then walks the
//! segments from last to first, and for each one picks the option whose
//! real marginal gain against the partial solution, plus the table value of
//! the leftover budget, is largest. Skipping wins ties.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::metrics::{FrontPoint, ParetoFront};
use crate::objective::{compose_gene, CoverageState, Evaluator, Genome, ObjectiveVector};

/// Value table and random locations for one seed, valid for any budget up
/// to `max_budget`.
#[derive(Debug, Clone)]
pub struct KnapsackPlanner<'e> {
    ev: &'e Evaluator,
    /// `locations[s][k - 1]`: relative position of a type-`k` RSU on segment `s`.
    locations: Vec<Vec<f64>>,
    unit_costs: Vec<usize>,
    width: usize,
    /// Row-major `(n + 1) x width`; row `i` covers the first `i` segments.
    table: Vec<f64>,
}

fn units(budget: f64) -> usize {
    budget.max(0.0).round() as usize
}

impl<'e> KnapsackPlanner<'e> {
    pub fn new(ev: &'e Evaluator, max_budget: f64, seed: u64) -> Self {
        let n = ev.num_segments();
        let k = ev.num_types();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let locations: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..k).map(|_| rng.random::<f64>()).collect())
            .collect();
        let unit_costs: Vec<usize> = (1..=k as u32).map(|t| units(ev.type_cost(t)).max(1)).collect();

        let empty = CoverageState::new(ev);
        let width = units(max_budget) + 1;
        let mut table = vec![0.0; (n + 1) * width];
        for s in 0..n {
            let values: Vec<f64> = (0..k)
                .map(|j| empty.marginal_gain(s, j as u32 + 1, locations[s][j]))
                .collect();
            let (prev, next) = table.split_at_mut((s + 1) * width);
            let prev = &prev[s * width..];
            let next = &mut next[..width];
            for b in 0..width {
                let mut best: f64 = prev[b];
                for (j, &c) in unit_costs.iter().enumerate() {
                    if c <= b {
                        best = best.max(values[j] + prev[b - c]);
                    }
                }
                next[b] = best;
            }
        }
        KnapsackPlanner {
            ev,
            locations,
            unit_costs,
            width,
            table,
        }
    }

    fn value(&self, row: usize, budget: f64) -> f64 {
        self.table[row * self.width + units(budget).min(self.width - 1)]
    }

    /// Builds the deployment for `budget` and returns its genome.
    pub fn solve(&self, budget: f64) -> Genome {
        let ev = self.ev;
        let n = ev.num_segments();
        let mut state = CoverageState::new(ev);
        let mut genes = vec![0.0; n];
        let mut left = budget;
        for s in (0..n).rev() {
            if left <= 0.0 {
                break;
            }
            let mut best: Option<usize> = None;
            let mut best_val = self.value(s, left);
            for j in 0..ev.num_types() {
                let t = j as u32 + 1;
                let cost = ev.type_cost(t);
                if left < cost {
                    continue;
                }
                let val = state.marginal_gain(s, t, self.locations[s][j]) + self.value(s, left - cost);
                if val > best_val {
                    best_val = val;
                    best = Some(j);
                }
            }
            if let Some(j) = best {
                let t = j as u32 + 1;
                state.insert(s, t, self.locations[s][j]);
                genes[s] = compose_gene(t, self.locations[s][j]);
                left -= ev.type_cost(t);
            }
        }
        Genome(genes)
    }

    /// Whole-dollar costs used by the table.
    pub fn unit_costs(&self) -> &[usize] {
        &self.unit_costs
    }
}

/// One knapsack solution per (seed, budget), evaluated exactly and merged
/// into a non-dominated front.
pub fn knapsack_front(ev: &Evaluator, budgets: &[f64], seeds: &[u64]) -> ParetoFront {
    let max_budget = budgets.iter().copied().fold(0.0, f64::max);
    let mut points = Vec::with_capacity(budgets.len() * seeds.len());
    for &seed in seeds {
        let planner = KnapsackPlanner::new(ev, max_budget, seed);
        for &b in budgets {
            let genome = planner.solve(b);
            let obj: ObjectiveVector = ev.evaluate(&genome).expect("planner emits valid genomes");
            points.push(FrontPoint::new(obj, Some(genome)));
        }
    }
    ParetoFront::from_points(points, "knapsack")
}

/// `lo, lo + step, ...` up to and including `hi` (within half a step).
pub fn budget_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    assert!(step > 0.0 && hi >= lo, "bad budget grid");
    let count = ((hi - lo) / step + 0.5).floor() as usize;
    (0..=count).map(|i| lo + i as f64 * step).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{Application, Point, RoadNetwork, Scenario, Segment};

    const M_PER_DEG: f64 = 6_371_000.0 * std::f64::consts::PI / 180.0;

    fn line(n: u32, len: f64) -> Scenario {
        let points = (0..=n)
            .map(|i| Point {
                id: i + 1,
                lat: 0.0,
                lon: i as f64 * len / M_PER_DEG,
            })
            .collect();
        let segments = (1..=n)
            .map(|i| Segment {
                id: i,
                endpoint_a: i,
                endpoint_b: i + 1,
                length_m: len,
                vehicles_per_period: 1.0,
                avg_speed_mps: 10.0,
                curved: false,
            })
            .collect();
        Scenario::with_defaults(RoadNetwork { points, segments }, Application::Data)
    }

    #[test]
    fn budget_below_cheapest_is_empty() {
        let sc = line(4, 300.0);
        let ev = Evaluator::new(&sc, Default::default()).unwrap();
        let planner = KnapsackPlanner::new(&ev, 500.0, 1);
        assert_eq!(planner.solve(100.0).rsu_count(), 0);
        assert_eq!(planner.solve(0.0).rsu_count(), 0);
    }

    #[test]
    fn exact_cheapest_budget_places_one() {
        let sc = line(1, 300.0);
        let ev = Evaluator::new(&sc, Default::default()).unwrap();
        let planner = KnapsackPlanner::new(&ev, 121.70, 3);
        let g = planner.solve(121.70);
        assert_eq!(g.rsu_count(), 1);
        assert_eq!(crate::objective::split_gene(g.0[0]).0, 1);
    }

    #[test]
    fn cost_respects_budget() {
        let sc = line(12, 400.0);
        let ev = Evaluator::new(&sc, Default::default()).unwrap();
        let grid = budget_grid(0.0, 2000.0, 100.0);
        let planner = KnapsackPlanner::new(&ev, 2000.0, 9);
        for b in grid {
            let c = ev.evaluate(&planner.solve(b)).unwrap().cost;
            assert!(c <= b + 1e-9, "{c} > {b}");
        }
    }

    #[test]
    fn grid_includes_end() {
        assert_eq!(budget_grid(0.0, 1.0, 0.25), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(budget_grid(5.0, 5.0, 1.0), vec![5.0]);
    }
}
