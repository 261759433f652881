//! Builds a randomized-knapsack front by solving one instance over a grid of
//! budgets with several seeds.
//!
//! cargo run --release --example knapsack_front -- [segments] [seeds]

use anyhow::Result;
use rsudp::harness::{generate_scenario, BudgetGrid};
use rsudp::heuristics::knapsack_front;
use rsudp::scenario::{Application, TrafficPattern};
use rsudp::{Evaluator, QosMode};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>());
    let segments = args.next().transpose()?.unwrap_or(64) as usize;
    let seeds = args.next().transpose()?.unwrap_or(5);

    let sc = generate_scenario(segments, TrafficPattern::Low, Application::Data, 5)?;
    let ev = Evaluator::new(&sc, QosMode::Literal)?;
    let grid = BudgetGrid::full_deployment(&ev);
    println!("budgets ${:.0}..${:.0} step ${:.0}, seeds 1..={seeds}", grid.lo, grid.hi, grid.step);

    let seeds: Vec<u64> = (1..=seeds).collect();
    let front = knapsack_front(&ev, &grid.budgets(), &seeds);
    println!("{} non-dominated points", front.len());
    for p in front.points().iter().step_by((front.len() / 10).max(1)) {
        let rsus = p.genome.as_ref().map_or(0, |g| g.rsu_count());
        println!("  ${:>9.2}  QoS {:>9.1}  {rsus:>3} RSUs", p.objectives.cost, p.objectives.qos);
    }
    Ok(())
}
