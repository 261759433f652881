//! NSGA-II against both baselines on one synthetic instance, reported as
//! relative hypervolume against the merged front.
//!
//! cargo run --release --example compare_algorithms -- [segments] [nsga2 seeds] [generations]

use std::time::Instant;

use anyhow::Result;
use rsudp::harness::{compare_fronts, generate_scenario, BudgetGrid, LabeledFront};
use rsudp::heuristics::{knapsack_front, pagerank_constructive};
use rsudp::nsga2::{run_with_evaluator, EaConfig};
use rsudp::scenario::{Application, TrafficPattern};
use rsudp::{Evaluator, QosMode};

fn label(algorithm: &str, run: u32) -> LabeledFront {
    LabeledFront {
        algorithm: algorithm.into(),
        run,
        path: Default::default(),
    }
}

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>());
    let segments = args.next().transpose()?.unwrap_or(64);
    let runs = args.next().transpose()?.unwrap_or(3);
    let generations = args.next().transpose()?.unwrap_or(100);

    let sc = generate_scenario(segments, TrafficPattern::Normal, Application::Data, 11)?;
    let ev = Evaluator::new(&sc, QosMode::Literal)?;

    let mut fronts = Vec::new();
    let t = Instant::now();
    for seed in 1..=runs as u64 {
        let cfg = EaConfig {
            generations,
            seed,
            workers: 4,
            ..EaConfig::default()
        };
        let res = run_with_evaluator(&ev, &cfg)?;
        fronts.push((label("nsga2", seed as u32), res.front));
    }
    println!("nsga2: {runs} runs in {:.1?}", t.elapsed());

    let t = Instant::now();
    let grid = BudgetGrid::full_deployment(&ev).budgets();
    for seed in 1..=10u64 {
        fronts.push((label("knapsack", seed as u32), knapsack_front(&ev, &grid, &[seed])));
    }
    println!("knapsack: 10 runs in {:.1?}", t.elapsed());

    let pr = pagerank_constructive(&ev, &sc.network);
    fronts.push((label("pagerank", 0), pr.front(&ev, "pagerank")));

    let cmp = compare_fronts(&sc.name, &fronts, &[10_000.0, 15_000.0], &[2_500.0])?;
    for algo in ["nsga2", "knapsack", "pagerank"] {
        let rows: Vec<_> = cmp.metrics.iter().filter(|r| r.algorithm == algo).collect();
        let mean = rows.iter().map(|r| r.rhv).sum::<f64>() / rows.len() as f64;
        let size = rows.iter().map(|r| r.front_size).sum::<usize>() / rows.len();
        println!("{algo:>9}: mean RHV {mean:.4} over {} runs, mean front size {size}", rows.len());
    }
    for a in &cmp.anchors {
        println!(
            "{:>9} at fixed {} {:>8}: {:>10.1}{}",
            a.algorithm,
            a.fixed,
            a.anchor,
            a.value,
            if a.feasible { "" } else { "  (no feasible point)" }
        );
    }
    Ok(())
}
