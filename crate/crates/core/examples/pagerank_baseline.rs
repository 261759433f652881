//! Ranks street points with weighted PageRank and runs the constructive
//! placement that follows the ranking.
//!
//! cargo run --example pagerank_baseline -- [segments]

use anyhow::Result;
use rsudp::harness::generate_scenario;
use rsudp::heuristics::{pagerank_constructive, weighted_pagerank, PrGraph};
use rsudp::scenario::{Application, TrafficPattern};
use rsudp::{Evaluator, QosMode};

fn main() -> Result<()> {
    let segments = std::env::args().nth(1).map_or(Ok(64), |s| s.parse())?;
    let sc = generate_scenario(segments, TrafficPattern::High, Application::Voice, 3)?;

    let pr = weighted_pagerank(&PrGraph::from_network(&sc.network), 0.85, 1e-8, 1000);
    println!("PageRank converged: {} after {} sweeps", pr.converged, pr.iterations);
    let mut top: Vec<(u32, f64)> = pr.values.iter().map(|(&id, &v)| (id, v)).collect();
    top.sort_by(|a, b| b.1.total_cmp(&a.1));
    for (id, v) in top.iter().take(5) {
        println!("  point {id:>4}: {v:.4}");
    }

    let ev = Evaluator::new(&sc, QosMode::Literal)?;
    let res = pagerank_constructive(&ev, &sc.network);
    println!("{} of {} segments received an RSU", res.trace.len(), segments);
    for step in res.trace.iter().take(8) {
        println!(
            "  s{:<4} t{} at {:.1}: QoS {:>8.1}, cost ${:>8.2}",
            step.segment_id, step.rsu_type, step.relative_pos, step.qos, step.cost
        );
    }
    if let Some(last) = res.trace.last() {
        println!("  ... final QoS {:.1} at ${:.2}", last.qos, last.cost);
    }
    Ok(())
}
