//! Runs NSGA-II on a synthetic instance and prints the hypervolume log and
//! the ends of the returned front.
//!
//! cargo run --release --example nsga2_solve -- [segments] [generations] [seed] [workers]

use anyhow::Result;
use rsudp::harness::generate_scenario;
use rsudp::nsga2::{run, EaConfig};
use rsudp::scenario::{Application, TrafficPattern};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>());
    let segments = args.next().transpose()?.unwrap_or(64) as usize;
    let generations = args.next().transpose()?.unwrap_or(100) as usize;
    let seed = args.next().transpose()?.unwrap_or(1);
    let workers = args.next().transpose()?.unwrap_or(2) as usize;

    let sc = generate_scenario(segments, TrafficPattern::Normal, Application::Data, 42)?;
    let cfg = EaConfig {
        generations,
        seed,
        workers,
        ..EaConfig::default()
    };
    let res = run(&sc, &cfg)?;

    println!("{} knapsack seeds in the initial population", res.knapsack_seeds);
    let step = (res.log.len() / 10).max(1);
    let last = res.log.len() - 1;
    for r in res.log.iter().filter(|r| r.gen.is_multiple_of(step) || r.gen == last) {
        println!("gen {:>4}: hv {:.5}, front {:>4}, evals {:>6}, {:>8.1} ms", r.gen, r.hv, r.front_size, r.evals, r.wall_ms);
    }
    let pts = res.front.points();
    let (cheap, best) = (&pts[0], &pts[pts.len() - 1]);
    println!(
        "front: {} points, from (QoS {:.0}, ${:.0}) to (QoS {:.0}, ${:.0})",
        pts.len(),
        cheap.objectives.qos,
        cheap.objectives.cost,
        best.objectives.qos,
        best.objectives.cost
    );
    println!(
        "mutations: {} remove, {} retype, {} shift",
        res.mutations.remove, res.mutations.retype, res.mutations.shift
    );
    Ok(())
}
