//! Generates a synthetic street network and writes it as a scenario file.
//!
//! cargo run --example generate_scenario -- [segments] [low|normal|high] [seed] [out.json]

use anyhow::Result;
use rsudp::harness::generate_scenario;
use rsudp::scenario::{save_scenario, Application, TrafficPattern};

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let segments = args.first().map_or(Ok(128), |s| s.parse())?;
    let pattern: TrafficPattern = args.get(1).map_or(Ok(TrafficPattern::Normal), |s| s.parse().map_err(anyhow::Error::msg))?;
    let seed = args.get(2).map_or(Ok(7), |s| s.parse())?;

    let sc = generate_scenario(segments, pattern, Application::Data, seed)?;
    let lens: Vec<f64> = sc.network.segments.iter().map(|s| s.length_m).collect();
    let mean = lens.iter().sum::<f64>() / lens.len() as f64;
    let (lo, hi) = lens.iter().fold((f64::MAX, 0.0f64), |(a, b), &l| (a.min(l), b.max(l)));
    println!("{}: {} points, {} segments", sc.name, sc.network.points.len(), sc.network.segments.len());
    println!("segment length mean {mean:.1} m, range [{lo:.1}, {hi:.1}] m");
    let curved = sc.network.segments.iter().filter(|s| s.curved).count();
    println!("{curved} segments flagged curved (length clamped into range)");

    if let Some(out) = args.get(3) {
        save_scenario(&sc, out)?;
        println!("wrote {out}");
    }
    Ok(())
}
