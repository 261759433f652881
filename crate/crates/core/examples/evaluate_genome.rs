//! Decodes a genome on a four-segment block and evaluates both objectives
//! under each QoS variant.
//!
//! cargo run --example evaluate_genome

use anyhow::Result;
use rsudp::scenario::{haversine_m, Application, Point, RoadNetwork, Scenario, Segment};
use rsudp::{Evaluator, Genome, QosMode};

const M_PER_DEG: f64 = 6_371_000.0 * std::f64::consts::PI / 180.0;

fn block() -> Scenario {
    // a 400 m x 300 m block: s1 = (p1, p2), s2 = (p2, p3), s3 = (p3, p4), s4 = (p1, p4)
    let (lat, lon): (f64, f64) = (36.72, -4.42);
    let dx = 400.0 / M_PER_DEG / lat.to_radians().cos();
    let dy = 300.0 / M_PER_DEG;
    let points = vec![
        Point { id: 1, lat, lon },
        Point { id: 2, lat, lon: lon + dx },
        Point { id: 3, lat: lat + dy, lon: lon + dx },
        Point { id: 4, lat: lat + dy, lon },
    ];
    let nv = [0.9, 1.2, 0.4, 0.7];
    let segments = [(1, 2), (2, 3), (3, 4), (1, 4)]
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| Segment {
            id: i as u32 + 1,
            endpoint_a: a,
            endpoint_b: b,
            length_m: haversine_m(&points[a as usize - 1], &points[b as usize - 1]),
            vehicles_per_period: nv[i],
            avg_speed_mps: 11.1,
            curved: false,
        })
        .collect();
    Scenario::with_defaults(RoadNetwork { points, segments }, Application::Data)
}

fn main() -> Result<()> {
    let sc = block();
    sc.validate()?;
    let genome = Genome(vec![2.16, 1.50, 3.80, 0.33]);
    for mode in [QosMode::Literal, QosMode::Capped] {
        let ev = Evaluator::new(&sc, mode)?;
        let dep = ev.decode(&genome)?;
        let terms = ev.service_terms(&dep)?;
        println!("{mode}:");
        for (rsu, term) in dep.placed.iter().zip(&terms) {
            println!(
                "  t{} on s{} at {:.2}: raw {:.2}, vehicles {:.2}, contribution {:.2}",
                rsu.rsu_type, rsu.segment_id, rsu.relative_pos, term.raw, term.vehicles, term.contribution
            );
        }
        let obj = ev.evaluate(&genome)?;
        println!("  QoS {:.2}, cost ${:.2}", obj.qos, obj.cost);
    }
    Ok(())
}
