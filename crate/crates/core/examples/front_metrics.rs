//! Hypervolume and relative hypervolume of two small fronts against their
//! merged reference, plus fixed-cost and fixed-QoS queries.
//!
//! cargo run --example front_metrics

use anyhow::Result;
use rsudp::metrics::{
    cost_at_qos, hypervolume, merge_nondominated, qos_at_cost, relative_hypervolume, FrontPoint, NormBox, ParetoFront,
};
use rsudp::ObjectiveVector;

fn front(points: &[(f64, f64)], name: &str) -> ParetoFront {
    ParetoFront::from_points(points.iter().map(|&(q, c)| FrontPoint::from(ObjectiveVector::new(q, c))), name)
}

fn main() -> Result<()> {
    let a = front(&[(1200.0, 2000.0), (2600.0, 6000.0), (3900.0, 12000.0)], "a");
    let b = front(&[(900.0, 1500.0), (2800.0, 7000.0), (3500.0, 9000.0)], "b");
    let reference = merge_nondominated([&a, &b], "reference");
    let bx = NormBox::enclosing([&a, &b], 0.01)?;
    println!(
        "box: qos [{:.1}, {:.1}], cost [{:.1}, {:.1}]",
        bx.qos_min, bx.qos_max, bx.cost_min, bx.cost_max
    );
    println!("reference: {} points, hv {:.4}", reference.len(), hypervolume(&reference, &bx)?);
    for f in [&a, &b] {
        println!(
            "{}: hv {:.4}, rhv {:.4}, QoS at $8000 {:?}, cost for QoS 3000 {:?}",
            f.provenance,
            hypervolume(f, &bx)?,
            relative_hypervolume(f, &reference, &bx)?,
            qos_at_cost(f, 8000.0),
            cost_at_qos(f, 3000.0)
        );
    }
    Ok(())
}
