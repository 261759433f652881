//! Independent reference implementations used as test oracles. None of them
//! call into the solver code beyond reading plain scenario data.

#![allow(dead_code)]

use std::collections::HashMap;

use rsudp::scenario::{Point, RoadNetwork, Scenario, Segment};
use rsudp::QosMode;

pub const M_PER_DEG: f64 = 6_371_000.0 * std::f64::consts::PI / 180.0;

/// `(segment_id, rsu_type, relative_pos)`
pub type Placement = (u32, u32, f64);

fn project(net: &RoadNetwork) -> HashMap<u32, (f64, f64)> {
    let n = net.points.len() as f64;
    let lat0 = net.points.iter().map(|p| p.lat).sum::<f64>() / n;
    let lon0 = net.points.iter().map(|p| p.lon).sum::<f64>() / n;
    net.points
        .iter()
        .map(|p| {
            let x = (p.lon - lon0).to_radians() * 6_371_000.0 * lat0.to_radians().cos();
            let y = (p.lat - lat0).to_radians() * 6_371_000.0;
            (p.id, (x, y))
        })
        .collect()
}

/// QoS by brute-force discretization: each segment is cut into `cells`
/// equal cells and each cell midpoint is credited to the single covering RSU
/// with the largest range (then lower host id, then lower position).
pub fn qos_oracle(sc: &Scenario, placements: &[Placement], mode: QosMode, cells: usize) -> f64 {
    let xy = project(&sc.network);
    let seg_of: HashMap<u32, &Segment> = sc.network.segments.iter().map(|s| (s.id, s)).collect();
    let at = |s: &Segment, t: f64| {
        let (a, b) = (xy[&s.endpoint_a], xy[&s.endpoint_b]);
        (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
    };
    struct Rsu {
        seg: u32,
        pos: f64,
        err: f64,
        mu: f64,
        x: f64,
        y: f64,
    }
    let rsus: Vec<Rsu> = placements
        .iter()
        .map(|&(seg, t, pos)| {
            let ty = &sc.catalog[(t - 1) as usize];
            let (x, y) = at(seg_of[&seg], pos);
            Rsu {
                seg,
                pos,
                err: ty.err_m,
                mu: sc.mu.get(t, sc.application.id).unwrap() as f64,
                x,
                y,
            }
        })
        .collect();

    let mut raw = vec![0.0; rsus.len()];
    let mut vehicles = vec![0.0; rsus.len()];
    for s in &sc.network.segments {
        let w = s.vehicles_per_period * s.length_m / s.avg_speed_mps / cells as f64;
        let mut touched = vec![false; rsus.len()];
        for c in 0..cells {
            let (px, py) = at(s, (c as f64 + 0.5) / cells as f64);
            let mut winner: Option<usize> = None;
            for (j, r) in rsus.iter().enumerate() {
                if (px - r.x).hypot(py - r.y) > r.err {
                    continue;
                }
                let better = match winner {
                    None => true,
                    Some(k) => {
                        let o = &rsus[k];
                        (r.err, std::cmp::Reverse(r.seg)) > (o.err, std::cmp::Reverse(o.seg))
                            || (r.err == o.err && r.seg == o.seg && r.pos < o.pos)
                    }
                };
                if better {
                    winner = Some(j);
                }
            }
            if let Some(j) = winner {
                raw[j] += w;
                touched[j] = true;
            }
        }
        for (j, hit) in touched.into_iter().enumerate() {
            if hit {
                vehicles[j] += s.vehicles_per_period;
            }
        }
    }
    rsus.iter()
        .enumerate()
        .map(|(j, r)| match mode {
            QosMode::Literal => raw[j].max(r.mu),
            QosMode::Capped => {
                if vehicles[j] > 0.0 {
                    raw[j].min(r.mu * raw[j] / vehicles[j])
                } else {
                    0.0
                }
            }
        })
        .sum()
}

fn dominates(a: (f64, f64), b: (f64, f64)) -> bool {
    a.0 >= b.0 && a.1 <= b.1 && (a.0 > b.0 || a.1 < b.1)
}

/// Repeated peeling: each front is the set of remaining points that no
/// remaining point dominates.
pub fn peel(points: &[(f64, f64)]) -> Vec<Vec<usize>> {
    let mut remaining: Vec<usize> = (0..points.len()).collect();
    let mut fronts = Vec::new();
    while !remaining.is_empty() {
        let front: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| !remaining.iter().any(|&j| dominates(points[j], points[i])))
            .collect();
        remaining.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

/// Pairwise filter: points of `all` not dominated by any other, duplicates
/// collapsed, sorted by cost.
pub fn nondominated_filter(all: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = all
        .iter()
        .copied()
        .filter(|&p| !all.iter().any(|&q| dominates(q, p)))
        .collect();
    out.sort_by(|a, b| a.1.total_cmp(&b.1).then(b.0.total_cmp(&a.0)));
    out.dedup();
    out
}

/// Dominated area of normalized `(qos, cost)` points, estimated by counting
/// the centers of a `grid x grid` lattice over the unit box.
pub fn hv_grid_estimate(norm: &[(f64, f64)], grid: usize) -> f64 {
    let mut hits = 0usize;
    for i in 0..grid {
        let x = (i as f64 + 0.5) / grid as f64;
        for j in 0..grid {
            let y = (j as f64 + 0.5) / grid as f64;
            if norm.iter().any(|&(q, c)| x <= q && y >= c) {
                hits += 1;
            }
        }
    }
    hits as f64 / (grid * grid) as f64
}

/// Stationary weighted PageRank by solving
/// `(I - d M) PR = (1 - d) 1` with Gaussian elimination, where
/// `M[v][u] = w_uv / out(u)`.
#[allow(clippy::needless_range_loop)]
pub fn pagerank_linear(n: usize, arcs: &[(usize, usize, f64)], d: f64) -> Vec<f64> {
    let mut out = vec![0.0; n];
    for &(u, _, w) in arcs {
        out[u] += w;
    }
    let mut a = vec![vec![0.0; n + 1]; n];
    for (v, row) in a.iter_mut().enumerate() {
        row[v] = 1.0;
        row[n] = 1.0 - d;
    }
    for &(u, v, w) in arcs {
        if out[u] > 0.0 {
            a[v][u] -= d * w / out[u];
        }
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for k in col..=n {
                    a[r][k] -= f * a[col][k];
                }
            }
        }
    }
    (0..n).map(|i| a[i][n] / a[i][i]).collect()
}

/// Points along latitude 0 spaced by `lengths`, chained into consecutive
/// segments with unit speed and the given volumes.
pub fn straight_road(lengths: &[f64], volumes: &[f64]) -> RoadNetwork {
    let mut lon = 0.0;
    let mut points = vec![Point { id: 1, lat: 0.0, lon: 0.0 }];
    for (i, len) in lengths.iter().enumerate() {
        lon += len / M_PER_DEG;
        points.push(Point {
            id: i as u32 + 2,
            lat: 0.0,
            lon,
        });
    }
    let segments = lengths
        .iter()
        .zip(volumes)
        .enumerate()
        .map(|(i, (&len, &nv))| Segment {
            id: i as u32 + 1,
            endpoint_a: i as u32 + 1,
            endpoint_b: i as u32 + 2,
            length_m: len,
            vehicles_per_period: nv,
            avg_speed_mps: 10.0,
            curved: false,
        })
        .collect();
    RoadNetwork { points, segments }
}
