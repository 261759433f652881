//! Weighted PageRank over the street graph and the constructive placement
//! that walks segments in rank order.

use std::collections::{BTreeMap, HashMap};

use crate::metrics::{FrontPoint, ParetoFront};
use crate::objective::{CoverageState, Deployment, Evaluator, Genome, ObjectiveVector};
use crate::scenario::RoadNetwork;

pub const DEFAULT_DAMPING: f64 = 0.85;
pub const DEFAULT_EPSILON: f64 = 1e-8;
pub const DEFAULT_MAX_ITERS: usize = 1000;

/// Minimum relative QoS increase for the constructive heuristic to keep a
/// placement.
pub const MIN_RELATIVE_GAIN: f64 = 0.01;

/// Candidate positions tested per segment: `0.0, 0.1, ..., 0.9`.
pub const POSITIONS_PER_SEGMENT: usize = 10;

/// Directed weighted graph over the network's points. Every segment becomes
/// two opposite arcs carrying the segment weight `NV * len / sp`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrGraph {
    pub vertices: Vec<u32>,
    /// `(from, to, weight)` with vertex indices into `vertices`.
    pub arcs: Vec<(usize, usize, f64)>,
}

impl PrGraph {
    pub fn from_network(network: &RoadNetwork) -> Self {
        let index = network.point_index();
        let mut arcs = Vec::with_capacity(2 * network.segments.len());
        for s in &network.segments {
            let (a, b) = (index[&s.endpoint_a], index[&s.endpoint_b]);
            let w = s.service_weight();
            arcs.push((a, b, w));
            arcs.push((b, a, w));
        }
        PrGraph {
            vertices: network.points.iter().map(|p| p.id).collect(),
            arcs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PageRank {
    /// Rank per point id.
    pub values: BTreeMap<u32, f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Iterates `PR(v) = (1 - d) + d * sum_{u -> v} w_uv * PR(u) / out(u)` from
/// `PR = d` until the largest change drops below `epsilon` or `max_iters`
/// sweeps are done. Vertices without outgoing weight contribute nothing.
pub fn weighted_pagerank(graph: &PrGraph, d: f64, epsilon: f64, max_iters: usize) -> PageRank {
    let n = graph.vertices.len();
    let mut out_weight = vec![0.0; n];
    for &(from, _, w) in &graph.arcs {
        out_weight[from] += w;
    }
    let mut incoming: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for &(from, to, w) in &graph.arcs {
        if out_weight[from] > 0.0 {
            incoming[to].push((from, w / out_weight[from]));
        }
    }

    let mut pr = vec![d; n];
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters {
        let mut delta = 0.0f64;
        for (v, inc) in incoming.iter().enumerate() {
            let s: f64 = inc.iter().map(|&(u, share)| share * pr[u]).sum();
            next[v] = (1.0 - d) + d * s;
            delta = delta.max((next[v] - pr[v]).abs());
        }
        std::mem::swap(&mut pr, &mut next);
        iterations += 1;
        if delta < epsilon {
            converged = true;
            break;
        }
    }
    PageRank {
        values: graph.vertices.iter().copied().zip(pr).collect(),
        iterations,
        converged,
    }
}

/// Segment ids sorted by descending `PR(a) + PR(b)`, ties by ascending id.
pub fn rank_segments(network: &RoadNetwork, pr: &BTreeMap<u32, f64>) -> Vec<u32> {
    let mut scored: Vec<(u32, f64)> = network
        .segments
        .iter()
        .map(|s| (s.id, pr[&s.endpoint_a] + pr[&s.endpoint_b]))
        .collect();
    scored.sort_by(|x, y| y.1.total_cmp(&x.1).then(x.0.cmp(&y.0)));
    scored.into_iter().map(|(id, _)| id).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceStep {
    pub segment_id: u32,
    pub rsu_type: u32,
    pub relative_pos: f64,
    pub qos: f64,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructiveResult {
    pub deployment: Deployment,
    /// Running (QoS, cost) after each accepted placement.
    pub trace: Vec<TraceStep>,
    pub order: Vec<u32>,
}

impl ConstructiveResult {
    /// The trace as a front, each point carrying the genome of the
    /// deployment prefix that produced it.
    pub fn front(&self, ev: &Evaluator, provenance: &str) -> ParetoFront {
        let mut genes = vec![0.0; ev.num_segments()];
        let points = self.trace.iter().map(|step| {
            let pos = ev.segment_position(step.segment_id).expect("traced segment exists");
            genes[pos] = crate::objective::compose_gene(step.rsu_type, step.relative_pos);
            FrontPoint::new(ObjectiveVector::new(step.qos, step.cost), Some(Genome(genes.clone())))
        });
        ParetoFront::from_points(points.collect::<Vec<_>>(), provenance)
    }
}

/// Constructive placement over segments in PageRank order.
///
/// Each segment tries every RSU type at ten equidistant positions and keeps
/// the configuration with the highest total QoS, provided it raises the
/// running QoS by at least 1 %. All segments are scanned.
pub fn pagerank_constructive(ev: &Evaluator, network: &RoadNetwork) -> ConstructiveResult {
    let graph = PrGraph::from_network(network);
    let pr = weighted_pagerank(&graph, DEFAULT_DAMPING, DEFAULT_EPSILON, DEFAULT_MAX_ITERS);
    let order = rank_segments(network, &pr.values);
    let positions: HashMap<u32, usize> = network
        .segments
        .iter()
        .enumerate()
        .map(|(i, s)| (s.id, i))
        .collect();

    let mut state = CoverageState::new(ev);
    let mut trace = Vec::new();
    for &seg_id in &order {
        let pos = positions[&seg_id];
        let before = state.qos();
        let mut best: Option<(u32, f64, f64)> = None;
        for t in 1..=ev.num_types() as u32 {
            for n in 0..POSITIONS_PER_SEGMENT {
                let rel = n as f64 * 0.1;
                let gain = state.marginal_gain(pos, t, rel);
                if best.is_none_or(|(_, _, g)| gain > g) {
                    best = Some((t, rel, gain));
                }
            }
        }
        let Some((t, rel, gain)) = best else { continue };
        if gain > 0.0 && gain >= MIN_RELATIVE_GAIN * before {
            state.insert(pos, t, rel);
            trace.push(TraceStep {
                segment_id: seg_id,
                rsu_type: t,
                relative_pos: rel,
                qos: state.qos(),
                cost: state.cost(),
            });
        }
    }
    ConstructiveResult {
        deployment: Deployment {
            placed: state.placed().to_vec(),
        },
        trace,
        order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{Point, Segment};

    fn seg(id: u32, a: u32, b: u32, nv: f64) -> Segment {
        Segment {
            id,
            endpoint_a: a,
            endpoint_b: b,
            length_m: 100.0,
            vehicles_per_period: nv,
            avg_speed_mps: 10.0,
            curved: true,
        }
    }

    fn pts(n: u32) -> Vec<Point> {
        (1..=n)
            .map(|id| Point {
                id,
                lat: 36.7,
                lon: -4.4 + id as f64 * 0.001,
            })
            .collect()
    }

    #[test]
    fn two_vertices_tie() {
        let net = RoadNetwork {
            points: pts(2),
            segments: vec![seg(1, 1, 2, 3.0)],
        };
        let pr = weighted_pagerank(&PrGraph::from_network(&net), 0.85, 1e-12, 1000);
        assert_eq!(pr.values[&1], pr.values[&2]);
    }

    #[test]
    fn zero_damping_gives_ones() {
        let net = RoadNetwork {
            points: pts(3),
            segments: vec![seg(1, 1, 2, 3.0), seg(2, 2, 3, 1.0)],
        };
        let pr = weighted_pagerank(&PrGraph::from_network(&net), 0.0, 1e-12, 1);
        assert!(pr.values.values().all(|&v| v == 1.0));
    }

    #[test]
    fn isolated_vertex_keeps_floor() {
        let net = RoadNetwork {
            points: pts(3),
            segments: vec![seg(1, 1, 2, 3.0)],
        };
        let pr = weighted_pagerank(&PrGraph::from_network(&net), 0.85, 1e-12, 1000);
        assert!((pr.values[&3] - 0.15).abs() < 1e-12);
        assert!(pr.converged);
    }

    #[test]
    fn star_leaves_tie_and_sort_by_id() {
        let net = RoadNetwork {
            points: pts(5),
            segments: vec![seg(4, 1, 5, 1.0), seg(2, 1, 3, 1.0), seg(3, 1, 4, 1.0), seg(1, 1, 2, 1.0)],
        };
        let pr = weighted_pagerank(&PrGraph::from_network(&net), 0.85, 1e-10, 1000);
        assert_eq!(rank_segments(&net, &pr.values), vec![1, 2, 3, 4]);
    }

    #[test]
    fn single_segment_ranks_itself() {
        let net = RoadNetwork {
            points: pts(2),
            segments: vec![seg(7, 1, 2, 1.0)],
        };
        let pr = weighted_pagerank(&PrGraph::from_network(&net), 0.85, 1e-10, 1000);
        assert_eq!(rank_segments(&net, &pr.values), vec![7]);
    }
}
