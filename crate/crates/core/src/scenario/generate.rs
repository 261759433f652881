use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{haversine_m, Point, RoadNetwork, Segment, EARTH_RADIUS_M};
use crate::error::ScenarioError;

/// Shape of the synthetic street grid. Defaults reproduce the length
/// statistics of a mid-size city center (106 points, 128 segments, lengths
/// 55.5 m to 1248.2 m, mean 483.9 m).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryParams {
    pub min_length_m: f64,
    pub max_length_m: f64,
    pub mean_length_m: f64,
    /// Points per segment; 106 / 128 by default.
    pub point_ratio: f64,
    /// Maximum grid jitter as a fraction of the grid spacing, in [0, 0.5).
    pub jitter: f64,
    pub origin_lat: f64,
    pub origin_lon: f64,
}

impl Default for GeometryParams {
    fn default() -> Self {
        GeometryParams {
            min_length_m: 55.5,
            max_length_m: 1248.2,
            mean_length_m: 483.9,
            point_ratio: 106.0 / 128.0,
            jitter: 0.4,
            origin_lat: 36.72,
            origin_lon: -4.42,
        }
    }
}

/// Ranges for per-segment traffic. Vehicle counts are per abstract period;
/// the defaults keep a single RSU's service term on the order of the MU
/// capacities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrafficParams {
    pub nv_min: f64,
    pub nv_max: f64,
    pub speed_min_mps: f64,
    pub speed_max_mps: f64,
}

impl Default for TrafficParams {
    fn default() -> Self {
        TrafficParams {
            nv_min: 0.1,
            nv_max: 1.5,
            speed_min_mps: 8.33,
            speed_max_mps: 16.67,
        }
    }
}

// negated comparisons also reject NaN
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn check(params: &GeometryParams, traffic: &TrafficParams, n_segments: usize) -> Result<(), ScenarioError> {
    if n_segments == 0 {
        return Err(ScenarioError::parameter("n_segments", "must be >= 1"));
    }
    if !(params.min_length_m > 0.0) {
        return Err(ScenarioError::parameter("min_length_m", "must be > 0"));
    }
    if params.min_length_m > params.max_length_m {
        return Err(ScenarioError::parameter(
            "min_length_m",
            format!("{} exceeds max_length_m {}", params.min_length_m, params.max_length_m),
        ));
    }
    if !(params.min_length_m..=params.max_length_m).contains(&params.mean_length_m) {
        return Err(ScenarioError::parameter(
            "mean_length_m",
            "must lie between min_length_m and max_length_m",
        ));
    }
    if !(0.0..0.5).contains(&params.jitter) {
        return Err(ScenarioError::parameter("jitter", "must lie in [0, 0.5)"));
    }
    if !(params.point_ratio > 0.0) {
        return Err(ScenarioError::parameter("point_ratio", "must be > 0"));
    }
    if !(0.0 <= traffic.nv_min && traffic.nv_min <= traffic.nv_max) {
        return Err(ScenarioError::parameter("nv_min", "need 0 <= nv_min <= nv_max"));
    }
    if !(0.0 < traffic.speed_min_mps && traffic.speed_min_mps <= traffic.speed_max_mps) {
        return Err(ScenarioError::parameter(
            "speed_min_mps",
            "need 0 < speed_min_mps <= speed_max_mps",
        ));
    }
    Ok(())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Generates a connected street network with exactly `n_segments` segments
/// on a jittered grid.
///
/// A random spanning tree over the grid's neighbor edges guarantees
/// connectivity; further neighbor edges (then diagonals) are added until the
/// segment count is met. Coordinates are rescaled so the mean chord equals
/// `mean_length_m`; chords outside `[min, max]` are clamped and flagged
/// `curved`.
pub fn generate_instance(
    n_segments: usize,
    geometry: &GeometryParams,
    traffic: &TrafficParams,
    seed: u64,
) -> Result<RoadNetwork, ScenarioError> {
    check(geometry, traffic, n_segments)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let min_points = n_segments.div_ceil(2) + 1;
    let n_points = ((n_segments as f64 * geometry.point_ratio).round() as usize + 1)
        .clamp(min_points.max(2), n_segments + 1);
    let cols = (n_points as f64).sqrt().ceil() as usize;

    let spacing = 1.0;
    let mut xy: Vec<(f64, f64)> = (0..n_points)
        .map(|i| {
            let (r, c) = (i / cols, i % cols);
            let jx = rng.random_range(-geometry.jitter..=geometry.jitter);
            let jy = rng.random_range(-geometry.jitter..=geometry.jitter);
            ((c as f64 + jx) * spacing, (r as f64 + jy) * spacing)
        })
        .collect();

    let at = |r: usize, c: usize| -> Option<usize> {
        let i = r * cols + c;
        (c < cols && i < n_points).then_some(i)
    };
    let mut grid_edges = Vec::new();
    let mut diagonals = Vec::new();
    for i in 0..n_points {
        let (r, c) = (i / cols, i % cols);
        if let Some(j) = at(r, c + 1) {
            grid_edges.push((i, j));
        }
        if let Some(j) = at(r + 1, c) {
            grid_edges.push((i, j));
        }
        if let Some(j) = at(r + 1, c + 1) {
            diagonals.push((i, j));
        }
        if c > 0 {
            if let Some(j) = at(r + 1, c - 1) {
                diagonals.push((i, j));
            }
        }
    }
    grid_edges.shuffle(&mut rng);
    diagonals.shuffle(&mut rng);

    let mut uf = UnionFind((0..n_points).collect());
    let mut chosen = Vec::with_capacity(n_segments);
    let mut spare = Vec::new();
    for &(a, b) in &grid_edges {
        if uf.union(a, b) {
            chosen.push((a, b));
        } else {
            spare.push((a, b));
        }
    }
    spare.extend(diagonals);
    if chosen.len() + spare.len() < n_segments {
        let dist = |&(a, b): &(usize, usize)| {
            let (dx, dy) = (xy[a].0 - xy[b].0, xy[a].1 - xy[b].1);
            dx.hypot(dy)
        };
        let mut taken: std::collections::HashSet<(usize, usize)> =
            chosen.iter().chain(&spare).map(|&(a, b)| (a.min(b), a.max(b))).collect();
        let mut rest: Vec<(usize, usize)> = (0..n_points)
            .flat_map(|a| (a + 1..n_points).map(move |b| (a, b)))
            .filter(|p| taken.insert(*p))
            .collect();
        rest.sort_by(|p, q| dist(p).total_cmp(&dist(q)));
        spare.extend(rest);
    }
    chosen.extend(spare.into_iter().take(n_segments - chosen.len()));
    chosen.sort_by_key(|&(a, b)| (a.min(b), a.max(b)));

    let chord = |xy: &[(f64, f64)], a: usize, b: usize| (xy[a].0 - xy[b].0).hypot(xy[a].1 - xy[b].1);
    let mean_chord = chosen.iter().map(|&(a, b)| chord(&xy, a, b)).sum::<f64>() / chosen.len() as f64;
    let scale = geometry.mean_length_m / mean_chord;
    for p in &mut xy {
        p.0 *= scale;
        p.1 *= scale;
    }

    let lat0 = geometry.origin_lat.to_radians();
    let points: Vec<Point> = xy
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| Point {
            id: i as u32 + 1,
            lat: geometry.origin_lat + (y / EARTH_RADIUS_M).to_degrees(),
            lon: geometry.origin_lon + (x / (EARTH_RADIUS_M * lat0.cos())).to_degrees(),
        })
        .collect();

    let segments = chosen
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let geodesic = haversine_m(&points[a], &points[b]);
            let length = geodesic.clamp(geometry.min_length_m, geometry.max_length_m);
            Segment {
                id: i as u32 + 1,
                endpoint_a: points[a].id,
                endpoint_b: points[b].id,
                length_m: length,
                vehicles_per_period: rng.random_range(traffic.nv_min..=traffic.nv_max),
                avg_speed_mps: rng.random_range(traffic.speed_min_mps..=traffic.speed_max_mps),
                curved: length != geodesic,
            }
        })
        .collect();

    Ok(RoadNetwork { points, segments })
}
