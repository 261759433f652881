//! Local metric projection and circle/chord coverage.
//!
//! Segments are treated as straight chords in a local equirectangular
//! projection about the network centroid, so effective radio ranges can be
//! compared in meters.

use crate::scenario::{RoadNetwork, EARTH_RADIUS_M};

/// Normalized discriminants below this value are treated as tangency.
pub const TANGENT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Xy {
    pub x: f64,
    pub y: f64,
}

impl Xy {
    pub fn new(x: f64, y: f64) -> Self {
        Xy { x, y }
    }

    pub fn dist(self, other: Xy) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn lerp(self, other: Xy, t: f64) -> Xy {
        Xy::new(self.x + t * (other.x - self.x), self.y + t * (other.y - self.y))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedSegment {
    pub id: u32,
    pub a: Xy,
    pub b: Xy,
    /// Declared length, which may differ from the chord for curved roads.
    pub length_m: f64,
}

impl ProjectedSegment {
    pub fn chord_length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn at(&self, t: f64) -> Xy {
        self.a.lerp(self.b, t)
    }

    /// Euclidean distance from `p` to the closest point of the chord.
    pub fn distance_to(&self, p: Xy) -> f64 {
        let (dx, dy) = (self.b.x - self.a.x, self.b.y - self.a.y);
        let len2 = dx * dx + dy * dy;
        let t = if len2 == 0.0 {
            0.0
        } else {
            (((p.x - self.a.x) * dx + (p.y - self.a.y) * dy) / len2).clamp(0.0, 1.0)
        };
        self.at(t).dist(p)
    }

    /// Minimum distance between two chords.
    pub fn distance_to_segment(&self, other: &ProjectedSegment) -> f64 {
        if chords_cross(self, other) {
            return 0.0;
        }
        self.distance_to(other.a)
            .min(self.distance_to(other.b))
            .min(other.distance_to(self.a))
            .min(other.distance_to(self.b))
    }
}

fn chords_cross(p: &ProjectedSegment, q: &ProjectedSegment) -> bool {
    let orient = |a: Xy, b: Xy, c: Xy| (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    let d1 = orient(p.a, p.b, q.a);
    let d2 = orient(p.a, p.b, q.b);
    let d3 = orient(q.a, q.b, p.a);
    let d4 = orient(q.a, q.b, p.b);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// A road network in local (x, y) meters. Segment order follows the source
/// network.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedNetwork {
    pub origin_lat: f64,
    pub origin_lon: f64,
    pub segments: Vec<ProjectedSegment>,
}

impl ProjectedNetwork {
    pub fn segment(&self, id: u32) -> Option<&ProjectedSegment> {
        self.segments.iter().find(|s| s.id == id)
    }
}

/// Projects `(lat, lon)` with `x = R * dlon * cos(lat0)`, `y = R * dlat`.
pub fn project_point(lat: f64, lon: f64, origin_lat: f64, origin_lon: f64) -> Xy {
    let x = EARTH_RADIUS_M * (lon - origin_lon).to_radians() * origin_lat.to_radians().cos();
    let y = EARTH_RADIUS_M * (lat - origin_lat).to_radians();
    Xy::new(x, y)
}

/// Equirectangular projection about the centroid of the network's points.
pub fn project_network(network: &RoadNetwork) -> ProjectedNetwork {
    let n = network.points.len().max(1) as f64;
    let origin_lat = network.points.iter().map(|p| p.lat).sum::<f64>() / n;
    let origin_lon = network.points.iter().map(|p| p.lon).sum::<f64>() / n;
    let index = network.point_index();
    let xy = |id: u32| {
        let p = &network.points[index[&id]];
        project_point(p.lat, p.lon, origin_lat, origin_lon)
    };
    let segments = network
        .segments
        .iter()
        .map(|s| ProjectedSegment {
            id: s.id,
            a: xy(s.endpoint_a),
            b: xy(s.endpoint_b),
            length_m: s.length_m,
        })
        .collect();
    ProjectedNetwork {
        origin_lat,
        origin_lon,
        segments,
    }
}

/// An RSU installed at `relative_pos` along its host segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacedRsu {
    pub segment_id: u32,
    pub rsu_type: u32,
    pub relative_pos: f64,
    pub abs_coords: Xy,
}

impl PlacedRsu {
    pub fn on(segment: &ProjectedSegment, rsu_type: u32, relative_pos: f64) -> Self {
        PlacedRsu {
            segment_id: segment.id,
            rsu_type,
            relative_pos,
            abs_coords: segment.at(relative_pos),
        }
    }
}

/// Portion `[lo, hi]` of a segment (in relative chord position) inside an
/// RSU's range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageInterval {
    pub segment_id: u32,
    pub lo: f64,
    pub hi: f64,
    pub rsu_index: usize,
}

impl CoverageInterval {
    pub fn fraction(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Intersection of the chord `a -> b` with the disk of `radius` about
/// `center`, as a parameter interval within `[0, 1]`.
///
/// Solves `|a + t (b - a) - center|^2 = radius^2` in closed form. Tangent
/// contacts and empty overlaps return `None`.
pub fn chord_disk_interval(a: Xy, b: Xy, center: Xy, radius: f64) -> Option<(f64, f64)> {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let (fx, fy) = (a.x - center.x, a.y - center.y);
    let qa = dx * dx + dy * dy;
    let c = fx * fx + fy * fy - radius * radius;
    if qa == 0.0 {
        return (c < 0.0).then_some((0.0, 1.0));
    }
    let half_b = (fx * dx + fy * dy) / qa;
    // Squared half-width of the root interval in parameter units.
    let disc = half_b * half_b - c / qa;
    if disc < TANGENT_EPS {
        return None;
    }
    let w = disc.sqrt();
    let lo = (-half_b - w).max(0.0);
    let hi = (-half_b + w).min(1.0);
    (lo < hi).then_some((lo, hi))
}

/// Every segment portion inside the disk of radius `err_m` around `rsu`.
/// At most one interval is returned per segment.
pub fn covered_intervals(
    rsu: &PlacedRsu,
    rsu_index: usize,
    network: &ProjectedNetwork,
    err_m: f64,
) -> Vec<CoverageInterval> {
    network
        .segments
        .iter()
        .filter_map(|s| {
            chord_disk_interval(s.a, s.b, rsu.abs_coords, err_m).map(|(lo, hi)| CoverageInterval {
                segment_id: s.id,
                lo,
                hi,
                rsu_index,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{Point, Segment};
    use proptest::prelude::*;

    fn straight(len: f64) -> ProjectedSegment {
        ProjectedSegment {
            id: 1,
            a: Xy::new(0.0, 0.0),
            b: Xy::new(len, 0.0),
            length_m: len,
        }
    }

    #[test]
    fn identical_points_project_to_zero_distance() {
        let p = project_point(36.7, -4.4, 36.7, -4.4);
        let q = project_point(36.7, -4.4, 36.7, -4.4);
        assert_eq!(p.dist(q), 0.0);
    }

    #[test]
    fn latitude_step_matches_hand_value() {
        // R * 0.001 deg in radians = 6371000 * 1.745329e-5 = 111.1949 m
        let oracle = 6_371_000.0 * 0.001 * std::f64::consts::PI / 180.0;
        let p = project_point(36.7, -4.4, 36.7, -4.4);
        let q = project_point(36.701, -4.4, 36.7, -4.4);
        assert!((p.dist(q) - oracle).abs() < 1e-9);
        assert!((p.dist(q) - 111.19).abs() < 0.01);
    }

    #[test]
    fn projection_is_translation_invariant_in_longitude() {
        let pts = vec![
            Point { id: 1, lat: 36.70, lon: -4.42 },
            Point { id: 2, lat: 36.71, lon: -4.41 },
            Point { id: 3, lat: 36.72, lon: -4.43 },
        ];
        let seg = |id, a, b| Segment {
            id,
            endpoint_a: a,
            endpoint_b: b,
            length_m: 1.0,
            vehicles_per_period: 1.0,
            avg_speed_mps: 1.0,
            curved: true,
        };
        let net = RoadNetwork {
            points: pts.clone(),
            segments: vec![seg(1, 1, 2), seg(2, 2, 3), seg(3, 1, 3)],
        };
        let mut shifted = net.clone();
        for p in &mut shifted.points {
            p.lon += 0.37;
        }
        let (p1, p2) = (project_network(&net), project_network(&shifted));
        for (s, t) in p1.segments.iter().zip(&p2.segments) {
            let (d1, d2) = (s.chord_length(), t.chord_length());
            assert!((d1 - d2).abs() / d1 < 1e-6);
        }
    }

    #[test]
    fn midpoint_of_short_segment_is_fully_covered() {
        let s = straight(400.0);
        assert_eq!(chord_disk_interval(s.a, s.b, s.at(0.5), 503.93), Some((0.0, 1.0)));
    }

    #[test]
    fn endpoint_disk_covers_leading_quarter() {
        let s = straight(1000.0);
        let (lo, hi) = chord_disk_interval(s.a, s.b, s.a, 250.0).unwrap();
        assert_eq!(lo, 0.0);
        assert!((hi - 0.25).abs() < 1e-12);
    }

    #[test]
    fn tangent_and_distant_segments_yield_nothing() {
        let s = straight(1000.0);
        assert_eq!(chord_disk_interval(s.a, s.b, Xy::new(500.0, 100.0), 100.0), None);
        assert_eq!(chord_disk_interval(s.a, s.b, Xy::new(500.0, 300.0), 100.0), None);
        assert_eq!(chord_disk_interval(s.a, s.b, Xy::new(1500.0, 0.0), 100.0), None);
    }

    #[test]
    fn covered_intervals_skips_out_of_range_segments() {
        let net = ProjectedNetwork {
            origin_lat: 0.0,
            origin_lon: 0.0,
            segments: vec![
                straight(400.0),
                ProjectedSegment {
                    id: 2,
                    a: Xy::new(0.0, 5000.0),
                    b: Xy::new(100.0, 5000.0),
                    length_m: 100.0,
                },
            ],
        };
        let rsu = PlacedRsu::on(&net.segments[0], 3, 0.5);
        let iv = covered_intervals(&rsu, 0, &net, 503.93);
        assert_eq!(iv.len(), 1);
        assert_eq!((iv[0].segment_id, iv[0].lo, iv[0].hi), (1, 0.0, 1.0));
    }

    fn arb_xy() -> impl Strategy<Value = Xy> {
        (-1000.0..1000.0f64, -1000.0..1000.0f64).prop_map(|(x, y)| Xy::new(x, y))
    }

    proptest! {
        #[test]
        fn interval_matches_sampled_membership(a in arb_xy(), b in arb_xy(), c in arb_xy(), r in 10.0..800.0f64) {
            prop_assume!(a.dist(b) > 1.0);
            let got = chord_disk_interval(a, b, c, r);
            let n = 10_000;
            let inside: Vec<f64> = (0..=n)
                .map(|i| i as f64 / n as f64)
                .filter(|&t| a.lerp(b, t).dist(c) <= r)
                .collect();
            match got {
                None => prop_assert!(inside.len() <= 2),
                Some((lo, hi)) if inside.is_empty() => prop_assert!(hi - lo <= 2e-4),
                Some((lo, hi)) => {
                    let (slo, shi) = (inside[0], *inside.last().unwrap());
                    prop_assert!((lo - slo).abs() <= 1e-3, "lo {} vs {}", lo, slo);
                    prop_assert!((hi - shi).abs() <= 1e-3, "hi {} vs {}", hi, shi);
                }
            }
        }

        #[test]
        fn larger_range_contains_smaller(a in arb_xy(), b in arb_xy(), c in arb_xy(), r1 in 1.0..800.0f64, dr in 0.0..500.0f64) {
            prop_assume!(a.dist(b) > 1.0);
            if let Some((lo1, hi1)) = chord_disk_interval(a, b, c, r1) {
                let (lo2, hi2) = chord_disk_interval(a, b, c, r1 + dr).expect("larger disk intersects");
                prop_assert!(lo2 <= lo1 && hi1 <= hi2);
            }
        }

        #[test]
        fn covered_length_bounded_by_diameter(a in arb_xy(), b in arb_xy(), c in arb_xy(), r in 1.0..800.0f64) {
            prop_assume!(a.dist(b) > 1.0);
            if let Some((lo, hi)) = chord_disk_interval(a, b, c, r) {
                let len = a.dist(b);
                prop_assert!((hi - lo) * len <= (2.0 * r).min(len) * (1.0 + 1e-9));
            }
        }
    }
}
