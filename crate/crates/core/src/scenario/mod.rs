//! Problem-instance data model: road network, RSU catalog, application
//! profile, and the per-(type, application) capacity table.
//!
//! All types are plain immutable data once validated; evaluators share them
//! read-only across threads.

mod catalog;
mod generate;
mod io;
mod traffic;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ScenarioError;

pub use catalog::{default_catalog, default_max_users, profile};
pub use generate::{generate_instance, GeometryParams, TrafficParams};
pub use io::{load_scenario, save_scenario, scenario_from_str, scenario_to_string};
pub use traffic::apply_traffic_pattern;

/// Mean Earth radius in meters, used for haversine lengths and the local
/// projection.
pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

/// Allowed relative disagreement between a declared segment length and the
/// geodesic distance between its endpoints.
pub const LENGTH_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub id: u32,
    pub lat: f64,
    pub lon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub id: u32,
    pub endpoint_a: u32,
    pub endpoint_b: u32,
    pub length_m: f64,
    /// Vehicles crossing the segment per (abstract) time period.
    pub vehicles_per_period: f64,
    pub avg_speed_mps: f64,
    /// Declared curved: the stored length may exceed the chord length.
    #[serde(default, skip_serializing_if = "is_false")]
    pub curved: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl Segment {
    /// Seconds a vehicle needs to traverse the full segment.
    pub fn traversal_time(&self) -> f64 {
        self.length_m / self.avg_speed_mps
    }

    /// Segment weight `NV * len / sp`, the vehicle-seconds per period carried
    /// by the whole segment.
    pub fn service_weight(&self) -> f64 {
        self.vehicles_per_period * self.traversal_time()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RoadNetwork {
    pub points: Vec<Point>,
    pub segments: Vec<Segment>,
}

impl RoadNetwork {
    pub fn point_index(&self) -> HashMap<u32, usize> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id, i))
            .collect()
    }

    pub fn segment_position(&self, id: u32) -> Option<usize> {
        self.segments.iter().position(|s| s.id == id)
    }

    /// Checks every network invariant, returning the first violation.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        let mut ids = HashSet::new();
        for (i, p) in self.points.iter().enumerate() {
            if !ids.insert(p.id) {
                return Err(ScenarioError::validation(
                    format!("points[{i}].id"),
                    format!("duplicate point id {}", p.id),
                ));
            }
            if !(-90.0..=90.0).contains(&p.lat) {
                return Err(ScenarioError::validation(
                    format!("points[{i}].lat"),
                    format!("latitude {} outside [-90, 90]", p.lat),
                ));
            }
            if !(-180.0..=180.0).contains(&p.lon) {
                return Err(ScenarioError::validation(
                    format!("points[{i}].lon"),
                    format!("longitude {} outside [-180, 180]", p.lon),
                ));
            }
        }

        let index = self.point_index();
        let mut seg_ids = HashSet::new();
        let mut pairs = HashSet::new();
        for (i, s) in self.segments.iter().enumerate() {
            let field = |name: &str| format!("segments[{i}].{name}");
            if !seg_ids.insert(s.id) {
                return Err(ScenarioError::validation(
                    field("id"),
                    format!("duplicate segment id {}", s.id),
                ));
            }
            let a = index.get(&s.endpoint_a).ok_or_else(|| {
                ScenarioError::validation(
                    field("endpoint_a"),
                    format!("references missing point id {}", s.endpoint_a),
                )
            })?;
            let b = index.get(&s.endpoint_b).ok_or_else(|| {
                ScenarioError::validation(
                    field("endpoint_b"),
                    format!("references missing point id {}", s.endpoint_b),
                )
            })?;
            if s.endpoint_a == s.endpoint_b {
                return Err(ScenarioError::validation(
                    field("endpoint_b"),
                    "segment endpoints must differ",
                ));
            }
            let key = (s.endpoint_a.min(s.endpoint_b), s.endpoint_a.max(s.endpoint_b));
            if !pairs.insert(key) {
                return Err(ScenarioError::validation(
                    field("endpoint_b"),
                    format!("duplicate segment between points {} and {}", key.0, key.1),
                ));
            }
            if !(s.length_m.is_finite() && s.length_m > 0.0) {
                return Err(ScenarioError::validation(field("length_m"), "must be > 0"));
            }
            if !(s.vehicles_per_period.is_finite() && s.vehicles_per_period >= 0.0) {
                return Err(ScenarioError::validation(
                    field("vehicles_per_period"),
                    "must be >= 0",
                ));
            }
            if !(s.avg_speed_mps.is_finite() && s.avg_speed_mps > 0.0) {
                return Err(ScenarioError::validation(
                    field("avg_speed_mps"),
                    "must be > 0",
                ));
            }
            if !s.curved {
                let geodesic = haversine_m(&self.points[*a], &self.points[*b]);
                let rel = (s.length_m - geodesic).abs() / s.length_m.max(geodesic);
                if rel > LENGTH_TOLERANCE {
                    return Err(ScenarioError::validation(
                        field("length_m"),
                        format!(
                            "declared {:.2} m but endpoints are {:.2} m apart; mark the segment `curved` to override",
                            s.length_m, geodesic
                        ),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Great-circle distance between two points.
pub fn haversine_m(p: &Point, q: &Point) -> f64 {
    let (lat1, lat2) = (p.lat.to_radians(), q.lat.to_radians());
    let dlat = lat2 - lat1;
    let dlon = (q.lon - p.lon).to_radians();
    let h = (dlat / 2.0).sin().powi(2) + lat1.cos() * lat2.cos() * (dlon / 2.0).sin().powi(2);
    2.0 * EARTH_RADIUS_M * h.sqrt().min(1.0).asin()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RsuType {
    pub id: u32,
    pub label: String,
    pub gain_dbi: f64,
    pub cost_usd: f64,
    /// Effective radio range in meters.
    pub err_m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Application {
    Data,
    Voice,
    Video,
}

impl Application {
    pub const ALL: [Application; 3] = [Application::Data, Application::Voice, Application::Video];

    pub fn as_str(self) -> &'static str {
        match self {
            Application::Data => "data",
            Application::Voice => "voice",
            Application::Video => "video",
        }
    }
}

impl fmt::Display for Application {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Application {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "data" | "safety" => Ok(Application::Data),
            "voice" | "audio" => Ok(Application::Voice),
            "video" => Ok(Application::Video),
            other => Err(format!("unknown application `{other}` (data | voice | video)")),
        }
    }
}

/// QoS requirements of a VANET application.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApplicationProfile {
    pub id: Application,
    pub packet_bytes: u32,
    pub flow_kbps: f64,
    pub e2ed_ms_max: f64,
    pub pdr_min_pct: f64,
}

impl ApplicationProfile {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.packet_bytes == 0 {
            return Err(ScenarioError::validation("application.packet_bytes", "must be > 0"));
        }
        for (name, v) in [("flow_kbps", self.flow_kbps), ("e2ed_ms_max", self.e2ed_ms_max)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ScenarioError::validation(
                    format!("application.{name}"),
                    "must be > 0",
                ));
            }
        }
        if !(self.pdr_min_pct > 0.0 && self.pdr_min_pct <= 100.0) {
            return Err(ScenarioError::validation(
                "application.pdr_min_pct",
                "must lie in (0, 100]",
            ));
        }
        Ok(())
    }
}

/// The MU function: vehicles an RSU type can serve under an application's
/// QoS requirements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MaxUsersTable {
    entries: BTreeMap<(u32, Application), u32>,
}

impl MaxUsersTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, rsu_type: u32, application: Application, max_users: u32) {
        self.entries.insert((rsu_type, application), max_users);
    }

    pub fn get(&self, rsu_type: u32, application: Application) -> Option<u32> {
        self.entries.get(&(rsu_type, application)).copied()
    }

    pub fn remove(&mut self, rsu_type: u32, application: Application) -> Option<u32> {
        self.entries.remove(&(rsu_type, application))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, Application, u32)> + '_ {
        self.entries.iter().map(|(&(t, a), &m)| (t, a, m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrafficPattern {
    #[default]
    Normal,
    Low,
    High,
}

impl TrafficPattern {
    pub const ALL: [TrafficPattern; 3] = [TrafficPattern::Normal, TrafficPattern::Low, TrafficPattern::High];

    pub fn as_str(self) -> &'static str {
        match self {
            TrafficPattern::Normal => "normal",
            TrafficPattern::Low => "low",
            TrafficPattern::High => "high",
        }
    }

    /// Range of the multiplicative factor applied to each segment's traffic.
    pub fn factor_range(self) -> (f64, f64) {
        match self {
            TrafficPattern::Normal => (1.0, 1.0),
            TrafficPattern::Low => (0.8, 1.0),
            TrafficPattern::High => (1.0, 1.2),
        }
    }
}

impl fmt::Display for TrafficPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TrafficPattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "normal" => Ok(TrafficPattern::Normal),
            "low" => Ok(TrafficPattern::Low),
            "high" => Ok(TrafficPattern::High),
            other => Err(format!("unknown traffic pattern `{other}` (normal | low | high)")),
        }
    }
}

/// A complete, self-contained problem instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub network: RoadNetwork,
    pub catalog: Vec<RsuType>,
    pub application: ApplicationProfile,
    pub mu: MaxUsersTable,
    pub traffic_pattern: TrafficPattern,
    pub seed: u64,
}

impl Scenario {
    /// Builds a scenario over `network` with the default catalog and
    /// capacity table for `application`.
    pub fn with_defaults(network: RoadNetwork, application: Application) -> Self {
        Scenario {
            name: "scenario".to_string(),
            network,
            catalog: default_catalog(),
            application: profile(application),
            mu: default_max_users(),
            traffic_pattern: TrafficPattern::Normal,
            seed: 0,
        }
    }

    pub fn num_types(&self) -> usize {
        self.catalog.len()
    }

    pub fn rsu_type(&self, id: u32) -> Option<&RsuType> {
        id.checked_sub(1)
            .and_then(|i| self.catalog.get(i as usize))
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        self.network.validate()?;
        if self.catalog.is_empty() {
            return Err(ScenarioError::validation("rsu_types", "catalog is empty"));
        }
        for (i, t) in self.catalog.iter().enumerate() {
            if t.id as usize != i + 1 {
                return Err(ScenarioError::validation(
                    format!("rsu_types[{i}].id"),
                    format!("expected id {} (ids must be contiguous from 1), found {}", i + 1, t.id),
                ));
            }
            if !(t.cost_usd.is_finite() && t.cost_usd > 0.0) {
                return Err(ScenarioError::validation(
                    format!("rsu_types[{i}].cost_usd"),
                    "must be > 0",
                ));
            }
            if !(t.err_m.is_finite() && t.err_m > 0.0) {
                return Err(ScenarioError::validation(
                    format!("rsu_types[{i}].err_m"),
                    "must be > 0",
                ));
            }
        }
        self.application.validate()?;
        for t in &self.catalog {
            if self.mu.get(t.id, self.application.id).is_none() {
                return Err(ScenarioError::validation(
                    "mu_table",
                    format!(
                        "MU table incomplete: no entry for (t{}, {})",
                        t.id, self.application.id
                    ),
                ));
            }
        }
        Ok(())
    }
}
