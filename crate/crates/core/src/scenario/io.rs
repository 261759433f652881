use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    Application, ApplicationProfile, MaxUsersTable, Point, RoadNetwork, RsuType, Scenario,
    Segment, TrafficPattern,
};
use crate::error::ScenarioError;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    points: Vec<Point>,
    segments: Vec<Segment>,
    rsu_types: Vec<RsuType>,
    application: ApplicationProfile,
    mu_table: Vec<MuEntry>,
    meta: Meta,
}

#[derive(Serialize, Deserialize)]
struct MuEntry {
    rsu_type: u32,
    application: Application,
    max_users: u32,
}

#[derive(Serialize, Deserialize)]
struct Meta {
    #[serde(default)]
    name: String,
    #[serde(default)]
    traffic_pattern: TrafficPattern,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_units")]
    units: String,
}

fn default_units() -> String {
    "length=m speed=m/s cost=USD traffic=vehicles/period".to_string()
}

/// Parses and validates a scenario document.
pub fn scenario_from_str(text: &str) -> Result<Scenario, ScenarioError> {
    let file: ScenarioFile = serde_json::from_str(text).map_err(|e| ScenarioError::Schema {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut mu = MaxUsersTable::new();
    for e in &file.mu_table {
        mu.insert(e.rsu_type, e.application, e.max_users);
    }
    let scenario = Scenario {
        name: file.meta.name,
        network: RoadNetwork {
            points: file.points,
            segments: file.segments,
        },
        catalog: file.rsu_types,
        application: file.application,
        mu,
        traffic_pattern: file.meta.traffic_pattern,
        seed: file.meta.seed,
    };
    scenario.validate()?;
    Ok(scenario)
}

/// Serializes a scenario as a pretty-printed JSON document. Output is a pure
/// function of the scenario, so repeated saves are byte-identical.
pub fn scenario_to_string(scenario: &Scenario) -> String {
    let file = ScenarioFile {
        points: scenario.network.points.clone(),
        segments: scenario.network.segments.clone(),
        rsu_types: scenario.catalog.clone(),
        application: scenario.application.clone(),
        mu_table: scenario
            .mu
            .iter()
            .map(|(rsu_type, application, max_users)| MuEntry {
                rsu_type,
                application,
                max_users,
            })
            .collect(),
        meta: Meta {
            name: scenario.name.clone(),
            traffic_pattern: scenario.traffic_pattern,
            seed: scenario.seed,
            units: default_units(),
        },
    };
    let mut text = serde_json::to_string_pretty(&file).expect("scenario serializes");
    text.push('\n');
    text
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    scenario_from_str(&text)
}

pub fn save_scenario(scenario: &Scenario, path: impl AsRef<Path>) -> Result<(), ScenarioError> {
    let path = path.as_ref();
    fs::write(path, scenario_to_string(scenario)).map_err(|source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    })
}
