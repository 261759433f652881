use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while loading, validating or generating scenarios.
#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("schema error at line {line}, column {column}: {message}")]
    Schema {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error in `{field}`: {message}")]
    Validation { field: String, message: String },
    #[error("invalid generator parameter `{field}`: {message}")]
    Parameter { field: String, message: String },
}

impl ScenarioError {
    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn parameter(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Parameter {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// Errors raised while decoding genomes or evaluating objectives.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("genome has {actual} genes but the network has {expected} segments")]
    Length { expected: usize, actual: usize },
    #[error("gene {index} = {value} is outside [0, {upper})")]
    Encoding {
        index: usize,
        value: f64,
        upper: usize,
    },
    #[error("no MU entry for RSU type {rsu_type} and application `{application}`")]
    MissingMaxUsers {
        rsu_type: u32,
        application: String,
    },
    #[error("unknown RSU type {0}")]
    UnknownType(u32),
    #[error("unknown segment id {0}")]
    UnknownSegment(u32),
    #[error("relative position {0} is outside [0, 1)")]
    Position(f64),
    #[error("segment {0} hosts more than one RSU")]
    DuplicateSegment(u32),
}

/// Errors raised by the evolutionary engine.
#[derive(Debug, Error)]
pub enum EngineError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("evaluation failed at generation {generation}, individual {index}")]
    Evaluation {
        generation: usize,
        index: usize,
        #[source]
        source: EvalError,
    },
}

/// Errors raised by front metrics and front files.
#[derive(Debug, Error)]
pub enum MetricError {
    #[error("point (qos {qos}, cost {cost}) lies outside the normalization box")]
    OutsideBox { qos: f64, cost: f64 },
    #[error("reference front has zero hypervolume")]
    ZeroReference,
    #[error("degenerate normalization box: {0}")]
    DegenerateBox(String),
    #[error("front file {path} is empty")]
    EmptyFront { path: PathBuf },
    #[error("front file {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("cannot access {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
