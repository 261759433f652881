//! Front CSV files: header `qos,cost,genome`, genome as `;`-separated reals
//! (empty when unknown).

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::{FrontPoint, ParetoFront};
use crate::error::MetricError;
use crate::objective::{Genome, ObjectiveVector};

fn genome_field(genome: &Option<Genome>) -> String {
    genome
        .as_ref()
        .map(|g| g.genes().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";"))
        .unwrap_or_default()
}

pub fn front_to_string(front: &ParetoFront) -> String {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(["qos", "cost", "genome"]).expect("in-memory write");
    for p in front.points() {
        wtr.write_record([
            p.objectives.qos.to_string(),
            p.objectives.cost.to_string(),
            genome_field(&p.genome),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("ascii csv")
}

pub fn write_front_csv(front: &ParetoFront, path: impl AsRef<Path>) -> Result<(), MetricError> {
    let path = path.as_ref();
    let io_err = |source| MetricError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut file = File::create(path).map_err(io_err)?;
    file.write_all(front_to_string(front).as_bytes()).map_err(io_err)
}

/// Parses a front CSV. The result is re-filtered to its non-dominated subset.
pub fn front_from_reader(reader: impl Read, path: &Path, provenance: &str) -> Result<ParetoFront, MetricError> {
    let parse_err = |message: String| MetricError::Parse {
        path: path.to_path_buf(),
        message,
    };
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr.headers().map_err(|e| parse_err(e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["qos", "cost", "genome"] {
        return Err(parse_err(format!("expected header `qos,cost,genome`, found `{}`", headers.iter().collect::<Vec<_>>().join(","))));
    }
    let mut points = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| parse_err(e.to_string()))?;
        let num = |i: usize, name: &str| -> Result<f64, MetricError> {
            record
                .get(i)
                .unwrap_or("")
                .trim()
                .parse::<f64>()
                .map_err(|e| parse_err(format!("row {}: bad {name}: {e}", row + 1)))
        };
        let objectives = ObjectiveVector::new(num(0, "qos")?, num(1, "cost")?);
        let raw = record.get(2).unwrap_or("").trim();
        let genome = if raw.is_empty() {
            None
        } else {
            let genes = raw
                .split(';')
                .map(|g| g.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| parse_err(format!("row {}: bad genome: {e}", row + 1)))?;
            Some(Genome(genes))
        };
        points.push(FrontPoint { objectives, genome });
    }
    if points.is_empty() {
        return Err(MetricError::EmptyFront {
            path: path.to_path_buf(),
        });
    }
    Ok(ParetoFront::from_points(points, provenance))
}

pub fn read_front_csv(path: impl AsRef<Path>, provenance: &str) -> Result<ParetoFront, MetricError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| MetricError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    front_from_reader(file, path, provenance)
}
