//! Genome encoding and the two objectives: service-time QoS (maximized) and
//! deployment cost (minimized).
//!
//! A genome holds one real gene per segment. The integer part of a gene is
//! the RSU type (0 = no RSU) and the fractional part the relative position
//! of the RSU along the segment.
//!
//! QoS credits every covered sub-interval of every segment to exactly one
//! RSU. Where coverage overlaps, the RSU with the larger effective radio
//! range wins; ties go to the lower host segment id, then the lower
//! relative position. Each RSU's raw term is the sum over its credited
//! pieces of `NV * covered_len / sp`, combined with its capacity `MU`
//! according to [`QosMode`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::EvalError;
use crate::geometry::{chord_disk_interval, project_network, PlacedRsu, ProjectedNetwork, Xy};

mod coverage;

use coverage::{contribution, credit_segment, Piece, Priority};
pub use coverage::CoverageState;
use crate::scenario::Scenario;

/// How an RSU's raw service term is combined with its capacity `MU`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QosMode {
    /// `max(MU, raw)` per RSU.
    #[default]
    Literal,
    /// `min(raw, MU * mean_dwell)`: at most `MU` vehicles per period are
    /// credited, each for the RSU's vehicle-weighted mean dwell time.
    Capped,
}

impl QosMode {
    pub fn as_str(self) -> &'static str {
        match self {
            QosMode::Literal => "literal",
            QosMode::Capped => "capped",
        }
    }
}

impl fmt::Display for QosMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QosMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "literal" => Ok(QosMode::Literal),
            "capped" => Ok(QosMode::Capped),
            other => Err(format!("unknown QoS mode `{other}` (literal | capped)")),
        }
    }
}

/// Splits a gene into (RSU type, relative position).
pub fn split_gene(gene: f64) -> (u32, f64) {
    let t = gene.floor();
    (t as u32, gene - t)
}

/// Builds a gene from a type and a fraction in `[0, 1)`, guaranteeing that
/// `split_gene` recovers `rsu_type` even when `frac` rounds up.
pub fn compose_gene(rsu_type: u32, frac: f64) -> f64 {
    let base = rsu_type as f64;
    let g = base + frac.clamp(0.0, 1.0);
    if g >= base + 1.0 {
        (base + 1.0).next_down()
    } else {
        g
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Genome(pub Vec<f64>);

impl Genome {
    pub fn empty(n: usize) -> Self {
        Genome(vec![0.0; n])
    }

    pub fn genes(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of genes that place an RSU.
    pub fn rsu_count(&self) -> usize {
        self.0.iter().filter(|&&g| g >= 1.0).count()
    }

    /// Checks `0 <= g < k + 1` for every gene.
    pub fn check(&self, num_types: usize) -> Result<(), EvalError> {
        let upper = num_types + 1;
        for (index, &value) in self.0.iter().enumerate() {
            if !(value >= 0.0 && value < upper as f64) {
                return Err(EvalError::Encoding { index, value, upper });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Deployment {
    pub placed: Vec<PlacedRsu>,
}

impl Deployment {
    pub fn len(&self) -> usize {
        self.placed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placed.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ObjectiveVector {
    pub qos: f64,
    pub cost: f64,
}

impl ObjectiveVector {
    pub fn new(qos: f64, cost: f64) -> Self {
        ObjectiveVector { qos, cost }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct SegData {
    pub id: u32,
    pub a: Xy,
    pub b: Xy,
    pub nv: f64,
    /// `NV * len / sp` for the whole segment.
    pub weight: f64,
}

#[derive(Debug, Clone, Copy)]
struct TypeData {
    cost: f64,
    err: f64,
    mu: f64,
}

/// Precomputed, immutable evaluation context for one scenario.
///
/// Holds the projected network, per-type data for the scenario's
/// application and, per segment, the segments within the largest radio
/// range. Cheap to share across threads.
#[derive(Debug, Clone)]
pub struct Evaluator {
    projected: ProjectedNetwork,
    pub(crate) segs: Vec<SegData>,
    index: HashMap<u32, usize>,
    types: Vec<TypeData>,
    pub(crate) neighbors: Vec<Vec<usize>>,
    mode: QosMode,
}

impl Evaluator {
    pub fn new(scenario: &Scenario, mode: QosMode) -> Result<Self, EvalError> {
        let projected = project_network(&scenario.network);
        let segs: Vec<SegData> = scenario
            .network
            .segments
            .iter()
            .zip(&projected.segments)
            .map(|(s, p)| SegData {
                id: s.id,
                a: p.a,
                b: p.b,
                nv: s.vehicles_per_period,
                weight: s.service_weight(),
            })
            .collect();
        let index = segs.iter().enumerate().map(|(i, s)| (s.id, i)).collect();
        let app = scenario.application.id;
        let types = scenario
            .catalog
            .iter()
            .map(|t| {
                let mu = scenario.mu.get(t.id, app).ok_or(EvalError::MissingMaxUsers {
                    rsu_type: t.id,
                    application: app.to_string(),
                })?;
                Ok(TypeData {
                    cost: t.cost_usd,
                    err: t.err_m,
                    mu: mu as f64,
                })
            })
            .collect::<Result<Vec<_>, EvalError>>()?;
        let reach = types.iter().map(|t| t.err).fold(0.0, f64::max) * (1.0 + 1e-9) + 1e-6;
        let n = segs.len();
        let mut neighbors = vec![Vec::new(); n];
        for i in 0..n {
            for j in i..n {
                let d = projected.segments[i].distance_to_segment(&projected.segments[j]);
                if d <= reach {
                    neighbors[i].push(j);
                    if i != j {
                        neighbors[j].push(i);
                    }
                }
            }
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Evaluator {
            projected,
            segs,
            index,
            types,
            neighbors,
            mode,
        })
    }

    pub fn mode(&self) -> QosMode {
        self.mode
    }

    pub fn with_mode(mut self, mode: QosMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn projected(&self) -> &ProjectedNetwork {
        &self.projected
    }

    pub fn num_segments(&self) -> usize {
        self.segs.len()
    }

    pub fn num_types(&self) -> usize {
        self.types.len()
    }

    pub fn type_cost(&self, rsu_type: u32) -> f64 {
        self.types[rsu_type as usize - 1].cost
    }

    pub fn type_err(&self, rsu_type: u32) -> f64 {
        self.types[rsu_type as usize - 1].err
    }

    pub fn type_max_users(&self, rsu_type: u32) -> f64 {
        self.types[rsu_type as usize - 1].mu
    }

    pub fn segment_position(&self, id: u32) -> Option<usize> {
        self.index.get(&id).copied()
    }

    /// Places an RSU of `rsu_type` at `relative_pos` on the segment at
    /// `position` (index into the network's segment list).
    pub fn place(&self, position: usize, rsu_type: u32, relative_pos: f64) -> PlacedRsu {
        PlacedRsu::on(&self.projected.segments[position], rsu_type, relative_pos)
    }

    pub fn decode(&self, genome: &Genome) -> Result<Deployment, EvalError> {
        if genome.len() != self.segs.len() {
            return Err(EvalError::Length {
                expected: self.segs.len(),
                actual: genome.len(),
            });
        }
        genome.check(self.types.len())?;
        let placed = genome
            .genes()
            .iter()
            .enumerate()
            .filter_map(|(i, &g)| {
                let (t, frac) = split_gene(g);
                (t > 0).then(|| self.place(i, t, frac))
            })
            .collect();
        Ok(Deployment { placed })
    }

    /// Inverse of [`Evaluator::decode`].
    pub fn encode(&self, deployment: &Deployment) -> Result<Genome, EvalError> {
        let mut genes = vec![0.0; self.segs.len()];
        for rsu in &deployment.placed {
            let (pos, _) = self.check_rsu(rsu)?;
            if genes[pos] != 0.0 {
                return Err(EvalError::DuplicateSegment(rsu.segment_id));
            }
            genes[pos] = compose_gene(rsu.rsu_type, rsu.relative_pos);
        }
        Ok(Genome(genes))
    }

    fn check_rsu(&self, rsu: &PlacedRsu) -> Result<(usize, TypeData), EvalError> {
        let pos = self
            .segment_position(rsu.segment_id)
            .ok_or(EvalError::UnknownSegment(rsu.segment_id))?;
        let ty = rsu
            .rsu_type
            .checked_sub(1)
            .and_then(|i| self.types.get(i as usize))
            .ok_or(EvalError::UnknownType(rsu.rsu_type))?;
        if !(0.0..1.0).contains(&rsu.relative_pos) {
            return Err(EvalError::Position(rsu.relative_pos));
        }
        Ok((pos, *ty))
    }

    pub fn eval_cost(&self, deployment: &Deployment) -> Result<f64, EvalError> {
        deployment
            .placed
            .iter()
            .try_fold(0.0, |acc, r| self.check_rsu(r).map(|(_, t)| acc + t.cost))
    }

    pub fn eval_qos(&self, deployment: &Deployment) -> Result<f64, EvalError> {
        // fold from +0.0: an empty float `sum` is -0.0
        Ok(self.service_terms(deployment)?.iter().fold(0.0, |acc, t| acc + t.contribution))
    }

    /// Per-RSU service accounting after overlap resolution, in deployment
    /// order.
    pub fn service_terms(&self, deployment: &Deployment) -> Result<Vec<ServiceTerm>, EvalError> {
        let placed = &deployment.placed;
        let mut hosts = Vec::with_capacity(placed.len());
        let mut errs = Vec::with_capacity(placed.len());
        let mut mus = Vec::with_capacity(placed.len());
        let mut seen = vec![false; self.segs.len()];
        for rsu in placed {
            let (pos, ty) = self.check_rsu(rsu)?;
            if std::mem::replace(&mut seen[pos], true) {
                return Err(EvalError::DuplicateSegment(rsu.segment_id));
            }
            hosts.push(pos);
            errs.push(ty.err);
            mus.push(ty.mu);
        }

        let mut by_segment: Vec<(usize, Piece)> = Vec::new();
        for (j, rsu) in placed.iter().enumerate() {
            let prio = Priority::of(rsu, errs[j]);
            for &s in &self.neighbors[hosts[j]] {
                let seg = &self.segs[s];
                if let Some((lo, hi)) = chord_disk_interval(seg.a, seg.b, rsu.abs_coords, errs[j]) {
                    by_segment.push((s, Piece { lo, hi, prio, owner: j }));
                }
            }
        }
        by_segment.sort_by_key(|p| p.0);

        let mut raw = vec![0.0; placed.len()];
        let mut served = vec![0.0; placed.len()];
        let mut group = Vec::new();
        let mut cuts = Vec::new();
        for chunk in by_segment.chunk_by(|x, y| x.0 == y.0) {
            let seg = &self.segs[chunk[0].0];
            group.clear();
            group.extend(chunk.iter().map(|p| p.1));
            credit_segment(&mut group, &mut cuts, |owner, frac| {
                raw[owner] += frac * seg.weight;
                served[owner] += seg.nv;
            });
        }

        Ok((0..placed.len())
            .map(|j| {
                let contribution = contribution(self.mode, mus[j], raw[j], served[j]);
                ServiceTerm {
                    raw: raw[j],
                    vehicles: served[j],
                    contribution,
                }
            })
            .collect())
    }

    /// Upper bounds on (QoS, cost) over every genome of this scenario.
    ///
    /// Credited pieces never exceed the network's total service weight, and
    /// each RSU adds at most its capacity on top in literal mode.
    pub fn objective_bounds(&self) -> (f64, f64) {
        let n = self.segs.len() as f64;
        let total: f64 = self.segs.iter().map(|s| s.weight).sum();
        let max_mu = self.types.iter().map(|t| t.mu).fold(0.0, f64::max);
        let max_cost = self.types.iter().map(|t| t.cost).fold(0.0, f64::max);
        let qos = match self.mode {
            QosMode::Literal => total + n * max_mu,
            QosMode::Capped => total,
        };
        (qos * (1.0 + 1e-9), n * max_cost * (1.0 + 1e-9))
    }

    pub fn evaluate_deployment(&self, deployment: &Deployment) -> Result<ObjectiveVector, EvalError> {
        Ok(ObjectiveVector {
            qos: self.eval_qos(deployment)?,
            cost: self.eval_cost(deployment)?,
        })
    }

    pub fn evaluate(&self, genome: &Genome) -> Result<ObjectiveVector, EvalError> {
        self.evaluate_deployment(&self.decode(genome)?)
    }
}

/// One RSU's share of the QoS objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ServiceTerm {
    /// Vehicle-seconds per period over the credited pieces.
    pub raw: f64,
    /// Vehicles per period crossing at least one credited piece.
    pub vehicles: f64,
    pub contribution: f64,
}

pub fn decode(genome: &Genome, scenario: &Scenario) -> Result<Deployment, EvalError> {
    Evaluator::new(scenario, QosMode::Literal)?.decode(genome)
}

pub fn eval_cost(deployment: &Deployment, scenario: &Scenario) -> Result<f64, EvalError> {
    Evaluator::new(scenario, QosMode::Literal)?.eval_cost(deployment)
}

pub fn eval_qos(deployment: &Deployment, scenario: &Scenario, mode: QosMode) -> Result<f64, EvalError> {
    Evaluator::new(scenario, mode)?.eval_qos(deployment)
}

pub fn evaluate(genome: &Genome, scenario: &Scenario, mode: QosMode) -> Result<ObjectiveVector, EvalError> {
    Evaluator::new(scenario, mode)?.evaluate(genome)
}
