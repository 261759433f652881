//! Single-count crediting of overlapping coverage, and an incremental
//! accumulator used by the constructive heuristics.

use std::cmp::Ordering;

use super::{Evaluator, QosMode};
use crate::geometry::{chord_disk_interval, PlacedRsu};

/// Overlap precedence: larger radio range first, then lower host segment
/// id, then lower relative position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Priority {
    pub err: f64,
    pub segment_id: u32,
    pub pos: f64,
}

impl Priority {
    pub fn of(rsu: &PlacedRsu, err: f64) -> Self {
        Priority {
            err,
            segment_id: rsu.segment_id,
            pos: rsu.relative_pos,
        }
    }

    /// `Less` means `self` wins over `other`.
    pub fn precedence(&self, other: &Priority) -> Ordering {
        other
            .err
            .total_cmp(&self.err)
            .then(self.segment_id.cmp(&other.segment_id))
            .then(self.pos.total_cmp(&other.pos))
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub prio: Priority,
    pub owner: usize,
}

/// Credits each elementary sub-interval of one segment to the winning
/// piece covering it. `pieces` is reordered by precedence. `credit` is called
/// once per owner with a positive total fraction.
pub(crate) fn credit_segment(pieces: &mut [Piece], cuts: &mut Vec<f64>, mut credit: impl FnMut(usize, f64)) {
    match pieces.len() {
        0 => return,
        1 => {
            credit(pieces[0].owner, pieces[0].hi - pieces[0].lo);
            return;
        }
        _ => {}
    }
    pieces.sort_by(|a, b| a.prio.precedence(&b.prio));
    cuts.clear();
    cuts.extend(pieces.iter().flat_map(|p| [p.lo, p.hi]));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut shares = vec![0.0; pieces.len()];
    for w in cuts.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        if let Some(k) = pieces.iter().position(|p| p.lo <= mid && mid <= p.hi) {
            shares[k] += w[1] - w[0];
        }
    }
    for (p, share) in pieces.iter().zip(shares) {
        if share > 0.0 {
            credit(p.owner, share);
        }
    }
}

pub(crate) fn contribution(mode: QosMode, mu: f64, raw: f64, vehicles: f64) -> f64 {
    match mode {
        QosMode::Literal => mu.max(raw),
        QosMode::Capped => {
            if vehicles > 0.0 {
                raw.min(mu * raw / vehicles)
            } else {
                0.0
            }
        }
    }
}

/// A growing deployment whose QoS is maintained incrementally.
///
/// `marginal_gain` reports exactly how much `eval_qos` would increase if the
/// candidate were added, touching only the segments within the candidate's
/// range.
#[derive(Debug, Clone)]
pub struct CoverageState<'e> {
    ev: &'e Evaluator,
    placed: Vec<PlacedRsu>,
    prios: Vec<Priority>,
    mus: Vec<f64>,
    occupied: Vec<bool>,
    pieces: Vec<Vec<Piece>>,
    raw: Vec<f64>,
    vehicles: Vec<f64>,
    qos: f64,
    cost: f64,
}

impl<'e> CoverageState<'e> {
    pub fn new(ev: &'e Evaluator) -> Self {
        CoverageState {
            ev,
            placed: Vec::new(),
            prios: Vec::new(),
            mus: Vec::new(),
            occupied: vec![false; ev.num_segments()],
            pieces: vec![Vec::new(); ev.num_segments()],
            raw: Vec::new(),
            vehicles: Vec::new(),
            qos: 0.0,
            cost: 0.0,
        }
    }

    pub fn qos(&self) -> f64 {
        self.qos
    }

    pub fn cost(&self) -> f64 {
        self.cost
    }

    pub fn placed(&self) -> &[PlacedRsu] {
        &self.placed
    }

    pub fn is_occupied(&self, position: usize) -> bool {
        self.occupied[position]
    }

    fn candidate_pieces(&self, position: usize, rsu: &PlacedRsu, owner: usize) -> Vec<(usize, Piece)> {
        let err = self.ev.type_err(rsu.rsu_type);
        let prio = Priority::of(rsu, err);
        self.ev.neighbors[position]
            .iter()
            .filter_map(|&s| {
                let seg = &self.ev.segs[s];
                chord_disk_interval(seg.a, seg.b, rsu.abs_coords, err).map(|(lo, hi)| {
                    (s, Piece { lo, hi, prio, owner })
                })
            })
            .collect()
    }

    /// Per-owner (raw, vehicles) credited on segment `s` given `pieces`.
    fn segment_credit(&self, s: usize, pieces: &mut [Piece], cuts: &mut Vec<f64>) -> Vec<(usize, f64, f64)> {
        let seg = &self.ev.segs[s];
        let mut out = Vec::with_capacity(pieces.len());
        credit_segment(pieces, cuts, |owner, frac| out.push((owner, frac * seg.weight, seg.nv)));
        out
    }

    /// QoS increase from adding an RSU of `rsu_type` at `relative_pos` on
    /// the segment at `position`. The segment must be free.
    pub fn marginal_gain(&self, position: usize, rsu_type: u32, relative_pos: f64) -> f64 {
        let rsu = self.ev.place(position, rsu_type, relative_pos);
        let new_owner = self.placed.len();
        let cand = self.candidate_pieces(position, &rsu, new_owner);
        let mode = self.ev.mode();
        // (owner, delta raw, delta vehicles)
        let mut deltas: Vec<(usize, f64, f64)> = Vec::new();
        let mut cuts = Vec::new();
        let mut buf = Vec::new();
        for (s, piece) in cand {
            buf.clear();
            buf.extend_from_slice(&self.pieces[s]);
            let before = self.segment_credit(s, &mut buf, &mut cuts);
            buf.push(piece);
            let after = self.segment_credit(s, &mut buf, &mut cuts);
            for (owner, raw, nv) in before {
                deltas.push((owner, -raw, -nv));
            }
            deltas.extend(after);
        }
        deltas.sort_by_key(|d| d.0);
        let mut gain = 0.0;
        let mut i = 0;
        let mut cand_raw = 0.0;
        let mut cand_nv = 0.0;
        while i < deltas.len() {
            let owner = deltas[i].0;
            let (mut dr, mut dv) = (0.0, 0.0);
            while i < deltas.len() && deltas[i].0 == owner {
                dr += deltas[i].1;
                dv += deltas[i].2;
                i += 1;
            }
            if owner == new_owner {
                cand_raw = dr;
                cand_nv = dv;
            } else {
                let (raw, veh, mu) = (self.raw[owner], self.vehicles[owner], self.mus[owner]);
                gain += contribution(mode, mu, raw + dr, veh + dv) - contribution(mode, mu, raw, veh);
            }
        }
        gain + contribution(mode, self.ev.type_max_users(rsu_type), cand_raw, cand_nv)
    }

    /// Adds the RSU and updates the running totals.
    pub fn insert(&mut self, position: usize, rsu_type: u32, relative_pos: f64) {
        assert!(!self.occupied[position], "segment already hosts an RSU");
        let rsu = self.ev.place(position, rsu_type, relative_pos);
        let owner = self.placed.len();
        let cand = self.candidate_pieces(position, &rsu, owner);
        self.placed.push(rsu);
        self.prios.push(Priority::of(&rsu, self.ev.type_err(rsu_type)));
        self.mus.push(self.ev.type_max_users(rsu_type));
        self.raw.push(0.0);
        self.vehicles.push(0.0);
        self.occupied[position] = true;
        self.cost += self.ev.type_cost(rsu_type);

        let mut cuts = Vec::new();
        for (s, piece) in cand {
            let mut buf = self.pieces[s].clone();
            for (o, raw, nv) in self.segment_credit(s, &mut buf, &mut cuts) {
                self.raw[o] -= raw;
                self.vehicles[o] -= nv;
            }
            buf.push(piece);
            for (o, raw, nv) in self.segment_credit(s, &mut buf, &mut cuts) {
                self.raw[o] += raw;
                self.vehicles[o] += nv;
            }
            self.pieces[s] = buf;
        }
        let mode = self.ev.mode();
        self.qos = (0..self.placed.len())
            .fold(0.0, |acc, j| acc + contribution(mode, self.mus[j], self.raw[j].max(0.0), self.vehicles[j].max(0.0)));
    }
}
