//! Pareto fronts and their quality indicators.
//!
//! Hypervolume is measured in a normalization box: QoS maps to `[0, 1]`
//! (larger is better), cost maps to `[0, 1]` reversed (smaller is better),
//! and the dominated area is taken against the worst corner
//! `(qos_min, cost_max)`.

mod io;

use crate::error::MetricError;
use crate::nsga2::dominates;
use crate::objective::{Genome, ObjectiveVector};

pub use io::{front_from_reader, front_to_string, read_front_csv, write_front_csv};

#[derive(Debug, Clone, PartialEq)]
pub struct FrontPoint {
    pub objectives: ObjectiveVector,
    pub genome: Option<Genome>,
}

impl FrontPoint {
    pub fn new(objectives: ObjectiveVector, genome: Option<Genome>) -> Self {
        FrontPoint { objectives, genome }
    }
}

impl From<ObjectiveVector> for FrontPoint {
    fn from(objectives: ObjectiveVector) -> Self {
        FrontPoint { objectives, genome: None }
    }
}

/// A set of mutually non-dominated points, kept sorted by ascending cost
/// (and therefore ascending QoS).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParetoFront {
    points: Vec<FrontPoint>,
    pub provenance: String,
}

impl ParetoFront {
    /// Keeps the non-dominated subset of `points`. Among identical objective
    /// vectors the earliest one survives.
    pub fn from_points(points: impl IntoIterator<Item = FrontPoint>, provenance: impl Into<String>) -> Self {
        let mut all: Vec<FrontPoint> = points.into_iter().collect();
        all.sort_by(|a, b| {
            a.objectives
                .cost
                .total_cmp(&b.objectives.cost)
                .then(b.objectives.qos.total_cmp(&a.objectives.qos))
        });
        let mut kept: Vec<FrontPoint> = Vec::with_capacity(all.len());
        for p in all {
            match kept.last() {
                Some(last) if p.objectives.qos <= last.objectives.qos => {}
                _ => kept.push(p),
            }
        }
        ParetoFront {
            points: kept,
            provenance: provenance.into(),
        }
    }

    pub fn points(&self) -> &[FrontPoint] {
        &self.points
    }

    pub fn objectives(&self) -> impl Iterator<Item = ObjectiveVector> + '_ {
        self.points.iter().map(|p| p.objectives)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Inserts `point` unless it is dominated or duplicated, evicting the
    /// points it dominates. Returns whether the front changed.
    pub fn insert(&mut self, point: FrontPoint) -> bool {
        let v = point.objectives;
        if self
            .points
            .iter()
            .any(|p| p.objectives == v || dominates(&p.objectives, &v))
        {
            return false;
        }
        self.points.retain(|p| !dominates(&v, &p.objectives));
        let at = self
            .points
            .partition_point(|p| p.objectives.cost < v.cost);
        self.points.insert(at, point);
        true
    }
}

/// Non-dominated union of several fronts, duplicates collapsed.
pub fn merge_nondominated<'a>(fronts: impl IntoIterator<Item = &'a ParetoFront>, provenance: impl Into<String>) -> ParetoFront {
    let all: Vec<FrontPoint> = fronts
        .into_iter()
        .flat_map(|f| f.points.iter().cloned())
        .collect();
    ParetoFront::from_points(all, provenance)
}

/// Objective-space box used to normalize fronts before measuring them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormBox {
    pub qos_min: f64,
    pub qos_max: f64,
    pub cost_min: f64,
    pub cost_max: f64,
}

impl NormBox {
    pub fn new(qos_min: f64, qos_max: f64, cost_min: f64, cost_max: f64) -> Result<Self, MetricError> {
        let finite = [qos_min, qos_max, cost_min, cost_max].iter().all(|v| v.is_finite());
        if !finite || qos_min >= qos_max || cost_min >= cost_max {
            return Err(MetricError::DegenerateBox(format!(
                "qos [{qos_min}, {qos_max}], cost [{cost_min}, {cost_max}]"
            )));
        }
        Ok(NormBox {
            qos_min,
            qos_max,
            cost_min,
            cost_max,
        })
    }

    /// Bounding box of every point in `fronts`, widened by `margin` of the
    /// range on each side so that all points lie strictly inside.
    pub fn enclosing<'a>(fronts: impl IntoIterator<Item = &'a ParetoFront>, margin: f64) -> Result<Self, MetricError> {
        let mut q = (f64::INFINITY, f64::NEG_INFINITY);
        let mut c = (f64::INFINITY, f64::NEG_INFINITY);
        for v in fronts.into_iter().flat_map(|f| f.objectives()) {
            q = (q.0.min(v.qos), q.1.max(v.qos));
            c = (c.0.min(v.cost), c.1.max(v.cost));
        }
        if !q.0.is_finite() {
            return Err(MetricError::DegenerateBox("no points".to_string()));
        }
        let pad = |(lo, hi): (f64, f64)| {
            let span = hi - lo;
            let d = if span > 0.0 {
                margin * span
            } else if hi != 0.0 {
                margin * hi.abs()
            } else {
                margin.max(f64::EPSILON)
            };
            (lo - d, hi + d)
        };
        let (q, c) = (pad(q), pad(c));
        NormBox::new(q.0, q.1, c.0, c.1)
    }

    pub fn contains(&self, v: &ObjectiveVector) -> bool {
        (self.qos_min..=self.qos_max).contains(&v.qos) && (self.cost_min..=self.cost_max).contains(&v.cost)
    }

    /// Maps `v` to `(qos, savings)` in `[0, 1]^2`, both to be maximized.
    pub fn normalize(&self, v: &ObjectiveVector) -> (f64, f64) {
        (
            (v.qos - self.qos_min) / (self.qos_max - self.qos_min),
            (self.cost_max - v.cost) / (self.cost_max - self.cost_min),
        )
    }
}

/// Normalized area dominated by `points` relative to the box's worst corner.
pub fn hypervolume_of(points: impl IntoIterator<Item = ObjectiveVector>, bx: &NormBox) -> Result<f64, MetricError> {
    let mut norm = Vec::new();
    for v in points {
        if !bx.contains(&v) {
            return Err(MetricError::OutsideBox { qos: v.qos, cost: v.cost });
        }
        norm.push(bx.normalize(&v));
    }
    norm.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
    let mut area = 0.0;
    let mut covered = 0.0f64;
    for (q, s) in norm {
        if s > covered {
            area += q * (s - covered);
            covered = s;
        }
    }
    Ok(area)
}

pub fn hypervolume(front: &ParetoFront, bx: &NormBox) -> Result<f64, MetricError> {
    hypervolume_of(front.objectives(), bx)
}

/// `hypervolume(front) / hypervolume(reference)`; 1 is ideal.
pub fn relative_hypervolume(front: &ParetoFront, reference: &ParetoFront, bx: &NormBox) -> Result<f64, MetricError> {
    let reference_hv = hypervolume(reference, bx)?;
    if reference_hv <= 0.0 {
        return Err(MetricError::ZeroReference);
    }
    Ok(hypervolume(front, bx)? / reference_hv)
}

/// Best QoS reachable without exceeding `cost`; `None` if every point costs
/// more.
pub fn qos_at_cost(front: &ParetoFront, cost: f64) -> Option<f64> {
    front
        .objectives()
        .filter(|v| v.cost <= cost)
        .map(|v| v.qos)
        .reduce(f64::max)
}

/// Cheapest cost reaching at least `qos`; `None` if no point does.
pub fn cost_at_qos(front: &ParetoFront, qos: f64) -> Option<f64> {
    front
        .objectives()
        .filter(|v| v.qos >= qos)
        .map(|v| v.cost)
        .reduce(f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn front(pts: &[(f64, f64)]) -> ParetoFront {
        ParetoFront::from_points(pts.iter().map(|&(q, c)| ObjectiveVector::new(q, c).into()), "t")
    }

    fn unit() -> NormBox {
        NormBox::new(0.0, 1.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn corner_cases() {
        assert_eq!(hypervolume(&front(&[(1.0, 0.0)]), &unit()).unwrap(), 1.0);
        assert_eq!(hypervolume(&front(&[(0.0, 1.0)]), &unit()).unwrap(), 0.0);
        assert_eq!(hypervolume(&front(&[(0.5, 0.5)]), &unit()).unwrap(), 0.25);
    }

    #[test]
    fn outside_box_is_rejected() {
        assert!(matches!(
            hypervolume(&front(&[(1.5, 0.5)]), &unit()),
            Err(MetricError::OutsideBox { .. })
        ));
    }

    #[test]
    fn staircase_area() {
        // (0.5, 0.2) and (1.0, 0.6): 0.5*0.8 + 1.0*0.4 - overlap 0.5*0.4 = 0.6
        let hv = hypervolume(&front(&[(0.5, 0.2), (1.0, 0.6)]), &unit()).unwrap();
        assert!((hv - 0.6).abs() < 1e-12);
    }

    #[test]
    fn from_points_filters_and_dedups() {
        let f = front(&[(1.0, 1.0), (1.0, 1.0), (0.5, 2.0), (2.0, 3.0), (0.2, 0.5)]);
        let v: Vec<_> = f.objectives().map(|o| (o.qos, o.cost)).collect();
        assert_eq!(v, vec![(0.2, 0.5), (1.0, 1.0), (2.0, 3.0)]);
    }

    #[test]
    fn merge_keeps_dominating_front() {
        let a = front(&[(1.0, 5.0), (2.0, 8.0)]);
        let b = front(&[(1.5, 4.0), (3.0, 7.0)]);
        assert_eq!(merge_nondominated([&a, &b], "m").objectives().collect::<Vec<_>>(), b.objectives().collect::<Vec<_>>());
        assert_eq!(merge_nondominated([&a], "m").points(), a.points());
    }

    #[test]
    fn rhv_of_reference_is_one() {
        let r = front(&[(1.0, 5.0), (2.0, 8.0), (3.0, 9.0)]);
        let bx = NormBox::enclosing([&r], 0.01).unwrap();
        assert_eq!(relative_hypervolume(&r, &r, &bx).unwrap(), 1.0);
        let sub = front(&[(2.0, 8.0)]);
        assert!(relative_hypervolume(&sub, &r, &bx).unwrap() <= 1.0);
    }

    #[test]
    fn zero_reference_is_an_error() {
        let r = front(&[(0.0, 1.0)]);
        assert!(matches!(relative_hypervolume(&r, &r, &unit()), Err(MetricError::ZeroReference)));
    }

    #[test]
    fn fixed_anchor_queries() {
        let f = front(&[(10.0, 100.0), (20.0, 300.0)]);
        assert_eq!(qos_at_cost(&f, 50.0), None);
        assert_eq!(qos_at_cost(&f, 299.0), Some(10.0));
        assert_eq!(cost_at_qos(&f, 15.0), Some(300.0));
        assert_eq!(cost_at_qos(&f, 25.0), None);
    }

    #[test]
    fn enclosing_box_strictly_contains() {
        let f = front(&[(1.0, 5.0), (2.0, 8.0)]);
        let bx = NormBox::enclosing([&f], 0.01).unwrap();
        assert!(bx.qos_min < 1.0 && bx.qos_max > 2.0 && bx.cost_min < 5.0 && bx.cost_max > 8.0);
        let single = front(&[(0.0, 0.0)]);
        assert!(NormBox::enclosing([&single], 0.01).is_ok());
    }

    fn arb_points() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 1..40)
    }

    proptest! {
        #[test]
        fn insert_matches_batch_filter(pts in arb_points()) {
            let mut f = ParetoFront::default();
            for &(q, c) in &pts {
                f.insert(ObjectiveVector::new(q, c).into());
            }
            prop_assert_eq!(f.objectives().collect::<Vec<_>>(), front(&pts).objectives().collect::<Vec<_>>());
        }

        #[test]
        fn hypervolume_is_permutation_invariant(mut pts in arb_points(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let a = hypervolume_of(pts.iter().map(|&(q, c)| ObjectiveVector::new(q, c)), &unit()).unwrap();
            pts.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let b = hypervolume_of(pts.iter().map(|&(q, c)| ObjectiveVector::new(q, c)), &unit()).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }

        #[test]
        fn adding_a_point_never_shrinks(pts in arb_points(), extra in (0.0..1.0f64, 0.0..1.0f64)) {
            let f = front(&pts);
            let before = hypervolume(&f, &unit()).unwrap();
            let mut g = f.clone();
            g.insert(ObjectiveVector::new(extra.0, extra.1).into());
            prop_assert!(hypervolume(&g, &unit()).unwrap() >= before - 1e-15);
        }
    }
}
