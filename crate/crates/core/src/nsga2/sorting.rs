use crate::objective::ObjectiveVector;

/// Pareto dominance with QoS maximized and cost minimized.
pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    a.qos >= b.qos && a.cost <= b.cost && (a.qos > b.qos || a.cost < b.cost)
}

/// Partitions `objectives` into successive non-dominated fronts of indices.
///
/// Deb's bookkeeping variant: `O(n^2)` dominance checks, each front listed
/// in ascending index order.
pub fn non_dominated_sort(objectives: &[ObjectiveVector]) -> Vec<Vec<usize>> {
    let n = objectives.len();
    let mut dominated_by_me: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if dominates(&objectives[i], &objectives[j]) {
                dominated_by_me[i].push(j);
                domination_count[j] += 1;
            } else if dominates(&objectives[j], &objectives[i]) {
                dominated_by_me[j].push(i);
                domination_count[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| domination_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by_me[i] {
                domination_count[j] -= 1;
                if domination_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
    }
    fronts
}

/// Crowding distance of each member of one front, in input order.
///
/// Extremes of each objective get `+inf`; interior points accumulate the
/// normalized gap between their neighbors. Fronts of two or fewer points are
/// all `+inf`.
pub fn crowding_distance(front: &[ObjectiveVector]) -> Vec<f64> {
    let n = front.len();
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let mut dist = vec![0.0; n];
    let keys: [fn(&ObjectiveVector) -> f64; 2] = [|v| v.qos, |v| v.cost];
    let mut order: Vec<usize> = (0..n).collect();
    for key in keys {
        order.sort_by(|&a, &b| key(&front[a]).total_cmp(&key(&front[b])));
        let lo = key(&front[order[0]]);
        let hi = key(&front[order[n - 1]]);
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        let span = hi - lo;
        if span <= 0.0 {
            continue;
        }
        for w in 1..n - 1 {
            let gap = key(&front[order[w + 1]]) - key(&front[order[w - 1]]);
            dist[order[w]] += gap / span;
        }
    }
    dist
}
