use std::cmp::Ordering;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::{EaConfig, RankedIndividual};
use crate::objective::{compose_gene, split_gene, Genome};

/// Crowded comparison: lower rank wins, then larger crowding distance.
pub fn crowded_cmp(a: &RankedIndividual, b: &RankedIndividual) -> Ordering {
    a.rank.cmp(&b.rank).then(b.crowding.total_cmp(&a.crowding))
}

/// Binary tournament with replacement; returns the index of the winner.
/// Exact ties are settled by a coin flip.
pub fn tournament_select(pool: &[RankedIndividual], rng: &mut impl Rng) -> usize {
    assert!(!pool.is_empty(), "tournament over an empty pool");
    let a = rng.random_range(0..pool.len());
    let b = rng.random_range(0..pool.len());
    tournament_pick(pool, a, b, rng)
}

/// Winner between the drawn candidates `a` and `b`.
pub fn tournament_pick(pool: &[RankedIndividual], a: usize, b: usize, rng: &mut impl Rng) -> usize {
    match crowded_cmp(&pool[a], &pool[b]) {
        Ordering::Less => a,
        Ordering::Greater => b,
        Ordering::Equal => {
            if rng.random_bool(0.5) {
                a
            } else {
                b
            }
        }
    }
}

/// Swaps the genes in `[c1, c2)` between the two parents.
pub fn two_point_crossover_at(p1: &Genome, p2: &Genome, c1: usize, c2: usize) -> (Genome, Genome) {
    assert_eq!(p1.len(), p2.len(), "parents differ in length");
    assert!(c1 <= c2 && c2 <= p1.len(), "cut points out of order");
    let (mut o1, mut o2) = (p1.clone(), p2.clone());
    o1.0[c1..c2].copy_from_slice(&p2.0[c1..c2]);
    o2.0[c1..c2].copy_from_slice(&p1.0[c1..c2]);
    (o1, o2)
}

/// 2PX applied with probability `p_crossover`; otherwise the parents are
/// copied.
pub fn two_point_crossover(p1: &Genome, p2: &Genome, p_crossover: f64, rng: &mut impl Rng) -> (Genome, Genome) {
    if !rng.random_bool(p_crossover) {
        return (p1.clone(), p2.clone());
    }
    let n = p1.len();
    let (x, y) = (rng.random_range(0..=n), rng.random_range(0..=n));
    two_point_crossover_at(p1, p2, x.min(y), x.max(y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationBranch {
    /// Integer part set to 0.
    Remove,
    /// Integer part drawn uniformly from the catalog.
    Retype,
    /// Gaussian step on the fractional part.
    Shift,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BranchCounts {
    pub remove: u64,
    pub retype: u64,
    pub shift: u64,
}

impl BranchCounts {
    pub fn total(&self) -> u64 {
        self.remove + self.retype + self.shift
    }

    fn record(&mut self, branch: MutationBranch) {
        match branch {
            MutationBranch::Remove => self.remove += 1,
            MutationBranch::Retype => self.retype += 1,
            MutationBranch::Shift => self.shift += 1,
        }
    }
}

/// Folds `x` into `[0, 1)` by mirroring at both ends.
pub fn reflect_unit(x: f64) -> f64 {
    let y = x.rem_euclid(2.0);
    let y = if y > 1.0 { 2.0 - y } else { y };
    if y >= 1.0 {
        1.0f64.next_down()
    } else {
        y
    }
}

/// Applies one mutation branch to `gene`, chosen with probabilities
/// `(pi_a, pi_b, 1 - pi_a - pi_b)`.
pub fn mutate_gene(
    gene: f64,
    num_types: usize,
    config: &EaConfig,
    rng: &mut impl Rng,
) -> (f64, MutationBranch) {
    let (t, frac) = split_gene(gene);
    let u: f64 = rng.random();
    if u < config.pi_a {
        (compose_gene(0, frac), MutationBranch::Remove)
    } else if u < config.pi_a + config.pi_b {
        let k = rng.random_range(1..=num_types as u32);
        (compose_gene(k, frac), MutationBranch::Retype)
    } else {
        let step = Normal::new(0.0, config.sigma)
            .expect("sigma validated")
            .sample(rng);
        (compose_gene(t, reflect_unit(frac + step)), MutationBranch::Shift)
    }
}

/// Mutates each gene independently with probability `p_mutation`.
pub fn mutate(genome: &mut Genome, config: &EaConfig, num_types: usize, rng: &mut impl Rng) -> BranchCounts {
    let mut counts = BranchCounts::default();
    for gene in &mut genome.0 {
        if rng.random_bool(config.p_mutation) {
            let (g, branch) = mutate_gene(*gene, num_types, config, rng);
            *gene = g;
            counts.record(branch);
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::ObjectiveVector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ind(rank: usize, crowding: f64) -> RankedIndividual {
        RankedIndividual {
            genome: Genome(vec![rank as f64]),
            objectives: ObjectiveVector::default(),
            rank,
            crowding,
        }
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(42)
    }

    #[test]
    fn singleton_pool() {
        let pool = vec![ind(1, 0.0)];
        assert_eq!(tournament_select(&pool, &mut rng()), 0);
    }

    #[test]
    fn lower_rank_always_wins() {
        let pool = vec![ind(1, 0.0), ind(3, f64::INFINITY)];
        let mut r = rng();
        for _ in 0..100 {
            assert_eq!(tournament_pick(&pool, 0, 1, &mut r), 0);
            assert_eq!(tournament_pick(&pool, 1, 0, &mut r), 0);
        }
    }

    #[test]
    fn wider_crowding_wins_within_rank() {
        let pool = vec![ind(2, 0.5), ind(2, f64::INFINITY)];
        let mut r = rng();
        for _ in 0..100 {
            assert_eq!(tournament_pick(&pool, 0, 1, &mut r), 1);
        }
    }

    #[test]
    fn exact_ties_use_both_sides() {
        let pool = vec![ind(1, 1.0), ind(1, 1.0)];
        let mut r = rng();
        let wins: usize = (0..400).map(|_| tournament_pick(&pool, 0, 1, &mut r)).sum();
        assert!(wins > 100 && wins < 300, "{wins}");
    }

    #[test]
    fn crossover_cut_extremes() {
        let a = Genome(vec![1.0, 2.0, 3.0]);
        let b = Genome(vec![0.1, 0.2, 0.3]);
        assert_eq!(two_point_crossover_at(&a, &b, 1, 1), (a.clone(), b.clone()));
        assert_eq!(two_point_crossover_at(&a, &b, 0, 3), (b.clone(), a.clone()));
        let (x, y) = two_point_crossover_at(&a, &b, 1, 2);
        assert_eq!(x.0, vec![1.0, 0.2, 3.0]);
        assert_eq!(y.0, vec![0.1, 2.0, 0.3]);
    }

    #[test]
    fn no_crossover_copies_parents() {
        let a = Genome(vec![1.0, 2.0, 3.0]);
        let b = Genome(vec![0.1, 0.2, 0.3]);
        assert_eq!(two_point_crossover(&a, &b, 0.0, &mut rng()), (a, b));
    }

    #[test]
    fn zero_rate_leaves_genome_unchanged() {
        let cfg = EaConfig {
            p_mutation: 0.0,
            ..EaConfig::default()
        };
        let mut g = Genome(vec![1.5, 0.2, 3.9]);
        let before = g.clone();
        assert_eq!(mutate(&mut g, &cfg, 3, &mut rng()).total(), 0);
        assert_eq!(g, before);
    }

    #[test]
    fn remove_branch_keeps_fraction() {
        let cfg = EaConfig {
            pi_a: 1.0,
            pi_b: 0.0,
            ..EaConfig::default()
        };
        let (g, b) = mutate_gene(2.16, 3, &cfg, &mut rng());
        assert_eq!(b, MutationBranch::Remove);
        assert!((g - 0.16).abs() < 1e-12);
    }

    #[test]
    fn retype_branch_draws_catalog_type() {
        let cfg = EaConfig {
            pi_a: 0.0,
            pi_b: 1.0,
            ..EaConfig::default()
        };
        let mut r = rng();
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..300 {
            let (g, b) = mutate_gene(0.33, 3, &cfg, &mut r);
            assert_eq!(b, MutationBranch::Retype);
            let (t, f) = split_gene(g);
            assert!((f - 0.33).abs() < 1e-12);
            seen.insert(t);
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn shift_branch_keeps_type_and_range() {
        let cfg = EaConfig {
            pi_a: 0.0,
            pi_b: 0.0,
            sigma: 0.8,
            ..EaConfig::default()
        };
        let mut r = rng();
        for start in [1.0, 1.01, 1.5, 1.99, 3.999] {
            for _ in 0..200 {
                let (g, _) = mutate_gene(start, 3, &cfg, &mut r);
                assert_eq!(split_gene(g).0, split_gene(start).0);
            }
        }
    }

    #[test]
    fn reflection_examples() {
        assert!((reflect_unit(-0.1) - 0.1).abs() < 1e-12);
        assert!((reflect_unit(1.2) - 0.8).abs() < 1e-12);
        assert!((reflect_unit(2.3) - 0.3).abs() < 1e-12);
        assert!(reflect_unit(1.0) < 1.0);
        assert_eq!(reflect_unit(0.0), 0.0);
    }
}
