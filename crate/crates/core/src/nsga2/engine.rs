use std::collections::HashSet;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::operators::{mutate, tournament_select, two_point_crossover, BranchCounts};
use super::sorting::{crowding_distance, non_dominated_sort};
use super::{EaConfig, RankedIndividual};
use crate::error::{EngineError, EvalError};
use crate::heuristics::KnapsackPlanner;
use crate::metrics::{hypervolume, FrontPoint, NormBox, ParetoFront};
use crate::objective::{Evaluator, Genome, ObjectiveVector};
use crate::scenario::Scenario;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationRecord {
    pub gen: usize,
    /// Hypervolume of the archive inside the scenario's objective bounds.
    pub hv: f64,
    pub front_size: usize,
    /// Cumulative objective evaluations.
    pub evals: u64,
    pub wall_ms: f64,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    /// Every non-dominated vector evaluated during the run.
    pub front: ParetoFront,
    /// Rank-1 members of the final population.
    pub final_front: ParetoFront,
    pub population: Vec<RankedIndividual>,
    pub log: Vec<GenerationRecord>,
    pub mutations: BranchCounts,
    /// Distinct knapsack genomes in the initial population.
    pub knapsack_seeds: usize,
}

pub fn run(scenario: &Scenario, config: &EaConfig) -> Result<RunResult, EngineError> {
    config.validate()?;
    let ev = Evaluator::new(scenario, config.qos_mode).map_err(|source| EngineError::Evaluation {
        generation: 0,
        index: 0,
        source,
    })?;
    run_with_evaluator(&ev, config)
}

/// Evaluates `genomes` on up to `workers` threads; results keep input order.
pub fn evaluate_batch(ev: &Evaluator, genomes: &[Genome], workers: usize) -> Vec<Result<ObjectiveVector, EvalError>> {
    let workers = workers.clamp(1, genomes.len().max(1));
    if workers == 1 {
        return genomes.iter().map(|g| ev.evaluate(g)).collect();
    }
    let chunk = genomes.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = genomes
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|g| ev.evaluate(g)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("evaluation worker panicked"))
            .collect()
    })
}

fn random_genome(n: usize, num_types: usize, rng: &mut impl Rng) -> Genome {
    let upper = (num_types + 1) as f64;
    Genome(
        (0..n)
            .map(|_| {
                let g = rng.random::<f64>() * upper;
                if g >= upper {
                    upper.next_down()
                } else {
                    g
                }
            })
            .collect(),
    )
}

fn genome_key(g: &Genome) -> Vec<u64> {
    g.genes().iter().map(|v| v.to_bits()).collect()
}

/// Knapsack solutions at evenly spaced budgets up to the cost of a full
/// deployment, deduplicated, then uniform random genomes.
fn initial_genomes(ev: &Evaluator, config: &EaConfig, rng: &mut ChaCha8Rng) -> (Vec<Genome>, usize) {
    let size = config.population_size;
    let n = ev.num_segments();
    let k = ev.num_types();
    let wanted = ((config.seed_fraction * size as f64).round() as usize).min(size);
    let mut genomes = Vec::with_capacity(size);
    if wanted > 0 {
        let full = (1..=k as u32).map(|t| ev.type_cost(t)).fold(0.0, f64::max) * n as f64;
        let planner = KnapsackPlanner::new(ev, full, rng.random());
        let mut seen = HashSet::new();
        for i in (0..wanted).rev() {
            let g = planner.solve(full * (i + 1) as f64 / wanted as f64);
            if seen.insert(genome_key(&g)) {
                genomes.push(g);
            }
        }
    }
    let seeded = genomes.len();
    while genomes.len() < size {
        genomes.push(random_genome(n, k, rng));
    }
    (genomes, seeded)
}

/// Sorts `pool` into fronts and keeps the best `target` members, cutting the
/// last admitted front by descending crowding distance.
fn select(pool: Vec<(Genome, ObjectiveVector)>, target: usize) -> Vec<RankedIndividual> {
    let objs: Vec<ObjectiveVector> = pool.iter().map(|p| p.1).collect();
    let fronts = non_dominated_sort(&objs);
    let mut slots: Vec<Option<(Genome, ObjectiveVector)>> = pool.into_iter().map(Some).collect();
    let mut next = Vec::with_capacity(target);
    for (r, front) in fronts.iter().enumerate() {
        if next.len() >= target {
            break;
        }
        let fobjs: Vec<ObjectiveVector> = front.iter().map(|&i| objs[i]).collect();
        let cd = crowding_distance(&fobjs);
        let mut order: Vec<usize> = (0..front.len()).collect();
        if next.len() + front.len() > target {
            order.sort_by(|&a, &b| cd[b].total_cmp(&cd[a]).then(a.cmp(&b)));
            order.truncate(target - next.len());
        }
        for j in order {
            let (genome, objectives) = slots[front[j]].take().expect("each index used once");
            next.push(RankedIndividual {
                genome,
                objectives,
                rank: r + 1,
                crowding: cd[j],
            });
        }
    }
    next
}

fn evaluate_checked(
    ev: &Evaluator,
    genomes: &[Genome],
    workers: usize,
    generation: usize,
) -> Result<Vec<ObjectiveVector>, EngineError> {
    evaluate_batch(ev, genomes, workers)
        .into_iter()
        .enumerate()
        .map(|(index, r)| r.map_err(|source| EngineError::Evaluation { generation, index, source }))
        .collect()
}

pub fn run_with_evaluator(ev: &Evaluator, config: &EaConfig) -> Result<RunResult, EngineError> {
    config.validate()?;
    if ev.num_segments() == 0 {
        return Err(EngineError::Config("scenario has no segments".into()));
    }
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let k = ev.num_types();
    let (qmax, cmax) = ev.objective_bounds();
    let bx = NormBox::new(0.0, qmax, 0.0, cmax).map_err(|e| EngineError::Config(e.to_string()))?;

    let (genomes, knapsack_seeds) = initial_genomes(ev, config, &mut rng);
    let objs = evaluate_checked(ev, &genomes, config.workers, 0)?;
    let mut evals = genomes.len() as u64;
    let mut archive = ParetoFront::from_points(std::iter::empty(), "nsga2");
    for (g, o) in genomes.iter().zip(&objs) {
        archive.insert(FrontPoint::new(*o, Some(g.clone())));
    }
    let mut population = select(genomes.into_iter().zip(objs).collect(), config.population_size);

    let mut log = Vec::with_capacity(config.generations + 1);
    let record = |gen: usize, archive: &ParetoFront, evals: u64| GenerationRecord {
        gen,
        hv: hypervolume(archive, &bx).expect("archive lies inside the objective bounds"),
        front_size: archive.len(),
        evals,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    log.push(record(0, &archive, evals));

    let mut mutations = BranchCounts::default();
    for gen in 1..=config.generations {
        let mut offspring = Vec::with_capacity(config.population_size);
        while offspring.len() < config.population_size {
            let a = tournament_select(&population, &mut rng);
            let b = tournament_select(&population, &mut rng);
            let (mut c1, mut c2) =
                two_point_crossover(&population[a].genome, &population[b].genome, config.p_crossover, &mut rng);
            for c in [&mut c1, &mut c2] {
                let counts = mutate(c, config, k, &mut rng);
                mutations.remove += counts.remove;
                mutations.retype += counts.retype;
                mutations.shift += counts.shift;
            }
            offspring.push(c1);
            offspring.push(c2);
        }
        let objs = evaluate_checked(ev, &offspring, config.workers, gen)?;
        evals += offspring.len() as u64;
        for (g, o) in offspring.iter().zip(&objs) {
            archive.insert(FrontPoint::new(*o, Some(g.clone())));
        }
        let pool = population
            .into_iter()
            .map(|ind| (ind.genome, ind.objectives))
            .chain(offspring.into_iter().zip(objs))
            .collect();
        population = select(pool, config.population_size);
        log.push(record(gen, &archive, evals));
    }

    let final_front = ParetoFront::from_points(
        population
            .iter()
            .filter(|ind| ind.rank == 1)
            .map(|ind| FrontPoint::new(ind.objectives, Some(ind.genome.clone()))),
        "nsga2",
    );
    Ok(RunResult {
        front: archive,
        final_front,
        population,
        log,
        mutations,
        knapsack_seeds,
    })
}

pub fn log_to_string(log: &[GenerationRecord]) -> String {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(["gen", "hv", "front_size", "evals", "wall_ms"]).expect("in-memory write");
    for r in log {
        wtr.write_record([
            r.gen.to_string(),
            r.hv.to_string(),
            r.front_size.to_string(),
            r.evals.to_string(),
            format!("{:.3}", r.wall_ms),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("ascii csv")
}

pub fn write_log_csv(log: &[GenerationRecord], path: impl AsRef<Path>) -> std::io::Result<()> {
    std::fs::File::create(path)?.write_all(log_to_string(log).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{generate_instance, Application, GeometryParams, TrafficParams};

    fn scenario(n: usize) -> Scenario {
        let net = generate_instance(n, &GeometryParams::default(), &TrafficParams::default(), 5).unwrap();
        Scenario::with_defaults(net, Application::Data)
    }

    fn small(gens: usize, seed: u64) -> EaConfig {
        EaConfig {
            population_size: 12,
            generations: gens,
            seed,
            ..EaConfig::default()
        }
    }

    #[test]
    fn zero_generations_returns_seed_front() {
        let sc = scenario(10);
        let res = run(&sc, &small(0, 3)).unwrap();
        assert_eq!(res.log.len(), 1);
        assert_eq!(res.population.len(), 12);
        let ev = Evaluator::new(&sc, Default::default()).unwrap();
        for p in res.front.points() {
            assert_eq!(ev.evaluate(p.genome.as_ref().unwrap()).unwrap(), p.objectives);
        }
    }

    #[test]
    fn same_seed_same_front_any_workers() {
        let sc = scenario(16);
        let a = run(&sc, &small(15, 9)).unwrap();
        let b = run(&sc, &EaConfig { workers: 3, ..small(15, 9) }).unwrap();
        assert_eq!(a.front, b.front);
        assert_eq!(a.population, b.population);
    }

    #[test]
    fn population_size_and_gene_range_hold() {
        let sc = scenario(12);
        let res = run(&sc, &small(20, 4)).unwrap();
        assert_eq!(res.population.len(), 12);
        for ind in &res.population {
            ind.genome.check(3).unwrap();
        }
        assert!(res.log.windows(2).all(|w| w[1].hv >= w[0].hv));
        assert_eq!(res.log.last().unwrap().evals, 12 * 21);
    }

    #[test]
    fn selection_truncates_by_crowding() {
        let pool: Vec<_> = [(0.0, 0.0), (1.0, 1.0), (1.9, 2.0), (2.0, 2.1), (3.0, 3.0)]
            .iter()
            .map(|&(q, c)| (Genome(vec![q]), ObjectiveVector::new(q, c)))
            .collect();
        let kept = select(pool, 4);
        let qs: Vec<f64> = kept.iter().map(|i| i.objectives.qos).collect();
        assert_eq!(kept.len(), 4);
        assert!(qs.contains(&0.0) && qs.contains(&3.0));
        assert!(kept.iter().all(|i| i.rank == 1));
    }
}
