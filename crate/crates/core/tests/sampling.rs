mod common;

use std::collections::HashMap;

use common::{cube, q};
use hardcore::cluster::{cluster_statistics, Coupler, CouplingSampler};
use hardcore::exact::MixingTrace;
use hardcore::glauber::{default_burn_in, run_replicas, sample_stationary, ChainState, GlauberChain, RngStream};
use hardcore::graph::generators::{complete_bipartite, cycle, path, star};
use hardcore::{FloatModel, Graph, HardCoreModel, Pinning, Scalar, VertexSubset};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// First time the worst-case distance to stationarity is at most `eps`.
fn burn_in_for(model: &FloatModel, eps: f64) -> u64 {
    let mut trace = MixingTrace::new(model).unwrap();
    while trace.distance() > eps {
        trace.advance();
    }
    trace.time() as u64
}

fn chi_square_passes(graph: Graph, lambda: f64, samples: usize, seed: u64) {
    let model = HardCoreModel::new(graph, lambda).unwrap();
    let burn_in = burn_in_for(&model, 1e-6);
    let mu = model.distribution().unwrap();
    let draws = run_replicas(seed, samples, |_, mut rng| {
        sample_stationary(&model, &Pinning::new(), burn_in, &mut rng).unwrap()
    });
    let mut counts: HashMap<VertexSubset, u64> = HashMap::new();
    for s in draws {
        *counts.entry(s).or_default() += 1;
    }
    let mut stat = 0.0;
    for (s, p) in mu.atoms() {
        let expected = p * samples as f64;
        let observed = counts.remove(s).unwrap_or(0) as f64;
        stat += (observed - expected).powi(2) / expected;
    }
    assert!(counts.is_empty(), "sampler produced states outside the support");
    let critical = ChiSquared::new((mu.len() - 1) as f64).unwrap().inverse_cdf(0.99);
    assert!(
        stat <= critical,
        "chi-square {stat} exceeds {critical} (burn-in {burn_in})"
    );
}

#[test]
fn stationary_law_on_cycle_passes_chi_square() {
    chi_square_passes(cycle(5), 1.0, 1_000_000, 11);
}

#[test]
fn stationary_law_on_bipartite_passes_chi_square() {
    chi_square_passes(complete_bipartite(2, 3), 2.0, 1_000_000, 12);
}

fn within_sigmas(observed: u64, trials: u64, p: f64, sigmas: f64) -> bool {
    let mean = p * trials as f64;
    let sd = (trials as f64 * p * (1.0 - p)).sqrt();
    (observed as f64 - mean).abs() <= sigmas * sd.max(1e-12)
}

#[test]
fn one_step_from_empty_matches_transition_row() {
    let model = HardCoreModel::new(path(2), 1.5).unwrap();
    let matrix = model.transition_matrix().unwrap();
    let empty = VertexSubset::empty(2);
    let from = matrix.index_of(&empty).unwrap();
    let trials = 100_000u64;
    let chain = GlauberChain::new(&model);
    let ends = run_replicas(3, trials as usize, |_, mut rng| {
        let mut state = ChainState::empty(2);
        chain.step(&mut state, &mut rng);
        state.occupancy
    });
    for (to, target) in matrix.states().iter().enumerate() {
        let hits = ends.iter().filter(|s| *s == target).count() as u64;
        assert!(
            within_sigmas(hits, trials, matrix.entry(from, to), 3.0),
            "{target:?}: {hits}"
        );
    }
}

#[test]
fn product_chain_marginals_approach_occupation_probability() {
    let g = cycle(5);
    let model = HardCoreModel::new(g, 3.0).unwrap();
    let p = model.occupation_probability();
    let chain = GlauberChain::new(&model);
    let trials = 100_000u64;
    let ends = run_replicas(4, trials as usize, |_, mut rng| {
        let mut state = ChainState::full(5);
        for _ in 0..100 {
            chain.product_step(&mut state, &mut rng);
        }
        state.occupancy
    });
    for v in 0..5 {
        let hits = ends.iter().filter(|s| s.contains(v)).count() as u64;
        assert!(within_sigmas(hits, trials, p, 3.0), "vertex {v}: {hits}");
    }
}

#[test]
fn upper_chain_time_average_approaches_occupation_probability() {
    let model = HardCoreModel::new(cycle(6), 1.0).unwrap();
    let mut rng = RngStream::new(8);
    let run = hardcore::glauber::monotone_coupled_run(&model, 400_000, &mut rng);
    assert!(run.dominance_held);
    for f in run.upper.occupancy_frequency {
        assert!((f - 0.5).abs() < 0.01, "{f}");
    }
}

#[test]
fn pinned_sampler_matches_pinned_law() {
    let model = HardCoreModel::new(path(2), 2.0).unwrap();
    let pins = Pinning::single(0, false);
    let law = model.pinned_distribution(&pins).unwrap();
    let trials = 100_000u64;
    let draws = run_replicas(5, trials as usize, |_, mut rng| {
        sample_stationary(&model, &pins, 200, &mut rng).unwrap()
    });
    for (s, p) in law.atoms() {
        let hits = draws.iter().filter(|d| *d == s).count() as u64;
        assert!(within_sigmas(hits, trials, *p, 3.0), "{s:?}: {hits}");
    }
    assert!(draws.iter().all(|d| !d.contains(0)));
}

#[test]
fn pinned_claw_centre_blocks_leaves() {
    let model = HardCoreModel::new(star(3), 5.0).unwrap();
    let pins = Pinning::single(0, true);
    let draws = run_replicas(6, 2_000, |_, mut rng| {
        sample_stationary(&model, &pins, 100, &mut rng).unwrap()
    });
    assert!(draws.iter().all(|d| d.to_vec() == vec![0]));
}

#[test]
fn single_vertex_is_bernoulli() {
    let model = HardCoreModel::new(Graph::empty(1), 0.5).unwrap();
    let trials = 100_000u64;
    let draws = run_replicas(7, trials as usize, |_, mut rng| {
        sample_stationary(&model, &Pinning::new(), 30, &mut rng).unwrap()
    });
    let hits = draws.iter().filter(|d| d.contains(0)).count() as u64;
    assert!(within_sigmas(hits, trials, 1.0 / 3.0, 3.0), "{hits}");
}

#[test]
fn trajectories_are_reproducible() {
    let model = HardCoreModel::new(cube(), 1.0).unwrap();
    let chain = GlauberChain::new(&model);
    let run = |seed| {
        let mut rng = RngStream::new(seed);
        let mut state = ChainState::empty(8);
        (0..1000)
            .map(|_| {
                chain.step(&mut state, &mut rng);
                state.occupancy.clone()
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(run(21), run(21));
    assert_ne!(run(21), run(22));
    let a = run_replicas(9, 64, |_, rng| rng.seed());
    let b = run_replicas(9, 64, |_, rng| rng.seed());
    assert_eq!(a, b);
}

#[test]
fn cluster_sizes_have_geometric_tail() {
    let n = 60;
    let model = HardCoreModel::new(path(n), 1.0).unwrap();
    let coupler = Coupler::auto(&model, n / 2, default_burn_in(n)).unwrap();
    assert!(matches!(coupler.sampler(), CouplingSampler::Chain { .. }));
    let stats = cluster_statistics(&coupler, 10_000, 13).unwrap();
    let points: Vec<(f64, f64)> = stats
        .size_histogram
        .iter()
        .filter(|(_, &c)| c >= 20)
        .map(|(&s, &c)| (s as f64, (c as f64).ln()))
        .collect();
    assert!(points.len() >= 3, "{:?}", stats.size_histogram);
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let slope = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / points.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    assert!(slope < 0.0, "slope {slope}");
    assert!(stats.max_layer_width <= 2);
}

#[test]
fn exact_and_chain_couplers_agree_on_mean_cluster() {
    let exact_model = HardCoreModel::new(cycle(8), q(1, 1)).unwrap();
    let exact = hardcore::cluster::exact_mean_cluster_size(&exact_model, 0)
        .unwrap()
        .approx();
    let model = HardCoreModel::new(cycle(8), 1.0).unwrap();
    let coupler = Coupler::new(&model, 0, CouplingSampler::Chain { burn_in: 2_000 }).unwrap();
    let stats = cluster_statistics(&coupler, 20_000, 14).unwrap();
    assert!(
        (stats.mean_size - exact).abs() <= 4.0 * stats.std_err,
        "{} vs {exact}",
        stats.mean_size
    );
}
