//! Glauber dynamics for the hard-core model, the unconstrained product
//! chain, and the monotone coupling between them.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::exact::{HardCoreModel, PinnedReduction, Pinning};
use crate::graph::{Graph, VertexSubset};
use crate::scalar::Scalar;

/// Name of the generator behind every [`RngStream`].
pub const RNG_ALGORITHM: &str = "ChaCha8";

/// SplitMix64 finaliser, used to spread replica indices over the seed space.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seeded random source. Draws go through 64-bit integer paths only, so a
/// seed reproduces the same sequence on every platform.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Stream for replica `index` of a run seeded with `seed`:
    /// `seed ⊕ splitmix64(index)`.
    pub fn replica(seed: u64, index: u64) -> Self {
        Self::new(replica_seed(seed, index))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn algorithm(&self) -> &'static str {
        RNG_ALGORITHM
    }

    /// Uniform vertex in `0..n`.
    pub fn next_vertex(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n as u64) as usize
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_unit(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.gen()
    }

    /// The underlying generator, for APIs that take an [`Rng`].
    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

pub fn replica_seed(seed: u64, index: u64) -> u64 {
    seed ^ splitmix64(index)
}

/// Runs `replicas` independent jobs in parallel, job `i` receiving
/// [`RngStream::replica`]`(seed, i)`. Results come back in index order.
pub fn run_replicas<R, F>(seed: u64, replicas: usize, job: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize, RngStream) -> R + Sync,
{
    (0..replicas)
        .into_par_iter()
        .map(|i| job(i, RngStream::replica(seed, i as u64)))
        .collect()
}

/// Configuration of a chain together with how many steps produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainState {
    pub occupancy: VertexSubset,
    pub step_count: u64,
}

impl ChainState {
    pub fn empty(n: usize) -> Self {
        Self::from_occupancy(VertexSubset::empty(n))
    }

    pub fn full(n: usize) -> Self {
        Self::from_occupancy(VertexSubset::full(n))
    }

    pub fn from_occupancy(occupancy: VertexSubset) -> Self {
        Self {
            occupancy,
            step_count: 0,
        }
    }
}

/// One heat-bath update at `v` with uniform `u`. The Glauber rule leaves a
/// blocked vertex alone; otherwise (and always for the product chain) `v`
/// becomes occupied iff `u < p`. Returns whether `v` was unblocked.
pub fn apply_update(
    occupancy: &mut VertexSubset,
    graph: &Graph,
    v: usize,
    u: f64,
    p: f64,
    respect_blocking: bool,
) -> bool {
    if respect_blocking && graph.neighbors(v).iter().any(|&w| occupancy.contains(w)) {
        return false;
    }
    occupancy.set(v, u < p);
    true
}

/// Glauber dynamics on one graph at a fixed fugacity.
#[derive(Clone, Debug)]
pub struct GlauberChain<'a> {
    graph: &'a Graph,
    p: f64,
}

impl<'a> GlauberChain<'a> {
    pub fn new<T: Scalar>(model: &'a HardCoreModel<T>) -> Self {
        Self::with_probability(model.graph(), model.occupation_probability().approx())
    }

    /// Chain with occupation probability `p = λ/(1+λ)` given directly.
    pub fn with_probability(graph: &'a Graph, p: f64) -> Self {
        Self { graph, p }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn occupation_probability(&self) -> f64 {
        self.p
    }

    /// One Glauber step: a uniform vertex draw, then a Bernoulli draw only
    /// if that vertex has no occupied neighbour.
    pub fn step(&self, state: &mut ChainState, rng: &mut RngStream) {
        state.step_count += 1;
        let n = self.graph.vertex_count();
        if n == 0 {
            return;
        }
        let v = rng.next_vertex(n);
        if self.graph.neighbors(v).iter().any(|&w| state.occupancy.contains(w)) {
            return;
        }
        let u = rng.next_unit();
        state.occupancy.set(v, u < self.p);
    }

    /// One step of the product chain: the same update without the blocking
    /// test, so every vertex is an independent Bernoulli(`p`) in the limit.
    pub fn product_step(&self, state: &mut ChainState, rng: &mut RngStream) {
        state.step_count += 1;
        let n = self.graph.vertex_count();
        if n == 0 {
            return;
        }
        let v = rng.next_vertex(n);
        let u = rng.next_unit();
        state.occupancy.set(v, u < self.p);
    }

    pub fn run(&self, state: &mut ChainState, steps: u64, rng: &mut RngStream) {
        for _ in 0..steps {
            self.step(state, rng);
        }
        debug_assert!(self.graph.is_independent(&state.occupancy));
    }

    /// Monotone coupling: the product chain from all-occupied above Glauber
    /// from empty, sharing the vertex and the uniform at every step.
    pub fn monotone_coupled_run(&self, steps: u64, rng: &mut RngStream) -> CoupledRun {
        let n = self.graph.vertex_count();
        let mut upper = ChainState::full(n);
        let mut lower = ChainState::empty(n);
        let mut upper_track = Tracker::new(&upper.occupancy);
        let mut lower_track = Tracker::new(&lower.occupancy);
        let mut dominance_held = lower.occupancy.is_subset(&upper.occupancy);
        if n > 0 {
            for t in 1..=steps {
                let v = rng.next_vertex(n);
                let u = rng.next_unit();
                let before = (upper.occupancy.contains(v), lower.occupancy.contains(v));
                apply_update(&mut upper.occupancy, self.graph, v, u, self.p, false);
                apply_update(&mut lower.occupancy, self.graph, v, u, self.p, true);
                upper.step_count = t;
                lower.step_count = t;
                upper_track.record(v, before.0, upper.occupancy.contains(v), t);
                lower_track.record(v, before.1, lower.occupancy.contains(v), t);
                dominance_held &= lower.occupancy.is_subset(&upper.occupancy);
            }
        }
        debug_assert!(self.graph.is_independent(&lower.occupancy));
        CoupledRun {
            upper: upper_track.finish(upper, steps),
            lower: lower_track.finish(lower, steps),
            dominance_held,
        }
    }
}

/// Time-integrated per-vertex occupancy, updated only when a vertex flips.
/// Time `t ≥ 1` is the state after step `t`.
struct Tracker {
    since: Vec<u64>,
    occupied_time: Vec<u64>,
    size: usize,
    size_time: u128,
    last: u64,
}

impl Tracker {
    fn new(start: &VertexSubset) -> Self {
        Self {
            since: vec![1; start.universe_size()],
            occupied_time: vec![0; start.universe_size()],
            size: start.len(),
            size_time: 0,
            last: 1,
        }
    }

    fn record(&mut self, v: usize, was: bool, now: bool, t: u64) {
        if was == now {
            return;
        }
        self.size_time += self.size as u128 * u128::from(t - self.last);
        self.last = t;
        if was {
            self.occupied_time[v] += t - self.since[v];
            self.size -= 1;
        } else {
            self.since[v] = t;
            self.size += 1;
        }
    }

    fn finish(mut self, state: ChainState, steps: u64) -> TrajectorySummary {
        // Time runs over the states after steps 1..=steps, i.e. [1, steps + 1).
        let end = steps + 1;
        self.size_time += self.size as u128 * u128::from(end - self.last);
        for v in state.occupancy.iter() {
            self.occupied_time[v] += end - self.since[v];
        }
        let denom = steps.max(1) as f64;
        let occupancy_frequency = if steps == 0 {
            (0..self.since.len())
                .map(|v| f64::from(u8::from(state.occupancy.contains(v))))
                .collect()
        } else {
            self.occupied_time.iter().map(|&x| x as f64 / denom).collect()
        };
        let mean_size = if steps == 0 {
            state.occupancy.len() as f64
        } else {
            self.size_time as f64 / denom
        };
        TrajectorySummary {
            final_state: state,
            occupancy_frequency,
            mean_size,
        }
    }
}

/// What a trajectory looked like, averaged over the states after each step.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectorySummary {
    pub final_state: ChainState,
    /// Fraction of steps each vertex spent occupied.
    pub occupancy_frequency: Vec<f64>,
    pub mean_size: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoupledRun {
    pub upper: TrajectorySummary,
    pub lower: TrajectorySummary,
    /// Whether the Glauber chain stayed inside the product chain at every step.
    pub dominance_held: bool,
}

pub fn glauber_step<T: Scalar>(state: &mut ChainState, model: &HardCoreModel<T>, rng: &mut RngStream) {
    GlauberChain::new(model).step(state, rng);
}

pub fn product_chain_step<T: Scalar>(state: &mut ChainState, model: &HardCoreModel<T>, rng: &mut RngStream) {
    GlauberChain::new(model).product_step(state, rng);
}

pub fn monotone_coupled_run<T: Scalar>(model: &HardCoreModel<T>, steps: u64, rng: &mut RngStream) -> CoupledRun {
    GlauberChain::new(model).monotone_coupled_run(steps, rng)
}

/// `50 · n · ⌈ln(n + 1)⌉`.
pub fn default_burn_in(n: usize) -> u64 {
    let log = ((n + 1) as f64).ln().ceil() as u64;
    50 * n as u64 * log.max(1)
}

/// Approximate draw from the pinned hard-core law: Glauber from the empty
/// set on the reduced graph for `burn_in` steps, then lifted back.
pub fn sample_stationary<T: Scalar>(
    model: &HardCoreModel<T>,
    pins: &Pinning,
    burn_in: u64,
    rng: &mut RngStream,
) -> Result<VertexSubset> {
    let reduction = PinnedReduction::new(model.graph(), pins)?;
    Ok(sample_reduced(
        &reduction,
        model.occupation_probability().approx(),
        burn_in,
        rng,
    ))
}

/// [`sample_stationary`] with the surgery already done, for repeated draws.
pub fn sample_reduced(reduction: &PinnedReduction, p: f64, burn_in: u64, rng: &mut RngStream) -> VertexSubset {
    let chain = GlauberChain::with_probability(&reduction.graph, p);
    let mut state = ChainState::empty(reduction.graph.vertex_count());
    chain.run(&mut state, burn_in, rng);
    reduction.lift(&state.occupancy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{path, random_connected_bounded, star};
    use proptest::prelude::*;

    fn set(n: usize, v: &[usize]) -> VertexSubset {
        VertexSubset::from_vertices(n, v.iter().copied())
    }

    #[test]
    fn streams_are_reproducible() {
        let mut a = RngStream::new(42);
        let mut b = RngStream::new(42);
        let xs: Vec<u64> = (0..16).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..16).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
        assert_ne!(
            RngStream::replica(42, 0).next_u64(),
            RngStream::replica(42, 1).next_u64()
        );
        assert_eq!(RngStream::replica(7, 3).seed(), 7 ^ splitmix64(3));
        // Pinned values guard against silent generator changes.
        assert_eq!(splitmix64(0), 0xE220_A839_7B1D_CDAF);
        let mut c = RngStream::new(0);
        let first = c.next_u64();
        assert_eq!(RngStream::new(0).next_u64(), first);
    }

    #[test]
    fn blocked_vertex_is_left_alone() {
        let g = path(2);
        let mut occ = set(2, &[0]);
        assert!(!apply_update(&mut occ, &g, 1, 0.0, 0.5, true));
        assert_eq!(occ, set(2, &[0]));
        assert!(apply_update(&mut occ, &g, 1, 0.0, 0.5, false));
        assert_eq!(occ, set(2, &[0, 1]));
        let mut occ = set(2, &[0]);
        assert!(apply_update(&mut occ, &g, 0, 0.9, 0.5, true));
        assert_eq!(occ, set(2, &[]));
    }

    #[test]
    fn huge_fugacity_adds_on_empty_vertex() {
        let m = HardCoreModel::new(Graph::empty(1), 1e6).unwrap();
        let mut rng = RngStream::new(1);
        let added = (0..1000)
            .filter(|_| {
                let mut s = ChainState::empty(1);
                glauber_step(&mut s, &m, &mut rng);
                s.occupancy.contains(0)
            })
            .count();
        assert!(added >= 998);
    }

    #[test]
    fn single_vertex_chains_coincide() {
        let m = HardCoreModel::new(Graph::empty(1), 2.0).unwrap();
        let mut a = RngStream::new(9);
        let mut b = RngStream::new(9);
        let mut s = ChainState::empty(1);
        let mut t = ChainState::empty(1);
        for _ in 0..200 {
            glauber_step(&mut s, &m, &mut a);
            product_chain_step(&mut t, &m, &mut b);
            assert_eq!(s, t);
        }
    }

    #[test]
    fn trajectories_are_deterministic() {
        let g = star(4);
        let m = HardCoreModel::new(g, 1.5).unwrap();
        let run = |seed| monotone_coupled_run(&m, 5000, &mut RngStream::new(seed));
        assert_eq!(run(3), run(3));
        assert_ne!(run(3).lower.final_state.occupancy, VertexSubset::empty(0));
    }

    #[test]
    fn zero_steps_is_trivially_ordered() {
        let m = HardCoreModel::new(path(3), 1.0).unwrap();
        let run = monotone_coupled_run(&m, 0, &mut RngStream::new(0));
        assert!(run.dominance_held);
        assert_eq!(run.upper.final_state.occupancy, VertexSubset::full(3));
        assert_eq!(run.lower.mean_size, 0.0);
        assert_eq!(run.upper.mean_size, 3.0);
    }

    #[test]
    fn summary_integrates_occupancy() {
        // Sizes after each step, recomputed directly.
        let g = path(5);
        let chain = GlauberChain::with_probability(&g, 0.6);
        let mut rng = RngStream::new(11);
        let run = chain.monotone_coupled_run(300, &mut rng);
        let mut rng = RngStream::new(11);
        let mut lower = VertexSubset::empty(5);
        let mut freq = vec![0.0; 5];
        let mut size = 0.0;
        for _ in 0..300 {
            let v = rng.next_vertex(5);
            let u = rng.next_unit();
            apply_update(&mut lower, &g, v, u, 0.6, true);
            for w in lower.iter() {
                freq[w] += 1.0 / 300.0;
            }
            size += lower.len() as f64 / 300.0;
        }
        assert_eq!(run.lower.final_state.occupancy, lower);
        for (a, b) in run.lower.occupancy_frequency.iter().zip(&freq) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((run.lower.mean_size - size).abs() < 1e-12);
    }

    #[test]
    fn pinned_sampler_respects_pins() {
        let m = HardCoreModel::new(star(3), 1.0).unwrap();
        let pins = Pinning::single(0, true);
        let mut rng = RngStream::new(5);
        for _ in 0..50 {
            let s = sample_stationary(&m, &pins, 100, &mut rng).unwrap();
            assert_eq!(s.to_vec(), vec![0]);
        }
        assert!(sample_stationary(
            &HardCoreModel::new(path(2), 1.0).unwrap(),
            &Pinning::single(0, true).pin(1, true),
            10,
            &mut rng
        )
        .is_err());
    }

    #[test]
    fn burn_in_formula() {
        assert_eq!(default_burn_in(1), 50);
        assert_eq!(default_burn_in(10), 50 * 10 * 3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn glauber_stays_independent_and_dominated(seed in any::<u64>(), n in 1usize..=20) {
            let mut rng = RngStream::new(seed);
            let g = random_connected_bounded(n, 4, n, rng.rng());
            let chain = GlauberChain::with_probability(&g, 0.7);
            let mut s = ChainState::empty(n);
            for _ in 0..500 {
                chain.step(&mut s, &mut rng);
                prop_assert!(g.is_independent(&s.occupancy));
            }
            prop_assert_eq!(s.step_count, 500);
            prop_assert!(chain.monotone_coupled_run(2000, &mut rng).dominance_held);
        }
    }
}
