//! The red-blue cluster coupling between the hard-core laws pinned to
//! `v ∈ I` and `v ∉ I`, grown layer by layer from `v`.
//!
//! Draw `R ~ μ^{(v,1)}` and `B ~ μ^{(v,0)}` independently, grow the cluster
//! `C` of `v` in `R ∪ B` by alternating BFS, and replace `B` with
//! `(B ∩ C) ∪ (R \ C)`. The red set is never modified.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{Distribution, HardCoreModel, PinnedReduction, Pinning};
use crate::glauber::{run_replicas, sample_reduced, RngStream};
use crate::graph::{vol, Graph, VertexSubset};
use crate::scalar::Scalar;

/// A red-blue cluster with its BFS layers `L_0 = {v}, L_1, …, L_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub root: usize,
    pub vertices: VertexSubset,
    pub layers: Vec<VertexSubset>,
}

impl Cluster {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer_widths(&self) -> Vec<usize> {
        self.layers.iter().map(VertexSubset::len).collect()
    }

    pub fn max_layer_width(&self) -> usize {
        self.layers.iter().map(VertexSubset::len).max().unwrap_or(0)
    }
}

/// Layered BFS from `v`: with `U` the unvisited vertices and `N = U ∩ ∂L_d`,
/// the next layer is `N ∩ B` at even depth and `N ∩ R` at odd depth. All of
/// `N` leaves `U`, coloured or not. Stops at the first empty layer.
pub fn grow_cluster(g: &Graph, red: &VertexSubset, blue: &VertexSubset, v: usize) -> Result<Cluster> {
    g.check_subset(red)?;
    g.check_subset(blue)?;
    g.check_vertex(v)?;
    if !red.contains(v) {
        return Err(Error::RootNotRed(v));
    }
    let root = VertexSubset::from_vertices(g.vertex_count(), [v]);
    let mut unvisited = VertexSubset::full(g.vertex_count());
    unvisited.remove(v);
    let mut vertices = root.clone();
    let mut layers = vec![root];
    loop {
        let last = layers.last().expect("at least the root layer");
        let frontier = g.boundary(last)?.intersection(&unvisited);
        let colour = if layers.len() % 2 == 1 { blue } else { red };
        let next = frontier.intersection(colour);
        unvisited = unvisited.difference(&frontier);
        if next.is_empty() {
            break;
        }
        vertices = vertices.union(&next);
        layers.push(next);
    }
    Ok(Cluster {
        root: v,
        vertices,
        layers,
    })
}

/// Output of one coupling draw.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoupledPair {
    pub red: VertexSubset,
    pub blue: VertexSubset,
    pub cluster: Cluster,
}

impl CoupledPair {
    /// `d_H(red, blue)`, which equals `|C|`.
    pub fn hamming(&self) -> usize {
        self.red.hamming(&self.blue)
    }
}

/// Grows the cluster of `v` and rewrites the blue set to
/// `(B ∩ C) ∪ (R \ C)`.
pub fn couple_sets(g: &Graph, red: &VertexSubset, blue: &VertexSubset, v: usize) -> Result<CoupledPair> {
    let cluster = grow_cluster(g, red, blue, v)?;
    let inside = blue.intersection(&cluster.vertices);
    let outside = red.difference(&cluster.vertices);
    Ok(CoupledPair {
        red: red.clone(),
        blue: inside.union(&outside),
        cluster,
    })
}

/// How the two pinned sets are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CouplingSampler {
    /// Inverse-CDF draws from the enumerated pinned laws.
    Exact,
    /// Glauber runs of the given length on the pinned graphs.
    Chain { burn_in: u64 },
}

enum Source {
    Exact {
        sets: Vec<VertexSubset>,
        cumulative: Vec<f64>,
    },
    Chain {
        reduction: PinnedReduction,
        p: f64,
        burn_in: u64,
    },
}

impl Source {
    fn exact<T: Scalar>(law: &Distribution<T>) -> Self {
        let mut acc = 0.0;
        let mut cumulative = Vec::with_capacity(law.len());
        let mut sets = Vec::with_capacity(law.len());
        for (s, p) in law.atoms() {
            acc += p.approx();
            cumulative.push(acc);
            sets.push(s.clone());
        }
        Self::Exact { sets, cumulative }
    }

    fn draw(&self, rng: &mut RngStream) -> VertexSubset {
        match self {
            Source::Exact { sets, cumulative } => {
                let u = rng.next_unit() * cumulative.last().copied().unwrap_or(1.0);
                let i = cumulative.partition_point(|&c| c <= u).min(sets.len() - 1);
                sets[i].clone()
            }
            Source::Chain { reduction, p, burn_in } => sample_reduced(reduction, *p, *burn_in, rng),
        }
    }
}

/// Prepared coupling at one vertex: the pinned laws or pinned graphs are
/// computed once and shared by every draw.
pub struct Coupler {
    graph: Graph,
    v: usize,
    red: Source,
    blue: Source,
    sampler: CouplingSampler,
}

impl Coupler {
    pub fn new<T: Scalar>(model: &HardCoreModel<T>, v: usize, sampler: CouplingSampler) -> Result<Self> {
        let g = model.graph();
        g.check_vertex(v)?;
        let on = Pinning::single(v, true);
        let off = Pinning::single(v, false);
        let (red, blue) = match sampler {
            CouplingSampler::Exact => (
                Source::exact(&model.pinned_distribution(&on)?),
                Source::exact(&model.pinned_distribution(&off)?),
            ),
            CouplingSampler::Chain { burn_in } => {
                let p = model.occupation_probability().approx();
                let chain = |pins: &Pinning| -> Result<Source> {
                    Ok(Source::Chain {
                        reduction: PinnedReduction::new(g, pins)?,
                        p,
                        burn_in,
                    })
                };
                (chain(&on)?, chain(&off)?)
            }
        };
        Ok(Self {
            graph: g.clone(),
            v,
            red,
            blue,
            sampler,
        })
    }

    /// Exact sampler when enumeration fits the model's limits, otherwise
    /// Glauber with the given burn-in.
    pub fn auto<T: Scalar>(model: &HardCoreModel<T>, v: usize, burn_in: u64) -> Result<Self> {
        match Self::new(model, v, CouplingSampler::Exact) {
            Err(e) if e.is_cap() => Self::new(model, v, CouplingSampler::Chain { burn_in }),
            other => other,
        }
    }

    pub fn sampler(&self) -> CouplingSampler {
        self.sampler
    }

    pub fn vertex(&self) -> usize {
        self.v
    }

    pub fn sample(&self, rng: &mut RngStream) -> CoupledPair {
        let red = self.red.draw(rng);
        let blue = self.blue.draw(rng);
        couple_sets(&self.graph, &red, &blue, self.v).expect("pinned red set contains the root")
    }
}

/// One coupling draw; prefer [`Coupler`] for repeated draws.
pub fn couple<T: Scalar>(
    model: &HardCoreModel<T>,
    v: usize,
    sampler: CouplingSampler,
    rng: &mut RngStream,
) -> Result<CoupledPair> {
    Ok(Coupler::new(model, v, sampler)?.sample(rng))
}

/// The coupling evaluated over every pair of pinned sets, weighted exactly.
#[derive(Clone, Debug)]
pub struct ExactCoupling<T> {
    /// Law of the rewritten blue set.
    pub blue: Distribution<T>,
    /// Law of the red set after the coupling.
    pub red: Distribution<T>,
    /// `E|C| = E d_H(red, blue)`.
    pub mean_cluster_size: T,
    /// Widest layer over all pairs of positive probability.
    pub max_layer_width: usize,
    pub max_cluster_size: usize,
}

pub fn exact_coupling<T: Scalar>(model: &HardCoreModel<T>, v: usize) -> Result<ExactCoupling<T>> {
    let g = model.graph();
    g.check_vertex(v)?;
    let reds = model.pinned_distribution(&Pinning::single(v, true))?;
    let blues = model.pinned_distribution(&Pinning::single(v, false))?;
    let cap = model.limits().independent_sets;
    if reds.len().saturating_mul(blues.len()) > cap {
        return Err(Error::CapExceeded {
            what: "coupling pair count",
            cap,
        });
    }
    let n = g.vertex_count();
    let mut blue_out = Vec::with_capacity(reds.len() * blues.len());
    let mut red_out = Vec::with_capacity(reds.len() * blues.len());
    let mut mean = T::zero();
    let mut max_layer_width = 0;
    let mut max_cluster_size = 0;
    for (r, pr) in reds.atoms() {
        for (b, pb) in blues.atoms() {
            let pair = couple_sets(g, r, b, v)?;
            let w = pr.clone() * pb.clone();
            mean = mean + w.clone() * T::from_count(pair.cluster.size());
            max_layer_width = max_layer_width.max(pair.cluster.max_layer_width());
            max_cluster_size = max_cluster_size.max(pair.cluster.size());
            red_out.push((pair.red, w.clone()));
            blue_out.push((pair.blue, w));
        }
    }
    Ok(ExactCoupling {
        blue: Distribution::from_weights(n, blue_out),
        red: Distribution::from_weights(n, red_out),
        mean_cluster_size: mean,
        max_layer_width,
        max_cluster_size,
    })
}

/// Law of the rewritten blue set; equals `μ^{(v,0)}` when the coupling is
/// correct.
pub fn exact_coupling_pushforward<T: Scalar>(model: &HardCoreModel<T>, v: usize) -> Result<Distribution<T>> {
    Ok(exact_coupling(model, v)?.blue)
}

/// Exact `E|C|`, the coupling's upper bound on `W₁(μ^{(v,0)}, μ^{(v,1)})`.
pub fn exact_mean_cluster_size<T: Scalar>(model: &HardCoreModel<T>, v: usize) -> Result<T> {
    Ok(exact_coupling(model, v)?.mean_cluster_size)
}

/// Summary of independent coupling replicas.
#[derive(Clone, Debug, PartialEq)]
pub struct ClusterStatistics {
    pub replicas: usize,
    pub mean_size: f64,
    pub std_err: f64,
    pub max_size: usize,
    pub max_layer_width: usize,
    /// Layer width → number of layers observed with that width.
    pub layer_width_histogram: BTreeMap<usize, u64>,
    /// Cluster size → number of replicas.
    pub size_histogram: BTreeMap<usize, u64>,
}

pub fn cluster_statistics(coupler: &Coupler, replicas: usize, seed: u64) -> Result<ClusterStatistics> {
    if replicas == 0 {
        return Err(Error::InvalidParameter("replicas must be at least 1".into()));
    }
    let clusters = run_replicas(seed, replicas, |_, mut rng| coupler.sample(&mut rng).cluster);
    Ok(summarise(&clusters))
}

pub fn summarise(clusters: &[Cluster]) -> ClusterStatistics {
    let mut layer_width_histogram = BTreeMap::new();
    let mut size_histogram = BTreeMap::new();
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for c in clusters {
        let s = c.size() as f64;
        sum += s;
        sum_sq += s * s;
        *size_histogram.entry(c.size()).or_insert(0) += 1;
        for w in c.layer_widths() {
            *layer_width_histogram.entry(w).or_insert(0) += 1;
        }
    }
    let k = clusters.len() as f64;
    let mean_size = sum / k;
    let var = if clusters.len() > 1 {
        (sum_sq - k * mean_size * mean_size).max(0.0) / (k - 1.0)
    } else {
        0.0
    };
    ClusterStatistics {
        replicas: clusters.len(),
        mean_size,
        std_err: (var / k).sqrt(),
        max_size: clusters.iter().map(Cluster::size).max().unwrap_or(0),
        max_layer_width: clusters.iter().map(Cluster::max_layer_width).max().unwrap_or(0),
        layer_width_histogram,
        size_histogram,
    }
}

/// `2 · vol(Δ, 2t)`, with `Δ` raised to 3 so that paths and cycles get the
/// same (valid) bound as subcubic graphs.
pub fn layer_bound(g: &Graph, t: usize) -> Result<u64> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("layer bound needs t ≥ 2, got {t}")));
    }
    Ok(2 * vol(g.max_degree().max(3), 2 * t)?)
}

/// Whether every layer of `cluster` has at most `2 · vol(Δ, 2t)` vertices.
/// The caller is responsible for `g` being `S_{t,t,t}`-free.
pub fn check_layer_bound(g: &Graph, t: usize, cluster: &Cluster) -> Result<bool> {
    let bound = layer_bound(g, t)?;
    Ok(cluster.layers.iter().all(|l| l.len() as u64 <= bound))
}

/// Monte Carlo estimate of `E|C|` with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_err: f64,
}

pub fn w1_upper_bound(coupler: &Coupler, replicas: usize, seed: u64) -> Result<Estimate> {
    let stats = cluster_statistics(coupler, replicas, seed)?;
    Ok(Estimate {
        mean: stats.mean_size,
        std_err: stats.std_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{cycle, path, random_connected_bounded, star};
    use crate::Rational;
    use num_traits::One;
    use proptest::prelude::*;

    fn set(n: usize, v: &[usize]) -> VertexSubset {
        VertexSubset::from_vertices(n, v.iter().copied())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn single_edge_clusters() {
        let g = path(2);
        let c = grow_cluster(&g, &set(2, &[0]), &set(2, &[]), 0).unwrap();
        assert_eq!(c.layers, vec![set(2, &[0])]);
        let c = grow_cluster(&g, &set(2, &[0]), &set(2, &[1]), 0).unwrap();
        assert_eq!(c.layers, vec![set(2, &[0]), set(2, &[1])]);
        assert_eq!(c.vertices, set(2, &[0, 1]));
        assert_eq!(
            grow_cluster(&g, &set(2, &[1]), &set(2, &[]), 0),
            Err(Error::RootNotRed(0))
        );
    }

    #[test]
    fn path_hand_trace() {
        // v=0, a=1, b=2, c=3.
        let g = path(4);
        let pair = couple_sets(&g, &set(4, &[0, 2]), &set(4, &[1]), 0).unwrap();
        assert_eq!(pair.cluster.layers, vec![set(4, &[0]), set(4, &[1]), set(4, &[2])]);
        assert_eq!(pair.blue, set(4, &[1]));
        assert_eq!(pair.hamming(), 3);
    }

    #[test]
    fn triangle_with_pendant_trace() {
        // Triangle 0-1-2 plus pendant 3 on 1: vertex 2 is seen from the root
        // without being blue and drops out of the pool.
        let g = Graph::new(4, [(0, 1), (0, 2), (1, 2), (1, 3)]).unwrap();
        let c = grow_cluster(&g, &set(4, &[0, 3]), &set(4, &[1]), 0).unwrap();
        assert_eq!(c.layers, vec![set(4, &[0]), set(4, &[1]), set(4, &[3])]);
    }

    #[test]
    fn single_edge_exact_coupling() {
        let m = HardCoreModel::new(path(2), q(1, 1)).unwrap();
        let coupling = exact_coupling(&m, 0).unwrap();
        let off = m.pinned_distribution(&Pinning::single(0, false)).unwrap();
        assert_eq!(coupling.blue.atoms(), off.atoms());
        assert_eq!(coupling.mean_cluster_size, q(3, 2));
        assert_eq!(coupling.max_layer_width, 1);
        let single = HardCoreModel::new(Graph::empty(1), q(1, 1)).unwrap();
        let push = exact_coupling_pushforward(&single, 0).unwrap();
        assert_eq!(push.atoms(), &[(VertexSubset::empty(1), Rational::one())]);
        assert_eq!(exact_mean_cluster_size(&single, 0).unwrap(), Rational::one());
    }

    #[test]
    fn claw_centre_pushforward() {
        let m = HardCoreModel::new(star(3), q(1, 1)).unwrap();
        let push = exact_coupling_pushforward(&m, 0).unwrap();
        let off = m.pinned_distribution(&Pinning::single(0, false)).unwrap();
        assert_eq!(push.atoms(), off.atoms());
    }

    #[test]
    fn sampled_single_edge() {
        let m = HardCoreModel::new(path(2), 1.0).unwrap();
        let coupler = Coupler::new(&m, 0, CouplingSampler::Exact).unwrap();
        let stats = cluster_statistics(&coupler, 20_000, 1).unwrap();
        assert!((stats.mean_size - 1.5).abs() < 4.0 * stats.std_err);
        assert_eq!(stats.max_layer_width, 1);
        assert_eq!(stats.size_histogram.keys().copied().collect::<Vec<_>>(), vec![1, 2]);
        let again = w1_upper_bound(&coupler, 20_000, 1).unwrap();
        assert_eq!(again.mean, stats.mean_size);
        let single = Coupler::new(
            &HardCoreModel::new(Graph::empty(1), 1.0).unwrap(),
            0,
            CouplingSampler::Exact,
        )
        .unwrap();
        assert_eq!(w1_upper_bound(&single, 10, 0).unwrap().mean, 1.0);
        assert!(cluster_statistics(&single, 0, 0).is_err());
    }

    #[test]
    fn chain_sampler_runs() {
        let m = HardCoreModel::new(cycle(6), 1.0).unwrap();
        let coupler = Coupler::new(&m, 2, CouplingSampler::Chain { burn_in: 500 }).unwrap();
        let stats = cluster_statistics(&coupler, 200, 3).unwrap();
        assert!(stats.max_layer_width <= 2);
        assert!(Coupler::auto(&m, 2, 10).unwrap().sampler() == CouplingSampler::Exact);
    }

    #[test]
    fn layer_bound_values() {
        assert_eq!(layer_bound(&cycle(5), 2).unwrap(), 92);
        assert!(layer_bound(&cycle(5), 1).is_err());
        let c = grow_cluster(&path(1), &set(1, &[0]), &set(1, &[]), 0).unwrap();
        assert!(check_layer_bound(&path(1), 2, &c).unwrap());
    }

    /// Connected component of `v` in the subgraph induced by `R ∪ B`.
    fn component(g: &Graph, within: &VertexSubset, v: usize) -> VertexSubset {
        let mut seen = VertexSubset::from_vertices(g.vertex_count(), [v]);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if within.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn cluster_is_the_red_blue_component(seed in any::<u64>(), n in 1usize..=16) {
            let mut rng = RngStream::new(seed);
            let g = random_connected_bounded(n, 4, n, rng.rng());
            let m = HardCoreModel::new(g.clone(), 1.3).unwrap();
            let v = rng.next_vertex(n);
            let red = crate::glauber::sample_stationary(&m, &Pinning::single(v, true), 200, &mut rng).unwrap();
            let blue = crate::glauber::sample_stationary(&m, &Pinning::single(v, false), 200, &mut rng).unwrap();
            let pair = couple_sets(&g, &red, &blue, v).unwrap();
            let c = &pair.cluster;
            prop_assert_eq!(&c.vertices, &component(&g, &red.union(&blue), v));
            prop_assert_eq!(pair.hamming(), c.size());
            prop_assert!(g.is_independent(&pair.blue));
            prop_assert!(!pair.blue.contains(v));
            prop_assert_eq!(pair.red.difference(&c.vertices), pair.blue.difference(&c.vertices));
            let total: usize = c.layer_widths().iter().sum();
            prop_assert_eq!(total, c.size());
            for (d, layer) in c.layers.iter().enumerate() {
                prop_assert!(g.is_independent(layer));
                let colour = if d % 2 == 0 { &red } else { &blue };
                prop_assert!(layer.is_subset(colour));
                if d > 0 {
                    let reach = g.boundary(&c.layers[d - 1]).unwrap();
                    prop_assert!(!reach.is_disjoint(layer));
                }
                for later in c.layers.iter().skip(d + 2) {
                    prop_assert!(g.boundary(layer).unwrap().is_disjoint(later));
                }
            }
        }
    }
}
