//! Exact desk-scale computation for the hard-core model.

mod distribution;
mod markov;
mod transport;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub use distribution::{tv_distance, Distribution};
pub use markov::{MixingTrace, TransitionMatrix};
pub use transport::{exact_w1_hamming, min_cost_transport, TransportPlan, DEFAULT_TRANSPORT_CAP};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSubset};
use crate::scalar::{occupation_probability, Scalar};

/// Size caps for the exponential computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of independent sets enumerated.
    pub independent_sets: usize,
    /// Maximum chain states for transition matrices and mixing times.
    pub states: usize,
    /// Maximum steps before [`HardCoreModel::exact_mixing_time`] gives up.
    pub mixing_steps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            independent_sets: 1 << 22,
            states: 4096,
            mixing_steps: 1_000_000,
        }
    }
}

/// Hard-core model on a graph at fugacity `λ > 0`.
#[derive(Clone, Debug)]
pub struct HardCoreModel<T> {
    graph: Graph,
    lambda: T,
    limits: Limits,
}

impl<T: Scalar> HardCoreModel<T> {
    pub fn new(graph: Graph, lambda: T) -> Result<Self> {
        if !(lambda > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "fugacity must be positive, got {lambda}"
            )));
        }
        Ok(Self {
            graph,
            lambda,
            limits: Limits::default(),
        })
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn lambda(&self) -> &T {
        &self.lambda
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// `λ/(1+λ)`.
    pub fn occupation_probability(&self) -> T {
        occupation_probability(&self.lambda)
    }

    /// `λ^{|I|}`.
    pub fn weight(&self, set: &VertexSubset) -> T {
        self.lambda.powu(set.len())
    }

    /// Same fugacity and limits on another graph.
    pub fn on_graph(&self, graph: Graph) -> Self {
        Self {
            graph,
            lambda: self.lambda.clone(),
            limits: self.limits,
        }
    }

    pub fn enumerate(&self) -> Result<Vec<VertexSubset>> {
        enumerate_independent_sets(&self.graph, self.limits.independent_sets)
    }

    /// `Z(G, λ) = Σ_k c_k λ^k` from the independence polynomial.
    pub fn partition_function(&self) -> Result<T> {
        let coefficients = independence_polynomial(&self.graph, self.limits.independent_sets)?;
        Ok(evaluate_polynomial(&coefficients, &self.lambda))
    }

    /// The hard-core distribution `μ_{G,λ}` over all independent sets.
    pub fn distribution(&self) -> Result<Distribution<T>> {
        self.pinned_distribution(&Pinning::default())
    }

    /// `μ` conditioned on the pins, realised by graph surgery: a 0-pin
    /// deletes its vertex, a 1-pin deletes its closed neighbourhood and is
    /// re-attached to every outcome.
    pub fn pinned_distribution(&self, pins: &Pinning) -> Result<Distribution<T>> {
        let reduction = PinnedReduction::new(&self.graph, pins)?;
        let sets = enumerate_independent_sets(&reduction.graph, self.limits.independent_sets)?;
        let n = self.graph.vertex_count();
        let atoms = sets
            .into_iter()
            .map(|s| {
                let full = reduction.lift(&s);
                debug_assert_eq!(full.universe_size(), n);
                let w = self.weight(&full);
                (full, w)
            })
            .collect();
        Ok(Distribution::from_weights(n, atoms))
    }

    /// `P(v ∈ I) = λ · Z(G − v − Γ(v)) / Z(G)`.
    pub fn marginal(&self, v: usize) -> Result<T> {
        self.graph.check_vertex(v)?;
        let mut closed =
            VertexSubset::from_vertices(self.graph.vertex_count(), self.graph.neighbors(v).iter().copied());
        closed.insert(v);
        let (rest, _) = self.graph.remove_vertices(&closed);
        let z_rest = self.on_graph(rest).partition_function()?;
        Ok(self.lambda.clone() * z_rest / self.partition_function()?)
    }

    /// Lower and upper marginal bounds `λ/(1+λ)^{Δ+1}` and `λ/(1+λ)`.
    pub fn marginal_bounds(&self) -> (T, T) {
        let one_plus = T::one() + self.lambda.clone();
        let lower = self.lambda.clone() / one_plus.powu(self.graph.max_degree() + 1);
        (lower, self.occupation_probability())
    }

    pub fn transition_matrix(&self) -> Result<TransitionMatrix<T>> {
        TransitionMatrix::glauber(self)
    }

    /// Smallest `t` with `max_I d_TV(P^t(I, ·), μ) ≤ 1/4`.
    pub fn exact_mixing_time(&self) -> Result<usize> {
        let mut trace = MixingTrace::new(self)?;
        let quarter = T::ratio(1, 4);
        while trace.distance() > quarter {
            if trace.time() >= self.limits.mixing_steps {
                return Err(Error::NoConvergence(self.limits.mixing_steps));
            }
            trace.advance();
        }
        Ok(trace.time())
    }
}

fn evaluate_polynomial<T: Scalar>(coefficients: &[u64], x: &T) -> T {
    coefficients.iter().rev().fold(T::zero(), |acc, &c| {
        acc * x.clone() + T::from_u64(c).expect("coefficient representable")
    })
}

/// Depth-first walk over independent sets, deciding vertices from the
/// highest id down with "absent" tried first, so sets are visited in
/// ascending [`VertexSubset`] order.
fn walk_independent_sets(g: &Graph, cap: usize, mut visit: impl FnMut(&VertexSubset)) -> Result<usize> {
    struct Walker<'a, F> {
        g: &'a Graph,
        blocked: Vec<u32>,
        chosen: VertexSubset,
        visited: usize,
        cap: usize,
        visit: F,
    }

    impl<F: FnMut(&VertexSubset)> Walker<'_, F> {
        fn go(&mut self, remaining: usize) -> Result<()> {
            if remaining == 0 {
                self.visited += 1;
                if self.visited > self.cap {
                    return Err(Error::CapExceeded {
                        what: "independent set count",
                        cap: self.cap,
                    });
                }
                (self.visit)(&self.chosen);
                return Ok(());
            }
            let v = remaining - 1;
            self.go(v)?;
            if self.blocked[v] == 0 {
                self.chosen.insert(v);
                for &w in self.g.neighbors(v) {
                    self.blocked[w] += 1;
                }
                let res = self.go(v);
                for &w in self.g.neighbors(v) {
                    self.blocked[w] -= 1;
                }
                self.chosen.remove(v);
                res?;
            }
            Ok(())
        }
    }

    let n = g.vertex_count();
    let mut walker = Walker {
        g,
        blocked: vec![0; n],
        chosen: VertexSubset::empty(n),
        visited: 0,
        cap,
        visit: &mut visit,
    };
    walker.go(n)?;
    Ok(walker.visited)
}

/// All independent sets in ascending canonical order.
pub fn enumerate_independent_sets(g: &Graph, cap: usize) -> Result<Vec<VertexSubset>> {
    let mut out = Vec::new();
    walk_independent_sets(g, cap, |s| out.push(s.clone()))?;
    Ok(out)
}

/// Number of independent sets of each size.
pub fn independence_polynomial(g: &Graph, cap: usize) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; g.vertex_count() + 1];
    walk_independent_sets(g, cap, |s| counts[s.len()] += 1)?;
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    Ok(counts)
}

/// Vertex → pinned value (`false` = excluded, `true` = included).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pinning(BTreeMap<usize, bool>);

impl Pinning {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(v: usize, value: bool) -> Self {
        Self(BTreeMap::from([(v, value)]))
    }

    pub fn pin(mut self, v: usize, value: bool) -> Self {
        self.0.insert(v, value);
        self
    }

    pub fn get(&self, v: usize) -> Option<bool> {
        self.0.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.0.iter().map(|(&v, &b)| (v, b))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Parses `"3=1,5=0"`; an empty string is the empty pinning.
impl FromStr for Pinning {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut pins = BTreeMap::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (v, b) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("pin {item:?} is not vertex=value")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex in {item:?}")))?;
            let b = match b.trim() {
                "0" => false,
                "1" => true,
                _ => return Err(Error::Parse(format!("pin value in {item:?} must be 0 or 1"))),
            };
            if pins.insert(v, b).is_some_and(|old| old != b) {
                return Err(Error::InfeasiblePins(format!("vertex {v} pinned to both values")));
            }
        }
        Ok(Self(pins))
    }
}

impl fmt::Display for Pinning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|(v, b)| format!("{v}={}", u8::from(b))).collect();
        f.write_str(&items.join(","))
    }
}

/// The graph left after applying pins, with the way back to the original.
#[derive(Clone, Debug)]
pub struct PinnedReduction {
    pub graph: Graph,
    /// Reduced vertex → original vertex.
    pub kept: Vec<usize>,
    /// Vertices pinned to 1.
    pub forced: VertexSubset,
}

impl PinnedReduction {
    pub fn new(g: &Graph, pins: &Pinning) -> Result<Self> {
        let n = g.vertex_count();
        let mut removed = VertexSubset::empty(n);
        let mut forced = VertexSubset::empty(n);
        for (v, value) in pins.iter() {
            g.check_vertex(v)?;
            removed.insert(v);
            if value {
                forced.insert(v);
            }
        }
        for v in forced.iter() {
            for &w in g.neighbors(v) {
                if forced.contains(w) {
                    return Err(Error::InfeasiblePins(format!(
                        "adjacent vertices {v} and {w} both pinned to 1"
                    )));
                }
                removed.insert(w);
            }
        }
        let (graph, kept) = g.remove_vertices(&removed);
        Ok(Self { graph, kept, forced })
    }

    /// Embeds a set of the reduced graph back into the original, adding the
    /// vertices pinned to 1.
    pub fn lift(&self, reduced: &VertexSubset) -> VertexSubset {
        let mut full = self.forced.clone();
        for v in reduced.iter() {
            full.insert(self.kept[v]);
        }
        full
    }
}
