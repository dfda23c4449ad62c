//! Stretched cubic bipartite expanders on which Glauber dynamics mixes
//! slowly, with an exact conductance certificate.
//!
//! Each edge of a balanced bipartite base `G` becomes a path with `2ℓ`
//! internal vertices, giving `G*`. Independent sets of `G*` are split by
//! whether they occupy fewer, equally many or more left branch vertices than
//! right ones. Summing out the internal paths leaves a weight per branch
//! pattern, so the three class weights are exact sums over `2^{2n}` patterns.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::glauber::RngStream;
use crate::graph::generators::{random_cubic_bipartite, stretch, CUBIC_RETRY_BUDGET};
use crate::graph::{expansion_constant, Bipartition, Graph, VertexSubset, DEFAULT_EXPANSION_CAP};
use crate::scalar::Scalar;

/// Largest number of branch vertices whose patterns are enumerated by default.
pub const DEFAULT_BRANCH_CAP: usize = 24;

/// A base graph with its stretch and verified expansion.
#[derive(Clone, Debug)]
pub struct TorpidInstance {
    pub base: Graph,
    pub parts: Bipartition,
    pub stretched: Graph,
    pub ell: usize,
    /// Verified expansion constant of the base; `None` when no set is in range.
    pub alpha: Option<f64>,
    /// Base vertex → id in the stretched graph.
    pub branch_map: Vec<usize>,
}

impl TorpidInstance {
    /// Stretches `base` with `2ℓ` internal vertices per edge. The base must
    /// be bipartite with balanced colour classes.
    pub fn from_base(base: Graph, ell: usize) -> Result<Self> {
        let parts = Bipartition::of(&base)?;
        Self::with_parts(base, parts, ell)
    }

    pub fn with_parts(base: Graph, parts: Bipartition, ell: usize) -> Result<Self> {
        if ell < 1 {
            return Err(Error::InvalidParameter("stretch parameter ℓ must be at least 1".into()));
        }
        let alpha = expansion_constant(&base, &parts, DEFAULT_EXPANSION_CAP)?.map(|e| e.alpha());
        let s = stretch(&base, 2 * ell);
        Ok(Self {
            base,
            parts,
            stretched: s.graph,
            ell,
            alpha,
            branch_map: s.branch_map,
        })
    }

    /// First random cubic bipartite base on `n + n` vertices drawn from
    /// `seed` whose expansion constant is positive.
    pub fn generate(n: usize, ell: usize, seed: u64) -> Result<Self> {
        let mut rng = RngStream::new(seed);
        for _ in 0..CUBIC_RETRY_BUDGET {
            let base = random_cubic_bipartite(n, rng.rng())?;
            let parts = Bipartition {
                left: (0..n).collect(),
                right: (n..2 * n).collect(),
            };
            let instance = Self::with_parts(base, parts, ell)?;
            if instance.alpha.is_some_and(|a| a > 0.0) {
                return Ok(instance);
            }
        }
        Err(Error::GenerationFailed {
            attempts: CUBIC_RETRY_BUDGET,
            reason: format!("no cubic bipartite base on {n}+{n} vertices with positive expansion"),
        })
    }

    pub fn n(&self) -> usize {
        self.parts.part_size()
    }

    /// Internal path vertices per base edge, `2ℓ`.
    pub fn internal_length(&self) -> usize {
        2 * self.ell
    }
}

/// Weights of the internal vertices of one stretched edge, indexed by the
/// occupancy of its two endpoints: `[[P00, P01], [P10, P11]]`.
pub fn path_transfer<T: Scalar>(ell: usize, lambda: &T) -> Result<[[T; 2]; 2]> {
    if ell < 1 {
        return Err(Error::InvalidParameter("stretch parameter ℓ must be at least 1".into()));
    }
    // f[m] is the independence polynomial of a path on m vertices.
    let mut f = vec![T::one(), T::one() + lambda.clone()];
    for m in 2..=2 * ell {
        let next = f[m - 1].clone() + lambda.clone() * f[m - 2].clone();
        f.push(next);
    }
    let p00 = f[2 * ell].clone();
    let p01 = f[2 * ell - 1].clone();
    let p11 = f[2 * ell - 2].clone();
    Ok([[p00, p01.clone()], [p01, p11]])
}

/// Branch patterns grouped by what their weight depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternClass {
    pub left: usize,
    pub right: usize,
    /// Base edges with both endpoints occupied (deficient paths).
    pub both: usize,
    /// Base edges with exactly one endpoint occupied.
    pub one: usize,
}

/// Number of branch patterns in each [`PatternClass`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternCensus {
    pub edge_count: usize,
    pub classes: BTreeMap<PatternClass, u64>,
}

/// Enumerates all `2^{2n}` branch patterns, in parallel over left masks.
pub fn pattern_census(instance: &TorpidInstance, cap: usize) -> Result<PatternCensus> {
    let (nl, nr) = (instance.parts.left.len(), instance.parts.right.len());
    if nl + nr > cap.min(62) {
        return Err(Error::CapExceeded {
            what: "branch vertex count",
            cap: cap.min(62),
        });
    }
    let g = &instance.base;
    let mut right_index = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in instance.parts.right.iter().enumerate() {
        right_index[v] = i;
    }
    let adj: Vec<u64> = instance
        .parts
        .left
        .iter()
        .map(|&u| g.neighbors(u).iter().fold(0u64, |m, &w| m | 1 << right_index[w]))
        .collect();
    let left_degree: Vec<usize> = instance.parts.left.iter().map(|&u| g.degree(u)).collect();
    let right_degree: Vec<usize> = instance.parts.right.iter().map(|&u| g.degree(u)).collect();
    let right_degree_sum: Vec<usize> = (0u64..1 << nr)
        .map(|m| (0..nr).filter(|&i| m >> i & 1 == 1).map(|i| right_degree[i]).sum())
        .collect();
    let merged = (0u64..1 << nl)
        .into_par_iter()
        .fold(HashMap::new, |mut acc: HashMap<PatternClass, u64>, lmask| {
            let left = lmask.count_ones() as usize;
            let left_deg: usize = (0..nl).filter(|&i| lmask >> i & 1 == 1).map(|i| left_degree[i]).sum();
            for rmask in 0u64..1 << nr {
                let mut both = 0;
                let mut bits = lmask;
                while bits != 0 {
                    both += (adj[bits.trailing_zeros() as usize] & rmask).count_ones() as usize;
                    bits &= bits - 1;
                }
                let class = PatternClass {
                    left,
                    right: rmask.count_ones() as usize,
                    both,
                    one: left_deg + right_degree_sum[rmask as usize] - 2 * both,
                };
                *acc.entry(class).or_insert(0) += 1;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(PatternCensus {
        edge_count: g.edge_count(),
        classes: merged.into_iter().collect(),
    })
}

/// Total weight of independent sets of `G*` by left/right branch balance.
#[derive(Clone, Debug, PartialEq)]
pub struct BalanceWeights<T> {
    pub less: T,
    pub equal: T,
    pub greater: T,
    /// `(|I ∩ V_L|, |I ∩ V_R|)` → weight.
    pub by_profile: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> BalanceWeights<T> {
    pub fn total(&self) -> T {
        self.less.clone() + self.equal.clone() + self.greater.clone()
    }

    /// `w_= / min(w_<, w_>)`.
    pub fn ratio(&self) -> T {
        let low = if self.less < self.greater {
            &self.less
        } else {
            &self.greater
        };
        self.equal.clone() / low.clone()
    }
}

/// Exact class weights from the census: a pattern weighs
/// `λ^{|pattern|} · P00^{#00} · P01^{#01} · P11^{#11}` over base edges.
pub fn weights_from_census<T: Scalar>(census: &PatternCensus, ell: usize, lambda: &T) -> Result<BalanceWeights<T>> {
    let p = path_transfer(ell, lambda)?;
    let mut by_profile: BTreeMap<(usize, usize), T> = BTreeMap::new();
    for (class, &count) in &census.classes {
        let none = census.edge_count - class.both - class.one;
        let w = T::from_u64(count).expect("count representable")
            * lambda.powu(class.left + class.right)
            * p[0][0].powu(none)
            * p[0][1].powu(class.one)
            * p[1][1].powu(class.both);
        let slot = by_profile.entry((class.left, class.right)).or_insert_with(T::zero);
        *slot = slot.clone() + w;
    }
    let (mut less, mut equal, mut greater) = (T::zero(), T::zero(), T::zero());
    for (&(l, r), w) in &by_profile {
        let bucket = match l.cmp(&r) {
            std::cmp::Ordering::Less => &mut less,
            std::cmp::Ordering::Equal => &mut equal,
            std::cmp::Ordering::Greater => &mut greater,
        };
        *bucket = bucket.clone() + w.clone();
    }
    Ok(BalanceWeights {
        less,
        equal,
        greater,
        by_profile,
    })
}

pub fn balance_weights<T: Scalar>(instance: &TorpidInstance, lambda: &T) -> Result<BalanceWeights<T>> {
    weights_from_census(&pattern_census(instance, DEFAULT_BRANCH_CAP)?, instance.ell, lambda)
}

/// Base edges with both endpoints in `pattern` (a subset of base vertices).
pub fn deficient_path_count(instance: &TorpidInstance, pattern: &VertexSubset) -> Result<usize> {
    instance.base.check_subset(pattern)?;
    Ok(instance
        .base
        .edges()
        .filter(|&(u, v)| pattern.contains(u) && pattern.contains(v))
        .count())
}

/// Largest independent set of `G*` occupying as many left branch vertices as
/// right ones: a pattern with `k + k` branch vertices and `d` deficient
/// paths extends to at most `2k + ℓ|E| − d` vertices, and this is attained.
pub fn max_balanced_size_from_census(census: &PatternCensus, ell: usize) -> usize {
    census
        .classes
        .keys()
        .filter(|c| c.left == c.right)
        .map(|c| c.left + c.right + ell * census.edge_count - c.both)
        .max()
        .unwrap_or(0)
}

pub fn max_balanced_size(instance: &TorpidInstance) -> Result<usize> {
    Ok(max_balanced_size_from_census(
        &pattern_census(instance, DEFAULT_BRANCH_CAP)?,
        instance.ell,
    ))
}

/// Fewest deficient paths among balanced patterns with `k` vertices per side.
pub fn min_balanced_deficiency(census: &PatternCensus) -> BTreeMap<usize, usize> {
    let mut out: BTreeMap<usize, usize> = BTreeMap::new();
    for c in census.classes.keys().filter(|c| c.left == c.right) {
        let slot = out.entry(c.left).or_insert(usize::MAX);
        *slot = (*slot).min(c.both);
    }
    out
}

/// `(2^{6ℓ+2} λ^{2/(2+α)−1})^n` as an upper bound on the conductance ratio.
pub fn ratio_bound(ell: usize, alpha: f64, lambda: f64, n: usize) -> f64 {
    per_vertex_factor(ell, alpha, lambda).powi(n as i32)
}

/// `2^{6ℓ+2} λ^{2/(2+α)−1}`; the construction is torpid once this is below 1.
pub fn per_vertex_factor(ell: usize, alpha: f64, lambda: f64) -> f64 {
    let log = (6 * ell + 2) as f64 * std::f64::consts::LN_2 + (2.0 / (2.0 + alpha) - 1.0) * lambda.ln();
    log.exp()
}

/// Smallest `λ` making [`per_vertex_factor`] at most `target`.
pub fn threshold_lambda(ell: usize, alpha: f64, target: f64) -> f64 {
    let exponent = 2.0 / (2.0 + alpha) - 1.0;
    ((target.ln() - (6 * ell + 2) as f64 * std::f64::consts::LN_2) / exponent).exp()
}

/// Exact conductance ratio with the bound it is compared against.
#[derive(Clone, Debug, PartialEq)]
pub struct ConductanceReport<T> {
    pub weights: BalanceWeights<T>,
    pub ratio: T,
    /// `None` when the instance has no verified expansion constant.
    pub bound: Option<f64>,
}

pub fn conductance_ratio<T: Scalar>(instance: &TorpidInstance, lambda: &T) -> Result<ConductanceReport<T>> {
    let weights = balance_weights(instance, lambda)?;
    let ratio = weights.ratio();
    let bound = instance
        .alpha
        .map(|a| ratio_bound(instance.ell, a, lambda.approx(), instance.n()));
    Ok(ConductanceReport { weights, ratio, bound })
}
