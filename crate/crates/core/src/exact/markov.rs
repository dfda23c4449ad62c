//! The Glauber kernel as an explicit matrix, and exact worst-start total
//! variation curves `d(t)`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::HardCoreModel;
use crate::error::{Error, Result};
use crate::graph::VertexSubset;
use crate::scalar::Scalar;

/// Sparse single-step kernel over the independent sets of a graph.
#[derive(Clone, Debug)]
pub struct TransitionMatrix<T> {
    states: Vec<VertexSubset>,
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> TransitionMatrix<T> {
    /// Pick `v` uniformly; if no neighbour is occupied set `v` occupied with
    /// probability `λ/(1+λ)` and vacant otherwise; else do nothing.
    pub fn glauber(model: &HardCoreModel<T>) -> Result<Self> {
        let g = model.graph();
        let cap = model.limits().states;
        let states = super::enumerate_independent_sets(g, cap).map_err(|e| match e {
            Error::CapExceeded { .. } => Error::CapExceeded {
                what: "chain state count",
                cap,
            },
            other => other,
        })?;
        let n = g.vertex_count();
        let pick = T::one() / T::from_count(n.max(1));
        let add = model.occupation_probability() * pick.clone();
        let drop = (T::one() - model.occupation_probability()) * pick.clone();
        let index = |s: &VertexSubset| states.binary_search(s).expect("state is independent");
        let rows = states
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut row: BTreeMap<usize, T> = BTreeMap::new();
                let mut bump = |j: usize, p: T| {
                    let slot = row.entry(j).or_insert_with(T::zero);
                    *slot = slot.clone() + p;
                };
                if n == 0 {
                    bump(i, T::one());
                }
                for v in 0..n {
                    if g.neighbors(v).iter().any(|&w| s.contains(w)) {
                        bump(i, pick.clone());
                        continue;
                    }
                    let mut with = s.clone();
                    with.insert(v);
                    let mut without = s.clone();
                    without.remove(v);
                    bump(index(&with), add.clone());
                    bump(index(&without), drop.clone());
                }
                row.into_iter().collect()
            })
            .collect();
        Ok(Self { states, rows })
    }

    pub fn states(&self) -> &[VertexSubset] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn row(&self, i: usize) -> &[(usize, T)] {
        &self.rows[i]
    }

    pub fn index_of(&self, s: &VertexSubset) -> Option<usize> {
        self.states.binary_search(s).ok()
    }

    /// Exact entry `P(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> T {
        self.rows[i]
            .iter()
            .find(|(k, _)| *k == j)
            .map_or_else(T::zero, |(_, p)| p.clone())
    }

    /// Row vector times the matrix.
    pub fn step(&self, dist: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.len()];
        for (i, p) in dist.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in &self.rows[i] {
                out[*j] = out[*j].clone() + p.clone() * q.clone();
            }
        }
        out
    }
}

/// `P^t(I, ·)` for every start `I`, advanced one step at a time.
pub struct MixingTrace<T> {
    matrix: TransitionMatrix<T>,
    stationary: Vec<T>,
    rows: Vec<Vec<T>>,
    time: usize,
    distance: T,
}

impl<T: Scalar> MixingTrace<T> {
    pub fn new(model: &HardCoreModel<T>) -> Result<Self> {
        let matrix = model.transition_matrix()?;
        let mu = model.distribution()?;
        debug_assert!(mu.atoms().iter().map(|(s, _)| s).eq(matrix.states()));
        let stationary: Vec<T> = mu.atoms().iter().map(|(_, p)| p.clone()).collect();
        let k = matrix.len();
        let rows: Vec<Vec<T>> = (0..k)
            .map(|i| {
                let mut r = vec![T::zero(); k];
                r[i] = T::one();
                r
            })
            .collect();
        let mut trace = Self {
            matrix,
            stationary,
            rows,
            time: 0,
            distance: T::zero(),
        };
        trace.distance = trace.worst_distance();
        Ok(trace)
    }

    fn worst_distance(&self) -> T {
        let half = T::ratio(1, 2);
        self.rows
            .par_iter()
            .map(|r| {
                let l1 = r
                    .iter()
                    .zip(&self.stationary)
                    .fold(T::zero(), |a, (p, q)| a + (p.clone() - q.clone()).abs());
                l1 * half.clone()
            })
            .reduce(T::zero, |a, b| if b > a { b } else { a })
    }

    pub fn advance(&mut self) {
        let matrix = &self.matrix;
        self.rows.par_iter_mut().for_each(|r| *r = matrix.step(r));
        self.time += 1;
        self.distance = self.worst_distance();
    }

    pub fn time(&self) -> usize {
        self.time
    }

    /// `d(t) = max_I d_TV(P^t(I, ·), μ)` at the current time.
    pub fn distance(&self) -> T {
        self.distance.clone()
    }

    pub fn matrix(&self) -> &TransitionMatrix<T> {
        &self.matrix
    }

    /// `d(0), d(1), …, d(horizon)`, starting from the current time.
    pub fn profile(mut self, horizon: usize) -> Vec<T> {
        let mut out = vec![self.distance()];
        while self.time < horizon {
            self.advance();
            out.push(self.distance());
        }
        out
    }
}
