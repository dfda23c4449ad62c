//! Exact optimal transport between finitely supported distributions, used
//! for the Hamming Wasserstein distance `W₁`.

use std::collections::VecDeque;

use super::Distribution;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default bound on the combined support size handed to the solver.
pub const DEFAULT_TRANSPORT_CAP: usize = 2000;

/// An optimal plan: total cost and the non-zero flows `(source, sink, mass)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransportPlan<T> {
    pub cost: T,
    pub flows: Vec<(usize, usize, T)>,
}

fn live<T: Scalar>(x: &T) -> bool {
    *x > T::zero() && !x.is_negligible()
}

struct Network<'a, T, C> {
    supply: &'a [T],
    demand: &'a [T],
    cost: C,
    sent: Vec<T>,
    received: Vec<T>,
    flow: Vec<Vec<T>>,
}

impl<T: Scalar, C: Fn(usize, usize) -> u64> Network<'_, T, C> {
    fn a(&self) -> usize {
        self.supply.len()
    }

    fn sink(&self) -> usize {
        self.supply.len() + self.demand.len() + 1
    }

    /// Residual arcs out of `u` as `(target, cost, capacity)`; `None` is unbounded.
    fn arcs(&self, u: usize, out: &mut Vec<(usize, i64, Option<T>)>) {
        out.clear();
        let a = self.a();
        let b = self.demand.len();
        let t = self.sink();
        if u == 0 {
            for i in 0..a {
                let r = self.supply[i].clone() - self.sent[i].clone();
                if live(&r) {
                    out.push((1 + i, 0, Some(r)));
                }
            }
        } else if u <= a {
            let i = u - 1;
            if live(&self.sent[i]) {
                out.push((0, 0, Some(self.sent[i].clone())));
            }
            for j in 0..b {
                out.push((1 + a + j, (self.cost)(i, j) as i64, None));
            }
        } else if u < t {
            let j = u - 1 - a;
            for i in 0..a {
                if live(&self.flow[i][j]) {
                    out.push((1 + i, -((self.cost)(i, j) as i64), Some(self.flow[i][j].clone())));
                }
            }
            let r = self.demand[j].clone() - self.received[j].clone();
            if live(&r) {
                out.push((t, 0, Some(r)));
            }
        } else {
            for j in 0..b {
                if live(&self.received[j]) {
                    out.push((1 + a + j, 0, Some(self.received[j].clone())));
                }
            }
        }
    }

    fn push(&mut self, u: usize, v: usize, amount: &T) {
        let a = self.a();
        let t = self.sink();
        if u == 0 {
            self.sent[v - 1] = self.sent[v - 1].clone() + amount.clone();
        } else if v == 0 {
            self.sent[u - 1] = self.sent[u - 1].clone() - amount.clone();
        } else if v == t {
            self.received[u - 1 - a] = self.received[u - 1 - a].clone() + amount.clone();
        } else if u == t {
            self.received[v - 1 - a] = self.received[v - 1 - a].clone() - amount.clone();
        } else if u <= a {
            let (i, j) = (u - 1, v - 1 - a);
            self.flow[i][j] = self.flow[i][j].clone() + amount.clone();
        } else {
            let (i, j) = (v - 1, u - 1 - a);
            self.flow[i][j] = self.flow[i][j].clone() - amount.clone();
        }
    }

    /// Dense Dijkstra on reduced costs; `None` when the sink is unreachable.
    fn shortest_distances(&self, potential: &[i64]) -> Option<Vec<i64>> {
        let nodes = self.sink() + 1;
        let mut dist = vec![i64::MAX; nodes];
        let mut done = vec![false; nodes];
        let mut arcs = Vec::new();
        dist[0] = 0;
        loop {
            let u = (0..nodes)
                .filter(|&u| !done[u] && dist[u] < i64::MAX)
                .min_by_key(|&u| dist[u]);
            let Some(u) = u else { break };
            done[u] = true;
            self.arcs(u, &mut arcs);
            for (v, c, _) in arcs.drain(..) {
                let reduced = c + potential[u] - potential[v];
                debug_assert!(reduced >= 0);
                if dist[u] + reduced < dist[v] {
                    dist[v] = dist[u] + reduced;
                }
            }
        }
        (dist[self.sink()] < i64::MAX).then_some(dist)
    }

    /// Repeated BFS augmentation along arcs of zero reduced cost.
    fn saturate_admissible(&mut self, potential: &[i64]) {
        let nodes = self.sink() + 1;
        let t = self.sink();
        let mut arcs = Vec::new();
        loop {
            let mut parent: Vec<Option<(usize, Option<T>)>> = vec![None; nodes];
            let mut seen = vec![false; nodes];
            seen[0] = true;
            let mut queue = VecDeque::from([0]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                self.arcs(u, &mut arcs);
                for (v, c, cap) in arcs.drain(..) {
                    if !seen[v] && c + potential[u] - potential[v] == 0 {
                        seen[v] = true;
                        parent[v] = Some((u, cap));
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return;
            }
            let mut bottleneck: Option<T> = None;
            let mut v = t;
            while let Some((u, cap)) = &parent[v] {
                if let Some(c) = cap {
                    if bottleneck.as_ref().map_or(true, |b| c < b) {
                        bottleneck = Some(c.clone());
                    }
                }
                v = *u;
            }
            let amount = bottleneck.expect("source and sink arcs are bounded");
            let mut v = t;
            while let Some((u, _)) = parent[v].clone() {
                self.push(u, v, &amount);
                v = u;
            }
        }
    }
}

/// Minimum-cost transport of `supply` onto `demand` with integer arc costs,
/// solved exactly by the primal-dual method: Dijkstra with potentials picks
/// the admissible arcs, then a max-flow pushes along them.
pub fn min_cost_transport<T: Scalar>(
    supply: &[T],
    demand: &[T],
    cost: impl Fn(usize, usize) -> u64,
) -> Result<TransportPlan<T>> {
    let total = |xs: &[T]| xs.iter().fold(T::zero(), |a, x| a + x.clone());
    if supply.iter().chain(demand).any(|x| *x < T::zero()) {
        return Err(Error::InvalidParameter("transport masses must be non-negative".into()));
    }
    let gap = total(supply) - total(demand);
    let scale = T::from_count(supply.len() + demand.len() + 1);
    if gap.abs() > T::tolerance() * scale {
        return Err(Error::InvalidParameter("supply and demand totals differ".into()));
    }
    let a = supply.len();
    let b = demand.len();
    let mut net = Network {
        supply,
        demand,
        cost,
        sent: vec![T::zero(); a],
        received: vec![T::zero(); b],
        flow: vec![vec![T::zero(); b]; a],
    };
    let mut potential = vec![0i64; a + b + 2];
    while let Some(dist) = net.shortest_distances(&potential) {
        let reach = dist[net.sink()];
        for (p, d) in potential.iter_mut().zip(&dist) {
            *p += (*d).min(reach);
        }
        net.saturate_admissible(&potential);
    }
    let mut cost_total = T::zero();
    let mut flows = Vec::new();
    for i in 0..a {
        for j in 0..b {
            let f = net.flow[i][j].clone();
            if live(&f) {
                cost_total = cost_total + f.clone() * T::from_u64((net.cost)(i, j)).expect("cost representable");
                flows.push((i, j, f));
            }
        }
    }
    Ok(TransportPlan {
        cost: cost_total,
        flows,
    })
}

/// `W₁(μ, ν)` under the Hamming metric on vertex subsets.
pub fn exact_w1_hamming<T: Scalar>(mu: &Distribution<T>, nu: &Distribution<T>, cap: usize) -> Result<T> {
    if mu.universe_size() != nu.universe_size() {
        return Err(Error::UniverseMismatch {
            expected: mu.universe_size(),
            found: nu.universe_size(),
        });
    }
    if mu.len() + nu.len() > cap {
        return Err(Error::CapExceeded {
            what: "transport support size",
            cap,
        });
    }
    let supply: Vec<T> = mu.atoms().iter().map(|(_, p)| p.clone()).collect();
    let demand: Vec<T> = nu.atoms().iter().map(|(_, p)| p.clone()).collect();
    let plan = min_cost_transport(&supply, &demand, |i, j| {
        mu.atoms()[i].0.hamming(&nu.atoms()[j].0) as u64
    })?;
    Ok(plan.cost)
}
