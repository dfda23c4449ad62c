//! Simple undirected graphs, vertex subsets, generators and the structural
//! quantities (boundaries, balls, expansion) the rest of the crate uses.

mod expansion;
pub mod generators;
pub mod io;
mod subset;

use std::collections::VecDeque;

pub use expansion::{
    check_expansion, check_expansion_with_parts, expansion_constant, Bipartition, Expansion, DEFAULT_EXPANSION_CAP,
};
pub use generators::{stretch, Stretched, SubdividedClawSpec};
pub use subset::VertexSubset;

use crate::error::{Error, Result};

/// Immutable simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    max_degree: usize,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Parallel edges (in either
    /// orientation) collapse to one; loops and out-of-range endpoints are
    /// rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_adjacency(adjacency))
    }

    fn from_adjacency(adjacency: Vec<Vec<usize>>) -> Self {
        let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Self {
            adjacency,
            max_degree,
            edge_count,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![Vec::new(); n])
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Δ(G), cached at construction.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count()
    }

    pub fn check_subset(&self, s: &VertexSubset) -> Result<()> {
        if s.universe_size() != self.vertex_count() {
            return Err(Error::UniverseMismatch {
                expected: self.vertex_count(),
                found: s.universe_size(),
            });
        }
        Ok(())
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            });
        }
        Ok(())
    }

    pub fn is_independent(&self, s: &VertexSubset) -> bool {
        s.iter().all(|u| self.neighbors(u).iter().all(|&w| !s.contains(w)))
    }

    /// Vertices outside `s` with at least one neighbour in `s`.
    pub fn boundary(&self, s: &VertexSubset) -> Result<VertexSubset> {
        self.check_subset(s)?;
        let mut out = VertexSubset::empty(self.vertex_count());
        for u in s.iter() {
            for &w in self.neighbors(u) {
                if !s.contains(w) {
                    out.insert(w);
                }
            }
        }
        Ok(out)
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Number of vertices within distance `radius` of `v`.
    pub fn ball_size(&self, v: usize, radius: usize) -> usize {
        self.distances_from(v)
            .into_iter()
            .filter(|d| matches!(d, Some(d) if *d <= radius))
            .count()
    }

    /// Component label per vertex, labels assigned in order of lowest vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Two-colouring with the lowest vertex of each component on side
    /// `false`, or `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &w in self.neighbors(u) {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Subgraph induced by `vertices`; new vertex `i` is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adjacency = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self
                    .neighbors(v)
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph::from_adjacency(adjacency)
    }

    /// Deletes the vertices in `removed`, returning the surviving graph and
    /// the original id of each surviving vertex.
    pub fn remove_vertices(&self, removed: &VertexSubset) -> (Graph, Vec<usize>) {
        let kept: Vec<usize> = self.vertices().filter(|&v| !removed.contains(v)).collect();
        (self.induced_subgraph(&kept), kept)
    }

    /// Vertices are the edges of `self` in [`Graph::edges`] order.
    pub fn line_graph(&self) -> Graph {
        let edges: Vec<(usize, usize)> = self.edges().collect();
        let mut incident = vec![Vec::new(); self.vertex_count()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        let mut pairs = Vec::new();
        for list in &incident {
            for (a, &i) in list.iter().enumerate() {
                for &j in &list[a + 1..] {
                    pairs.push((i, j));
                }
            }
        }
        Graph::new(edges.len(), pairs).expect("line graph edges are valid")
    }

    /// Vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(
            other
                .adjacency
                .iter()
                .map(|list| list.iter().map(|&w| w + shift).collect()),
        );
        Graph::from_adjacency(adjacency)
    }
}

/// `vol(Δ, t) = 1 + Δ((Δ−1)^t − 1)/(Δ−2)`: an upper bound on the size of a
/// radius-`t` ball in a graph of maximum degree `Δ`.
pub fn vol(delta: usize, t: usize) -> Result<u64> {
    if delta < 3 {
        return Err(Error::InvalidParameter(format!("vol needs Δ ≥ 3, got {delta}")));
    }
    if t < 1 {
        return Err(Error::InvalidParameter("vol needs t ≥ 1".into()));
    }
    let d = delta as u64;
    let power = (d - 1)
        .checked_pow(t as u32)
        .ok_or_else(|| Error::InvalidParameter(format!("vol({delta}, {t}) overflows")))?;
    Ok(1 + d * (power - 1) / (d - 2))
}
