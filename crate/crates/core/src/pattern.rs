//! Induced-subgraph detection and empirical harnesses for the two
//! subdivided-claw growth lemmas.
//!
//! The search is plain backtracking: pattern vertices are placed in BFS
//! order from a maximum-degree vertex, host candidates are tried in
//! ascending order, and a candidate must match the pattern's adjacency
//! (edges *and* non-edges) against every vertex already placed.

use crate::error::{Error, Result};
use crate::graph::generators::subdivided_claw;
use crate::graph::{vol, Graph, SubdividedClawSpec};

/// Largest pattern [`find_induced`] accepts unless told otherwise.
pub const DEFAULT_PATTERN_CAP: usize = 12;

/// Injective map from pattern vertices to host vertices preserving
/// adjacency and non-adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    map: Vec<usize>,
}

impl Embedding {
    /// Host vertex assigned to each pattern vertex, in pattern order.
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Re-checks the induced condition pair by pair.
    pub fn is_induced(&self, host: &Graph, pattern: &Graph) -> bool {
        let k = pattern.vertex_count();
        if self.map.len() != k || self.map.iter().any(|&h| h >= host.vertex_count()) {
            return false;
        }
        for a in 0..k {
            for b in a + 1..k {
                if self.map[a] == self.map[b] {
                    return false;
                }
                if pattern.has_edge(a, b) != host.has_edge(self.map[a], self.map[b]) {
                    return false;
                }
            }
        }
        true
    }
}

struct Search<'a> {
    host: &'a Graph,
    order: Vec<usize>,
    // Index into `order` of an earlier pattern neighbour, if any.
    anchor: Vec<Option<usize>>,
    // adjacency[k] bit j: order[k] ~ order[j] in the pattern.
    adjacency: Vec<u64>,
    degree: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let candidates: Vec<usize> = match self.anchor[k] {
            Some(j) => self.host.neighbors(self.image[j]).to_vec(),
            None => self.host.vertices().collect(),
        };
        for c in candidates {
            if self.used[c] || self.host.degree(c) < self.degree[k] {
                continue;
            }
            let consistent = (0..k).all(|j| {
                let want = self.adjacency[k] >> j & 1 == 1;
                self.host.has_edge(c, self.image[j]) == want
            });
            if !consistent {
                continue;
            }
            self.image.push(c);
            self.used[c] = true;
            if self.extend(k + 1) {
                return true;
            }
            self.used[c] = false;
            self.image.pop();
        }
        false
    }
}

/// BFS order from the lowest-id vertex of maximum degree.
fn placement_order(pattern: &Graph) -> (Vec<usize>, Vec<Option<usize>>) {
    let k = pattern.vertex_count();
    let start = (0..k)
        .max_by_key(|&v| (pattern.degree(v), std::cmp::Reverse(v)))
        .unwrap();
    let mut position = vec![usize::MAX; k];
    let mut order = vec![start];
    let mut anchor = vec![None];
    position[start] = 0;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        for &w in pattern.neighbors(u) {
            if position[w] == usize::MAX {
                position[w] = order.len();
                order.push(w);
                anchor.push(Some(head));
            }
        }
        head += 1;
    }
    (order, anchor)
}

/// First induced copy of `pattern` in `host`, in lexicographic order of the
/// placement sequence, or `None`.
pub fn find_induced(host: &Graph, pattern: &Graph, cap: usize) -> Result<Option<Embedding>> {
    let k = pattern.vertex_count();
    if k > cap.min(64) {
        return Err(Error::CapExceeded {
            what: "pattern size",
            cap: cap.min(64),
        });
    }
    if k == 0 {
        return Ok(Some(Embedding { map: Vec::new() }));
    }
    if !pattern.is_connected() {
        return Err(Error::PatternDisconnected);
    }
    if k > host.vertex_count() || pattern.max_degree() > host.max_degree() {
        return Ok(None);
    }
    let (order, anchor) = placement_order(pattern);
    let mut position = vec![0; k];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let adjacency = order
        .iter()
        .map(|&v| pattern.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << position[w]))
        .collect();
    let degree = order.iter().map(|&v| pattern.degree(v)).collect();
    let mut search = Search {
        host,
        order,
        anchor,
        adjacency,
        degree,
        image: Vec::with_capacity(k),
        used: vec![false; host.vertex_count()],
    };
    if !search.extend(0) {
        return Ok(None);
    }
    let mut map = vec![0; k];
    for (i, &v) in search.order.iter().enumerate() {
        map[v] = search.image[i];
    }
    Ok(Some(Embedding { map }))
}

/// Induced copy of `S_{i,j,k}`, if any.
pub fn find_subdivided_claw(g: &Graph, spec: SubdividedClawSpec) -> Option<Embedding> {
    let pattern = subdivided_claw(spec);
    find_induced(g, &pattern, pattern.vertex_count()).expect("subdivided claws are connected")
}

pub fn is_subdivided_claw_free(g: &Graph, spec: SubdividedClawSpec) -> bool {
    find_subdivided_claw(g, spec).is_none()
}

/// Why a lemma's hypotheses did not hold for an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PremiseFailure {
    Disconnected,
    NotBipartite,
    /// No induced copy of the lemma's starting pattern.
    MissingPattern,
    TooSmall {
        vertices: usize,
        bound: u64,
    },
}

/// Outcome of checking one instance against a growth lemma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    PremiseFailed(PremiseFailure),
    /// Premise held and the larger claw was found.
    Confirmed(Embedding),
    /// Premise held but the larger claw is absent: the lemma is violated.
    Counterexample,
}

impl Verdict {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, Verdict::Counterexample)
    }

    pub fn is_confirmed(&self) -> bool {
        matches!(self, Verdict::Confirmed(_))
    }
}

fn grow_lemma(
    g: &Graph,
    require_bipartite: bool,
    start: SubdividedClawSpec,
    radius: usize,
    target: SubdividedClawSpec,
) -> Result<Verdict> {
    if !g.is_connected() {
        return Ok(Verdict::PremiseFailed(PremiseFailure::Disconnected));
    }
    if require_bipartite && !g.is_bipartite() {
        return Ok(Verdict::PremiseFailed(PremiseFailure::NotBipartite));
    }
    // A degree-3 pattern cannot occur below Δ = 3, where vol is undefined.
    if g.max_degree() < 3 {
        return Ok(Verdict::PremiseFailed(PremiseFailure::MissingPattern));
    }
    let bound = vol(g.max_degree(), radius)?;
    if g.vertex_count() as u64 <= bound {
        return Ok(Verdict::PremiseFailed(PremiseFailure::TooSmall {
            vertices: g.vertex_count(),
            bound,
        }));
    }
    if find_subdivided_claw(g, start).is_none() {
        return Ok(Verdict::PremiseFailed(PremiseFailure::MissingPattern));
    }
    Ok(match find_subdivided_claw(g, target) {
        Some(e) => Verdict::Confirmed(e),
        None => Verdict::Counterexample,
    })
}

/// Connected, `|V| > vol(Δ, t+1)` and an induced claw must give an induced
/// `S_{1,1,t}`.
pub fn verify_claw_to_s11t(g: &Graph, t: usize) -> Result<Verdict> {
    if t < 2 {
        return Err(Error::InvalidParameter("claw lemma needs t ≥ 2".into()));
    }
    grow_lemma(
        g,
        false,
        SubdividedClawSpec::claw(),
        t + 1,
        SubdividedClawSpec::new(1, 1, t)?,
    )
}

/// Connected bipartite, `|V| > vol(Δ, t+2)` and an induced E must give an
/// induced `S_{1,2,t}`.
pub fn verify_e_to_s12t(g: &Graph, t: usize) -> Result<Verdict> {
    if t < 3 {
        return Err(Error::InvalidParameter("E lemma needs t ≥ 3".into()));
    }
    grow_lemma(
        g,
        true,
        SubdividedClawSpec::e(),
        t + 2,
        SubdividedClawSpec::new(1, 2, t)?,
    )
}
