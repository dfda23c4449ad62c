//! Brute-force vertex expansion of balanced bipartite graphs.

use super::Graph;
use crate::error::{Error, Result};

/// Largest part size [`check_expansion`] will enumerate by default.
pub const DEFAULT_EXPANSION_CAP: usize = 14;

/// The two sides of a bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Bipartition {
    /// Colour classes from [`Graph::bipartition`].
    pub fn of(g: &Graph) -> Result<Self> {
        let colour = g.bipartition().ok_or(Error::NotBipartite)?;
        let (left, right) = g.vertices().partition(|&v| !colour[v]);
        Ok(Self { left, right })
    }

    fn validate(&self, g: &Graph) -> Result<()> {
        if self.left.len() != self.right.len() {
            return Err(Error::Unbalanced {
                left: self.left.len(),
                right: self.right.len(),
            });
        }
        let mut side = vec![None; g.vertex_count()];
        for &v in &self.left {
            g.check_vertex(v)?;
            side[v] = Some(false);
        }
        for &v in &self.right {
            g.check_vertex(v)?;
            side[v] = Some(true);
        }
        if side.iter().any(Option::is_none) {
            return Err(Error::InvalidParameter("bipartition does not cover the graph".into()));
        }
        if g.edges().any(|(u, v)| side[u] == side[v]) {
            return Err(Error::NotBipartite);
        }
        Ok(())
    }

    pub fn part_size(&self) -> usize {
        self.left.len()
    }
}

/// Worst expansion ratio `|Γ(S)| / |S|` over one-sided sets with
/// `1 ≤ |S| ≤ ⌊2n/3⌋`, kept as an exact fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub boundary: usize,
    pub size: usize,
}

impl Expansion {
    /// The largest `α` for which the graph is a `(1+α)`-expander.
    pub fn alpha(&self) -> f64 {
        self.boundary as f64 / self.size as f64 - 1.0
    }
}

/// Neighbourhood bitmasks of each side's vertices, indexed into the other side.
fn side_masks(g: &Graph, parts: &Bipartition) -> (Vec<u64>, Vec<u64>) {
    let mut index = vec![0usize; g.vertex_count()];
    for (i, &v) in parts.left.iter().enumerate() {
        index[v] = i;
    }
    for (i, &v) in parts.right.iter().enumerate() {
        index[v] = i;
    }
    let masks = |side: &[usize]| -> Vec<u64> {
        side.iter()
            .map(|&v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << index[w]))
            .collect()
    };
    (masks(&parts.left), masks(&parts.right))
}

/// Calls `f(|S|, |Γ(S)|)` for every non-empty `S` on either side with
/// `|S| ≤ ⌊2n/3⌋`; stops early when `f` returns false.
fn for_each_small_set(
    g: &Graph,
    parts: &Bipartition,
    cap: usize,
    mut f: impl FnMut(usize, usize) -> bool,
) -> Result<()> {
    parts.validate(g)?;
    let n = parts.part_size();
    if n > cap || n > 63 {
        return Err(Error::CapExceeded {
            what: "expansion check part size",
            cap: cap.min(63),
        });
    }
    let limit = 2 * n / 3;
    let (left, right) = side_masks(g, parts);
    for masks in [&left, &right] {
        for subset in 1u64..(1u64 << n) {
            let size = subset.count_ones() as usize;
            if size > limit {
                continue;
            }
            let mut bits = subset;
            let mut reach = 0u64;
            while bits != 0 {
                reach |= masks[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            if !f(size, reach.count_ones() as usize) {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// True iff every one-sided `S` with `|S| ≤ ⌊2n/3⌋` has at least
/// `(1+α)|S|` neighbours. Parts are the colour classes of `g`.
pub fn check_expansion(g: &Graph, alpha: f64, cap: usize) -> Result<bool> {
    check_expansion_with_parts(g, &Bipartition::of(g)?, alpha, cap)
}

pub fn check_expansion_with_parts(g: &Graph, parts: &Bipartition, alpha: f64, cap: usize) -> Result<bool> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "expansion constant must be positive, got {alpha}"
        )));
    }
    let mut ok = true;
    for_each_small_set(g, parts, cap, |size, reach| {
        ok = reach as f64 >= (1.0 + alpha) * size as f64;
        ok
    })?;
    Ok(ok)
}

/// Exact worst-case expansion; `None` when no set is in range (n < 2).
pub fn expansion_constant(g: &Graph, parts: &Bipartition, cap: usize) -> Result<Option<Expansion>> {
    let mut worst: Option<Expansion> = None;
    for_each_small_set(g, parts, cap, |size, boundary| {
        let better = match worst {
            None => true,
            Some(w) => boundary * w.size < w.boundary * size,
        };
        if better {
            worst = Some(Expansion { boundary, size });
        }
        true
    })?;
    Ok(worst)
}
