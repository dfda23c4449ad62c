//! Graph families: paths, cycles, subdivided claws, the tiled E-free family,
//! the skew-star witness, random cubic bipartite graphs and edge stretching.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("complete graph edges are valid")
}

/// Parts are `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    Graph::new(a + b, edges).expect("complete bipartite edges are valid")
}

/// `K_{1,k}` with centre 0.
pub fn star(k: usize) -> Graph {
    Graph::new(k + 1, (1..=k).map(|v| (0, v))).expect("star edges are valid")
}

/// Arm lengths of a subdivided claw `S_{i,j,k}` with `1 ≤ i ≤ j ≤ k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubdividedClawSpec {
    i: usize,
    j: usize,
    k: usize,
}

impl SubdividedClawSpec {
    pub fn new(i: usize, j: usize, k: usize) -> Result<Self> {
        if i < 1 || i > j || j > k {
            return Err(Error::InvalidParameter(format!(
                "subdivided claw needs 1 ≤ i ≤ j ≤ k, got ({i}, {j}, {k})"
            )));
        }
        Ok(Self { i, j, k })
    }

    /// Sorts the three arm lengths before validating.
    pub fn from_arms(a: usize, b: usize, c: usize) -> Result<Self> {
        let mut arms = [a, b, c];
        arms.sort_unstable();
        Self::new(arms[0], arms[1], arms[2])
    }

    pub fn claw() -> Self {
        Self { i: 1, j: 1, k: 1 }
    }

    pub fn fork() -> Self {
        Self { i: 1, j: 1, k: 2 }
    }

    /// `S_{1,2,2}`, known as the E.
    pub fn e() -> Self {
        Self { i: 1, j: 2, k: 2 }
    }

    pub fn skew_star() -> Self {
        Self { i: 1, j: 2, k: 3 }
    }

    /// `S_{t,t,t}`.
    pub fn uniform(t: usize) -> Result<Self> {
        Self::new(t, t, t)
    }

    pub fn arms(&self) -> (usize, usize, usize) {
        (self.i, self.j, self.k)
    }

    pub fn vertex_count(&self) -> usize {
        self.i + self.j + self.k + 1
    }
}

/// The tree `S_{i,j,k}`: vertex 0 is the centre, arms follow in order.
pub fn subdivided_claw(spec: SubdividedClawSpec) -> Graph {
    let (i, j, k) = spec.arms();
    let mut edges = Vec::new();
    let mut next = 1;
    for len in [i, j, k] {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::new(next, edges).expect("subdivided claw edges are valid")
}

// One cell of the tiled E-free family: a K4 on {A,B,C,D} with a 4-cycle
// hanging off C (through E,F,G) and one off B (through H,I,J). Offsets are
// lattice coordinates; cells sit on a stride-4 grid, so F of a cell coincides
// with A of its right neighbour and I with D of the cell above.
const CELL: [(i64, i64); 10] = [
    (0, 0),  // A
    (1, 1),  // B
    (2, 0),  // C
    (1, -1), // D
    (3, 1),  // E
    (4, 0),  // F
    (3, -1), // G
    (0, 2),  // H
    (1, 3),  // I
    (2, 2),  // J
];

const CELL_EDGES: [(usize, usize); 14] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 0),
    (0, 2),
    (1, 3), // K4
    (2, 4),
    (4, 5),
    (5, 6),
    (6, 2), // C-E-F-G
    (1, 7),
    (7, 8),
    (8, 9),
    (9, 1), // B-H-I-J
];

/// `rows × cols` tiling of the E-free building block; vertices at the same
/// lattice point are identified. A single cell has 10 vertices.
pub fn efree_block(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter("efree block needs rows, cols ≥ 1".into()));
    }
    let mut ids: HashMap<(i64, i64), usize> = HashMap::new();
    let mut edges = Vec::new();
    for row in 0..rows as i64 {
        for col in 0..cols as i64 {
            let local: Vec<usize> = CELL
                .iter()
                .map(|&(dx, dy)| {
                    let key = (4 * col + dx, 4 * row + dy);
                    let next = ids.len();
                    *ids.entry(key).or_insert(next)
                })
                .collect();
            edges.extend(CELL_EDGES.iter().map(|&(a, b)| (local[a], local[b])));
        }
    }
    Graph::new(ids.len(), edges)
}

/// An E (vertices 0..6, centre 0) plus a path `a = 6, …, b = 6 + path_len`
/// with `a` joined to every vertex of the E.
pub fn skewstar_witness(path_len: usize) -> Result<Graph> {
    if path_len < 2 {
        return Err(Error::InvalidParameter("skew-star witness needs path_len ≥ 2".into()));
    }
    let e = subdivided_claw(SubdividedClawSpec::e());
    let a = e.vertex_count();
    let mut edges: Vec<(usize, usize)> = e.edges().collect();
    edges.extend((0..a).map(|x| (x, a)));
    edges.extend((a..a + path_len).map(|x| (x, x + 1)));
    Graph::new(a + path_len + 1, edges)
}

/// Retry budget for [`random_cubic_bipartite`].
pub const CUBIC_RETRY_BUDGET: usize = 1000;

/// Union of three uniformly random perfect matchings between `0..n` and
/// `n..2n`, rejecting draws with parallel edges.
pub fn random_cubic_bipartite<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter("cubic bipartite graph needs n ≥ 2".into()));
    }
    let mut perms: [Vec<usize>; 3] = std::array::from_fn(|_| (0..n).collect());
    for _ in 0..CUBIC_RETRY_BUDGET {
        for p in &mut perms {
            p.shuffle(rng);
        }
        let simple =
            (0..n).all(|i| perms[0][i] != perms[1][i] && perms[0][i] != perms[2][i] && perms[1][i] != perms[2][i]);
        if simple {
            let edges = perms
                .iter()
                .flat_map(|p| p.iter().enumerate().map(|(i, &j)| (i, n + j)));
            return Graph::new(2 * n, edges);
        }
    }
    Err(Error::GenerationFailed {
        attempts: CUBIC_RETRY_BUDGET,
        reason: format!("no simple cubic bipartite graph drawn on {n}+{n} vertices"),
    })
}

/// Random connected graph with maximum degree at most `max_degree`: a random
/// degree-capped tree plus up to `extra_edges` attempted chords.
pub fn random_connected_bounded<R: Rng + ?Sized>(
    n: usize,
    max_degree: usize,
    extra_edges: usize,
    rng: &mut R,
) -> Graph {
    random_bounded_inner(n, max_degree, extra_edges, false, rng)
}

/// As [`random_connected_bounded`], but chords only join opposite sides of
/// the tree's bipartition, so the result is bipartite.
pub fn random_bipartite_connected_bounded<R: Rng + ?Sized>(
    n: usize,
    max_degree: usize,
    extra_edges: usize,
    rng: &mut R,
) -> Graph {
    random_bounded_inner(n, max_degree, extra_edges, true, rng)
}

fn random_bounded_inner<R: Rng + ?Sized>(
    n: usize,
    max_degree: usize,
    extra_edges: usize,
    bipartite: bool,
    rng: &mut R,
) -> Graph {
    assert!(max_degree >= 2 || n <= 2, "degree cap too small for a connected graph");
    let mut degree = vec![0usize; n];
    let mut side = vec![false; n];
    let mut edges = Vec::new();
    let mut present = std::collections::HashSet::new();
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| degree[u] < max_degree).collect();
        let u = open[rng.gen_range(0..open.len())];
        degree[u] += 1;
        degree[v] += 1;
        side[v] = !side[u];
        edges.push((u, v));
        present.insert((u, v));
    }
    for _ in 0..extra_edges {
        if n < 2 {
            break;
        }
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let key = (u.min(v), u.max(v));
        if u == v
            || degree[u] >= max_degree
            || degree[v] >= max_degree
            || (bipartite && side[u] == side[v])
            || present.contains(&key)
        {
            continue;
        }
        degree[u] += 1;
        degree[v] += 1;
        present.insert(key);
        edges.push(key);
    }
    Graph::new(n, edges).expect("random edges are valid")
}

/// Result of subdividing every edge of a graph.
#[derive(Clone, Debug)]
pub struct Stretched {
    pub graph: Graph,
    /// Original vertex → id in the stretched graph.
    pub branch_map: Vec<usize>,
    /// For each original edge `(u, v)` (in [`Graph::edges`] order), the
    /// internal path vertices ordered from `u` to `v`.
    pub edge_paths: Vec<((usize, usize), Vec<usize>)>,
}

/// Replaces each edge by a path with `m` internal vertices. Original
/// vertices keep their ids; internal vertices follow, edge by edge.
pub fn stretch(g: &Graph, m: usize) -> Stretched {
    let n = g.vertex_count();
    let mut next = n;
    let mut edges = Vec::with_capacity(g.edge_count() * (m + 1));
    let mut edge_paths = Vec::with_capacity(g.edge_count());
    for (u, v) in g.edges() {
        let internal: Vec<usize> = (next..next + m).collect();
        next += m;
        let mut prev = u;
        for &x in &internal {
            edges.push((prev, x));
            prev = x;
        }
        edges.push((prev, v));
        edge_paths.push(((u, v), internal));
    }
    Stretched {
        graph: Graph::new(next, edges).expect("stretched edges are valid"),
        branch_map: (0..n).collect(),
        edge_paths,
    }
}
