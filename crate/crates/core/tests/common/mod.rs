#![allow(dead_code)]

use hardcore::graph::generators::{
    complete, complete_bipartite, cycle, efree_block, path, random_connected_bounded, star, subdivided_claw,
};
use hardcore::pattern::is_subdivided_claw_free;
use hardcore::{Graph, Rational, SubdividedClawSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Fixture {
    pub name: String,
    pub graph: Graph,
}

impl Fixture {
    fn new(name: impl Into<String>, graph: Graph) -> Self {
        Self {
            name: name.into(),
            graph,
        }
    }

    pub fn is_claw_free(&self) -> bool {
        is_subdivided_claw_free(&self.graph, SubdividedClawSpec::claw())
    }
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn prism() -> Graph {
    Graph::new(
        6,
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap()
}

pub fn cube() -> Graph {
    let edges = (0..8usize)
        .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
        .filter(|&(u, v)| u < v);
    Graph::new(8, edges).unwrap()
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::new(10, outer.chain(spokes).chain(inner)).unwrap()
}

/// Small cubic graphs whose line graphs serve as claw-free fixtures.
pub fn small_cubic() -> Vec<(&'static str, Graph)> {
    vec![
        ("K4", complete(4)),
        ("K3,3", complete_bipartite(3, 3)),
        ("prism", prism()),
        ("cube", cube()),
    ]
}

/// Every fixture graph, at most 16 vertices each.
pub fn corpus() -> Vec<Fixture> {
    let mut out = vec![
        Fixture::new("single vertex", Graph::empty(1)),
        Fixture::new("two isolated", Graph::empty(2)),
    ];
    for n in 2..=10 {
        out.push(Fixture::new(format!("path {n}"), path(n)));
    }
    out.push(Fixture::new("path 16", path(16)));
    for n in 3..=10 {
        out.push(Fixture::new(format!("cycle {n}"), cycle(n)));
    }
    out.push(Fixture::new("cycle 16", cycle(16)));
    for n in 3..=5 {
        out.push(Fixture::new(format!("complete {n}"), complete(n)));
    }
    for k in 3..=4 {
        out.push(Fixture::new(format!("star {k}"), star(k)));
    }
    out.push(Fixture::new("K2,3", complete_bipartite(2, 3)));
    out.push(Fixture::new("K3,3", complete_bipartite(3, 3)));
    out.push(Fixture::new("prism", prism()));
    out.push(Fixture::new("cube", cube()));
    out.push(Fixture::new("petersen", petersen()));
    for spec in [
        SubdividedClawSpec::fork(),
        SubdividedClawSpec::e(),
        SubdividedClawSpec::skew_star(),
        SubdividedClawSpec::uniform(2).unwrap(),
    ] {
        let (a, b, c) = spec.arms();
        out.push(Fixture::new(format!("S{a},{b},{c}"), subdivided_claw(spec)));
    }
    for (name, g) in small_cubic() {
        out.push(Fixture::new(format!("line graph of {name}"), g.line_graph()));
    }
    out.push(Fixture::new("line graph of petersen", petersen().line_graph()));
    out.push(Fixture::new("efree block", efree_block(1, 1).unwrap()));
    out.push(Fixture::new("path 3 + cycle 4", path(3).disjoint_union(&cycle(4))));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (i, n) in [6, 8, 9, 10, 11, 12].into_iter().enumerate() {
        let g = random_connected_bounded(n, 4, n / 2, &mut rng);
        out.push(Fixture::new(format!("random {i} on {n}"), g));
    }
    out
}

/// Connected claw-free fixtures with at most `max_vertices` vertices.
pub fn connected_claw_free(max_vertices: usize) -> Vec<Fixture> {
    corpus()
        .into_iter()
        .filter(|f| f.graph.vertex_count() <= max_vertices && f.graph.is_connected() && f.is_claw_free())
        .collect()
}
