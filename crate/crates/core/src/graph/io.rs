//! Edge-list text format: a header line `n m`, then `m` lines `u v`
//! (0-based). Blank lines and lines starting with `#` are ignored. The
//! writer emits edges with `u < v` in lexicographic order.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let (n, m) = parse_pair(header, 1)?;
    let mut edges = Vec::with_capacity(m);
    for (idx, line) in lines {
        edges.push(parse_pair(line, idx + 1)?);
    }
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::new(n, edges)
}

fn parse_pair(line: &str, line_no: usize) -> Result<(usize, usize)> {
    let mut fields = line.split_whitespace();
    let mut next = || -> Result<usize> {
        fields
            .next()
            .ok_or_else(|| Error::Parse(format!("line {line_no}: expected two integers")))?
            .parse()
            .map_err(|_| Error::Parse(format!("line {line_no}: bad integer in {line:?}")))
    };
    let pair = (next()?, next()?);
    if fields.next().is_some() {
        return Err(Error::Parse(format!("line {line_no}: trailing fields")));
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::super::generators::{efree_block, random_connected_bounded};
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn writes_canonical_form() {
        let g = Graph::new(3, [(2, 1), (0, 1)]).unwrap();
        assert_eq!(write_edge_list(&g), "3 2\n0 1\n1 2\n");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(read_edge_list("").is_err());
        assert!(read_edge_list("2 1\n").is_err());
        assert!(read_edge_list("2 1\n0 x\n").is_err());
        assert!(read_edge_list("2 1\n0 1 2\n").is_err());
        assert!(matches!(
            read_edge_list("2 1\n0 5\n"),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert_eq!(read_edge_list("2 0\n").unwrap(), Graph::empty(2));
    }

    #[test]
    fn skips_comments() {
        let g = read_edge_list("# made by hand\n2 1\n\n# the edge\n0 1\n").unwrap();
        assert_eq!(g, Graph::new(2, [(0, 1)]).unwrap());
    }

    #[test]
    fn block_round_trip() {
        let g = efree_block(2, 3).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(write_edge_list(&read_edge_list(&text).unwrap()), text);
    }

    proptest! {
        #[test]
        fn round_trip_is_bit_exact(seed in any::<u64>(), n in 1usize..40) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_connected_bounded(n, 5, 2 * n, &mut rng);
            let text = write_edge_list(&g);
            let back = read_edge_list(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(write_edge_list(&back), text);
        }
    }
}
