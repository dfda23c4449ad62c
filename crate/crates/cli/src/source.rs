//! Where a command's graph comes from: an edge-list file or a named family.

use std::fs;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use hardcore::glauber::RngStream;
use hardcore::graph::generators::{
    complete, complete_bipartite, cycle, efree_block, path, random_connected_bounded, random_cubic_bipartite,
    skewstar_witness, star, subdivided_claw,
};
use hardcore::graph::io::read_edge_list;
use hardcore::torpid::TorpidInstance;
use hardcore::{Graph, SubdividedClawSpec};
use serde::Serialize;

use crate::ConfigError;

#[derive(Args, Clone, Debug, Serialize)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Edge-list file: header `n m`, then one `u v` pair per line.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Generated graph, e.g. `cycle:6`, `efree:2,2`, `cubic:5:7`. See `gen --help`.
    #[arg(long)]
    pub family: Option<String>,
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph> {
        match (&self.graph, &self.family) {
            (Some(p), _) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| ConfigError::new(format!("cannot read graph {}: {e}", p.display())))?;
                Ok(read_edge_list(&text)?)
            }
            (None, Some(spec)) => family(spec),
            (None, None) => Err(ConfigError::new("one of --graph or --family is required").into()),
        }
    }
}

fn numbers(text: &str, what: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| ConfigError::new(format!("bad number {x:?} in {what}")).into())
        })
        .collect()
}

fn exactly<const K: usize>(text: &str, what: &str) -> Result<[usize; K]> {
    let xs = numbers(text, what)?;
    xs.try_into()
        .map_err(|_| ConfigError::new(format!("{what} takes {K} comma-separated numbers")).into())
}

/// Named pattern (`claw`, `fork`, `e`, `skew-star`) or an arm triple `i,j,k`.
pub fn claw_spec(text: &str) -> Result<SubdividedClawSpec> {
    Ok(match text.trim().to_ascii_lowercase().as_str() {
        "claw" => SubdividedClawSpec::claw(),
        "fork" => SubdividedClawSpec::fork(),
        "e" => SubdividedClawSpec::e(),
        "skew-star" | "skewstar" => SubdividedClawSpec::skew_star(),
        other => {
            let [i, j, k] = exactly::<3>(other, "pattern")?;
            SubdividedClawSpec::from_arms(i, j, k)?
        }
    })
}

/// Family grammar: `name[:params][:seed]`.
pub const FAMILY_HELP: &str = "\
Families (parameters are comma-separated; random families need a trailing :SEED):
  empty:N                  N isolated vertices
  path:N  cycle:N  complete:N  star:K
  complete-bipartite:A,B
  claw:I,J,K               subdivided claw S_{I,J,K} (also claw:fork, claw:e, claw:skew-star)
  efree:ROWS,COLS          E-free block tiling
  skewstar:L               skew-star-free witness with an L-edge tail
  cubic:N:SEED             random cubic bipartite graph on N+N vertices
  line-cubic:N:SEED        line graph of a random cubic bipartite graph (claw-free)
  random:N,D,EXTRA:SEED    random connected graph, max degree D, EXTRA chord attempts
  torpid:N,ELL:SEED        stretched cubic bipartite expander";

pub fn family(spec: &str) -> Result<Graph> {
    let mut parts = spec.trim().splitn(3, ':');
    let name = parts.next().unwrap_or_default().to_ascii_lowercase();
    let params = parts.next().unwrap_or_default();
    let seed = parts
        .next()
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| ConfigError::new(format!("bad seed {s:?} in family {spec:?}")))
        })
        .transpose()?;
    let need_seed = || seed.ok_or_else(|| ConfigError::new(format!("family {name:?} needs a trailing :SEED")));
    let one = |what: &str| -> Result<usize> { Ok(exactly::<1>(params, what)?[0]) };
    Ok(match name.as_str() {
        "empty" => Graph::empty(one("empty")?),
        "path" => path(one("path")?),
        "cycle" => {
            let n = one("cycle")?;
            if n < 3 {
                return Err(ConfigError::new("cycle needs at least 3 vertices").into());
            }
            cycle(n)
        }
        "complete" => complete(one("complete")?),
        "star" => star(one("star")?),
        "complete-bipartite" => {
            let [a, b] = exactly::<2>(params, "complete-bipartite")?;
            complete_bipartite(a, b)
        }
        "claw" => subdivided_claw(if params.is_empty() {
            SubdividedClawSpec::claw()
        } else {
            claw_spec(params)?
        }),
        "efree" => {
            let [r, c] = exactly::<2>(params, "efree")?;
            efree_block(r, c)?
        }
        "skewstar" => skewstar_witness(one("skewstar")?)?,
        "cubic" => random_cubic_bipartite(one("cubic")?, RngStream::new(need_seed()?).rng())?,
        "line-cubic" => random_cubic_bipartite(one("line-cubic")?, RngStream::new(need_seed()?).rng())?.line_graph(),
        "random" => {
            let [n, d, extra] = exactly::<3>(params, "random")?;
            if n == 0 || (d < 2 && n > 2) {
                return Err(ConfigError::new("random needs N ≥ 1 and D ≥ 2").into());
            }
            random_connected_bounded(n, d, extra, RngStream::new(need_seed()?).rng())
        }
        "torpid" => {
            let [n, ell] = exactly::<2>(params, "torpid")?;
            TorpidInstance::generate(n, ell, need_seed()?)?.stretched
        }
        _ => return Err(ConfigError::new(format!("unknown family {name:?}")).into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_parse() {
        assert_eq!(family("path:3").unwrap(), path(3));
        assert_eq!(family("complete-bipartite:2,3").unwrap(), complete_bipartite(2, 3));
        assert_eq!(family("claw:fork").unwrap().vertex_count(), 5);
        assert_eq!(family("claw").unwrap(), star(3));
        assert_eq!(family("efree:1,1").unwrap().vertex_count(), 10);
        assert_eq!(family("cubic:4:1").unwrap(), family("cubic:4:1").unwrap());
        assert_eq!(family("torpid:3,1:0").unwrap().vertex_count(), 24);
        assert_eq!(family("line-cubic:3:0").unwrap().vertex_count(), 9);
        for bad in ["cubic:4", "path:x", "nope:3", "efree:1", "cycle:2", "random:5,1,0:1"] {
            assert!(family(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn patterns_parse() {
        assert_eq!(claw_spec("E").unwrap(), SubdividedClawSpec::e());
        assert_eq!(claw_spec("3,1,2").unwrap(), SubdividedClawSpec::skew_star());
        assert!(claw_spec("0,1,1").is_err());
        assert!(claw_spec("1,1").is_err());
    }
}
