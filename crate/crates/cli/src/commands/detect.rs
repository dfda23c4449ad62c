use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use hardcore::graph::generators::subdivided_claw;
use hardcore::pattern::{
    find_induced, verify_claw_to_s11t, verify_e_to_s12t, PremiseFailure, Verdict, DEFAULT_PATTERN_CAP,
};
use serde::Serialize;
use serde_json::{json, Value};

use super::{config_of, graph_summary};
use crate::format::{emit, json_document, pretty};
use crate::source::{claw_spec, GraphSource};
use crate::ConfigError;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Lemma {
    /// Large connected graph with an induced claw has an induced S_{1,1,t}.
    #[value(name = "claw-s11t")]
    #[serde(rename = "claw-s11t")]
    ClawS11t,
    /// Large connected bipartite graph with an induced E has an induced S_{1,2,t}.
    #[value(name = "e-s12t")]
    #[serde(rename = "e-s12t")]
    ES12t,
}

#[derive(Args, Debug, Serialize)]
pub struct DetectArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: GraphSource,
    /// `claw`, `fork`, `e`, `skew-star`, or arm lengths `i,j,k`.
    #[arg(long, required_unless_present = "lemma", conflicts_with = "lemma")]
    pub pattern: Option<String>,
    /// Check one of the claw growth lemmas on the graph instead.
    #[arg(long, value_enum, requires = "t")]
    pub lemma: Option<Lemma>,
    #[arg(long)]
    pub t: Option<usize>,
    /// Largest pattern the search accepts.
    #[arg(long, default_value_t = DEFAULT_PATTERN_CAP)]
    pub cap: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn detect(args: &DetectArgs) -> Result<()> {
    let g = args.source.load()?;
    let result = match (&args.pattern, args.lemma, args.t) {
        (Some(spec), _, _) => {
            let spec = claw_spec(spec)?;
            let pattern = subdivided_claw(spec);
            let found = find_induced(&g, &pattern, args.cap)?;
            let (i, j, k) = spec.arms();
            json!({
                "graph": graph_summary(&g),
                "pattern": { "arms": [i, j, k], "vertices": pattern.vertex_count() },
                "found": found.is_some(),
                "embedding": found.map(|e| e.map().to_vec()),
            })
        }
        (None, Some(lemma), Some(t)) => {
            let verdict = match lemma {
                Lemma::ClawS11t => verify_claw_to_s11t(&g, t)?,
                Lemma::ES12t => verify_e_to_s12t(&g, t)?,
            };
            let (label, premise, embedding) = match &verdict {
                Verdict::Confirmed(e) => ("confirmed", Value::Null, json!(e.map())),
                Verdict::Counterexample => ("counterexample", Value::Null, Value::Null),
                Verdict::PremiseFailed(f) => ("premise_failed", premise_text(f), Value::Null),
            };
            json!({
                "graph": graph_summary(&g),
                "lemma": lemma,
                "t": t,
                "verdict": label,
                "premise_failure": premise,
                "embedding": embedding,
            })
        }
        _ => return Err(ConfigError::new("give --pattern, or --lemma with --t").into()),
    };
    let doc = json_document("detect", config_of(args)?, result);
    emit(args.output.as_deref(), &pretty(&doc)?)
}

fn premise_text(f: &PremiseFailure) -> Value {
    match f {
        PremiseFailure::Disconnected => json!("disconnected"),
        PremiseFailure::NotBipartite => json!("not_bipartite"),
        PremiseFailure::MissingPattern => json!("missing_pattern"),
        PremiseFailure::TooSmall { vertices, bound } => {
            json!({ "too_small": { "vertices": vertices, "bound": bound } })
        }
    }
}
