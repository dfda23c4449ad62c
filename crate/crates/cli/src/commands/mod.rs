//! One function per subcommand; each resolves its configuration, runs the
//! library and writes a self-describing document.

mod coupling;
mod detect;
mod exact;
mod gen;
mod sample;
mod torpid;

pub use coupling::{coupling, CouplingArgs};
pub use detect::{detect, DetectArgs};
pub use exact::{exact, ExactArgs};
pub use gen::{gen, GenArgs};
pub use sample::{sample, SampleArgs};
pub use torpid::{torpid, TorpidArgs};

use anyhow::Result;
use clap::ValueEnum;
use hardcore::Scalar;
use serde::Serialize;
use serde_json::Value;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

pub fn parse_lambda<T: Scalar>(text: &str) -> Result<T> {
    let lambda = T::parse_scalar(text)?;
    if !(lambda > T::zero()) {
        return Err(crate::ConfigError::new(format!("--lambda must be positive, got {text}")).into());
    }
    Ok(lambda)
}

pub fn config_of<A: Serialize>(args: &A) -> Result<Value> {
    Ok(serde_json::to_value(args)?)
}

pub fn graph_summary(g: &hardcore::Graph) -> Value {
    serde_json::json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "max_degree": g.max_degree(),
    })
}
