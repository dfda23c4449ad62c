use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use hardcore::exact::{independence_polynomial, HardCoreModel, Limits, MixingTrace, Pinning};
use hardcore::Rational;
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::{config_of, graph_summary, parse_lambda};
use crate::format::{emit, json_document, pretty, put, Emit};
use crate::source::GraphSource;

#[derive(Args, Debug, Serialize)]
pub struct ExactArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: GraphSource,
    /// Fugacity: integer, decimal or fraction (`3/2`).
    #[arg(long)]
    pub lambda: String,
    /// Exact rational arithmetic instead of f64.
    #[arg(long)]
    pub rational: bool,
    /// Pins such as `3=1,5=0`; marginals are then conditional on them.
    #[arg(long, default_value = "")]
    pub pins: String,
    /// Also compute the exact mixing time of Glauber dynamics.
    #[arg(long)]
    pub mixing: bool,
    /// Cap on enumerated independent sets.
    #[arg(long, default_value_t = Limits::default().independent_sets)]
    pub max_sets: usize,
    /// Cap on chain states for the mixing time.
    #[arg(long, default_value_t = Limits::default().states)]
    pub max_states: usize,
    /// Output file (stdout if absent).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn exact(args: &ExactArgs) -> Result<()> {
    let result = if args.rational {
        run::<Rational>(args)?
    } else {
        run::<f64>(args)?
    };
    let doc = json_document("exact", config_of(args)?, result);
    emit(args.output.as_deref(), &pretty(&doc)?)
}

fn run<T: Emit>(args: &ExactArgs) -> Result<Value> {
    let g = args.source.load()?;
    let pins: Pinning = args.pins.parse()?;
    let limits = Limits {
        independent_sets: args.max_sets,
        states: args.max_states,
        ..Limits::default()
    };
    let model = HardCoreModel::new(g, parse_lambda::<T>(&args.lambda)?)?.with_limits(limits);
    let g = model.graph();
    let coefficients = independence_polynomial(g, limits.independent_sets)?;
    let mut out = Map::new();
    out.insert("graph".into(), graph_summary(g));
    out.insert("arithmetic".into(), json!(if T::EXACT { "rational" } else { "f64" }));
    out.insert("independent_sets".into(), json!(coefficients.iter().sum::<u64>()));
    out.insert("independence_polynomial".into(), json!(coefficients));
    put(&mut out, "partition_function", &model.partition_function()?);
    let law = model.pinned_distribution(&pins)?;
    out.insert("pins".into(), json!(pins.to_string()));
    out.insert("support_size".into(), json!(law.len()));
    let marginals: Vec<Value> = g.vertices().map(|v| law.marginal(v).value()).collect();
    out.insert("marginals".into(), Value::Array(marginals));
    if let Some(exact) = g
        .vertices()
        .map(|v| law.marginal(v).exact())
        .collect::<Option<Vec<_>>>()
    {
        out.insert("marginals_exact".into(), json!(exact));
    }
    let (lower, upper) = model.marginal_bounds();
    let mut bounds = Map::new();
    put(&mut bounds, "lower", &lower);
    put(&mut bounds, "upper", &upper);
    out.insert("marginal_bounds".into(), Value::Object(bounds));
    if args.mixing {
        let t = model.exact_mixing_time()?;
        let profile = MixingTrace::new(&model)?.profile(t);
        let mut mixing = Map::new();
        mixing.insert("time".into(), json!(t));
        put(&mut mixing, "distance_at_time", &profile[t]);
        if t > 0 {
            put(&mut mixing, "distance_before", &profile[t - 1]);
        }
        out.insert("mixing".into(), Value::Object(mixing));
    }
    Ok(Value::Object(out))
}
