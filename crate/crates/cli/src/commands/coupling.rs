use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use hardcore::cluster::{cluster_statistics, exact_coupling, layer_bound, Coupler, CouplingSampler};
use hardcore::exact::{exact_w1_hamming, tv_distance, HardCoreModel, Limits, Pinning, DEFAULT_TRANSPORT_CAP};
use hardcore::glauber::{default_burn_in, RNG_ALGORITHM};
use hardcore::Rational;
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::{config_of, graph_summary, parse_lambda};
use crate::format::{emit, json_document, num, pretty, put, Emit};
use crate::source::GraphSource;
use crate::ConfigError;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Draw the pinned sets from their enumerated laws.
    Exact,
    /// Draw the pinned sets with Glauber runs.
    Chain,
}

#[derive(Args, Debug, Serialize)]
pub struct CouplingArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: GraphSource,
    #[arg(long)]
    pub lambda: String,
    /// Root vertex of the clusters.
    #[arg(long)]
    pub vertex: usize,
    #[arg(long, default_value_t = 1000)]
    pub replicas: usize,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Glauber steps per pinned draw in chain mode [default: 50·n·⌈ln(n+1)⌉].
    #[arg(long)]
    pub burn_in: Option<u64>,
    #[arg(long)]
    pub seed: u64,
    /// Exact-mode laws in rational arithmetic.
    #[arg(long)]
    pub rational: bool,
    /// Compare layer widths with 2·vol(Δ, 2t) for this t (graph assumed S_{t,t,t}-free).
    #[arg(long)]
    pub layer_t: Option<usize>,
    #[arg(long, default_value_t = Limits::default().independent_sets)]
    pub max_sets: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn coupling(args: &CouplingArgs) -> Result<()> {
    let result = if args.rational {
        run::<Rational>(args)?
    } else {
        run::<f64>(args)?
    };
    let mut config = config_of(args)?;
    config["rng"] = json!(RNG_ALGORITHM);
    let doc = json_document("coupling", config, result);
    emit(args.output.as_deref(), &pretty(&doc)?)
}

fn run<T: Emit>(args: &CouplingArgs) -> Result<Value> {
    if args.replicas == 0 {
        return Err(ConfigError::new("--replicas must be at least 1").into());
    }
    let g = args.source.load()?;
    let limits = Limits {
        independent_sets: args.max_sets,
        ..Limits::default()
    };
    let model = HardCoreModel::new(g, parse_lambda::<T>(&args.lambda)?)?.with_limits(limits);
    let g = model.graph();
    g.check_vertex(args.vertex)?;
    let burn_in = args.burn_in.unwrap_or_else(|| default_burn_in(g.vertex_count()));
    let sampler = match args.mode {
        Mode::Exact => CouplingSampler::Exact,
        Mode::Chain => CouplingSampler::Chain { burn_in },
    };
    let coupler = Coupler::new(&model, args.vertex, sampler)?;
    let stats = cluster_statistics(&coupler, args.replicas, args.seed)?;

    let mut out = Map::new();
    out.insert("graph".into(), graph_summary(g));
    out.insert(
        "burn_in".into(),
        if args.mode == Mode::Chain {
            json!(burn_in)
        } else {
            Value::Null
        },
    );
    out.insert("mean_cluster".into(), num(stats.mean_size));
    out.insert("std_err".into(), num(stats.std_err));
    out.insert("max_cluster".into(), json!(stats.max_size));
    out.insert("max_layer".into(), json!(stats.max_layer_width));
    let histogram = |h: &std::collections::BTreeMap<usize, u64>| -> Value {
        Value::Object(h.iter().map(|(k, c)| (k.to_string(), json!(c))).collect())
    };
    out.insert("layer_width_histogram".into(), histogram(&stats.layer_width_histogram));
    out.insert("cluster_size_histogram".into(), histogram(&stats.size_histogram));
    out.insert(
        "w1_upper".into(),
        json!({ "mean": num(stats.mean_size), "std_err": num(stats.std_err) }),
    );
    if let Some(t) = args.layer_t {
        let bound = layer_bound(g, t)?;
        out.insert(
            "layer_bound".into(),
            json!({ "t": t, "bound": bound, "held": stats.max_layer_width as u64 <= bound }),
        );
    }
    if args.mode == Mode::Exact {
        let on = model.pinned_distribution(&Pinning::single(args.vertex, true))?;
        let off = model.pinned_distribution(&Pinning::single(args.vertex, false))?;
        let coupling = exact_coupling(&model, args.vertex)?;
        put(&mut out, "pushforward_tv", &tv_distance(&coupling.blue, &off)?);
        put(&mut out, "red_law_tv", &tv_distance(&coupling.red, &on)?);
        put(&mut out, "exact_mean_cluster", &coupling.mean_cluster_size);
        out.insert("exact_max_layer".into(), json!(coupling.max_layer_width));
        put(&mut out, "pinned_tv", &tv_distance(&on, &off)?);
        match exact_w1_hamming(&on, &off, DEFAULT_TRANSPORT_CAP) {
            Ok(w1) => put(&mut out, "exact_w1", &w1),
            Err(e) if e.is_cap() => {
                out.insert("exact_w1".into(), Value::Null);
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Value::Object(out))
}
