use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use hardcore::exact::{HardCoreModel, PinnedReduction, Pinning};
use hardcore::glauber::{default_burn_in, replica_seed, run_replicas, sample_reduced, GlauberChain, RNG_ALGORITHM};
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::{config_of, parse_lambda, Format};
use crate::format::{csv_document, emit, json_document, pretty, sci};
use crate::source::GraphSource;
use crate::ConfigError;

#[derive(Args, Debug, Serialize)]
pub struct SampleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: GraphSource,
    #[arg(long)]
    pub lambda: String,
    /// Pins such as `3=1,5=0`, applied by removing vertices before sampling.
    #[arg(long, default_value = "")]
    pub pins: String,
    /// Glauber steps per replica [default: 50·n·⌈ln(n+1)⌉].
    #[arg(long)]
    pub steps: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub replicas: usize,
    #[arg(long)]
    pub seed: u64,
    /// Run the product chain from all-occupied above Glauber from empty and
    /// report whether the order was kept.
    #[arg(long)]
    pub monotone: bool,
    /// Also write per-vertex occupancy frequencies (CSV) to this file.
    #[arg(long)]
    pub histogram: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn sample(args: &SampleArgs) -> Result<()> {
    let g = args.source.load()?;
    let n = g.vertex_count();
    let model = HardCoreModel::new(g, parse_lambda::<f64>(&args.lambda)?)?;
    let pins: Pinning = args.pins.parse()?;
    if args.replicas == 0 {
        return Err(ConfigError::new("--replicas must be at least 1").into());
    }
    if args.monotone && !pins.is_empty() {
        return Err(ConfigError::new("--monotone runs on the whole graph and takes no --pins").into());
    }
    let steps = args.steps.unwrap_or_else(|| default_burn_in(n));
    let mut config = config_of(args)?;
    config["steps"] = json!(steps);
    config["rng"] = json!(RNG_ALGORITHM);
    let histogram_text = args
        .histogram
        .as_ref()
        .map(|p| p.display().to_string())
        .unwrap_or_default();

    let (header, rows, frequency): (Vec<&str>, Vec<Vec<String>>, Vec<f64>) = if args.monotone {
        let chain = GlauberChain::new(&model);
        let runs = run_replicas(args.seed, args.replicas, |_, mut rng| {
            chain.monotone_coupled_run(steps, &mut rng)
        });
        let mut freq = vec![0.0; n];
        let rows = runs
            .iter()
            .enumerate()
            .map(|(i, r)| {
                for (f, x) in freq.iter_mut().zip(&r.lower.occupancy_frequency) {
                    *f += x / args.replicas as f64;
                }
                vec![
                    i.to_string(),
                    replica_seed(args.seed, i as u64).to_string(),
                    r.dominance_held.to_string(),
                    r.lower.final_state.occupancy.len().to_string(),
                    r.upper.final_state.occupancy.len().to_string(),
                    sci(r.lower.mean_size),
                    sci(r.upper.mean_size),
                    histogram_text.clone(),
                ]
            })
            .collect();
        let header = vec![
            "replica",
            "seed",
            "dominance_held",
            "lower_size",
            "upper_size",
            "lower_mean_size",
            "upper_mean_size",
            "histogram",
        ];
        (header, rows, freq)
    } else {
        let reduction = PinnedReduction::new(model.graph(), &pins)?;
        let p = model.occupation_probability();
        let sets = run_replicas(args.seed, args.replicas, |_, mut rng| {
            sample_reduced(&reduction, p, steps, &mut rng)
        });
        let mut freq = vec![0.0; n];
        let rows = sets
            .iter()
            .enumerate()
            .map(|(i, s)| {
                for v in s.iter() {
                    freq[v] += 1.0 / args.replicas as f64;
                }
                vec![
                    i.to_string(),
                    replica_seed(args.seed, i as u64).to_string(),
                    s.len().to_string(),
                    histogram_text.clone(),
                ]
            })
            .collect();
        (vec!["replica", "seed", "size", "histogram"], rows, freq)
    };

    if let Some(path) = &args.histogram {
        let rows: Vec<Vec<String>> = frequency
            .iter()
            .enumerate()
            .map(|(v, f)| vec![v.to_string(), sci(*f)])
            .collect();
        emit(
            Some(path),
            &csv_document("sample", &config, &["vertex", "frequency"], &rows)?,
        )?;
    }
    let text = match args.format {
        Format::Csv => csv_document("sample", &config, &header, &rows)?,
        Format::Json => {
            let records: Vec<Value> = rows
                .iter()
                .map(|row| {
                    Value::Object(
                        header
                            .iter()
                            .zip(row)
                            .map(|(h, x)| (h.to_string(), cell(x)))
                            .collect::<Map<_, _>>(),
                    )
                })
                .collect();
            pretty(&json_document("sample", config, json!({ "replicas": records })))?
        }
    };
    emit(args.output.as_deref(), &text)
}

/// CSV cell back to a typed JSON value.
fn cell(text: &str) -> Value {
    if let Ok(b) = text.parse::<bool>() {
        return Value::Bool(b);
    }
    if text.is_empty() {
        return Value::Null;
    }
    serde_json::from_str::<serde_json::Number>(text).map_or_else(|_| Value::String(text.into()), Value::Number)
}
