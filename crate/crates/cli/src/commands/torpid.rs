use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use hardcore::torpid::{
    max_balanced_size_from_census, pattern_census, ratio_bound, threshold_lambda, weights_from_census, TorpidInstance,
    DEFAULT_BRANCH_CAP,
};
use hardcore::{Rational, Scalar};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::{config_of, Format};
use crate::format::{csv_document, emit, json_document, number_value, pretty, rational_sci, sci};
use crate::ConfigError;

#[derive(Args, Debug, Serialize)]
pub struct TorpidArgs {
    /// Base part sizes: a list `3,4` or a range `3-8`.
    #[arg(long)]
    pub n: String,
    /// Each base edge becomes a path with 2ℓ internal vertices.
    #[arg(long, default_value_t = 1)]
    pub ell: usize,
    /// Comma-separated fugacities; `threshold` is the smallest integer λ with
    /// 2^{6ℓ+2}·λ^{2/(2+α)−1} ≤ 1/2 for the instance's α.
    #[arg(long)]
    pub lambda: String,
    /// Seed for drawing the base graphs.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest number of branch vertices enumerated.
    #[arg(long, default_value_t = DEFAULT_BRANCH_CAP)]
    pub max_branch: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

const HEADER: [&str; 12] = [
    "n",
    "ell",
    "alpha",
    "lambda",
    "w_less",
    "w_eq",
    "w_greater",
    "ratio",
    "ratio_bound",
    "max_balanced_size",
    "one_sided_size",
    "seed",
];

fn part_sizes(text: &str) -> Result<Vec<usize>> {
    let bad = || ConfigError::new(format!("--n takes a list like 3,4 or a range like 3-8, got {text:?}"));
    if let Some((a, b)) = text.split_once('-') {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad().into());
        }
        return Ok((a..=b).collect());
    }
    text.split(',')
        .map(|x| x.trim().parse().map_err(|_| bad().into()))
        .collect()
}

enum Fugacity {
    Fixed(Rational),
    Threshold,
}

fn fugacities(text: &str) -> Result<Vec<Fugacity>> {
    text.split(',')
        .map(|x| {
            let x = x.trim();
            if x.eq_ignore_ascii_case("threshold") {
                return Ok(Fugacity::Threshold);
            }
            let q = super::parse_lambda::<Rational>(x)?;
            Ok(Fugacity::Fixed(q))
        })
        .collect()
}

pub fn torpid(args: &TorpidArgs) -> Result<()> {
    let sizes = part_sizes(&args.n)?;
    let lambdas = fugacities(&args.lambda)?;
    let mut rows = Vec::new();
    for &n in &sizes {
        let instance = TorpidInstance::generate(n, args.ell, args.seed)?;
        let alpha = instance
            .alpha
            .expect("generated instances have a verified expansion constant");
        let census = pattern_census(&instance, args.max_branch)?;
        let max_balanced = max_balanced_size_from_census(&census, args.ell);
        let one_sided = n + args.ell * census.edge_count;
        for fugacity in &lambdas {
            let lambda = match fugacity {
                Fugacity::Fixed(q) => q.clone(),
                Fugacity::Threshold => {
                    let t = threshold_lambda(args.ell, alpha, 0.5).ceil();
                    let t = BigInt::parse_bytes(format!("{t:.0}").as_bytes(), 10).expect("integer text");
                    Rational::from_integer(t)
                }
            };
            let w = weights_from_census(&census, args.ell, &lambda)?;
            let bound = ratio_bound(args.ell, alpha, lambda.approx(), n);
            rows.push(vec![
                n.to_string(),
                args.ell.to_string(),
                sci(alpha),
                rational_sci(&lambda),
                rational_sci(&w.less),
                rational_sci(&w.equal),
                rational_sci(&w.greater),
                rational_sci(&w.ratio()),
                sci(bound),
                max_balanced.to_string(),
                one_sided.to_string(),
                args.seed.to_string(),
            ]);
        }
    }
    let config = config_of(args)?;
    let text = match args.format {
        Format::Csv => csv_document("torpid", &config, &HEADER, &rows)?,
        Format::Json => {
            let records: Vec<Value> = rows
                .iter()
                .map(|row| {
                    Value::Object(
                        HEADER
                            .iter()
                            .zip(row)
                            .map(|(h, x)| (h.to_string(), number_value(x)))
                            .collect::<Map<_, _>>(),
                    )
                })
                .collect();
            pretty(&json_document("torpid", config, json!({ "rows": records })))?
        }
    };
    emit(args.output.as_deref(), &text)
}
