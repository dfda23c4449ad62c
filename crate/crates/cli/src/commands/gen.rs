use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use hardcore::graph::io::write_edge_list;
use serde::Serialize;

use crate::format::{emit, TOOL, VERSION};
use crate::source::{family, FAMILY_HELP};

#[derive(Args, Debug, Serialize)]
#[command(after_help = FAMILY_HELP)]
pub struct GenArgs {
    /// Family specification, e.g. `efree:2,2` or `cubic:6:42`.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn gen(args: &GenArgs) -> Result<()> {
    let g = family(&args.family)?;
    let text = format!(
        "# {TOOL} {VERSION} gen --family {}\n{}",
        args.family,
        write_edge_list(&g)
    );
    emit(args.output.as_deref(), &text)
}
