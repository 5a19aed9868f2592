use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde_json::json;

use crate::commands::write_json;
use crate::families::{tiling_from_meta, tiling_tiles};
use crate::formats::{load_code, write_alist, LoadedCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Artifact {
    /// Classical check matrix as alist.
    H,
    /// X check matrix as alist.
    Hx,
    /// Z check matrix as alist.
    Hz,
    /// Depletion codeword support as JSON.
    Codeword,
    /// Logical supports of both sectors as JSON.
    Logicals,
    /// Pinwheel tiling as a JSON list of triangles.
    Tiling,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Input code JSON.
    #[arg(long = "in")]
    pub input: PathBuf,

    /// Which artifact to export.
    #[arg(long, value_enum)]
    pub what: Artifact,

    /// Output path.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: &ExportArgs) -> Result<()> {
    let loaded = load_code(&args.input)?;
    let write_text = |text: String| {
        std::fs::write(&args.out, text)
            .with_context(|| format!("writing {}", args.out.display()))
    };
    match (args.what, &loaded) {
        (Artifact::H, LoadedCode::Classical(c)) => write_text(write_alist(&c.h)),
        (Artifact::Hx, LoadedCode::Css(c)) => write_text(write_alist(c.css.hx())),
        (Artifact::Hz, LoadedCode::Css(c)) => write_text(write_alist(c.css.hz())),
        (Artifact::Codeword, LoadedCode::Classical(c)) => {
            let Some(support) = &c.file.codeword else {
                bail!("{} records no depletion codeword", args.input.display());
            };
            write_json(&args.out, support)
        }
        (Artifact::Logicals, LoadedCode::Css(c)) => write_json(
            &args.out,
            &json!({ "x": c.file.logical_x, "z": c.file.logical_z }),
        ),
        (Artifact::Tiling, LoadedCode::Classical(c)) => {
            let Some(meta) = &c.file.pinwheel else {
                bail!("{} is not a pinwheel code", args.input.display());
            };
            write_json(&args.out, &tiling_tiles(&tiling_from_meta(meta)?))
        }
        (Artifact::H | Artifact::Codeword | Artifact::Tiling, LoadedCode::Css(_)) => {
            bail!("{:?} applies to classical codes only", args.what)
        }
        (Artifact::Hx | Artifact::Hz | Artifact::Logicals, LoadedCode::Classical(_)) => {
            bail!("{:?} applies to CSS codes only", args.what)
        }
    }
}
