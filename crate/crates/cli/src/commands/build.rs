use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};

use crate::commands::write_json;
use crate::families::{self, BuiltCode};
use crate::formats::save_classical;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Repetition chain with the boundary check removed.
    Rep,
    /// Three-body checks on a torus with one check removed.
    NewmanMoore,
    /// Aperiodic pinwheel code with one depleted site.
    Pinwheel,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Code family to construct.
    #[arg(long, value_enum)]
    pub family: Family,

    /// Number of bits (rep).
    #[arg(long)]
    pub n: Option<usize>,

    /// Torus side (newman-moore).
    #[arg(long)]
    pub l: Option<usize>,

    /// Substitution generation: full rounds and partial steps (pinwheel).
    #[arg(long, num_args = 2, value_names = ["FULL", "PARTIAL"])]
    pub generation: Option<Vec<u32>>,

    /// Partial-round label order, A or B (pinwheel).
    #[arg(long, default_value = "A")]
    pub perm: String,

    /// Seam direction of the causal orientation (pinwheel).
    #[arg(long, num_args = 2, allow_negative_numbers = true,
          value_names = ["DX", "DY"], default_values_t = [-1i64, -1])]
    pub t: Vec<i64>,

    /// Depletion-placement exponent (pinwheel).
    #[arg(long, default_value_t = 0.6)]
    pub nu: f64,

    /// Output code JSON; the check-matrix alist lands next to it.
    #[arg(long)]
    pub out: PathBuf,

    /// Also write the tiling as a JSON list of triangles (pinwheel).
    #[arg(long)]
    pub tiles: Option<PathBuf>,
}

pub fn run(args: &BuildArgs) -> Result<()> {
    let built: BuiltCode = match args.family {
        Family::Rep => {
            let n = args.n.context("--family rep needs --n")?;
            families::repetition(n)?
        }
        Family::NewmanMoore => {
            let l = args.l.context("--family newman-moore needs --l")?;
            families::newman_moore(l)?
        }
        Family::Pinwheel => {
            let g = args.generation.as_deref().context("--family pinwheel needs --generation")?;
            families::pinwheel_code(
                [g[0], g[1]],
                families::parse_order(&args.perm)?,
                [args.t[0], args.t[1]],
                args.nu,
            )?
        }
    };
    if let Some(tiles_path) = &args.tiles {
        let Some(tiling) = &built.tiling else {
            bail!("--tiles applies only to pinwheel codes");
        };
        write_json(tiles_path, &families::tiling_tiles(tiling))?;
    }
    println!(
        "{}: n = {}, k = {}, depleted {:?}",
        built.file.name, built.file.n, built.file.dimension, built.file.depleted
    );
    save_classical(&args.out, built.file, &built.h)
}
