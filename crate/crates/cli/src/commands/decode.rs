use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::Args;
use cored::decode::{logical_class, BpOsd, BpOsdOptions, DecoderPriors};
use serde::Serialize;

use crate::commands::write_json;
use crate::formats::{load_code, priors_probabilities, read_priors, read_syndrome};
use crate::SectorArg;

#[derive(Debug, Args)]
pub struct DecodeArgs {
    /// CSS code JSON.
    #[arg(long)]
    pub code: PathBuf,

    /// Sector whose checks produced the syndrome.
    #[arg(long, value_enum, default_value_t = SectorArg::X)]
    pub sector: SectorArg,

    /// Syndrome file, one byte per check (raw 0/1 or ASCII digits).
    #[arg(long)]
    pub syndrome: PathBuf,

    /// Per-qubit priors JSON from `calibrate` (exclusive with
    /// --uniform-prior).
    #[arg(long)]
    pub priors: Option<PathBuf>,

    /// Uniform flip probability (exclusive with --priors).
    #[arg(long)]
    pub uniform_prior: Option<f64>,

    /// Message-passing iterations before ordered-statistics fallback.
    #[arg(long, default_value_t = 100)]
    pub iters: usize,

    /// Free columns searched combinatorially by the fallback.
    #[arg(long, default_value_t = 10)]
    pub osd_order: usize,

    /// Output JSON; stdout gets a one-line summary either way.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct DecodeJson {
    sector: String,
    correction: Vec<usize>,
    weight: usize,
    converged: bool,
    osd_used: bool,
    /// Pairing overlaps of the correction with the opposite sector's
    /// logicals, packed little-endian into one integer.
    #[serde(skip_serializing_if = "Option::is_none")]
    logical_class: Option<u64>,
}

pub fn run(args: &DecodeArgs) -> Result<()> {
    let loaded = load_code(&args.code)?.into_css(&args.code)?;
    let sector = args.sector.into();
    let h = loaded.css.matrix(sector);
    let syndrome = read_syndrome(&args.syndrome, h.rows())?;
    let priors = match (&args.priors, args.uniform_prior) {
        (Some(path), None) => {
            let entries = read_priors(path, h.cols())?;
            let p = priors_probabilities(&entries);
            if let Some(bad) = p.iter().find(|&&x| !(x > 0.0 && x <= 0.5)) {
                bail!("{}: flip probability {bad} is outside (0, 0.5]", path.display());
            }
            DecoderPriors::from_probabilities(p)
        }
        (None, Some(p)) => DecoderPriors::uniform(h.cols(), p),
        _ => bail!("pass exactly one of --priors or --uniform-prior"),
    };
    let mut decoder = BpOsd::new(h, BpOsdOptions { iters: args.iters, osd_order: args.osd_order });
    let result = decoder.decode(&syndrome, &priors).map_err(|e| anyhow!("{e}"))?;

    let partners = loaded.logicals(sector.other());
    let class = (!partners.is_empty()).then(|| logical_class(&result.correction, &partners));
    let summary = DecodeJson {
        sector: format!("{:?}", args.sector),
        correction: result.correction.support(),
        weight: result.weight,
        converged: result.converged,
        osd_used: result.osd_used,
        logical_class: class,
    };
    if let Some(out) = &args.out {
        write_json(out, &summary)?;
    }
    println!(
        "corrected weight {} ({}){}",
        summary.weight,
        if summary.osd_used { "osd" } else { "bp" },
        match summary.logical_class {
            Some(c) => format!(", class {c}"),
            None => String::new(),
        }
    );
    Ok(())
}
