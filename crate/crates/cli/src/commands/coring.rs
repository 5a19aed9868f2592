use std::path::{Path, PathBuf};

use anyhow::{anyhow, ensure, Context, Result};
use clap::Args;
use cored::coring::{core_code, CoredCode};
use cored::product::Sector;
use cored::BitVector;
use serde::Serialize;

use crate::commands::write_json;
use crate::formats::{load_code, save_css, Color, CssFile, LoadedCss};

#[derive(Debug, Args)]
pub struct CoreArgs {
    /// Input CSS code JSON.
    #[arg(long = "in")]
    pub input: PathBuf,

    /// Qubits the measuring passes may remove: "blue", "all", or a JSON
    /// file holding an array of qubit indices.
    #[arg(long, default_value = "blue")]
    pub deletable: String,

    /// Output CSS code JSON.
    #[arg(long)]
    pub out: PathBuf,

    /// Optional JSON report of what each round removed.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn candidate_set(spec: &str, loaded: &LoadedCss) -> Result<Vec<usize>> {
    match spec {
        "blue" => Ok((0..loaded.file.n)
            .filter(|&q| loaded.file.colors[q] == Color::Blue)
            .collect()),
        "all" => Ok((0..loaded.file.n).collect()),
        path => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading deletable set {path}"))?;
            let set: Vec<usize> = serde_json::from_str(&text)
                .with_context(|| format!("parsing deletable set {path}"))?;
            for &q in &set {
                ensure!(q < loaded.file.n, "deletable qubit {q} out of range");
            }
            Ok(set)
        }
    }
}

#[derive(Serialize)]
struct RoundJson {
    measured_z: usize,
    measured_x: usize,
    trivial: usize,
}

#[derive(Serialize)]
struct ReportJson {
    qubits_before: usize,
    qubits_after: usize,
    removed_qubits: usize,
    removed_x_checks: usize,
    removed_z_checks: usize,
    rounds: Vec<RoundJson>,
}

fn save_cored(
    out: &Path,
    loaded: &LoadedCss,
    cored: &CoredCode,
) -> Result<()> {
    let kept = cored.kept_qubits();
    let colors: Vec<Color> = kept.iter().map(|&q| loaded.file.colors[q]).collect();
    let coordinates = loaded
        .file
        .coordinates
        .as_ref()
        .map(|coords| kept.iter().map(|&q| coords[q].clone()).collect());
    let file = CssFile {
        name: format!("{}-cored", loaded.file.name),
        n: cored.num_qubits(),
        dimension: loaded.file.dimension,
        hx_alist: String::new(),
        hz_alist: String::new(),
        colors,
        coordinates,
        logical_x: cored.logical_x().iter().map(BitVector::support).collect(),
        logical_z: cored.logical_z().iter().map(BitVector::support).collect(),
        linear_size: loaded.file.linear_size,
    };
    save_css(out, file, cored.css())
}

pub fn run(args: &CoreArgs) -> Result<()> {
    let loaded = load_code(&args.input)?.into_css(&args.input)?;
    ensure!(
        !loaded.file.logical_x.is_empty() && !loaded.file.logical_z.is_empty(),
        "{}: coring needs at least one logical per sector to protect",
        args.input.display()
    );
    let candidates = candidate_set(&args.deletable, &loaded)?;
    let cored = core_code(
        &loaded.css,
        &loaded.logicals(Sector::X),
        &loaded.logicals(Sector::Z),
        &candidates,
    )
    .map_err(|e| anyhow!("{e}"))?;

    if let Some(report_path) = &args.report {
        let r = cored.report();
        write_json(
            report_path,
            &ReportJson {
                qubits_before: loaded.file.n,
                qubits_after: cored.num_qubits(),
                removed_qubits: r.removed_qubits.len(),
                removed_x_checks: r.removed_x_checks.len(),
                removed_z_checks: r.removed_z_checks.len(),
                rounds: r
                    .rounds
                    .iter()
                    .map(|c| RoundJson {
                        measured_z: c.measured_z,
                        measured_x: c.measured_x,
                        trivial: c.trivial,
                    })
                    .collect(),
            },
        )?;
    }
    println!(
        "cored {} -> {} qubits ({} rounds)",
        loaded.file.n,
        cored.num_qubits(),
        cored.report().rounds.len()
    );
    save_cored(&args.out, &loaded, &cored)
}
