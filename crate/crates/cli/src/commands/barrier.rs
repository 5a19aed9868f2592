use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, Context, Result};
use clap::Args;
use cored::barrier::{exact_barrier, greedy_barrier, path_multiplicity, GreedyOptions};

use crate::families::recorded_codeword;
use crate::formats::load_code;

#[derive(Debug, Args)]
pub struct BarrierArgs {
    /// Classical code JSON files; one CSV row each.
    #[arg(long = "code", required = true)]
    pub codes: Vec<PathBuf>,

    /// Beam width of the greedy search.
    #[arg(long, default_value_t = 100_000)]
    pub beam: usize,

    /// Also compute the exact barrier and the number of minimal paths
    /// (feasible for small codeword supports only).
    #[arg(long)]
    pub exact: bool,

    /// Output CSV with columns n, L, bound, exact, multiplicity, code.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: &BarrierArgs) -> Result<()> {
    let mut csv = String::from("n,L,bound,exact,multiplicity,code\n");
    let options = GreedyOptions { beam_cap: args.beam, ..GreedyOptions::default() };
    for path in &args.codes {
        let loaded = load_code(path)?.into_classical(path)?;
        let c = recorded_codeword(&loaded.file)?;
        let bound = greedy_barrier(&loaded.h, &c, &options);
        let (exact, multiplicity) = if args.exact {
            let b = exact_barrier(&loaded.h, &c).map_err(|e| anyhow!("{e}"))?;
            let m = path_multiplicity(&loaded.h, &c, b).map_err(|e| anyhow!("{e}"))?;
            (b.to_string(), m.to_string())
        } else {
            (String::new(), String::new())
        };
        let linear_size = loaded
            .file
            .linear_size
            .map_or_else(String::new, |l| format!("{l}"));
        writeln!(
            csv,
            "{},{linear_size},{bound},{exact},{multiplicity},{}",
            loaded.file.n, loaded.file.name
        )
        .expect("string writes cannot fail");
        println!(
            "{}: barrier bound {bound}{}",
            loaded.file.name,
            if exact.is_empty() { String::new() } else { format!(" (exact {exact})") }
        );
    }
    std::fs::write(&args.out, csv).with_context(|| format!("writing {}", args.out.display()))
}
