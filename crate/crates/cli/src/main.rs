use clap::Parser;

fn main() -> anyhow::Result<()> {
    cored_cli::run(cored_cli::Cli::parse())
}
