use clap::Parser;
use gcdgraph_cli::{run, Cli, JobConfig};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap prints help/version with status 0 and usage errors with 2.
        Err(e) => e.exit(),
    };
    let config = JobConfig::from_cli(cli);
    let mut stdout = std::io::stdout().lock();
    std::process::exit(run(&config, &mut stdout));
}
