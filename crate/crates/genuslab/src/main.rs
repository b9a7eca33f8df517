use clap::Parser;
use genuslab::cli::{run_report, Cli};

fn main() {
    let cli = Cli::parse();
    let report = run_report(&cli);
    println!("{}", report.render(cli.json));
    std::process::exit(report.exit_code());
}
