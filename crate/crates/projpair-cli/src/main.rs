use clap::Parser;

use projpair_cli::commands::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (report, exit) = run(cli);
    println!("{}", report.render());
    std::process::exit(exit);
}
