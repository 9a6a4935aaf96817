use clap::Parser;
use superpoint::commands::{run, Command};
use superpoint::CliError;

/// Rank varieties, pi-points and support sets over elementary super group
/// algebras in odd characteristic.
#[derive(Parser)]
#[command(name = "superpoint", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out.value).expect("serializable"));
            std::process::exit(out.code);
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}
