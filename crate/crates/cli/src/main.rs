use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hfsim_cli::config::split_override;
use hfsim_cli::run::{self, RunManifest, Scenario, EXIT_CONFIG};

/// Run a Huygens-Fresnel double-slit scenario and write CSV profiles.
#[derive(Parser, Debug)]
#[command(name = "hfsim", version)]
struct Cli {
    #[arg(long, value_enum, required_unless_present = "print_default_config")]
    scenario: Option<Scenario>,
    /// TOML experiment document; the bundled defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, required_unless_present = "print_default_config")]
    out: Option<PathBuf>,
    /// Override a config key by dotted path, e.g. `grids.lens.samples=801`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Sample count for the lens and image planes.
    #[arg(long, value_name = "N")]
    samples_override: Option<usize>,
    /// Print the bundled default config and exit.
    #[arg(long, exclusive = true)]
    print_default_config: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (Some(scenario), Some(output_dir)) = (cli.scenario, cli.out) else {
        print!("{}", hfsim_cli::config::DEFAULT_CONFIG);
        return ExitCode::SUCCESS;
    };
    let overrides = match cli
        .set
        .iter()
        .map(|s| split_override(s))
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(o) => o,
        Err(e) => {
            eprintln!("hfsim: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    let manifest = RunManifest {
        scenario,
        config_path: cli.config,
        output_dir,
        overrides,
        samples_override: cli.samples_override,
    };
    ExitCode::from(run::run(&manifest) as u8)
}
