use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tga_cli::commands;

/// Twisted group algebra toolkit: construct K_rho G over a finite field,
/// decide its ring properties, and cross-check every verdict against
/// brute-force oracles.
#[derive(Parser)]
#[command(name = "tga", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn default_seed() -> u64 {
    std::env::var("TGA_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

#[derive(Subcommand)]
enum Command {
    /// Check the factor-system identities of an instance.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a theorem decider on an instance.
    Decide {
        #[arg(long)]
        config: PathBuf,
        /// no_nilpotents | n_weakly_regular | xi_n | equivalences | group_ring_n_weak
        #[arg(long)]
        property: String,
        /// n for n_weakly_regular, N_max for equivalences.
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Construct a checkable certificate.
    Witness {
        #[arg(long)]
        config: PathBuf,
        /// unit_commutation | char_p | quaternion | regularity | n_weak | xi_n
        #[arg(long)]
        kind: String,
        /// Element expression, e.g. "1+g" or "2*g_3 + [1,1]*g_2".
        #[arg(long)]
        element: Option<String>,
        #[arg(long, default_value_t = 2)]
        n: u64,
    },
    /// Run an independent search or per-element scan.
    Oracle {
        #[arg(long)]
        config: PathBuf,
        /// no_nilpotents | regular | strongly_regular | n_weak | xi_n
        #[arg(long)]
        property: String,
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 1 << 20)]
        exhaustive_cap: u64,
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
    },
    /// Decider-vs-oracle matrix over a catalog (built-in when --config is
    /// omitted); writes report.json/csv/md.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Subset of no_nilpotents, n_weakly_regular, xi_n (default: all).
        #[arg(long)]
        properties: Vec<String>,
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 1 << 20)]
        exhaustive_cap: u64,
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
        #[arg(long, default_value = "tga-reports")]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { config } => commands::cmd_validate(&config),
        Command::Decide { config, property, n, seed } => {
            commands::cmd_decide(&config, &property, n, seed.unwrap_or_else(default_seed))
        }
        Command::Witness { config, kind, element, n } => {
            commands::cmd_witness(&config, &kind, element.as_deref(), n)
        }
        Command::Oracle { config, property, n, seed, budget, exhaustive_cap, parallelism } => {
            commands::cmd_oracle(
                &config,
                &property,
                n,
                seed.unwrap_or_else(default_seed),
                budget,
                exhaustive_cap,
                parallelism,
            )
        }
        Command::Sweep {
            config,
            properties,
            n,
            seed,
            budget,
            exhaustive_cap,
            parallelism,
            out_dir,
        } => commands::cmd_sweep(
            config.as_deref(),
            &properties,
            n,
            seed.unwrap_or_else(default_seed),
            budget,
            exhaustive_cap,
            parallelism,
            &out_dir,
        ),
    };
    print!("{}", result.stdout);
    ExitCode::from(result.code as u8)
}
