use std::path::PathBuf;
use std::process::ExitCode;

use ainfp::cli::{cmd_barcode, cmd_distance, cmd_rips, cmd_transfer, cmd_verify, RunConfig};
use ainfp::field::Field;
use ainfp::interval::ExtValue;
use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

/// Persistent cohomology, A-infinity transfer and A_N-bottleneck distances.
#[derive(Parser)]
#[command(name = "ainfp", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// F2, Fp or Q
    #[arg(long, default_value = "F2")]
    field: String,
    /// prime for --field Fp
    #[arg(long)]
    p: Option<u32>,
    /// largest simplex dimension built from points or distances
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    /// largest filtration value kept
    #[arg(long)]
    cap: Option<String>,
    /// contraction and sampling seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// write the JSON result here instead of stdout
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Vietoris-Rips complex of a point cloud or distance matrix
    Rips {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Persistent cohomology barcode
    Barcode {
        input: String,
        #[command(flatten)]
        common: Common,
        /// write a static SVG plot of the barcode
        #[arg(long, value_name = "OUT")]
        svg: Option<PathBuf>,
    },
    /// Minimal A_N-structure on persistent cohomology
    Transfer {
        input: String,
        #[command(flatten)]
        common: Common,
        #[arg(short = 'N', default_value_t = 3)]
        n: usize,
    },
    /// A_N-bottleneck distance between two inputs
    Distance {
        a: String,
        b: String,
        #[command(flatten)]
        common: Common,
        #[arg(short = 'N', default_value_t = 2)]
        n: usize,
        /// classical bottleneck distance (N = 1)
        #[arg(long)]
        classical: bool,
        /// fail with exit code 3 unless the value is certified
        #[arg(long)]
        exact_only: bool,
    },
    /// Run all property checks on an input
    Verify {
        input: String,
        #[command(flatten)]
        common: Common,
        #[arg(short = 'N', default_value_t = 3)]
        n: usize,
    },
}

fn config(c: &Common) -> anyhow::Result<RunConfig> {
    let field = match (c.field.as_str(), c.p) {
        ("Fp" | "F_p", Some(p)) => Field::prime(p)?,
        ("Fp" | "F_p", None) => bail!("--field Fp needs --p"),
        (name, _) => name.parse::<Field>()?,
    };
    let cap = c.cap.as_deref().map(ExtValue::parse).transpose().context("--cap")?;
    Ok(RunConfig {
        field,
        max_dim: c.max_dim,
        cap,
        seed: c.seed,
        ..RunConfig::default()
    })
}

fn emit(value: &serde_json::Value, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.cmd {
        Cmd::Rips { input, common } => {
            emit(&cmd_rips(&input, &config(&common)?)?, &common.json)?;
        }
        Cmd::Barcode { input, common, svg } => {
            let (v, plot) = cmd_barcode(&input, &config(&common)?)?;
            emit(&v, &common.json)?;
            if let Some(p) = svg {
                std::fs::write(&p, plot).with_context(|| format!("writing {}", p.display()))?;
            }
        }
        Cmd::Transfer { input, common, n } => {
            let cfg = RunConfig { n, ..config(&common)? };
            emit(&cmd_transfer(&input, &cfg)?, &common.json)?;
        }
        Cmd::Distance {
            a,
            b,
            common,
            n,
            classical,
            exact_only,
        } => {
            let cfg = RunConfig {
                n,
                classical,
                exact_only,
                ..config(&common)?
            };
            let (v, violated) = cmd_distance(&a, &b, &cfg)?;
            emit(&v, &common.json)?;
            if violated {
                eprintln!("ainfp: value not certified within the search budget");
                return Ok(3);
            }
        }
        Cmd::Verify { input, common, n } => {
            let cfg = RunConfig { n, ..config(&common)? };
            let (v, passed) = cmd_verify(&input, &cfg)?;
            emit(&v, &common.json)?;
            if !passed {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("AINFP_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // only fails if a pool exists already
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("ainfp: {e:#}");
            let budget = matches!(e.downcast_ref::<ainfp::Error>(), Some(ainfp::Error::Budget(_)));
            ExitCode::from(if budget { 3 } else { 1 })
        }
    }
}
