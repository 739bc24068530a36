use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use korovkin::commands;
use korovkin::config::{parse_phase, read_config_file, LTrunc, RunConfig};
use korovkin::golden;
use korovkin::tables::{self, parse_list, parse_point, Example};
use korovkin_core::fourier::PhaseMode;

#[derive(Parser)]
#[command(name = "korovkin", version, about = "Reproduce the operator tables and run the property suites")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Grid spacing for sup and modulus-of-continuity searches.
    #[arg(long, global = true, env = "KOROVKIN_GRID_STEP")]
    grid_step: Option<f64>,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true, env = "KOROVKIN_QUAD_TOL")]
    quad_tol: Option<f64>,
    /// Window truncation for K tables: an integer, `auto`, or `paper` (m = n).
    #[arg(long, global = true, env = "KOROVKIN_L_TRUNC")]
    l_trunc: Option<LTrunc>,
    /// Window phase factor: `alternating` uses (−1)^l, `exact` uses e^{iplπ}.
    #[arg(long, global = true, env = "KOROVKIN_PHASE_MODE", value_parser = parse_phase)]
    phase_mode: Option<PhaseMode>,
    /// Scale applied to the forward transform.
    #[arg(long, global = true, env = "KOROVKIN_FORWARD_SCALE")]
    forward_scale: Option<f64>,
    #[arg(long, global = true, env = "KOROVKIN_OUT_DIR")]
    out_dir: Option<PathBuf>,
    /// Also write an SVG plot per table.
    #[arg(long, global = true, env = "KOROVKIN_SVG", num_args = 0..=1, default_missing_value = "true")]
    svg: Option<bool>,
    /// `key = value` file; flags and environment variables take precedence.
    #[arg(long, global = true, env = "KOROVKIN_CONFIG")]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// ν_n with ω(f, ν_n) and ω(F(f), ν_n) for one example function.
    NuTable {
        #[arg(long, default_value = "tent")]
        example: Example,
        /// Comma-separated orders.
        #[arg(long)]
        n: Option<String>,
        /// ω(F(f), ·) is taken over [−(m+1)π, (m+1)π].
        #[arg(long, default_value_t = tables::FREQUENCY_WINDOWS)]
        window_m: usize,
    },
    /// ξ_n.
    XiTable {
        #[arg(long)]
        n: Option<String>,
    },
    /// K_{n,m}(e^{−x²})(p) in both phase modes.
    KnTable {
        #[arg(long)]
        n: Option<String>,
        /// Comma-separated points; `pi/4` style is accepted.
        #[arg(long)]
        p: Option<String>,
    },
    /// Kantorovich operators, their variants and the μ_n bound.
    KantorovichSuite {
        #[arg(long)]
        n: Option<String>,
    },
    /// Exact identities and the norm sweep for G_n.
    GrunwaldSuite,
    /// Every table, every check, and a manifest. Exits nonzero on any failure.
    ReproduceAll,
}

fn build_config(g: &Global) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &g.config {
        for (k, v) in read_config_file(path)? {
            cfg.set(&k, &v)?;
        }
    }
    if let Some(v) = g.grid_step {
        cfg.grid_step = v;
    }
    if let Some(v) = g.quad_tol {
        cfg.quad_tol = v;
    }
    if let Some(v) = g.l_trunc {
        cfg.l_truncation = v;
    }
    if let Some(v) = g.phase_mode {
        cfg.convention.phase_mode = v;
    }
    if let Some(v) = g.forward_scale {
        cfg.convention.forward_scale = v;
    }
    if let Some(v) = &g.out_dir {
        cfg.out_dir = v.clone();
    }
    if let Some(v) = g.svg {
        cfg.emit_svg = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn orders(s: &Option<String>, default: &[usize]) -> Result<Vec<usize>> {
    match s {
        Some(s) => parse_list(s),
        None => Ok(default.to_vec()),
    }
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = build_config(&cli.global)?;
    match cli.command {
        Command::NuTable { example, n, window_m } => {
            commands::nu_table(example, &orders(&n, &golden::NU_ORDERS)?, window_m, &cfg)?;
            Ok(true)
        }
        Command::XiTable { n } => {
            let default: Vec<usize> = golden::XI_ORDERS.iter().chain(&golden::XI_INFO_ORDERS).copied().collect();
            commands::xi_table(&orders(&n, &default)?, &cfg)?;
            Ok(true)
        }
        Command::KnTable { n, p } => {
            let points = match p {
                Some(s) => s.split(',').map(parse_point).collect::<Result<Vec<_>>>()?,
                None => tables::KN_POINTS.to_vec(),
            };
            commands::kn_table(&orders(&n, &golden::KN_ORDERS)?, &points, &cfg)?;
            Ok(true)
        }
        Command::KantorovichSuite { n } => {
            commands::kantorovich_suite(&orders(&n, &tables::KANTOROVICH_ORDERS)?, &cfg)
        }
        Command::GrunwaldSuite => commands::grunwald_suite(&cfg),
        Command::ReproduceAll => commands::reproduce_all(&cfg),
    }
}

/// 0 when every check passed, 1 when a check failed, 2 on error.
fn exit_status(r: &Result<bool>) -> u8 {
    match r {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(_) => 2,
    }
}

fn main() -> ExitCode {
    let r = run(Cli::parse());
    if let Err(e) = &r {
        eprintln!("error: {e:#}");
    }
    ExitCode::from(exit_status(&r))
}
