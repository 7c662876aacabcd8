//! `qdec`: security policies, game values, and Honey-X deception for
//! two-player zero-sum quantum games.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use quantum_deception::cli::{
    default_deltas, default_out_dir, exit_code_for, format_matrix, resolve_game, rows_to_csv,
    rows_to_json, run_sweep, run_value, DeceptionArtifact, GameSelector, OutputFormat, SweepSpec,
    ValueArtifact, EXIT_CERTIFICATE, EXIT_OK, EXIT_SOLVER,
};
use quantum_deception::deception::{
    solve_deception, verify_theorem1, DeceptionConfig, DeceptionInstance,
};
use quantum_deception::equilibrium::SolverConfig;
use quantum_deception::error::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "qdec", version, about = "Zero-sum quantum game values and Honey-X deception")]
struct Cli {
    /// Optional JSON config file with default options (flags win).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct CommonOpts {
    /// Game: pure | diagonal | quantum | random:<seed> | <path.json>
    #[arg(long)]
    game: String,

    /// Duality-gap tolerance relative to the Hamiltonian Frobenius norm.
    #[arg(long)]
    tol: Option<f64>,

    /// Seed for randomized restarts and sampling.
    #[arg(long)]
    seed: Option<u64>,

    /// Output file (defaults under $QDEC_OUT_DIR).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format for artifacts.
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Equilibrium value, security policies, and certificates.
    Value {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Optimal deception for one budget; writes a full JSON artifact.
    Deceive {
        #[command(flatten)]
        common: CommonOpts,
        /// Deception budget (induced 1-norm bound on D).
        #[arg(long)]
        delta: f64,
        /// Random restart count.
        #[arg(long)]
        restarts: Option<usize>,
        /// Wall-clock cap in seconds.
        #[arg(long)]
        time_cap_s: Option<f64>,
    },
    /// Budget sweep emitting one row per delta.
    Sweep {
        #[command(flatten)]
        common: CommonOpts,
        /// Comma-separated budgets, e.g. 0,20,40,60,80,100.
        #[arg(long, value_delimiter = ',')]
        deltas: Option<Vec<f64>>,
        #[arg(long)]
        restarts: Option<usize>,
        /// Wall-clock cap per delta in seconds.
        #[arg(long)]
        time_cap_s: Option<f64>,
    },
    /// Naive/robust victim equivalence report.
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// Deception budget.
        #[arg(long)]
        delta: f64,
        /// Number of sampled product states.
        #[arg(long, default_value_t = 40)]
        samples: usize,
    },
}

/// File-borne defaults; every command-line flag overrides its field.
#[derive(Debug, Default, Deserialize)]
struct FileConfig {
    tol: Option<f64>,
    seed: Option<u64>,
    restarts: Option<usize>,
    time_cap_s: Option<f64>,
    format: Option<String>,
    out_dir: Option<PathBuf>,
}

fn load_file_config(path: Option<&PathBuf>) -> Result<FileConfig> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)?;
            serde_json::from_str(&text).map_err(|e| Error::InvalidConfig {
                reason: format!("{}: {e}", p.display()),
            })
        }
    }
}

struct Merged {
    tol: f64,
    seed: u64,
    restarts: usize,
    time_cap_s: f64,
    format: OutputFormat,
    out_dir: PathBuf,
}

fn merge(
    common: &CommonOpts,
    restarts: Option<usize>,
    time_cap_s: Option<f64>,
    file: &FileConfig,
) -> Result<Merged> {
    let format = match (&common.format, &file.format) {
        (Some(f), _) => *f,
        (None, Some(s)) => s.parse()?,
        (None, None) => OutputFormat::default(),
    };
    Ok(Merged {
        tol: common.tol.or(file.tol).unwrap_or(1e-4),
        seed: common.seed.or(file.seed).unwrap_or(0),
        restarts: restarts.or(file.restarts).unwrap_or(16),
        time_cap_s: time_cap_s.or(file.time_cap_s).unwrap_or(120.0),
        format,
        out_dir: file.out_dir.clone().unwrap_or_else(default_out_dir),
    })
}

fn sanitize_label(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

fn write_or_print(out: Option<&PathBuf>, default_path: PathBuf, text: &str) -> Result<()> {
    let path = out.cloned().unwrap_or(default_path);
    if path.as_os_str() == "-" {
        print!("{text}");
        return Ok(());
    }
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(&path, text)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_value(common: &CommonOpts, file: &FileConfig) -> Result<i32> {
    let merged = merge(common, None, None, file)?;
    let selector: GameSelector = common.game.parse()?;
    let game = resolve_game(&selector)?;
    let cfg = SolverConfig::default()
        .with_rel_tolerance(merged.tol)
        .with_seed(merged.seed);
    let (res, tol) = run_value(&game, &cfg)?;
    println!("game: {} ({}x{})", game.label(), game.n_a(), game.n_b());
    println!("value: {:.6}", res.value);
    println!(
        "duality gap: {:.3e} (tolerance {:.3e}, {} iterations)",
        res.duality_gap, tol, res.iterations
    );
    println!(
        "certificate residuals: lower {:.3e}, upper {:.3e}",
        res.certificate.lower_residual, res.certificate.upper_residual
    );
    println!("rho_A (minimizer):\n{}", format_matrix(res.rho_a.operator().as_matrix()));
    println!("rho_B (maximizer):\n{}", format_matrix(res.rho_b.operator().as_matrix()));
    if let Some(out) = &common.out {
        let artifact = ValueArtifact::new(&game, &res);
        write_or_print(Some(out), PathBuf::new(), &serde_json::to_string_pretty(&artifact)?)?;
    }
    Ok(EXIT_OK)
}

fn cmd_deceive(
    common: &CommonOpts,
    delta: f64,
    restarts: Option<usize>,
    time_cap_s: Option<f64>,
    file: &FileConfig,
) -> Result<i32> {
    let merged = merge(common, restarts, time_cap_s, file)?;
    let selector: GameSelector = common.game.parse()?;
    let game = resolve_game(&selector)?;
    let mut cfg = DeceptionConfig::default().with_seed(merged.seed);
    cfg.solver.rel_tolerance = merged.tol;
    cfg.restarts = merged.restarts;
    cfg.time_cap = Some(Duration::from_secs_f64(merged.time_cap_s));
    let inst = DeceptionInstance::new(game.clone(), delta, cfg)?;
    let res = solve_deception(&inst)?;
    println!("game: {} | delta: {delta}", game.label());
    println!("realized payoff (deceiver, true game): {:.6}", res.realized_payoff);
    println!("perceived value (victim, announced game): {:.6}", res.perceived_value);
    println!(
        "feasibility residual (max): {:.3e} | winner restart {} of {}",
        res.residuals.max(),
        res.winner_restart,
        res.restarts_used
    );
    println!("D*:\n{}", format_matrix(res.d_star.as_matrix()));
    let artifact = DeceptionArtifact::new(&game, delta, &res);
    let default_path = merged.out_dir.join(format!(
        "deceive_{}_{delta}.json",
        sanitize_label(game.label())
    ));
    write_or_print(common.out.as_ref(), default_path, &serde_json::to_string_pretty(&artifact)?)?;
    if res.nonconverged_candidates > 0 {
        eprintln!(
            "warning: {} candidate evaluations did not converge",
            res.nonconverged_candidates
        );
    }
    Ok(EXIT_OK)
}

fn cmd_sweep(
    common: &CommonOpts,
    deltas: Option<Vec<f64>>,
    restarts: Option<usize>,
    time_cap_s: Option<f64>,
    file: &FileConfig,
) -> Result<i32> {
    let merged = merge(common, restarts, time_cap_s, file)?;
    let selector: GameSelector = common.game.parse()?;
    let game = resolve_game(&selector)?;
    let spec = SweepSpec {
        deltas: deltas.unwrap_or_else(default_deltas),
        restarts: merged.restarts,
        rel_tolerance: merged.tol,
        seed: merged.seed,
        time_cap_s: merged.time_cap_s,
    };
    let rows = run_sweep(&game, &spec)?;
    let text = match merged.format {
        OutputFormat::Csv => rows_to_csv(&rows),
        OutputFormat::Json => rows_to_json(&rows)?,
    };
    let ext = match merged.format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    };
    let default_path = merged
        .out_dir
        .join(format!("sweep_{}.{ext}", sanitize_label(game.label())));
    write_or_print(common.out.as_ref(), default_path, &text)?;
    if rows.iter().any(|r| r.is_failure()) {
        eprintln!("warning: some deltas failed; marker rows written");
        return Ok(EXIT_SOLVER);
    }
    Ok(EXIT_OK)
}

fn cmd_verify(common: &CommonOpts, delta: f64, samples: usize, file: &FileConfig) -> Result<i32> {
    let merged = merge(common, None, None, file)?;
    let selector: GameSelector = common.game.parse()?;
    let game = resolve_game(&selector)?;
    let cfg = SolverConfig::default()
        .with_rel_tolerance(merged.tol)
        .with_seed(merged.seed);
    let report = verify_theorem1(&game, delta, &cfg, samples)?;
    println!("game: {} | delta: {delta}", game.label());
    println!("{report}");
    Ok(if report.passed { EXIT_OK } else { EXIT_CERTIFICATE })
}

fn run(cli: &Cli) -> Result<i32> {
    let file = load_file_config(cli.config.as_ref())?;
    match &cli.cmd {
        Cmd::Value { common } => cmd_value(common, &file),
        Cmd::Deceive { common, delta, restarts, time_cap_s } => {
            cmd_deceive(common, *delta, *restarts, *time_cap_s, &file)
        }
        Cmd::Sweep { common, deltas, restarts, time_cap_s } => {
            cmd_sweep(common, deltas.clone(), *restarts, *time_cap_s, &file)
        }
        Cmd::Verify { common, delta, samples } => cmd_verify(common, *delta, *samples, &file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err) as u8)
        }
    }
}
