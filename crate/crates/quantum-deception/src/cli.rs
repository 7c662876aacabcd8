//! Command-line harness machinery: game selection, value and deception
//! runs, budget sweeps, and CSV/JSON rendering. The `qdec` binary is a thin
//! wrapper over this module.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::deception::{
    solve_deception, DeceptionConfig, DeceptionInstance, DeceptionResult, FeasibilityResiduals,
};
use crate::equilibrium::{solve_equilibrium, EquilibriumResult, SolverConfig};
use crate::error::{Error, Result};
use crate::game::{DensityMatrix, QuantumGame};
use crate::hamiltonian::{load_game, GameFile};
use crate::linalg::{scaled_tol, ComplexMatrix, HermitianOperator};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_CERTIFICATE: i32 = 4;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "QDEC_OUT_DIR";

/// Maps an error to the process exit code taxonomy: 2 input, 3 solver
/// non-convergence, 4 certificate failure.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::SolverNonConvergence { .. } | Error::EigConvergence { .. } => EXIT_SOLVER,
        Error::CertificateFailure { .. } => EXIT_CERTIFICATE,
        _ => EXIT_INPUT,
    }
}

/// Game source: a canned name, a JSON file path, or a seeded random draw.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameSelector {
    Canned(crate::hamiltonian::CannedGame),
    File(PathBuf),
    Random { seed: u64 },
}

impl FromStr for GameSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if let Ok(canned) = trimmed.parse() {
            return Ok(GameSelector::Canned(canned));
        }
        if let Some(seed) = trimmed.strip_prefix("random:") {
            let seed = seed.parse::<u64>().map_err(|_| Error::UnknownGame {
                name: trimmed.into(),
            })?;
            return Ok(GameSelector::Random { seed });
        }
        if trimmed.contains('.') || trimmed.contains(std::path::MAIN_SEPARATOR) || Path::new(trimmed).exists() {
            return Ok(GameSelector::File(PathBuf::from(trimmed)));
        }
        Err(Error::UnknownGame { name: trimmed.into() })
    }
}

/// Loads or constructs the selected game. Random draws are 4x4 Hermitian
/// Hamiltonians on two qubits at the canonical payoff scale.
pub fn resolve_game(selector: &GameSelector) -> Result<QuantumGame> {
    match selector {
        GameSelector::Canned(which) => Ok(crate::hamiltonian::canned_game(*which)),
        GameSelector::File(path) => load_game(path),
        GameSelector::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let h = HermitianOperator::random_gaussian(4, &mut rng).scale(100.0 / 4.0);
            QuantumGame::new(2, 2, h, format!("random:{seed}"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidConfig {
                reason: format!("unknown format `{other}` (expected csv or json)"),
            }),
        }
    }
}

/// A budget sweep: which deltas to run and with what solver knobs.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub deltas: Vec<f64>,
    pub restarts: usize,
    pub rel_tolerance: f64,
    pub seed: u64,
    pub time_cap_s: f64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            deltas: default_deltas(),
            restarts: 16,
            rel_tolerance: 1e-4,
            seed: 0,
            time_cap_s: 120.0,
        }
    }
}

/// The canonical budget grid `{0, 20, ..., 100}`.
pub fn default_deltas() -> Vec<f64> {
    vec![0.0, 20.0, 40.0, 60.0, 80.0, 100.0]
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.deltas.is_empty() {
            return Err(Error::InvalidConfig {
                reason: "sweep needs at least one delta".into(),
            });
        }
        for w in self.deltas.windows(2) {
            if w[1] < w[0] {
                return Err(Error::InvalidConfig {
                    reason: "deltas must be sorted ascending".into(),
                });
            }
        }
        if self.deltas.iter().any(|d| !d.is_finite() || *d < 0.0) {
            return Err(Error::InvalidConfig {
                reason: "deltas must be finite and nonnegative".into(),
            });
        }
        Ok(())
    }

    pub fn deception_config(&self) -> DeceptionConfig {
        let mut cfg = DeceptionConfig::default().with_seed(self.seed);
        cfg.solver.rel_tolerance = self.rel_tolerance;
        cfg.restarts = self.restarts;
        cfg.time_cap = Some(Duration::from_secs_f64(self.time_cap_s));
        cfg
    }
}

/// One sweep result row; `winner_restart` is -1 on a per-delta failure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub delta: f64,
    pub realized_payoff: f64,
    pub perceived_value: f64,
    pub residual: f64,
    pub wall_time_s: f64,
    pub winner_restart: i64,
}

impl SweepRow {
    pub fn is_failure(&self) -> bool {
        self.winner_restart < 0
    }
}

/// Runs the sweep; solver failures produce marker rows instead of aborting
/// the remaining deltas.
pub fn run_sweep(game: &QuantumGame, spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(spec.deltas.len());
    for &delta in &spec.deltas {
        let started = Instant::now();
        let inst = DeceptionInstance::new(game.clone(), delta, spec.deception_config())?;
        match solve_deception(&inst) {
            Ok(res) => rows.push(SweepRow {
                delta,
                realized_payoff: res.realized_payoff,
                perceived_value: res.perceived_value,
                residual: res.residuals.max(),
                wall_time_s: started.elapsed().as_secs_f64(),
                winner_restart: res.winner_restart as i64,
            }),
            Err(_) => rows.push(SweepRow {
                delta,
                realized_payoff: f64::NAN,
                perceived_value: f64::NAN,
                residual: f64::NAN,
                wall_time_s: started.elapsed().as_secs_f64(),
                winner_restart: -1,
            }),
        }
    }
    Ok(rows)
}

/// CSV with the fixed column set
/// `delta,realized_payoff,perceived_value,residual,wall_time_s,winner_restart`.
pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("delta,realized_payoff,perceived_value,residual,wall_time_s,winner_restart\n");
    for r in rows {
        writeln!(
            out,
            "{:.6},{:.6},{:.6},{:.9},{:.3},{}",
            r.delta, r.realized_payoff, r.perceived_value, r.residual, r.wall_time_s, r.winner_restart
        )
        .expect("writing to String cannot fail");
    }
    out
}

pub fn rows_to_json(rows: &[SweepRow]) -> Result<String> {
    Ok(serde_json::to_string_pretty(rows)?)
}

fn matrix_parts(m: &ComplexMatrix) -> (Vec<f64>, Vec<f64>) {
    (
        m.data().iter().map(|c| c.re).collect(),
        m.data().iter().map(|c| c.im).collect(),
    )
}

fn matrix_from_parts(dim: usize, re: &[f64], im: &[f64], what: &str) -> Result<ComplexMatrix> {
    if re.len() != dim * dim || im.len() != dim * dim {
        return Err(Error::InvalidGameFile {
            reason: format!("{what}: expected {} entries", dim * dim),
        });
    }
    let data = re
        .iter()
        .zip(im)
        .map(|(&a, &b)| num_complex::Complex64::new(a, b))
        .collect();
    ComplexMatrix::new(dim, dim, data)
}

/// Equilibrium report emitted by the `value` subcommand.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValueArtifact {
    pub game: GameFile,
    pub value: f64,
    pub duality_gap: f64,
    pub iterations: usize,
    pub lower_residual: f64,
    pub upper_residual: f64,
    pub rho_a_re: Vec<f64>,
    pub rho_a_im: Vec<f64>,
    pub rho_b_re: Vec<f64>,
    pub rho_b_im: Vec<f64>,
}

impl ValueArtifact {
    pub fn new(game: &QuantumGame, res: &EquilibriumResult) -> Self {
        let (rho_a_re, rho_a_im) = matrix_parts(res.rho_a.operator().as_matrix());
        let (rho_b_re, rho_b_im) = matrix_parts(res.rho_b.operator().as_matrix());
        Self {
            game: GameFile::from_game(game),
            value: res.value,
            duality_gap: res.duality_gap,
            iterations: res.iterations,
            lower_residual: res.certificate.lower_residual,
            upper_residual: res.certificate.upper_residual,
            rho_a_re,
            rho_a_im,
            rho_b_re,
            rho_b_im,
        }
    }
}

/// Full deception report emitted by the `deceive` subcommand; matrices are
/// stored as parallel real/imaginary row-major arrays for lossless
/// round-trips.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeceptionArtifact {
    pub game: GameFile,
    pub delta: f64,
    pub perceived_value: f64,
    pub realized_payoff: f64,
    pub d_re: Vec<f64>,
    pub d_im: Vec<f64>,
    pub rho_a_re: Vec<f64>,
    pub rho_a_im: Vec<f64>,
    pub rho_b_re: Vec<f64>,
    pub rho_b_im: Vec<f64>,
    pub omega_re: Vec<f64>,
    pub omega_im: Vec<f64>,
    pub residuals: FeasibilityResiduals,
    pub restarts_used: usize,
    pub winner_restart: usize,
    pub best_objective_trace: Vec<f64>,
    pub nonconverged_candidates: usize,
}

impl DeceptionArtifact {
    pub fn new(game: &QuantumGame, delta: f64, res: &DeceptionResult) -> Self {
        let (d_re, d_im) = matrix_parts(res.d_star.as_matrix());
        let (rho_a_re, rho_a_im) = matrix_parts(res.rho_a_star.operator().as_matrix());
        let (rho_b_re, rho_b_im) = matrix_parts(res.rho_b_star.operator().as_matrix());
        let (omega_re, omega_im) = matrix_parts(res.omega_star.operator().as_matrix());
        Self {
            game: GameFile::from_game(game),
            delta,
            perceived_value: res.perceived_value,
            realized_payoff: res.realized_payoff,
            d_re,
            d_im,
            rho_a_re,
            rho_a_im,
            rho_b_re,
            rho_b_im,
            omega_re,
            omega_im,
            residuals: res.residuals,
            restarts_used: res.restarts_used,
            winner_restart: res.winner_restart,
            best_objective_trace: res.best_objective_trace.clone(),
            nonconverged_candidates: res.nonconverged_candidates,
        }
    }

    /// Reconstructs the stored operators and recomputes every feasibility
    /// residual from scratch; a healthy artifact reproduces its stored
    /// values to rounding.
    pub fn recompute_residuals(&self) -> Result<FeasibilityResiduals> {
        let game = self.game.clone().into_game()?;
        let dim = game.dim();
        let d = HermitianOperator::new(matrix_from_parts(dim, &self.d_re, &self.d_im, "d")?)?;
        let announced = crate::deception::deceptive_game(&game, &d)?;
        let rho_a = DensityMatrix::new(HermitianOperator::new(matrix_from_parts(
            game.n_a(),
            &self.rho_a_re,
            &self.rho_a_im,
            "rho_a",
        )?)?)?;
        let rho_b = DensityMatrix::new(HermitianOperator::new(matrix_from_parts(
            game.n_b(),
            &self.rho_b_re,
            &self.rho_b_im,
            "rho_b",
        )?)?)?;
        let omega = DensityMatrix::new(HermitianOperator::new(matrix_from_parts(
            game.n_a(),
            &self.omega_re,
            &self.omega_im,
            "omega",
        )?)?)?;
        let u = self.perceived_value;
        let victim_certificate =
            (u - announced.conditioned_operator_a(&rho_b)?.lambda_min()?).max(0.0);
        let dual_certificate =
            (announced.conditioned_operator_b(&omega)?.lambda_max()? - u).max(0.0);
        let budget = (d.induced_one_norm() - self.delta).max(0.0);
        let mut psd = 0.0f64;
        let mut trace = 0.0f64;
        for rho in [&rho_a, &rho_b, &omega] {
            psd = psd.max((-rho.operator().lambda_min()?).max(0.0));
            trace = trace.max((rho.operator().trace_re() - 1.0).abs());
        }
        Ok(FeasibilityResiduals {
            victim_certificate,
            dual_certificate,
            budget,
            psd,
            trace,
        })
    }
}

/// Renders a complex matrix as aligned `re+imj` cells for terminal output.
pub fn format_matrix(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        out.push_str("  [");
        for j in 0..m.cols() {
            let v = m.get(i, j);
            let _ = write!(out, "{:>9.3}{:+.3}j", v.re, v.im);
            if j + 1 < m.cols() {
                out.push_str(", ");
            }
        }
        out.push_str("]\n");
    }
    out
}

/// Solves the game and checks the equilibrium certificate at the configured
/// tolerance, returning the certificate error when it fails.
pub fn run_value(game: &QuantumGame, cfg: &SolverConfig) -> Result<(EquilibriumResult, f64)> {
    let res = solve_equilibrium(game, cfg)?;
    let tol = scaled_tol(cfg.rel_tolerance, game.scale());
    if !res.certificate.passes(tol) {
        return Err(Error::CertificateFailure {
            residual: res.certificate.worst(),
            tolerance: tol,
        });
    }
    Ok((res, tol))
}

/// Default output directory: `$QDEC_OUT_DIR` or the working directory.
pub fn default_out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."))
}
