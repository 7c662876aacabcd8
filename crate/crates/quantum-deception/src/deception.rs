//! Honey-X deception of the payoff Hamiltonian: the budgeted perturbation
//! model, the naive/robust victim-response equivalence verifier, and the
//! bilinear program computing the best deception found across seeded
//! restarts with local refinement.
//!
//! The deceiver (player A, minimizing) announces `H' = H + D` with
//! `||D||_1 <= budget`; the victim (player B, maximizing) plays an
//! equilibrium strategy of the announced game, ties resolved in the
//! deceiver's favor, while actual payoffs come from the true `H`.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::equilibrium::{
    best_response_a, security_residual_b, solve_equilibrium, EquilibriumResult, SolverConfig,
};
use crate::error::{Error, Result};
use crate::game::{DensityMatrix, PureState, QuantumGame};
use crate::hamiltonian::{pauli_i, pauli_x, pauli_y, pauli_z};
use crate::linalg::{scaled_tol, ComplexMatrix, HermitianOperator, C_ZERO, TOL_FLOOR};

/// Budget slack admitted by the result invariant `||D*||_1 <= budget + 1e-8`.
pub const BUDGET_SLACK: f64 = 1e-8;

/// Configuration for [`solve_deception`].
#[derive(Debug, Clone)]
pub struct DeceptionConfig {
    /// Equilibrium solver used for every victim response.
    pub solver: SolverConfig,
    /// Number of random Hermitian restart seeds on top of the structured
    /// motifs.
    pub restarts: usize,
    /// Cap on refinement steps per descended candidate.
    pub max_alternations: usize,
    /// Consecutive non-improving steps before a candidate is abandoned.
    pub stall_limit: usize,
    /// How many of the best seed candidates get local refinement.
    pub descent_candidates: usize,
    /// Budget fractions scanned along each structured motif direction.
    pub line_fractions: Vec<f64>,
    /// Warm-start candidates evaluated ahead of the structured motifs
    /// (clipped to the budget), e.g. the winner of a smaller-budget solve.
    pub extra_seeds: Vec<HermitianOperator>,
    /// Wall-clock cap for the whole solve.
    pub time_cap: Option<Duration>,
}

impl Default for DeceptionConfig {
    fn default() -> Self {
        Self {
            solver: SolverConfig::default(),
            restarts: 16,
            max_alternations: 5000,
            stall_limit: 12,
            descent_candidates: 4,
            line_fractions: vec![0.25, 0.5, 0.75, 1.0],
            extra_seeds: Vec::new(),
            time_cap: None,
        }
    }
}

impl DeceptionConfig {
    /// Cheap profile for bulk property checks: full-budget seeds only, no
    /// local refinement, looser solver tolerance.
    pub fn quick(seed: u64) -> Self {
        let mut solver = SolverConfig::default().with_seed(seed);
        solver.rel_tolerance = 1e-3;
        Self {
            solver,
            restarts: 2,
            descent_candidates: 0,
            line_fractions: vec![1.0],
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.solver.seed = seed;
        self
    }
}

/// A deception problem: true game, budget, and solver knobs.
#[derive(Debug, Clone)]
pub struct DeceptionInstance {
    pub game: QuantumGame,
    pub budget: f64,
    pub config: DeceptionConfig,
}

impl DeceptionInstance {
    pub fn new(game: QuantumGame, budget: f64, config: DeceptionConfig) -> Result<Self> {
        if !budget.is_finite() || budget < 0.0 {
            return Err(Error::InvalidConfig {
                reason: format!("deception budget must be finite and nonnegative, got {budget}"),
            });
        }
        Ok(Self { game, budget, config })
    }
}

/// Violation magnitudes for the five constraint groups of the deception
/// program: the victim's operator inequality on the announced game, the dual
/// operator inequality, the budget, positive semidefiniteness, and unit
/// traces.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct FeasibilityResiduals {
    pub victim_certificate: f64,
    pub dual_certificate: f64,
    pub budget: f64,
    pub psd: f64,
    pub trace: f64,
}

impl FeasibilityResiduals {
    pub fn max(&self) -> f64 {
        self.victim_certificate
            .max(self.dual_certificate)
            .max(self.budget)
            .max(self.psd)
            .max(self.trace)
    }
}

/// Outcome of fixing one deception matrix: the announced-game equilibrium,
/// the optimistically selected victim strategy, and the deceiver's realized
/// payoff on the true game.
#[derive(Debug, Clone)]
pub struct DeceptionOutcome {
    pub perceived_value: f64,
    pub rho_a: DensityMatrix,
    pub rho_b: DensityMatrix,
    pub omega: DensityMatrix,
    pub realized_payoff: f64,
    pub residuals: FeasibilityResiduals,
    pub equilibrium_gap: f64,
}

/// Result of [`solve_deception`].
#[derive(Debug, Clone)]
pub struct DeceptionResult {
    pub d_star: HermitianOperator,
    pub rho_a_star: DensityMatrix,
    pub rho_b_star: DensityMatrix,
    pub omega_star: DensityMatrix,
    /// Equilibrium value of the announced game `H + D*`.
    pub perceived_value: f64,
    /// `tr((rho_A* (x) rho_B*) H)` on the true game; the objective.
    pub realized_payoff: f64,
    pub residuals: FeasibilityResiduals,
    pub restarts_used: usize,
    pub winner_restart: usize,
    /// Best objective after each candidate evaluation; non-increasing.
    pub best_objective_trace: Vec<f64>,
    /// Candidates whose inner equilibrium solve failed to converge.
    pub nonconverged_candidates: usize,
}

/// The announced game `H + D`. `D` is Hermitian by type; dimensions must
/// match.
pub fn deceptive_game(game: &QuantumGame, d: &HermitianOperator) -> Result<QuantumGame> {
    if d.dim() != game.dim() {
        return Err(Error::DimensionMismatch {
            context: "deception matrix",
            expected: game.dim(),
            found: d.dim(),
        });
    }
    Ok(game.with_hamiltonian(
        game.hamiltonian().add(d),
        format!("{}:deceived", game.label()),
    ))
}

/// Radial scaling onto the induced-1-norm ball of radius `budget`.
pub fn clip_to_budget(d: &HermitianOperator, budget: f64) -> HermitianOperator {
    assert!(budget >= 0.0, "deception budget must be nonnegative");
    let norm = d.induced_one_norm();
    if norm <= budget {
        d.clone()
    } else {
        d.scale(budget / norm)
    }
}

/// Strategy of a victim that trusts the announced game and plays its
/// equilibrium.
pub fn naive_victim_response(announced: &QuantumGame, cfg: &SolverConfig) -> Result<DensityMatrix> {
    Ok(solve_equilibrium(announced, cfg)?.rho_b)
}

/// Strategy and guaranteed value of a victim that assumes worst-case
/// deception within `budget`. The robust program collapses onto the naive
/// one — the worst-case perturbation shifts every product-state payoff by
/// exactly the budget — so this solves the announced game and subtracts
/// `budget`; [`verify_theorem1`] cross-checks that reduction.
pub fn robust_victim_response(
    announced: &QuantumGame,
    budget: f64,
    cfg: &SolverConfig,
) -> Result<(DensityMatrix, f64)> {
    if !budget.is_finite() || budget < 0.0 {
        return Err(Error::InvalidConfig {
            reason: format!("budget must be nonnegative, got {budget}"),
        });
    }
    let eq = solve_equilibrium(announced, cfg)?;
    Ok((eq.rho_b, eq.value - budget))
}

fn rayleigh_quotient(d: &HermitianOperator, amps: &[Complex64]) -> f64 {
    let n = d.dim();
    debug_assert_eq!(amps.len(), n);
    let mut acc = C_ZERO;
    for i in 0..n {
        for j in 0..n {
            acc += amps[i].conj() * d.entry(i, j) * amps[j];
        }
    }
    acc.re
}

/// One named check of the equivalence report.
#[derive(Debug, Clone)]
pub struct TheoremCheck {
    pub name: &'static str,
    pub worst_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl TheoremCheck {
    fn new(name: &'static str, worst_residual: f64, tolerance: f64) -> Self {
        Self {
            name,
            worst_residual,
            tolerance,
            passed: worst_residual <= tolerance,
        }
    }
}

/// Report of [`verify_theorem1`].
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub checks: Vec<TheoremCheck>,
    pub passed: bool,
    /// Naive equilibrium value of the input game.
    pub naive_value: f64,
    /// Independently recomputed robust value of the input game.
    pub robust_value: f64,
    pub samples: usize,
    pub games_checked: usize,
}

impl std::fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "naive value {:.6}, robust value {:.6} ({} states, {} games)",
            self.naive_value, self.robust_value, self.samples, self.games_checked
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {} residual {:.3e} (tol {:.3e})",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.worst_residual,
                c.tolerance
            )?;
        }
        write!(f, "overall: {}", if self.passed { "pass" } else { "FAIL" })
    }
}

/// Checks the naive/robust victim equivalence from first principles:
///
/// (a) over sampled product pure states, the best budget-feasible
///     perturbation extracts exactly the budget from the quadratic form
///     (the identity perturbation attains it, no feasible one exceeds it);
/// (b) the extreme eigenvalue of any feasible perturbation stays below the
///     induced 1-norm budget;
/// (c) on the input game and random Hermitian games, the independently
///     solved worst-case game `H' - budget*I` has value `naive - budget`,
///     and the naive and robust responses certify as security policies of
///     each other's program.
pub fn verify_theorem1(
    game: &QuantumGame,
    budget: f64,
    cfg: &SolverConfig,
    samples: usize,
) -> Result<TheoremReport> {
    if !budget.is_finite() || budget < 0.0 {
        return Err(Error::InvalidConfig {
            reason: format!("budget must be nonnegative, got {budget}"),
        });
    }
    let samples = samples.max(1);
    let dim = game.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x7e0a_11ce);

    // (a) Rayleigh-quotient saturation and (b) spectral bound
    let mut worst_dev = 0.0f64;
    let mut worst_overshoot = 0.0f64;
    let mut worst_spectral = 0.0f64;
    for _ in 0..samples {
        let psi_a = PureState::random(game.n_a(), &mut rng);
        let psi_b = PureState::random(game.n_b(), &mut rng);
        let joint = psi_a.tensor(&psi_b);
        let amps = joint.amplitudes();
        let mut family: Vec<HermitianOperator> = vec![HermitianOperator::identity(dim).scale(budget)];
        family.push(clip_to_budget(
            &DensityMatrix::pure(&joint).operator().clone(),
            budget,
        ));
        for _ in 0..3 {
            let d = clip_to_budget(&HermitianOperator::random_gaussian(dim, &mut rng), budget);
            family.push(d);
        }
        let mut best = f64::NEG_INFINITY;
        for d in &family {
            let q = rayleigh_quotient(d, amps);
            best = best.max(q);
            worst_overshoot = worst_overshoot.max(q - budget);
            worst_spectral = worst_spectral.max(d.lambda_max()? - d.induced_one_norm());
        }
        worst_dev = worst_dev.max((best - budget).abs());
    }
    let ray_tol = scaled_tol(1e-9, budget.max(1.0));
    let mut checks = vec![
        TheoremCheck::new("rayleigh_family_saturates_budget", worst_dev, ray_tol),
        TheoremCheck::new("no_feasible_quotient_exceeds_budget", worst_overshoot.max(0.0), ray_tol),
        TheoremCheck::new("spectral_radius_below_budget_norm", worst_spectral.max(0.0), ray_tol),
    ];

    // (c) value shift and cross-membership on the input game plus random ones
    let extra_games = (samples / 10).min(8);
    let mut games = vec![game.clone()];
    for k in 0..extra_games {
        let scale = if game.scale() > TOL_FLOOR { game.scale() } else { 100.0 };
        let h = HermitianOperator::random_gaussian(dim, &mut rng).scale(scale / dim as f64);
        games.push(QuantumGame::new(
            game.n_a(),
            game.n_b(),
            h,
            format!("sampled:{k}"),
        )?);
    }
    let rel_tol = 1e-3;
    let mut worst_value_dev = 0.0f64;
    let mut worst_membership = 0.0f64;
    let mut naive_value = 0.0;
    let mut robust_value = 0.0;
    for (i, g) in games.iter().enumerate() {
        let scale = g.scale().max(1.0);
        let naive = solve_equilibrium(g, cfg)?;
        // independent robust route: the budget-saturating constant
        // perturbation realizes the worst case uniformly
        let robust = solve_equilibrium(&g.shifted(-budget), cfg)?;
        if i == 0 {
            naive_value = naive.value;
            robust_value = robust.value;
        }
        worst_value_dev = worst_value_dev.max((robust.value - (naive.value - budget)).abs() / scale);
        let m1 = security_residual_b(g, &robust.rho_b, naive.value)? / scale;
        let m2 = security_residual_b(&g.shifted(-budget), &naive.rho_b, naive.value - budget)? / scale;
        worst_membership = worst_membership.max(m1).max(m2);
    }
    checks.push(TheoremCheck::new("robust_value_is_naive_minus_budget", worst_value_dev, rel_tol));
    checks.push(TheoremCheck::new("responses_cross_certify", worst_membership, rel_tol));

    let passed = checks.iter().all(|c| c.passed);
    Ok(TheoremReport {
        checks,
        passed,
        naive_value,
        robust_value,
        samples,
        games_checked: games.len(),
    })
}

/// Picks the announced-game equilibrium strategy for the victim that is most
/// favorable to the deceiver: scans certificate-feasible extremes of the
/// victim's best-response set (for qubit victims, a Bloch grid with local
/// refinement when that set is degenerate) and convex blends toward the
/// solver strategy, scoring each by the deceiver's guaranteed payoff on the
/// true game.
fn optimistic_victim(
    true_game: &QuantumGame,
    announced: &QuantumGame,
    eq: &EquilibriumResult,
    cfg: &SolverConfig,
) -> Result<(DensityMatrix, f64)> {
    let tol = scaled_tol(cfg.rel_tolerance, announced.scale());
    let mut best_rho = eq.rho_b.clone();
    let mut best_w = true_game.conditioned_operator_a(&best_rho)?.lambda_min()?;

    let offer = |cand: DensityMatrix, best_rho: &mut DensityMatrix, best_w: &mut f64| -> Result<()> {
        if security_residual_b(announced, &cand, eq.value)? <= tol {
            let w = true_game.conditioned_operator_a(&cand)?.lambda_min()?;
            if w < *best_w {
                *best_w = w;
                *best_rho = cand;
            }
        }
        Ok(())
    };

    let dec = announced.conditioned_operator_b(&eq.rho_a)?.eig()?;
    let n = dec.eigenvalues.len();
    let top = dec.eigenvalues[n - 1];
    for (k, &lam) in dec.eigenvalues.iter().enumerate() {
        if top - lam > tol {
            continue;
        }
        let extreme = PureState::new(dec.eigenvector(k))
            .expect("eigenvectors are unit vectors")
            .projector();
        for alpha in [1.0, 0.75, 0.5, 0.25] {
            let cand = if alpha >= 1.0 {
                extreme.clone()
            } else {
                extreme.mix(&eq.rho_b, alpha)
            };
            offer(cand, &mut best_rho, &mut best_w)?;
        }
    }

    // A near-degenerate best-response set means the victim is indifferent
    // across a whole face; walk its rank-one extremes explicitly.
    let near_tie = n >= 2 && top - dec.eigenvalues[n - 2] <= scaled_tol(1e-2, announced.scale());
    if announced.n_b() == 2 && near_tie {
        if let Some((theta, phi)) = bloch_scan(true_game, announced, eq.value, tol)? {
            // shrink slowly enough that the walk can still reach a
            // membership-boundary corner two coarse cells away
            let mut span_theta = std::f64::consts::PI / (BLOCH_SCAN_THETA - 1) as f64;
            let mut span_phi = 2.0 * std::f64::consts::PI / BLOCH_SCAN_PHI as f64;
            let (mut c_theta, mut c_phi) = (theta, phi);
            for _ in 0..9 {
                let mut local_best: Option<(f64, f64, f64)> = None;
                for di in -2i32..=2 {
                    for dj in -2i32..=2 {
                        let t = (c_theta + di as f64 * span_theta / 2.0)
                            .clamp(0.0, std::f64::consts::PI);
                        let p = c_phi + dj as f64 * span_phi / 2.0;
                        let cand = PureState::from_bloch(t, p).projector();
                        if security_residual_b(announced, &cand, eq.value)? > tol {
                            continue;
                        }
                        let w = true_game.conditioned_operator_a(&cand)?.lambda_min()?;
                        if local_best.is_none_or(|(bw, _, _)| w < bw) {
                            local_best = Some((w, t, p));
                        }
                    }
                }
                if let Some((_, t, p)) = local_best {
                    c_theta = t;
                    c_phi = p;
                }
                span_theta *= 0.5;
                span_phi *= 0.5;
            }
            offer(
                PureState::from_bloch(c_theta, c_phi).projector(),
                &mut best_rho,
                &mut best_w,
            )?;
        }
    }
    Ok((best_rho, best_w))
}

const BLOCH_SCAN_THETA: usize = 17;
const BLOCH_SCAN_PHI: usize = 24;

/// Coarse scan of pure qubit strategies inside the victim's certified
/// equilibrium set, returning the Bloch angles minimizing the deceiver's
/// true-game payoff.
fn bloch_scan(
    true_game: &QuantumGame,
    announced: &QuantumGame,
    value: f64,
    tol: f64,
) -> Result<Option<(f64, f64)>> {
    let mut best: Option<(f64, f64, f64)> = None;
    for i in 0..BLOCH_SCAN_THETA {
        let theta = std::f64::consts::PI * i as f64 / (BLOCH_SCAN_THETA - 1) as f64;
        for j in 0..BLOCH_SCAN_PHI {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / BLOCH_SCAN_PHI as f64;
            let cand = PureState::from_bloch(theta, phi).projector();
            if security_residual_b(announced, &cand, value)? > tol {
                continue;
            }
            let w = true_game.conditioned_operator_a(&cand)?.lambda_min()?;
            if best.is_none_or(|(bw, _, _)| w < bw) {
                best = Some((w, theta, phi));
            }
        }
    }
    Ok(best.map(|(_, t, p)| (t, p)))
}

/// Evaluates one fixed deception matrix: solves the announced game, applies
/// the optimistic victim selection, best-responds on the true game, and
/// reports the constraint residuals.
pub fn evaluate_deception(
    game: &QuantumGame,
    d: &HermitianOperator,
    budget: f64,
    cfg: &SolverConfig,
) -> Result<DeceptionOutcome> {
    let announced = deceptive_game(game, d)?;
    let eq = solve_equilibrium(&announced, cfg)?;
    let (rho_b, _) = optimistic_victim(game, &announced, &eq, cfg)?;
    let (rho_a, realized) = best_response_a(game, &rho_b)?;
    let omega = eq.rho_a.clone();

    let victim_certificate =
        (eq.value - announced.conditioned_operator_a(&rho_b)?.lambda_min()?).max(0.0);
    let dual_certificate =
        (announced.conditioned_operator_b(&omega)?.lambda_max()? - eq.value).max(0.0);
    let budget_residual = (d.induced_one_norm() - budget).max(0.0);
    let mut psd = 0.0f64;
    let mut trace = 0.0f64;
    for rho in [&rho_a, &rho_b, &omega] {
        psd = psd.max((-rho.operator().lambda_min()?).max(0.0));
        trace = trace.max((rho.operator().trace_re() - 1.0).abs());
    }
    Ok(DeceptionOutcome {
        perceived_value: eq.value,
        rho_a,
        rho_b,
        omega,
        realized_payoff: realized,
        residuals: FeasibilityResiduals {
            victim_certificate,
            dual_certificate,
            budget: budget_residual,
            psd,
            trace,
        },
        equilibrium_gap: eq.duality_gap,
    })
}

/// Hermitian coordinate directions: diagonal units, then real and imaginary
/// off-diagonal pairs.
fn hermitian_basis(dim: usize) -> Vec<HermitianOperator> {
    let mut dirs = Vec::with_capacity(dim * dim);
    for k in 0..dim {
        let mut m = ComplexMatrix::zeros(dim, dim);
        m.set(k, k, Complex64::new(1.0, 0.0));
        dirs.push(HermitianOperator::new(m).unwrap());
    }
    for k in 0..dim {
        for l in (k + 1)..dim {
            let mut re = ComplexMatrix::zeros(dim, dim);
            re.set(k, l, Complex64::new(1.0, 0.0));
            re.set(l, k, Complex64::new(1.0, 0.0));
            dirs.push(HermitianOperator::new(re).unwrap());
            let mut im = ComplexMatrix::zeros(dim, dim);
            im.set(k, l, Complex64::new(0.0, 1.0));
            im.set(l, k, Complex64::new(0.0, -1.0));
            dirs.push(HermitianOperator::new(im).unwrap());
        }
    }
    dirs
}

/// Unit-1-norm motif directions seeding the restarts: diagonal sign
/// patterns shuffling payoff mass, single budget-saturating off-diagonal
/// conjugate pairs (real and imaginary) at every position, and for qubit
/// pairs the Pauli tensor products.
fn motif_directions(n_a: usize, n_b: usize) -> Vec<HermitianOperator> {
    let dim = n_a * n_b;
    let mut motifs = Vec::new();
    // diagonal sign patterns
    if dim <= 6 {
        for mask in 0..(1u32 << dim) {
            let diag: Vec<f64> = (0..dim)
                .map(|k| if mask >> k & 1 == 1 { -1.0 } else { 1.0 })
                .collect();
            motifs.push(HermitianOperator::diagonal_real(&diag));
        }
    } else {
        motifs.push(HermitianOperator::identity(dim));
        motifs.push(HermitianOperator::identity(dim).scale(-1.0));
    }
    // single conjugate pairs
    let basis = hermitian_basis(dim);
    for dir in basis.iter().skip(dim) {
        motifs.push(dir.clone());
        motifs.push(dir.scale(-1.0));
    }
    // Pauli tensor motifs for qubit games; products are generalized
    // permutation matrices, so their induced 1-norm is already 1
    if n_a == 2 && n_b == 2 {
        let paulis = [pauli_i(), pauli_x(), pauli_y(), pauli_z()];
        for (i, p) in paulis.iter().enumerate() {
            for (j, q) in paulis.iter().enumerate() {
                if i == 0 && j == 0 {
                    continue;
                }
                // diagonal products are already covered by the sign patterns
                if (i == 0 || i == 3) && (j == 0 || j == 3) {
                    continue;
                }
                let m = HermitianOperator::new(p.kron(q)).unwrap();
                motifs.push(m.clone());
                motifs.push(m.scale(-1.0));
            }
        }
    }
    motifs
}

struct Candidate {
    index: usize,
    d: HermitianOperator,
    objective: f64,
    outcome: DeceptionOutcome,
}

/// Computes the best deception found for the instance: seeded candidates
/// (structured motifs at several budget fractions plus random Hermitian
/// draws on the budget boundary) are each evaluated through the victim's
/// response, and the best few are refined by projected finite-difference
/// descent with radial budget clipping. Global optimality is not claimed;
/// the report carries certificates for everything it returns.
pub fn solve_deception(inst: &DeceptionInstance) -> Result<DeceptionResult> {
    let game = &inst.game;
    let budget = inst.budget;
    let cfg = &inst.config;
    if !budget.is_finite() || budget < 0.0 {
        return Err(Error::InvalidConfig {
            reason: format!("deception budget must be nonnegative, got {budget}"),
        });
    }
    let deadline = cfg.time_cap.map(|cap| Instant::now() + cap);
    let dim = game.dim();

    // candidate seeds, deterministic order: zero, structured motifs at the
    // configured budget fractions, then random boundary draws
    let mut seeds: Vec<HermitianOperator> = vec![HermitianOperator::zeros(dim)];
    if budget > TOL_FLOOR {
        for warm in &cfg.extra_seeds {
            if warm.dim() == dim {
                seeds.push(clip_to_budget(warm, budget));
            }
        }
        for motif in motif_directions(game.n_a(), game.n_b()) {
            let norm = motif.induced_one_norm();
            if norm <= TOL_FLOOR {
                continue;
            }
            for &f in &cfg.line_fractions {
                seeds.push(motif.scale(f * budget / norm));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.solver.seed ^ 0x5eed_cafe);
        for _ in 0..cfg.restarts {
            let draw = HermitianOperator::random_gaussian(dim, &mut rng);
            seeds.push(clip_to_budget(&draw.scale(budget.max(1.0)), budget));
        }
    }

    let mut candidates: Vec<Candidate> = Vec::new();
    let mut trace: Vec<f64> = Vec::new();
    let mut nonconverged = 0usize;
    let mut first_error: Option<Error> = None;
    let mut best_so_far = f64::INFINITY;
    for (index, d) in seeds.into_iter().enumerate() {
        if expired(deadline) && !candidates.is_empty() {
            break;
        }
        match evaluate_deception(game, &d, budget, &cfg.solver) {
            Ok(outcome) => {
                let objective = outcome.realized_payoff;
                best_so_far = best_so_far.min(objective);
                trace.push(best_so_far);
                candidates.push(Candidate { index, d, objective, outcome });
            }
            Err(e) => {
                nonconverged += 1;
                if first_error.is_none() {
                    first_error = Some(e);
                }
            }
        }
    }
    if candidates.is_empty() {
        return Err(first_error.unwrap_or(Error::SolverNonConvergence {
            best_gap: f64::INFINITY,
            iterations: 0,
        }));
    }

    // local refinement of the most promising seeds
    if budget > TOL_FLOOR && cfg.descent_candidates > 0 {
        let mut order: Vec<usize> = (0..candidates.len()).collect();
        order.sort_by(|&x, &y| {
            candidates[x]
                .objective
                .partial_cmp(&candidates[y].objective)
                .expect("finite objectives")
                .then(candidates[x].index.cmp(&candidates[y].index))
        });
        let dirs = hermitian_basis(dim);
        let fd_step = 1e-3 * budget;
        for &slot in order.iter().take(cfg.descent_candidates) {
            if expired(deadline) {
                break;
            }
            let improved = descend(
                game,
                budget,
                cfg,
                &dirs,
                fd_step,
                &candidates[slot],
                deadline,
                &mut nonconverged,
            )?;
            if let Some((d, outcome)) = improved {
                let cand = &mut candidates[slot];
                cand.d = d;
                cand.objective = outcome.realized_payoff;
                cand.outcome = outcome;
                best_so_far = best_so_far.min(cand.objective);
            }
            trace.push(best_so_far);
        }
    }

    let winner = candidates
        .iter()
        .min_by(|a, b| {
            a.objective
                .partial_cmp(&b.objective)
                .expect("finite objectives")
                .then(a.index.cmp(&b.index))
        })
        .expect("candidate list is nonempty");

    Ok(DeceptionResult {
        d_star: winner.d.clone(),
        rho_a_star: winner.outcome.rho_a.clone(),
        rho_b_star: winner.outcome.rho_b.clone(),
        omega_star: winner.outcome.omega.clone(),
        perceived_value: winner.outcome.perceived_value,
        realized_payoff: winner.outcome.realized_payoff,
        residuals: winner.outcome.residuals,
        restarts_used: candidates.len(),
        winner_restart: winner.index,
        best_objective_trace: trace,
        nonconverged_candidates: nonconverged,
    })
}

fn expired(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

/// Projected finite-difference descent on the deceiver's objective through
/// the victim's response, with radial clipping back onto the budget ball
/// after every step.
#[allow(clippy::too_many_arguments)]
fn descend(
    game: &QuantumGame,
    budget: f64,
    cfg: &DeceptionConfig,
    dirs: &[HermitianOperator],
    fd_step: f64,
    start: &Candidate,
    deadline: Option<Instant>,
    nonconverged: &mut usize,
) -> Result<Option<(HermitianOperator, DeceptionOutcome)>> {
    let improve_eps = scaled_tol(1e-7, game.scale());
    let mut d = start.d.clone();
    let mut best = start.objective;
    let mut outcome: Option<DeceptionOutcome> = None;
    let mut alpha = 0.2 * budget;
    let mut stall = 0usize;

    for _ in 0..cfg.max_alternations {
        if expired(deadline) || alpha < 1e-4 * budget || stall >= cfg.stall_limit {
            break;
        }
        let mut grad = HermitianOperator::zeros(game.dim());
        for dir in dirs {
            let probe = clip_to_budget(&d.add(&dir.scale(fd_step)), budget);
            match evaluate_deception(game, &probe, budget, &cfg.solver) {
                Ok(out) => {
                    let coeff = (out.realized_payoff - best) / fd_step;
                    if coeff != 0.0 {
                        grad = grad.add(&dir.scale(coeff));
                    }
                }
                Err(_) => *nonconverged += 1,
            }
        }
        let gnorm = grad.frobenius_norm();
        if gnorm <= TOL_FLOOR {
            break;
        }
        let cand = clip_to_budget(&d.sub(&grad.scale(alpha / gnorm)), budget);
        match evaluate_deception(game, &cand, budget, &cfg.solver) {
            Ok(out) if out.realized_payoff < best - improve_eps => {
                best = out.realized_payoff;
                d = cand;
                outcome = Some(out);
                alpha = (alpha * 1.4).min(budget);
                stall = 0;
            }
            Ok(_) => {
                alpha *= 0.5;
                stall += 1;
            }
            Err(_) => {
                *nonconverged += 1;
                alpha *= 0.5;
                stall += 1;
            }
        }
    }
    Ok(outcome.map(|o| (d, o)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{canned_game, classical_embed, CannedGame};

    #[test]
    fn deceptive_game_zero_perturbation() {
        let g = canned_game(CannedGame::Pure);
        let d = HermitianOperator::zeros(4);
        let announced = deceptive_game(&g, &d).unwrap();
        assert!(
            announced
                .hamiltonian()
                .as_matrix()
                .max_abs_diff(g.hamiltonian().as_matrix())
                == 0.0
        );
    }

    #[test]
    fn deceptive_game_reported_diagonal_perturbation() {
        let g = canned_game(CannedGame::Diagonal);
        let d = HermitianOperator::diagonal_real(&[19.5, 19.5, -20.0, -20.0]);
        let announced = deceptive_game(&g, &d).unwrap();
        let expected = ComplexMatrix::diagonal_real(&[119.5, -80.5, -120.0, 80.0]);
        assert!(announced.hamiltonian().as_matrix().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn deceptive_game_dimension_mismatch() {
        let g = canned_game(CannedGame::Diagonal);
        let d = HermitianOperator::zeros(3);
        assert!(deceptive_game(&g, &d).is_err());
    }

    #[test]
    fn clip_within_budget_is_identity() {
        let d = HermitianOperator::diagonal_real(&[25.0, -25.0, 0.0, 0.0]);
        let clipped = clip_to_budget(&d, 100.0);
        assert!(clipped.as_matrix().max_abs_diff(d.as_matrix()) == 0.0);
    }

    #[test]
    fn clip_scales_radially() {
        let d = HermitianOperator::identity(4).scale(40.0);
        let clipped = clip_to_budget(&d, 20.0);
        assert!(clipped.as_matrix().max_abs_diff(&ComplexMatrix::identity(4).scale_re(20.0)) < 1e-12);

        let d2 = HermitianOperator::diagonal_real(&[40.0, -40.0, 0.0, 0.0]);
        let clipped2 = clip_to_budget(&d2, 20.0);
        let expected = ComplexMatrix::diagonal_real(&[20.0, -20.0, 0.0, 0.0]);
        assert!(clipped2.as_matrix().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn naive_response_diagonal_game() {
        let g = canned_game(CannedGame::Diagonal);
        let rho = naive_victim_response(&g, &SolverConfig::default()).unwrap();
        assert!((rho.entry(0, 0).re - 0.5).abs() < 0.02);
        assert!((rho.entry(1, 1).re - 0.5).abs() < 0.02);
    }

    #[test]
    fn naive_response_to_reported_deception_sees_small_value() {
        let g = canned_game(CannedGame::Diagonal);
        let d = HermitianOperator::diagonal_real(&[19.5, 19.5, -20.0, -20.0]);
        let announced = deceptive_game(&g, &d).unwrap();
        let eq = solve_equilibrium(&announced, &SolverConfig::default()).unwrap();
        assert!(eq.value.abs() <= 1.0, "perceived value {}", eq.value);
    }

    #[test]
    fn naive_response_constant_game_is_maximally_mixed() {
        let op = HermitianOperator::identity(4).scale(3.0);
        let g = QuantumGame::new(2, 2, op, "constant").unwrap();
        let rho = naive_victim_response(&g, &SolverConfig::default()).unwrap();
        assert!(
            rho.operator()
                .as_matrix()
                .max_abs_diff(DensityMatrix::maximally_mixed(2).operator().as_matrix())
                < 1e-9
        );
    }

    #[test]
    fn robust_equals_naive_shifted() {
        let g = canned_game(CannedGame::Diagonal);
        let cfg = SolverConfig::default();
        let naive = solve_equilibrium(&g, &cfg).unwrap();
        let (rho_zero, v_zero) = robust_victim_response(&g, 0.0, &cfg).unwrap();
        assert!((v_zero - naive.value).abs() < 1e-12);
        assert!(
            rho_zero
                .operator()
                .as_matrix()
                .max_abs_diff(naive.rho_b.operator().as_matrix())
                < 1e-12
        );
        let (rho, v) = robust_victim_response(&g, 20.0, &cfg).unwrap();
        assert!((v - (naive.value - 20.0)).abs() < 2.0 * scaled_tol(cfg.rel_tolerance, g.scale()));
        assert!(
            rho.operator()
                .as_matrix()
                .max_abs_diff(naive.rho_b.operator().as_matrix())
                < 1e-12
        );
    }

    #[test]
    fn robust_constant_game() {
        let op = HermitianOperator::identity(4).scale(6.0);
        let g = QuantumGame::new(2, 2, op, "constant").unwrap();
        let (_, v) = robust_victim_response(&g, 10.0, &SolverConfig::default()).unwrap();
        assert!((v - (6.0 - 10.0)).abs() < 1e-6);
    }

    #[test]
    fn identity_deception_rayleigh_quotient_is_budget() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let d = HermitianOperator::identity(4).scale(5.0);
        for _ in 0..25 {
            let psi = PureState::random(4, &mut rng);
            let q = rayleigh_quotient(&d, psi.amplitudes());
            assert!((q - 5.0).abs() < 1e-12);
        }
    }

    #[test]
    fn theorem_report_zero_hamiltonian() {
        let g = classical_embed(2, 2, &[0.0; 4], 1.0).unwrap();
        let report = verify_theorem1(&g, 5.0, &SolverConfig::default(), 10).unwrap();
        assert!(report.passed, "{report}");
        assert!(report.naive_value.abs() < 1e-9);
        assert!((report.robust_value + 5.0).abs() < 1e-6);
    }

    #[test]
    fn theorem_report_pure_game() {
        let g = canned_game(CannedGame::Pure);
        let report = verify_theorem1(&g, 20.0, &SolverConfig::default(), 20).unwrap();
        assert!(report.passed, "{report}");
        assert!(
            (report.naive_value - report.robust_value - 20.0).abs() < 1e-3 * g.scale(),
            "{report}"
        );
    }

    #[test]
    fn zero_budget_returns_zero_deception() {
        let g = canned_game(CannedGame::Diagonal);
        let inst = DeceptionInstance::new(g.clone(), 0.0, DeceptionConfig::default()).unwrap();
        let res = solve_deception(&inst).unwrap();
        assert_eq!(res.d_star.frobenius_norm(), 0.0);
        let tol = scaled_tol(2e-4, g.scale());
        assert!(res.perceived_value.abs() <= tol);
        assert!(res.realized_payoff.abs() <= tol, "realized {}", res.realized_payoff);
        assert!(res.residuals.max() <= scaled_tol(1e-4, g.scale()));
    }

    #[test]
    fn negative_budget_rejected() {
        let g = canned_game(CannedGame::Diagonal);
        assert!(DeceptionInstance::new(g, -1.0, DeceptionConfig::default()).is_err());
    }

    #[test]
    fn diagonal_game_small_budget_reaches_minus_delta() {
        let g = canned_game(CannedGame::Diagonal);
        let cfg = DeceptionConfig {
            restarts: 4,
            descent_candidates: 2,
            ..DeceptionConfig::default()
        };
        let inst = DeceptionInstance::new(g.clone(), 20.0, cfg).unwrap();
        let res = solve_deception(&inst).unwrap();
        assert!(res.realized_payoff <= -19.0, "realized {}", res.realized_payoff);
        assert!(res.d_star.induced_one_norm() <= 20.0 + BUDGET_SLACK);
        assert!(res.residuals.max() <= scaled_tol(1e-4, g.scale()) + 1e-9);
        // trace is monotone non-increasing
        for w in res.best_objective_trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
    }
}
