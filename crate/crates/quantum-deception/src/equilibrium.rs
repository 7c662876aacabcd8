//! Security policies and game values for zero-sum quantum games.
//!
//! The solver iterates a matrix-multiplicative-weights update: each player
//! maintains a density matrix as the normalized matrix exponential of the
//! accumulated (negated, for the minimizer) conditioned operators. Averaged
//! and last iterates are scored periodically through the operator-inequality
//! certificates, and the best certified pair is returned. A Bloch-sphere grid
//! search over product pure states provides an independent bracketing oracle
//! for qubit games.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::game::{conditioned_a_into, conditioned_b_into, DensityMatrix, PureState, QuantumGame};
use crate::linalg::{scaled_tol, ComplexMatrix, HermitianOperator, C_ZERO, TOL_FLOOR};

/// Learning-rate schedule for the multiplicative-weights iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Schedule {
    /// Plain averaged updates with `eta_t = eta0 / sqrt(t)`.
    InverseSqrt,
    /// Constant `eta0` with a one-step extrapolation (optimistic update);
    /// converges markedly faster on bilinear saddle points.
    OptimisticConstant,
}

/// Solver knobs. `rel_tolerance` and `eta0_scale` are relative to the
/// Frobenius norm of the payoff Hamiltonian.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub max_iterations: usize,
    pub rel_tolerance: f64,
    pub schedule: Schedule,
    pub eta0_scale: f64,
    pub grid_resolution: usize,
    pub seed: u64,
    pub check_interval: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iterations: 200_000,
            rel_tolerance: 1e-4,
            schedule: Schedule::OptimisticConstant,
            eta0_scale: 0.5,
            grid_resolution: 64,
            seed: 0,
            check_interval: 100,
        }
    }
}

impl SolverConfig {
    pub fn with_rel_tolerance(mut self, rel: f64) -> Self {
        self.rel_tolerance = rel;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 || !(self.rel_tolerance > 0.0) || !(self.eta0_scale > 0.0) {
            return Err(Error::InvalidConfig {
                reason: "solver needs max_iterations >= 1 and positive tolerance/learning rate".into(),
            });
        }
        Ok(())
    }
}

/// Residuals of the operator inequalities certifying an equilibrium pair:
/// `lower = lambda_min(K_A(rho_B)) - u` (must be >= -tol) and
/// `upper = lambda_max(K_B(rho_A)) - u` (must be <= tol).
#[derive(Debug, Clone, Copy)]
pub struct Certificate {
    pub lower_residual: f64,
    pub upper_residual: f64,
}

impl Certificate {
    pub fn passes(&self, tol: f64) -> bool {
        self.lower_residual >= -tol && self.upper_residual <= tol
    }

    pub fn worst(&self) -> f64 {
        (-self.lower_residual).max(self.upper_residual).max(0.0)
    }
}

/// Outcome of an equilibrium solve.
#[derive(Debug, Clone)]
pub struct EquilibriumResult {
    /// Game value estimate (midpoint of the certified bounds).
    pub value: f64,
    pub rho_a: DensityMatrix,
    pub rho_b: DensityMatrix,
    /// Certified gap `lambda_max(K_B(rho_A)) - lambda_min(K_A(rho_B)) >= 0`.
    pub duality_gap: f64,
    pub iterations: usize,
    pub certificate: Certificate,
    /// Number of gap checks where an extreme eigenvalue was degenerate.
    pub tie_events: usize,
}

/// Best response of the minimizer to a fixed opponent strategy: the projector
/// onto an eigenvector of the smallest eigenvalue of `K_A(rho_B)`. Degenerate
/// ties resolve to the lowest-index eigenvector of the deterministic Jacobi
/// ordering.
pub fn best_response_a(game: &QuantumGame, rho_b: &DensityMatrix) -> Result<(DensityMatrix, f64)> {
    let k = game.conditioned_operator_a(rho_b)?;
    let dec = k.eig()?;
    let value = dec.eigenvalues[0];
    let state = PureState::new(dec.eigenvector(0)).expect("eigenvectors are unit vectors");
    Ok((state.projector(), value))
}

/// Best response of the maximizer: projector for the largest eigenvalue of
/// `K_B(rho_A)`.
pub fn best_response_b(game: &QuantumGame, rho_a: &DensityMatrix) -> Result<(DensityMatrix, f64)> {
    let k = game.conditioned_operator_b(rho_a)?;
    let dec = k.eig()?;
    let n = dec.eigenvalues.len();
    let value = dec.eigenvalues[n - 1];
    // first column attaining the maximum keeps tie-breaking deterministic
    let first = dec
        .eigenvalues
        .iter()
        .position(|&l| l == value)
        .unwrap_or(n - 1);
    let state = PureState::new(dec.eigenvector(first)).expect("eigenvectors are unit vectors");
    Ok((state.projector(), value))
}

/// `u - lambda_min(K_A(rho_B))`; `rho_B` is a security policy for value `u`
/// when this is <= tol.
pub fn security_residual_b(game: &QuantumGame, rho_b: &DensityMatrix, u: f64) -> Result<f64> {
    Ok(u - game.conditioned_operator_a(rho_b)?.lambda_min()?)
}

/// `lambda_max(K_B(rho_A)) - u`; `rho_A` is a security policy for value `u`
/// when this is <= tol.
pub fn security_residual_a(game: &QuantumGame, rho_a: &DensityMatrix, u: f64) -> Result<f64> {
    Ok(game.conditioned_operator_b(rho_a)?.lambda_max()? - u)
}

pub fn is_security_policy_b(game: &QuantumGame, rho_b: &DensityMatrix, u: f64, tol: f64) -> Result<bool> {
    Ok(security_residual_b(game, rho_b, u)? <= tol)
}

pub fn is_security_policy_a(game: &QuantumGame, rho_a: &DensityMatrix, u: f64, tol: f64) -> Result<bool> {
    Ok(security_residual_a(game, rho_a, u)? <= tol)
}

struct BoundTracker {
    best_lower: f64,
    best_upper: f64,
    rho_a: Option<DensityMatrix>,
    rho_b: Option<DensityMatrix>,
    tie_events: usize,
}

impl BoundTracker {
    fn new() -> Self {
        Self {
            best_lower: f64::NEG_INFINITY,
            best_upper: f64::INFINITY,
            rho_a: None,
            rho_b: None,
            tie_events: 0,
        }
    }

    fn gap(&self) -> f64 {
        self.best_upper - self.best_lower
    }

    /// Scores a candidate pair through the certificate eigenvalues and keeps
    /// the strategies achieving the tightest bounds so far.
    fn offer(&mut self, game: &QuantumGame, rho_a: DensityMatrix, rho_b: DensityMatrix, tie_tol: f64) -> Result<()> {
        let dec_b = game.conditioned_operator_a(&rho_b)?.eig()?;
        let lower = dec_b.eigenvalues[0];
        if dec_b.min_multiplicity(tie_tol) > 1 {
            self.tie_events += 1;
        }
        if lower > self.best_lower {
            self.best_lower = lower;
            self.rho_b = Some(rho_b);
        }
        let dec_a = game.conditioned_operator_b(&rho_a)?.eig()?;
        let n = dec_a.eigenvalues.len();
        let upper = dec_a.eigenvalues[n - 1];
        if dec_a.max_multiplicity(tie_tol) > 1 {
            self.tie_events += 1;
        }
        if upper < self.best_upper {
            self.best_upper = upper;
            self.rho_a = Some(rho_a);
        }
        Ok(())
    }
}

fn density_from_slice(dim: usize, data: &[Complex64]) -> Result<DensityMatrix> {
    let m = ComplexMatrix::new(dim, dim, data.to_vec())?;
    DensityMatrix::new(HermitianOperator::new(m)?)
}

fn gibbs_from_slice(dim: usize, exponent: &[Complex64]) -> Result<HermitianOperator> {
    let m = ComplexMatrix::new(dim, dim, exponent.to_vec())?;
    HermitianOperator::new(m)?.normalized_exp()
}

fn add_scaled(dst: &mut [Complex64], src: &[Complex64], factor: f64) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += s * factor;
    }
}

/// Computes the game value and a certified security-policy pair.
///
/// Success requires the certified duality gap to close below
/// `rel_tolerance * ||H||_F`; otherwise the best gap achieved is reported in
/// the error.
pub fn solve_equilibrium(game: &QuantumGame, cfg: &SolverConfig) -> Result<EquilibriumResult> {
    cfg.validate()?;
    let n_a = game.n_a();
    let n_b = game.n_b();
    let scale = game.scale();
    if scale <= TOL_FLOOR {
        // zero Hamiltonian: every pair is an equilibrium at value 0
        return Ok(EquilibriumResult {
            value: 0.0,
            rho_a: DensityMatrix::maximally_mixed(n_a),
            rho_b: DensityMatrix::maximally_mixed(n_b),
            duality_gap: 0.0,
            iterations: 0,
            certificate: Certificate { lower_residual: 0.0, upper_residual: 0.0 },
            tie_events: 0,
        });
    }
    let tol = scaled_tol(cfg.rel_tolerance, scale);
    let tie_tol = scaled_tol(1e-10, scale);
    let eta0 = cfg.eta0_scale / scale;
    let h = game.hamiltonian().as_matrix();

    let mut g_a = vec![C_ZERO; n_a * n_a];
    let mut g_b = vec![C_ZERO; n_b * n_b];
    let mut pred_a = vec![C_ZERO; n_a * n_a];
    let mut pred_b = vec![C_ZERO; n_b * n_b];
    let mut k_a = vec![C_ZERO; n_a * n_a];
    let mut k_b = vec![C_ZERO; n_b * n_b];
    let mut exp_a = vec![C_ZERO; n_a * n_a];
    let mut exp_b = vec![C_ZERO; n_b * n_b];
    let mut sum_a = vec![C_ZERO; n_a * n_a];
    let mut sum_b = vec![C_ZERO; n_b * n_b];
    let mut avg_a = vec![C_ZERO; n_a * n_a];
    let mut avg_b = vec![C_ZERO; n_b * n_b];

    let mut tracker = BoundTracker::new();
    let check = cfg.check_interval.max(1);

    for t in 1..=cfg.max_iterations {
        let eta = match cfg.schedule {
            Schedule::InverseSqrt => eta0 / (t as f64).sqrt(),
            Schedule::OptimisticConstant => eta0,
        };
        // exponent_A = -(G_A + eta * prediction); minimizer weights low
        // eigenvalues, maximizer the mirror image
        for (dst, (g, p)) in exp_a.iter_mut().zip(g_a.iter().zip(&pred_a)) {
            *dst = -(g + p * eta);
        }
        for (dst, (g, p)) in exp_b.iter_mut().zip(g_b.iter().zip(&pred_b)) {
            *dst = g + p * eta;
        }
        let rho_a = gibbs_from_slice(n_a, &exp_a)?;
        let rho_b = gibbs_from_slice(n_b, &exp_b)?;

        conditioned_a_into(h, n_a, n_b, rho_b.as_matrix(), &mut k_a);
        conditioned_b_into(h, n_a, n_b, rho_a.as_matrix(), &mut k_b);
        add_scaled(&mut g_a, &k_a, eta);
        add_scaled(&mut g_b, &k_b, eta);
        if cfg.schedule == Schedule::OptimisticConstant {
            pred_a.copy_from_slice(&k_a);
            pred_b.copy_from_slice(&k_b);
        }
        add_scaled(&mut sum_a, rho_a.as_matrix().data(), 1.0);
        add_scaled(&mut sum_b, rho_b.as_matrix().data(), 1.0);

        if t % check == 0 || t == cfg.max_iterations {
            let inv = 1.0 / t as f64;
            avg_a.copy_from_slice(&sum_a);
            avg_b.copy_from_slice(&sum_b);
            for v in avg_a.iter_mut() {
                *v *= inv;
            }
            for v in avg_b.iter_mut() {
                *v *= inv;
            }
            tracker.offer(
                game,
                density_from_slice(n_a, &avg_a)?,
                density_from_slice(n_b, &avg_b)?,
                tie_tol,
            )?;
            tracker.offer(
                game,
                DensityMatrix::new(rho_a.clone())?,
                DensityMatrix::new(rho_b.clone())?,
                tie_tol,
            )?;
            if tracker.gap() <= tol {
                return finalize(tracker, t);
            }
        }
    }

    Err(Error::SolverNonConvergence {
        best_gap: tracker.gap(),
        iterations: cfg.max_iterations,
    })
}

fn finalize(tracker: BoundTracker, iterations: usize) -> Result<EquilibriumResult> {
    let rho_a = tracker.rho_a.expect("tracker holds a minimizer strategy");
    let rho_b = tracker.rho_b.expect("tracker holds a maximizer strategy");
    let value = 0.5 * (tracker.best_lower + tracker.best_upper);
    Ok(EquilibriumResult {
        value,
        certificate: Certificate {
            lower_residual: tracker.best_lower - value,
            upper_residual: tracker.best_upper - value,
        },
        duality_gap: tracker.best_upper - tracker.best_lower,
        iterations,
        tie_events: tracker.tie_events,
        rho_a,
        rho_b,
    })
}

/// Discretization step of the Bloch grid used by [`brute_force_value`].
pub fn bloch_grid_spacing(resolution: usize) -> f64 {
    let r = resolution.max(2) as f64;
    (2.0 * std::f64::consts::PI / r).max(std::f64::consts::PI / (r - 1.0))
}

/// Grid-search bracket for the value of a qubit game, independent of the
/// iterative machinery: enumerates product pure states
/// `psi(theta, phi) = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>` on a
/// `resolution x resolution` Bloch grid per player and reports
/// `(max_B min_A, min_A max_B)` of the pure payoff. Pure-state grids suffice
/// because best responses are extreme eigenvectors, hence rank one.
pub fn brute_force_value(game: &QuantumGame, resolution: usize) -> Result<(f64, f64)> {
    if game.n_a() != 2 || game.n_b() != 2 {
        return Err(Error::DimensionMismatch {
            context: "brute-force oracle (qubit games only)",
            expected: 2,
            found: game.n_a().max(game.n_b()),
        });
    }
    if resolution < 2 {
        return Err(Error::InvalidConfig {
            reason: "grid resolution must be at least 2".into(),
        });
    }
    let h = game.hamiltonian().as_matrix();
    let hd = h.data();

    // Bloch grid amplitudes and the per-state quadratic-form pieces
    let r = resolution;
    let mut amp0 = Vec::with_capacity(r * r);
    let mut amp1 = Vec::with_capacity(r * r);
    for i in 0..r {
        let theta = std::f64::consts::PI * i as f64 / (r - 1) as f64;
        let (c0, s0) = ((0.5 * theta).cos(), (0.5 * theta).sin());
        for j in 0..r {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / r as f64;
            amp0.push(Complex64::new(c0, 0.0));
            amp1.push(Complex64::from_polar(s0, phi));
        }
    }
    let count = amp0.len();
    let p0: Vec<f64> = amp0.iter().map(|a| a.norm_sqr()).collect();
    let p1: Vec<f64> = amp1.iter().map(|a| a.norm_sqr()).collect();
    let cross: Vec<Complex64> = amp0
        .iter()
        .zip(&amp1)
        .map(|(a0, a1)| a0.conj() * a1)
        .collect();

    let idx = |a: usize, b: usize| a * 2 + b;
    // conditioned 2x2 form for the opposing player, raw arithmetic on H
    let form_b = |a0: Complex64, a1: Complex64, b: usize, bp: usize| -> Complex64 {
        a0.conj() * a0 * hd[idx(0, b) * 4 + idx(0, bp)]
            + a0.conj() * a1 * hd[idx(0, b) * 4 + idx(1, bp)]
            + a1.conj() * a0 * hd[idx(1, b) * 4 + idx(0, bp)]
            + a1.conj() * a1 * hd[idx(1, b) * 4 + idx(1, bp)]
    };
    let form_a = |b0: Complex64, b1: Complex64, a: usize, ap: usize| -> Complex64 {
        b0.conj() * b0 * hd[idx(a, 0) * 4 + idx(ap, 0)]
            + b0.conj() * b1 * hd[idx(a, 0) * 4 + idx(ap, 1)]
            + b1.conj() * b0 * hd[idx(a, 1) * 4 + idx(ap, 0)]
            + b1.conj() * b1 * hd[idx(a, 1) * 4 + idx(ap, 1)]
    };

    let mut upper = f64::INFINITY;
    for s in 0..count {
        let m00 = form_b(amp0[s], amp1[s], 0, 0).re;
        let m11 = form_b(amp0[s], amp1[s], 1, 1).re;
        let m01 = form_b(amp0[s], amp1[s], 0, 1);
        let mut inner_max = f64::NEG_INFINITY;
        for t in 0..count {
            let v = p0[t] * m00 + p1[t] * m11 + 2.0 * (m01.re * cross[t].re - m01.im * cross[t].im);
            if v > inner_max {
                inner_max = v;
            }
        }
        if inner_max < upper {
            upper = inner_max;
        }
    }

    let mut lower = f64::NEG_INFINITY;
    for t in 0..count {
        let m00 = form_a(amp0[t], amp1[t], 0, 0).re;
        let m11 = form_a(amp0[t], amp1[t], 1, 1).re;
        let m01 = form_a(amp0[t], amp1[t], 0, 1);
        let mut inner_min = f64::INFINITY;
        for s in 0..count {
            let v = p0[s] * m00 + p1[s] * m11 + 2.0 * (m01.re * cross[s].re - m01.im * cross[s].im);
            if v < inner_min {
                inner_min = v;
            }
        }
        if inner_min > lower {
            lower = inner_min;
        }
    }

    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::PureState;
    use crate::hamiltonian::{canned_game, classical_embed, CannedGame};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn best_response_a_diagonal() {
        let g = canned_game(CannedGame::Diagonal);
        let rho_b = PureState::basis(2, 0).projector();
        let (rho_a, value) = best_response_a(&g, &rho_b).unwrap();
        assert!((value + 100.0).abs() < 1e-10);
        assert!((rho_a.entry(1, 1).re - 1.0).abs() < 1e-10);
        assert!((g.payoff(&rho_a, &rho_b).unwrap() - value).abs() < 1e-9);
    }

    #[test]
    fn best_response_a_pure_mixed_opponent() {
        let g = canned_game(CannedGame::Pure);
        let mm = DensityMatrix::maximally_mixed(2);
        let (_, value) = best_response_a(&g, &mm).unwrap();
        assert!(value.abs() < 1e-10);
    }

    #[test]
    fn best_response_is_a_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let h = HermitianOperator::random_gaussian(4, &mut rng);
        let g = QuantumGame::new(2, 2, h, "random").unwrap();
        let rho_b = DensityMatrix::random(2, &mut rng);
        let (rho_a, value) = best_response_a(&g, &rho_b).unwrap();
        assert!((g.payoff(&rho_a, &rho_b).unwrap() - value).abs() < 1e-9);
        for _ in 0..100 {
            let sigma = DensityMatrix::random(2, &mut rng);
            assert!(value <= g.payoff(&sigma, &rho_b).unwrap() + 1e-9);
        }
    }

    #[test]
    fn best_response_b_mirrors() {
        let g = canned_game(CannedGame::Diagonal);
        let rho_a = PureState::basis(2, 0).projector();
        let (rho_b, value) = best_response_b(&g, &rho_a).unwrap();
        assert!((value - 100.0).abs() < 1e-10);
        assert!((rho_b.entry(0, 0).re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn solve_diagonal_game() {
        let g = canned_game(CannedGame::Diagonal);
        let cfg = SolverConfig::default();
        let res = solve_equilibrium(&g, &cfg).unwrap();
        let tol = scaled_tol(cfg.rel_tolerance, g.scale());
        assert!(res.value.abs() <= tol, "value {}", res.value);
        assert!(res.duality_gap <= tol);
        assert!(res.certificate.passes(tol));
        // matching-pennies strategies: uniform diagonal
        assert!((res.rho_b.entry(0, 0).re - 0.5).abs() < 0.02);
        assert!((res.rho_b.entry(1, 1).re - 0.5).abs() < 0.02);
    }

    #[test]
    fn solve_pure_game() {
        let g = canned_game(CannedGame::Pure);
        let cfg = SolverConfig::default();
        let res = solve_equilibrium(&g, &cfg).unwrap();
        let tol = scaled_tol(cfg.rel_tolerance, g.scale());
        assert!(res.value.abs() <= tol, "value {}", res.value);
    }

    #[test]
    fn solve_quantum_game_reference_value() {
        // oracle-derived reference: the {I, Z} game has value 100
        let g = canned_game(CannedGame::Quantum);
        let cfg = SolverConfig::default();
        let res = solve_equilibrium(&g, &cfg).unwrap();
        let tol = scaled_tol(cfg.rel_tolerance, g.scale());
        assert!((res.value - 100.0).abs() <= tol, "value {}", res.value);
    }

    #[test]
    fn solve_zero_hamiltonian() {
        let g = classical_embed(2, 2, &[0.0; 4], 1.0).unwrap();
        let res = solve_equilibrium(&g, &SolverConfig::default()).unwrap();
        assert_eq!(res.value, 0.0);
        assert_eq!(res.duality_gap, 0.0);
    }

    #[test]
    fn solve_constant_game_returns_maximally_mixed() {
        let op = HermitianOperator::identity(4).scale(7.0);
        let g = QuantumGame::new(2, 2, op, "constant").unwrap();
        let res = solve_equilibrium(&g, &SolverConfig::default()).unwrap();
        assert!((res.value - 7.0).abs() < 1e-6);
        assert!(res.rho_b.operator().as_matrix().max_abs_diff(
            DensityMatrix::maximally_mixed(2).operator().as_matrix()
        ) < 1e-9);
    }

    #[test]
    fn brute_force_diagonal_brackets_zero() {
        let g = canned_game(CannedGame::Diagonal);
        let (lower, upper) = brute_force_value(&g, 64).unwrap();
        assert!(lower <= 0.0 && 0.0 <= upper, "bracket [{lower}, {upper}]");
        assert!(upper - lower < 5.0, "width {}", upper - lower);
    }

    #[test]
    fn brute_force_zero_game() {
        let g = classical_embed(2, 2, &[0.0; 4], 1.0).unwrap();
        let (lower, upper) = brute_force_value(&g, 16).unwrap();
        assert_eq!((lower, upper), (0.0, 0.0));
    }

    #[test]
    fn brute_force_quantum_reference_bracket() {
        // frozen reference for the {I, Z} game: value 100 inside a narrow
        // bracket at resolution 64
        let g = canned_game(CannedGame::Quantum);
        let (lower, upper) = brute_force_value(&g, 64).unwrap();
        let slack = g.scale() * bloch_grid_spacing(64);
        assert!(
            lower - slack <= 100.0 && 100.0 <= upper + slack,
            "bracket [{lower}, {upper}]"
        );
        assert!(upper - lower < 6.0, "width {}", upper - lower);
    }

    #[test]
    fn brute_force_rejects_non_qubit() {
        let g = classical_embed(3, 2, &[1.0; 6], 1.0).unwrap();
        assert!(brute_force_value(&g, 8).is_err());
    }

    #[test]
    fn solver_value_within_oracle_bracket() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let cfg = SolverConfig::default();
        for _ in 0..5 {
            let h = HermitianOperator::random_gaussian(4, &mut rng).scale(100.0 * rng.gen_range(0.2..1.0));
            let g = QuantumGame::new(2, 2, h, "random").unwrap();
            let res = solve_equilibrium(&g, &cfg).unwrap();
            let (lower, upper) = brute_force_value(&g, 64).unwrap();
            let slack = g.scale() * bloch_grid_spacing(64);
            assert!(
                res.value >= lower - slack && res.value <= upper + slack,
                "value {} outside [{lower}, {upper}] +- {slack}",
                res.value
            );
        }
    }

    #[test]
    fn shift_and_scale_equivariance() {
        let g = canned_game(CannedGame::Quantum);
        let cfg = SolverConfig::default();
        let base = solve_equilibrium(&g, &cfg).unwrap();
        let shifted = solve_equilibrium(&g.shifted(35.0), &cfg).unwrap();
        assert!((shifted.value - base.value - 35.0).abs() < 2.0 * scaled_tol(cfg.rel_tolerance, g.scale()) + 35.0 * 1e-4);
        let scaled = solve_equilibrium(&g.scaled(0.25), &cfg).unwrap();
        assert!((scaled.value - 0.25 * base.value).abs() < 2.0 * scaled_tol(cfg.rel_tolerance, g.scale()));
        // strategies carry over through the certificates
        let tol = scaled_tol(10.0 * cfg.rel_tolerance, g.scale());
        assert!(is_security_policy_b(&g.shifted(35.0), &base.rho_b, base.value + 35.0, tol).unwrap());
        assert!(is_security_policy_a(&g.scaled(0.25), &base.rho_a, 0.25 * base.value, tol).unwrap());
    }
}
