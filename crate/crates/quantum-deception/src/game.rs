//! Two-player zero-sum quantum games: density-matrix strategies, payoff
//! evaluation, and the conditioned payoff operators each player faces after
//! the other factor is traced out.
//!
//! Player A is the minimizer and player B the maximizer throughout; use
//! [`QuantumGame::negated`] to swap roles.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{scaled_tol, ComplexMatrix, HermitianOperator, C_ZERO};

/// Loose admission bound for density-matrix inputs; anything inside it is
/// repaired (PSD projection, trace renormalization) instead of rejected, so
/// solver iterates with rounding-level defects pass validation.
pub const DENSITY_REPAIR_TOL: f64 = 1e-7;

/// Bound the repaired operator must meet.
pub const DENSITY_VALID_TOL: f64 = 1e-9;

/// Unit-norm complex state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Normalizes the given amplitudes; rejects near-zero vectors.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm < 1e-12 {
            return Err(Error::InvalidState {
                reason: format!("cannot normalize vector with norm {norm:.3e}"),
            });
        }
        let amplitudes = amplitudes.into_iter().map(|c| c / norm).collect();
        Ok(Self { amplitudes })
    }

    /// Computational basis state `|k>`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim);
        let mut amplitudes = vec![C_ZERO; dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    /// Qubit state `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
    pub fn from_bloch(theta: f64, phi: f64) -> Self {
        let half = 0.5 * theta;
        Self {
            amplitudes: vec![
                Complex64::new(half.cos(), 0.0),
                Complex64::from_polar(half.sin(), phi),
            ],
        }
    }

    pub fn random(dim: usize, rng: &mut impl Rng) -> Self {
        loop {
            let v = ComplexMatrix::random_gaussian(dim, 1, rng);
            if let Ok(state) = Self::new(v.data().to_vec()) {
                return state;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Tensor product `|self> (x) |other>`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Self { amplitudes }
    }

    /// Rank-one projector `|self><self|`.
    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix::pure(self)
    }
}

/// Positive-semidefinite, trace-one Hermitian operator: a (possibly mixed)
/// quantum strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    operator: HermitianOperator,
}

impl DensityMatrix {
    /// Validates and, when needed, repairs the operator: inputs with
    /// `lambda_min >= -1e-7` and `|tr - 1| <= 1e-7` are PSD-projected and
    /// trace-renormalized; anything worse is rejected.
    pub fn new(operator: HermitianOperator) -> Result<Self> {
        let tr = operator.trace_re();
        if !tr.is_finite() || (tr - 1.0).abs() > DENSITY_REPAIR_TOL {
            return Err(Error::InvalidDensity {
                reason: format!("trace {tr:.12} is not 1"),
            });
        }
        let lmin = operator.lambda_min()?;
        if lmin < -DENSITY_REPAIR_TOL {
            return Err(Error::InvalidDensity {
                reason: format!("minimum eigenvalue {lmin:.3e} is negative"),
            });
        }
        let mut op = operator;
        if lmin < 0.0 || (tr - 1.0).abs() > DENSITY_VALID_TOL {
            if lmin < 0.0 {
                op = op.project_psd()?;
            }
            let tr2 = op.trace_re();
            if tr2 <= 0.0 {
                return Err(Error::InvalidDensity {
                    reason: "trace vanished after projection".into(),
                });
            }
            op = op.scale(1.0 / tr2);
        }
        Ok(Self { operator: op })
    }

    pub fn pure(state: &PureState) -> Self {
        let n = state.dim();
        let amps = state.amplitudes();
        let m = ComplexMatrix::from_fn(n, n, |i, j| amps[i] * amps[j].conj());
        Self {
            operator: HermitianOperator::new(m).expect("projector is square and finite"),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            operator: HermitianOperator::identity(dim).scale(1.0 / dim as f64),
        }
    }

    /// Full-rank random density matrix `G G^dag / tr(G G^dag)`.
    pub fn random(dim: usize, rng: &mut impl Rng) -> Self {
        let g = ComplexMatrix::random_gaussian(dim, dim, rng);
        let w = g.matmul(&g.adjoint());
        let tr = w.trace().re;
        let op = HermitianOperator::new(w.scale_re(1.0 / tr)).expect("Wishart matrix is Hermitian");
        Self { operator: op }
    }

    /// Convex combination `alpha * self + (1 - alpha) * other`.
    pub fn mix(&self, other: &Self, alpha: f64) -> Self {
        assert!((0.0..=1.0).contains(&alpha));
        let op = self
            .operator
            .scale(alpha)
            .add(&other.operator.scale(1.0 - alpha));
        Self { operator: op }
    }

    pub fn dim(&self) -> usize {
        self.operator.dim()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.operator
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.operator.entry(i, j)
    }
}

/// A two-player zero-sum quantum game: a Hermitian payoff Hamiltonian on the
/// joint space together with the subsystem dimensions. Player A (first
/// factor) minimizes `tr((rho_A (x) rho_B) H)`; player B maximizes it.
#[derive(Debug, Clone)]
pub struct QuantumGame {
    n_a: usize,
    n_b: usize,
    hamiltonian: HermitianOperator,
    label: String,
    h_norm: f64,
}

impl QuantumGame {
    pub fn new(
        n_a: usize,
        n_b: usize,
        hamiltonian: HermitianOperator,
        label: impl Into<String>,
    ) -> Result<Self> {
        if n_a == 0 || n_b == 0 || hamiltonian.dim() != n_a * n_b {
            return Err(Error::DimensionMismatch {
                context: "game construction",
                expected: n_a * n_b,
                found: hamiltonian.dim(),
            });
        }
        let h_norm = hamiltonian.frobenius_norm();
        Ok(Self {
            n_a,
            n_b,
            hamiltonian,
            label: label.into(),
            h_norm,
        })
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn dim(&self) -> usize {
        self.n_a * self.n_b
    }

    pub fn hamiltonian(&self) -> &HermitianOperator {
        &self.hamiltonian
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Frobenius norm of the Hamiltonian, the natural payoff scale.
    pub fn scale(&self) -> f64 {
        self.h_norm
    }

    /// Role swap: the same game with payoffs negated.
    pub fn negated(&self) -> Self {
        self.with_hamiltonian(self.hamiltonian.scale(-1.0), format!("{}:negated", self.label))
    }

    /// The game with Hamiltonian `H + c I`.
    pub fn shifted(&self, c: f64) -> Self {
        self.with_hamiltonian(self.hamiltonian.shift(c), format!("{}:shifted", self.label))
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        self.with_hamiltonian(self.hamiltonian.scale(alpha), format!("{}:scaled", self.label))
    }

    pub fn with_hamiltonian(&self, h: HermitianOperator, label: impl Into<String>) -> Self {
        Self::new(self.n_a, self.n_b, h, label).expect("dimensions preserved")
    }

    fn check_rho_a(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.n_a {
            return Err(Error::DimensionMismatch {
                context: "player A strategy",
                expected: self.n_a,
                found: rho.dim(),
            });
        }
        Ok(())
    }

    fn check_rho_b(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.n_b {
            return Err(Error::DimensionMismatch {
                context: "player B strategy",
                expected: self.n_b,
                found: rho.dim(),
            });
        }
        Ok(())
    }

    /// Expected payoff `tr((rho_A (x) rho_B) H)`, guaranteed real by
    /// hermiticity; the imaginary residue is asserted negligible.
    pub fn payoff(&self, rho_a: &DensityMatrix, rho_b: &DensityMatrix) -> Result<f64> {
        self.check_rho_a(rho_a)?;
        self.check_rho_b(rho_b)?;
        let h = self.hamiltonian.as_matrix();
        let ra = rho_a.operator().as_matrix();
        let rb = rho_b.operator().as_matrix();
        let mut acc = C_ZERO;
        for a in 0..self.n_a {
            for ap in 0..self.n_a {
                let fa = ra.get(a, ap);
                if fa == C_ZERO {
                    continue;
                }
                for b in 0..self.n_b {
                    for bp in 0..self.n_b {
                        let fb = rb.get(b, bp);
                        if fb == C_ZERO {
                            continue;
                        }
                        acc += fa * fb * h.get(ap * self.n_b + bp, a * self.n_b + b);
                    }
                }
            }
        }
        let tol = scaled_tol(1e-9, self.h_norm);
        assert!(
            acc.im.abs() < tol,
            "payoff imaginary residue {:.3e} exceeds {:.3e}",
            acc.im,
            tol
        );
        Ok(acc.re)
    }

    /// Payoff of a product pure state, `<psi_A (x) psi_B | H | psi_A (x) psi_B>`.
    pub fn payoff_pure(&self, psi_a: &PureState, psi_b: &PureState) -> Result<f64> {
        if psi_a.dim() != self.n_a {
            return Err(Error::DimensionMismatch {
                context: "player A state",
                expected: self.n_a,
                found: psi_a.dim(),
            });
        }
        if psi_b.dim() != self.n_b {
            return Err(Error::DimensionMismatch {
                context: "player B state",
                expected: self.n_b,
                found: psi_b.dim(),
            });
        }
        let h = self.hamiltonian.as_matrix();
        let joint = psi_a.tensor(psi_b);
        let amps = joint.amplitudes();
        let dim = self.dim();
        let mut acc = C_ZERO;
        for i in 0..dim {
            let ai = amps[i].conj();
            if ai == C_ZERO {
                continue;
            }
            for j in 0..dim {
                acc += ai * h.get(i, j) * amps[j];
            }
        }
        let tol = scaled_tol(1e-9, self.h_norm);
        assert!(acc.im.abs() < tol, "pure payoff imaginary residue {:.3e}", acc.im);
        Ok(acc.re)
    }

    /// `K_A(rho_B) = tr_B((I_A (x) rho_B) H)`: the operator player A faces
    /// once B's strategy is fixed, satisfying `tr(rho_A K_A) = payoff`.
    pub fn conditioned_operator_a(&self, rho_b: &DensityMatrix) -> Result<HermitianOperator> {
        self.check_rho_b(rho_b)?;
        let mut out = vec![C_ZERO; self.n_a * self.n_a];
        conditioned_a_into(
            self.hamiltonian.as_matrix(),
            self.n_a,
            self.n_b,
            rho_b.operator().as_matrix(),
            &mut out,
        );
        HermitianOperator::new(ComplexMatrix::new(self.n_a, self.n_a, out)?)
    }

    /// `K_B(rho_A) = tr_A((rho_A (x) I_B) H)`: the maximizer's view with A's
    /// strategy fixed.
    pub fn conditioned_operator_b(&self, rho_a: &DensityMatrix) -> Result<HermitianOperator> {
        self.check_rho_a(rho_a)?;
        let mut out = vec![C_ZERO; self.n_b * self.n_b];
        conditioned_b_into(
            self.hamiltonian.as_matrix(),
            self.n_a,
            self.n_b,
            rho_a.operator().as_matrix(),
            &mut out,
        );
        HermitianOperator::new(ComplexMatrix::new(self.n_b, self.n_b, out)?)
    }
}

/// K_A[a,a'] = sum_{b,b''} rho_B[b,b''] H[(a,b''),(a',b)].
pub(crate) fn conditioned_a_into(
    h: &ComplexMatrix,
    n_a: usize,
    n_b: usize,
    rho_b: &ComplexMatrix,
    out: &mut [Complex64],
) {
    debug_assert_eq!(out.len(), n_a * n_a);
    for a in 0..n_a {
        for ap in 0..n_a {
            let mut s = C_ZERO;
            for b in 0..n_b {
                for bpp in 0..n_b {
                    let f = rho_b.get(b, bpp);
                    if f == C_ZERO {
                        continue;
                    }
                    s += f * h.get(a * n_b + bpp, ap * n_b + b);
                }
            }
            out[a * n_a + ap] = s;
        }
    }
}

/// K_B[b,b'] = sum_{a,a''} rho_A[a,a''] H[(a'',b),(a,b')].
pub(crate) fn conditioned_b_into(
    h: &ComplexMatrix,
    n_a: usize,
    n_b: usize,
    rho_a: &ComplexMatrix,
    out: &mut [Complex64],
) {
    debug_assert_eq!(out.len(), n_b * n_b);
    for b in 0..n_b {
        for bp in 0..n_b {
            let mut s = C_ZERO;
            for a in 0..n_a {
                for app in 0..n_a {
                    let f = rho_a.get(a, app);
                    if f == C_ZERO {
                        continue;
                    }
                    s += f * h.get(app * n_b + b, a * n_b + bp);
                }
            }
            out[b * n_b + bp] = s;
        }
    }
}
