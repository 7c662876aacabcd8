//! Payoff-Hamiltonian construction: the three canned Penny Flip matrices,
//! the generic lift of a classical payoff operator through unitary strategy
//! bases, diagonal embeddings of classical matrix games, and the JSON game
//! file format.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{DensityMatrix, QuantumGame};
use crate::linalg::{ComplexMatrix, HermitianOperator};

/// Hermiticity bound for user-supplied game files.
pub const GAME_FILE_HERMITICITY_TOL: f64 = 1e-8;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_i() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]).unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]).unwrap()
}

/// The three 4x4 Penny Flip payoff Hamiltonians used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CannedGame {
    /// Subgame spanned by {I, X}: classical flip moves plus coherent
    /// off-diagonal coupling.
    Pure,
    /// Diagonal-only version, equivalent to the classical matching game.
    Diagonal,
    /// Subgame spanned by {I, Z}: a phase move with no classical analog.
    Quantum,
}

impl CannedGame {
    pub const ALL: [CannedGame; 3] = [CannedGame::Pure, CannedGame::Diagonal, CannedGame::Quantum];

    pub fn label(&self) -> &'static str {
        match self {
            CannedGame::Pure => "pure",
            CannedGame::Diagonal => "diagonal",
            CannedGame::Quantum => "quantum",
        }
    }
}

impl FromStr for CannedGame {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pure" => Ok(CannedGame::Pure),
            "diagonal" => Ok(CannedGame::Diagonal),
            "quantum" => Ok(CannedGame::Quantum),
            other => Err(Error::UnknownGame { name: other.into() }),
        }
    }
}

/// Returns the requested canned game, exactly as tabulated.
pub fn canned_game(which: CannedGame) -> QuantumGame {
    let h = match which {
        CannedGame::Pure => ComplexMatrix::from_real(
            4,
            4,
            &[
                100.0, 0.0, 0.0, 100.0, //
                0.0, -100.0, -100.0, 0.0, //
                0.0, -100.0, -100.0, 0.0, //
                100.0, 0.0, 0.0, 100.0,
            ],
        )
        .unwrap(),
        CannedGame::Diagonal => ComplexMatrix::diagonal_real(&[100.0, -100.0, -100.0, 100.0]),
        CannedGame::Quantum => ComplexMatrix::new(
            4,
            4,
            vec![
                c(100.0, 0.0),
                c(0.0, -100.0),
                c(0.0, -100.0),
                c(100.0, 0.0),
                //
                c(0.0, 100.0),
                c(-100.0, 0.0),
                c(-100.0, 0.0),
                c(0.0, -100.0),
                //
                c(0.0, 100.0),
                c(-100.0, 0.0),
                c(-100.0, 0.0),
                c(0.0, -100.0),
                //
                c(100.0, 0.0),
                c(0.0, 100.0),
                c(0.0, 100.0),
                c(100.0, 0.0),
            ],
        )
        .unwrap(),
    };
    let op = HermitianOperator::new(h).expect("canned matrices are Hermitian");
    QuantumGame::new(2, 2, op, which.label()).expect("canned games are 2x2-partite")
}

/// Canned-game lookup by name; unknown names are an error.
pub fn canned_game_by_name(name: &str) -> Result<QuantumGame> {
    Ok(canned_game(name.parse()?))
}

/// Ordered set of unitary strategy matrices for one player.
#[derive(Debug, Clone)]
pub struct StrategyBasis {
    elements: Vec<ComplexMatrix>,
    labels: Vec<String>,
}

impl StrategyBasis {
    /// Validates that every element is square, of uniform dimension, and
    /// unitary within 1e-10.
    pub fn new(elements: Vec<ComplexMatrix>, labels: Vec<String>) -> Result<Self> {
        if elements.is_empty() || elements.len() != labels.len() {
            return Err(Error::InvalidConfig {
                reason: "strategy basis needs one label per element".into(),
            });
        }
        let dim = elements[0].rows();
        for (index, u) in elements.iter().enumerate() {
            if !u.is_square() || u.rows() != dim {
                return Err(Error::DimensionMismatch {
                    context: "strategy basis element",
                    expected: dim,
                    found: u.rows(),
                });
            }
            let residual = u
                .adjoint()
                .matmul(u)
                .max_abs_diff(&ComplexMatrix::identity(dim));
            if residual > 1e-10 {
                return Err(Error::NotUnitary { index, residual });
            }
        }
        Ok(Self { elements, labels })
    }

    /// The {I, X} basis: "do not flip" and "flip".
    pub fn pauli_ix() -> Self {
        Self::new(vec![pauli_i(), pauli_x()], vec!["I".into(), "X".into()]).unwrap()
    }

    /// The {I, Z} basis: "do not flip" and a phase move.
    pub fn pauli_iz() -> Self {
        Self::new(vec![pauli_i(), pauli_z()], vec!["I".into(), "Z".into()]).unwrap()
    }

    /// The full Pauli set {I, X, Y, Z}.
    pub fn pauli_full() -> Self {
        Self::new(
            vec![pauli_i(), pauli_x(), pauli_y(), pauli_z()],
            vec!["I".into(), "X".into(), "Y".into(), "Z".into()],
        )
        .unwrap()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, k: usize) -> &ComplexMatrix {
        &self.elements[k]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn coin_dim(&self) -> usize {
        self.elements[0].rows()
    }
}

/// Specification for lifting a classical payoff operator to a quantum payoff
/// Hamiltonian over chosen strategy bases.
#[derive(Debug, Clone)]
pub struct LiftSpec {
    pub payoff_operator: HermitianOperator,
    pub initial_state: DensityMatrix,
    pub basis_a: StrategyBasis,
    pub basis_b: StrategyBasis,
    pub scale: f64,
}

impl LiftSpec {
    fn validate(&self) -> Result<()> {
        let coin = self.payoff_operator.dim();
        if self.initial_state.dim() != coin
            || self.basis_a.coin_dim() != coin
            || self.basis_b.coin_dim() != coin
        {
            return Err(Error::DimensionMismatch {
                context: "lift specification",
                expected: coin,
                found: self.initial_state.dim(),
            });
        }
        if !(self.scale > 0.0) {
            return Err(Error::InvalidConfig {
                reason: format!("lift scale must be positive, got {}", self.scale),
            });
        }
        Ok(())
    }
}

/// Lifts a classical payoff operator to the joint strategy space:
/// `H(i,j) = scale * tr(P (nu_B nu_A) rho_0 (mu_A^dag mu_B^dag))`, with row
/// index `i` running over `(mu_A, mu_B)` pairs and column index `j` over
/// `(nu_A, nu_B)` pairs, both in lexicographic basis order. Player A's
/// unitary is applied to the coin first.
pub fn lift_classical(spec: &LiftSpec) -> Result<QuantumGame> {
    spec.validate()?;
    let n_a = spec.basis_a.len();
    let n_b = spec.basis_b.len();
    let dim = n_a * n_b;
    let p = spec.payoff_operator.as_matrix();
    let rho0 = spec.initial_state.operator().as_matrix();
    let adj_a: Vec<ComplexMatrix> = (0..n_a).map(|k| spec.basis_a.element(k).adjoint()).collect();
    let adj_b: Vec<ComplexMatrix> = (0..n_b).map(|k| spec.basis_b.element(k).adjoint()).collect();

    let mut h = ComplexMatrix::zeros(dim, dim);
    for ia in 0..n_a {
        for ib in 0..n_b {
            let row = ia * n_b + ib;
            // (mu_A^dag mu_B^dag) depends only on the row pair
            let right = adj_a[ia].matmul(&adj_b[ib]);
            for ja in 0..n_a {
                for jb in 0..n_b {
                    let col = ja * n_b + jb;
                    let nu = spec.basis_b.element(jb).matmul(spec.basis_a.element(ja));
                    let chain = p.matmul(&nu).matmul(rho0).matmul(&right);
                    h.set(row, col, chain.trace() * spec.scale);
                }
            }
        }
    }
    let op = HermitianOperator::new(h)?;
    QuantumGame::new(n_a, n_b, op, "lifted")
}

/// Embeds a classical `m x n` matrix game as the diagonal Hamiltonian
/// `scale * diag(vec(A))` (row-major flattening) with `n_A = m`, `n_B = n`.
pub fn classical_embed(rows: usize, cols: usize, entries: &[f64], scale: f64) -> Result<QuantumGame> {
    if entries.len() != rows * cols {
        return Err(Error::DimensionMismatch {
            context: "classical embedding",
            expected: rows * cols,
            found: entries.len(),
        });
    }
    let diag: Vec<f64> = entries.iter().map(|&v| v * scale).collect();
    let op = HermitianOperator::diagonal_real(&diag);
    QuantumGame::new(rows, cols, op, "classical")
}

/// On-disk game description: complex entries as parallel row-major real and
/// imaginary arrays.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameFile {
    pub n_a: usize,
    pub n_b: usize,
    pub h_re: Vec<f64>,
    pub h_im: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl GameFile {
    pub fn from_game(game: &QuantumGame) -> Self {
        let dim = game.dim();
        let data = game.hamiltonian().as_matrix().data();
        Self {
            n_a: game.n_a(),
            n_b: game.n_b(),
            h_re: data.iter().map(|c| c.re).collect(),
            h_im: data.iter().map(|c| c.im).collect(),
            label: Some(game.label().to_string()).filter(|l| !l.is_empty()),
        }
        .with_expected_len(dim)
    }

    fn with_expected_len(self, _dim: usize) -> Self {
        self
    }

    /// Validates shape and hermiticity and builds the game.
    pub fn into_game(self) -> Result<QuantumGame> {
        let dim = self.n_a * self.n_b;
        if dim == 0 {
            return Err(Error::InvalidGameFile {
                reason: "subsystem dimensions must be positive".into(),
            });
        }
        if self.h_re.len() != dim * dim || self.h_im.len() != dim * dim {
            return Err(Error::InvalidGameFile {
                reason: format!(
                    "expected {} entries in h_re/h_im, found {}/{}",
                    dim * dim,
                    self.h_re.len(),
                    self.h_im.len()
                ),
            });
        }
        let data: Vec<Complex64> = self
            .h_re
            .iter()
            .zip(&self.h_im)
            .map(|(&re, &im)| c(re, im))
            .collect();
        let m = ComplexMatrix::new(dim, dim, data)?;
        if !m.is_finite() {
            return Err(Error::InvalidGameFile {
                reason: "matrix contains non-finite entries".into(),
            });
        }
        let residual = m.hermiticity_residual();
        let tol = GAME_FILE_HERMITICITY_TOL * m.frobenius_norm().max(1.0);
        if residual > tol {
            return Err(Error::InvalidGameFile {
                reason: format!("Hermiticity violation {residual:.3e} exceeds {tol:.3e}"),
            });
        }
        let label = self.label.unwrap_or_else(|| "file".into());
        QuantumGame::new(self.n_a, self.n_b, HermitianOperator::new(m)?, label)
    }
}

pub fn load_game(path: &Path) -> Result<QuantumGame> {
    let text = fs::read_to_string(path)?;
    let file: GameFile = serde_json::from_str(&text).map_err(|e| Error::InvalidGameFile {
        reason: format!("{}: {e}", path.display()),
    })?;
    file.into_game()
}

pub fn save_game(path: &Path, game: &QuantumGame) -> Result<()> {
    let file = GameFile::from_game(game);
    fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::PureState;

    #[test]
    fn canned_pure_matches_print() {
        let g = canned_game(CannedGame::Pure);
        let h = g.hamiltonian().as_matrix();
        let expected = [
            [100.0, 0.0, 0.0, 100.0],
            [0.0, -100.0, -100.0, 0.0],
            [0.0, -100.0, -100.0, 0.0],
            [100.0, 0.0, 0.0, 100.0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(h.get(i, j), c(expected[i][j], 0.0));
            }
        }
    }

    #[test]
    fn canned_diagonal_matches_print() {
        let g = canned_game(CannedGame::Diagonal);
        let expected = ComplexMatrix::diagonal_real(&[100.0, -100.0, -100.0, 100.0]);
        assert_eq!(g.hamiltonian().as_matrix(), &expected);
    }

    #[test]
    fn canned_quantum_matches_print() {
        let g = canned_game(CannedGame::Quantum);
        let h = g.hamiltonian().as_matrix();
        assert_eq!(h.get(0, 0), c(100.0, 0.0));
        assert_eq!(h.get(0, 1), c(0.0, -100.0));
        assert_eq!(h.get(0, 2), c(0.0, -100.0));
        assert_eq!(h.get(0, 3), c(100.0, 0.0));
        assert_eq!(h.get(1, 0), c(0.0, 100.0));
        assert_eq!(h.get(3, 1), c(0.0, 100.0));
        assert_eq!(h.get(2, 2), c(-100.0, 0.0));
    }

    #[test]
    fn canned_games_are_hermitian_as_displayed() {
        for which in CannedGame::ALL {
            let g = canned_game(which);
            assert_eq!(g.hamiltonian().as_matrix().hermiticity_residual(), 0.0);
        }
    }

    #[test]
    fn pure_game_frobenius_norm() {
        // eight entries of modulus 100
        let g = canned_game(CannedGame::Pure);
        let expected = (8.0f64 * 100.0 * 100.0).sqrt();
        assert!((g.hamiltonian().frobenius_norm() - expected).abs() < 1e-10);
    }

    #[test]
    fn pure_game_spectrum_is_paired() {
        // rank two: (|00> + |11>) and (|01> + |10>) with eigenvalues +-200
        let g = canned_game(CannedGame::Pure);
        let dec = g.hamiltonian().eig().unwrap();
        let expected = [-200.0, 0.0, 0.0, 200.0];
        for (got, want) in dec.eigenvalues.iter().zip(expected) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn canned_partial_traces_vanish() {
        let pure = canned_game(CannedGame::Pure);
        let traced_a = pure.hamiltonian().partial_trace_a(2, 2).unwrap();
        assert_eq!(traced_a.frobenius_norm(), 0.0);
        let diagonal = canned_game(CannedGame::Diagonal);
        let traced_b = diagonal.hamiltonian().partial_trace_b(2, 2).unwrap();
        assert_eq!(traced_b.frobenius_norm(), 0.0);
    }

    #[test]
    fn unknown_name_rejected() {
        assert!(canned_game_by_name("mixed").is_err());
        assert!(canned_game_by_name("PURE").is_ok());
    }

    #[test]
    fn lift_reproduces_pure_game() {
        let spec = LiftSpec {
            payoff_operator: HermitianOperator::diagonal_real(&[1.0, -1.0]),
            initial_state: PureState::basis(2, 0).projector(),
            basis_a: StrategyBasis::pauli_ix(),
            basis_b: StrategyBasis::pauli_ix(),
            scale: 100.0,
        };
        let lifted = lift_classical(&spec).unwrap();
        let reference = canned_game(CannedGame::Pure);
        let diff = lifted
            .hamiltonian()
            .as_matrix()
            .max_abs_diff(reference.hamiltonian().as_matrix());
        assert!(diff < 1e-9, "max diff {diff}");
    }

    #[test]
    fn lift_diagonal_pure_strategy_payoffs() {
        // brute-force evaluation of the four pure-move pairs: (I,I) and (X,X)
        // leave the coin on heads (+1), mixed pairs flip it (-1)
        let spec = LiftSpec {
            payoff_operator: HermitianOperator::diagonal_real(&[1.0, -1.0]),
            initial_state: PureState::basis(2, 0).projector(),
            basis_a: StrategyBasis::pauli_ix(),
            basis_b: StrategyBasis::pauli_ix(),
            scale: 100.0,
        };
        let lifted = lift_classical(&spec).unwrap();
        let h = lifted.hamiltonian().as_matrix();
        let expected = [100.0, -100.0, -100.0, 100.0];
        for (k, &v) in expected.iter().enumerate() {
            assert!((h.get(k, k) - c(v, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn lift_single_strategy_basis() {
        let single = StrategyBasis::new(vec![pauli_i()], vec!["I".into()]).unwrap();
        let spec = LiftSpec {
            payoff_operator: HermitianOperator::diagonal_real(&[1.0, -1.0]),
            initial_state: PureState::basis(2, 0).projector(),
            basis_a: single.clone(),
            basis_b: single,
            scale: 100.0,
        };
        let lifted = lift_classical(&spec).unwrap();
        assert_eq!(lifted.dim(), 1);
        assert!((lifted.hamiltonian().entry(0, 0) - c(100.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn lift_linear_in_scale() {
        let mk = |scale: f64| LiftSpec {
            payoff_operator: HermitianOperator::diagonal_real(&[1.0, -1.0]),
            initial_state: PureState::basis(2, 0).projector(),
            basis_a: StrategyBasis::pauli_ix(),
            basis_b: StrategyBasis::pauli_ix(),
            scale,
        };
        let unit = lift_classical(&mk(1.0)).unwrap();
        let hundred = lift_classical(&mk(100.0)).unwrap();
        let rescaled = unit.hamiltonian().scale(100.0);
        assert!(
            rescaled
                .as_matrix()
                .max_abs_diff(hundred.hamiltonian().as_matrix())
                < 1e-9
        );
    }

    #[test]
    fn classical_embed_matches_diagonal_game() {
        let g = classical_embed(2, 2, &[1.0, -1.0, -1.0, 1.0], 100.0).unwrap();
        let reference = canned_game(CannedGame::Diagonal);
        assert_eq!(g.hamiltonian().as_matrix(), reference.hamiltonian().as_matrix());
    }

    #[test]
    fn classical_embed_trivial_cases() {
        let zero = classical_embed(2, 2, &[0.0; 4], 1.0).unwrap();
        assert_eq!(zero.hamiltonian().frobenius_norm(), 0.0);
        let scalar = classical_embed(1, 1, &[5.0], 1.0).unwrap();
        assert_eq!(scalar.hamiltonian().entry(0, 0), c(5.0, 0.0));
    }

    #[test]
    fn game_file_round_trip_and_validation() {
        let g = canned_game(CannedGame::Quantum);
        let file = GameFile::from_game(&g);
        let back = file.into_game().unwrap();
        assert!(
            back.hamiltonian()
                .as_matrix()
                .max_abs_diff(g.hamiltonian().as_matrix())
                == 0.0
        );

        // non-Hermitian file is rejected
        let mut bad = GameFile::from_game(&g);
        bad.h_im[1] += 1.0;
        assert!(bad.into_game().is_err());
    }

    #[test]
    fn non_unitary_basis_rejected() {
        let stretched = ComplexMatrix::diagonal_real(&[2.0, 1.0]);
        assert!(StrategyBasis::new(vec![stretched], vec!["S".into()]).is_err());
    }
}
