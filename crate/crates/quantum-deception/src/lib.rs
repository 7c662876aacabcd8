//! Zero-sum quantum games on density-matrix strategies: payoff evaluation,
//! certified security policies and game values, and budgeted Honey-X
//! deception of the payoff Hamiltonian.
//!
//! Two players act on a bipartite Hilbert space through density matrices
//! `rho_A` (minimizer) and `rho_B` (maximizer); a Hermitian payoff
//! Hamiltonian `H` turns a strategy pair into the real payoff
//! `tr((rho_A (x) rho_B) H)`. On top of that sit:
//!
//! - [`equilibrium`]: the game value and a certified equilibrium pair via a
//!   matrix-multiplicative-weights iteration, plus an independent
//!   Bloch-grid bracketing oracle for qubit games;
//! - [`deception`]: budgeted perturbations `H' = H + D` with
//!   `||D||_1 <= Delta`, the naive/robust victim equivalence, and a seeded
//!   restart + refinement search for the deceiver-optimal `D`;
//! - [`hamiltonian`]: the canned Penny Flip matrices, classical embeddings,
//!   the unitary-basis lift, and the JSON game-file format;
//! - [`cli`]: the machinery behind the `qdec` binary (`value`, `deceive`,
//!   `sweep`, `verify`).
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --release --example penny_flip_values   # values + certificates
//! cargo run --release --example optimal_deception   # one deception solve
//! cargo run --release --example budget_sweep        # CSV over budgets
//! cargo run --release --example victim_equivalence  # naive vs robust victim
//! cargo run --release --example custom_game_json    # build/load games
//! cargo run --release --example bloch_grid_oracle   # independent bracketing
//! ```
//!
//! # Quick start
//!
//! ```
//! use quantum_deception::equilibrium::{solve_equilibrium, SolverConfig};
//! use quantum_deception::hamiltonian::{canned_game, CannedGame};
//!
//! let game = canned_game(CannedGame::Diagonal);
//! let eq = solve_equilibrium(&game, &SolverConfig::default()).unwrap();
//! assert!(eq.value.abs() < 0.1); // matching pennies is worth zero
//! ```

pub mod cli;
pub mod deception;
pub mod equilibrium;
pub mod error;
pub mod game;
pub mod hamiltonian;
pub mod linalg;

pub use deception::{DeceptionConfig, DeceptionInstance, DeceptionResult};
pub use equilibrium::{EquilibriumResult, SolverConfig};
pub use error::{Error, Result};
pub use game::{DensityMatrix, PureState, QuantumGame};
pub use hamiltonian::{canned_game, canned_game_by_name, CannedGame};
pub use linalg::{ComplexMatrix, HermitianOperator};
