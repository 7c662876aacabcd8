//! Builds games three ways — embedding a classical payoff matrix, lifting a
//! payoff operator through unitary strategy bases, and loading a JSON game
//! file — and solves each.
//!
//! ```bash
//! cargo run --release --example custom_game_json
//! ```

use quantum_deception::equilibrium::{solve_equilibrium, SolverConfig};
use quantum_deception::game::PureState;
use quantum_deception::hamiltonian::{
    classical_embed, lift_classical, load_game, save_game, LiftSpec, StrategyBasis,
};
use quantum_deception::HermitianOperator;

fn main() -> quantum_deception::Result<()> {
    let cfg = SolverConfig::default();

    // a lopsided 2x2 classical game embedded as a diagonal Hamiltonian
    let embedded = classical_embed(2, 2, &[3.0, -1.0, -2.0, 1.0], 100.0)?;
    let eq = solve_equilibrium(&embedded, &cfg)?;
    println!("classical embedding value: {:+.4}", eq.value);

    // the same matching-pennies operator lifted through the {I, X} basis
    let spec = LiftSpec {
        payoff_operator: HermitianOperator::diagonal_real(&[1.0, -1.0]),
        initial_state: PureState::basis(2, 0).projector(),
        basis_a: StrategyBasis::pauli_ix(),
        basis_b: StrategyBasis::pauli_ix(),
        scale: 100.0,
    };
    let lifted = lift_classical(&spec)?;
    let eq = solve_equilibrium(&lifted, &cfg)?;
    println!("lifted {{I,X}} subgame value: {:+.4}", eq.value);

    // JSON round trip
    let dir = std::env::temp_dir();
    let path = dir.join("qdec_example_game.json");
    save_game(&path, &lifted)?;
    let loaded = load_game(&path)?;
    let eq = solve_equilibrium(&loaded, &cfg)?;
    println!(
        "reloaded `{}` ({}): value {:+.4}",
        path.display(),
        loaded.label(),
        eq.value
    );
    Ok(())
}
