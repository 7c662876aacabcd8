//! Computes the optimal budgeted deception for the diagonalized Penny Flip
//! game and compares it against the intuitive hand-built perturbation that
//! shifts payoff mass between the two outcomes.
//!
//! ```bash
//! cargo run --release --example optimal_deception
//! ```

use quantum_deception::cli::format_matrix;
use quantum_deception::deception::{
    evaluate_deception, solve_deception, DeceptionConfig, DeceptionInstance,
};
use quantum_deception::hamiltonian::{canned_game, CannedGame};
use quantum_deception::HermitianOperator;

fn main() -> quantum_deception::Result<()> {
    let game = canned_game(CannedGame::Diagonal);
    let budget = 20.0;

    // hand-built reference: push up the perceived value of both outcomes the
    // victim likes, pull down the ones the deceiver likes
    let hand = HermitianOperator::diagonal_real(&[19.5, 19.5, -20.0, -20.0]);
    let config = DeceptionConfig::default();
    let baseline = evaluate_deception(&game, &hand, budget, &config.solver)?;
    println!(
        "hand-built D: realized {:+.4}, perceived {:+.4}",
        baseline.realized_payoff, baseline.perceived_value
    );

    let inst = DeceptionInstance::new(game, budget, config)?;
    let res = solve_deception(&inst)?;
    println!(
        "solver D*:    realized {:+.4}, perceived {:+.4}  (winner restart {}, {} candidates)",
        res.realized_payoff, res.perceived_value, res.winner_restart, res.restarts_used
    );
    println!("||D*||_1 = {:.4} <= {budget}", res.d_star.induced_one_norm());
    println!("D*:\n{}", format_matrix(res.d_star.as_matrix()));
    println!(
        "victim strategy under deception:\n{}",
        format_matrix(res.rho_b_star.operator().as_matrix())
    );

    assert!(res.realized_payoff <= baseline.realized_payoff + 1e-3 * inst.game.scale());
    println!("solver dominates the hand-built deception.");
    Ok(())
}
