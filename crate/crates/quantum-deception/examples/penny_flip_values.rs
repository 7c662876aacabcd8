//! Solves the three Penny Flip payoff Hamiltonians for their game values and
//! security policies, and cross-checks each value against the independent
//! Bloch-grid bracket.
//!
//! ```bash
//! cargo run --release --example penny_flip_values
//! ```

use quantum_deception::cli::format_matrix;
use quantum_deception::equilibrium::{bloch_grid_spacing, brute_force_value, solve_equilibrium, SolverConfig};
use quantum_deception::hamiltonian::{canned_game, CannedGame};

fn main() -> quantum_deception::Result<()> {
    let cfg = SolverConfig::default();
    for which in CannedGame::ALL {
        let game = canned_game(which);
        let res = solve_equilibrium(&game, &cfg)?;
        let (lower, upper) = brute_force_value(&game, 64)?;
        let slack = game.scale() * bloch_grid_spacing(64);

        println!("== {} ==", game.label());
        println!("value: {:+.4}  (duality gap {:.2e}, {} iterations)", res.value, res.duality_gap, res.iterations);
        println!("grid bracket: [{lower:+.3}, {upper:+.3}]  (widened slack {slack:.2})");
        println!(
            "certificates: lambda_min(K_A(rho_B*)) - u = {:+.2e}, lambda_max(K_B(rho_A*)) - u = {:+.2e}",
            res.certificate.lower_residual, res.certificate.upper_residual
        );
        println!("rho_A*:\n{}", format_matrix(res.rho_a.operator().as_matrix()));
        println!("rho_B*:\n{}", format_matrix(res.rho_b.operator().as_matrix()));
        assert!(res.value >= lower - slack && res.value <= upper + slack);
    }
    Ok(())
}
