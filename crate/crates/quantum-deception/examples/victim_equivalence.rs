//! Demonstrates that a deception-aware victim gains nothing over a trusting
//! one: the worst-case-optimal response coincides with the naive equilibrium
//! response, and the guaranteed value drops by exactly the budget.
//!
//! ```bash
//! cargo run --release --example victim_equivalence
//! ```

use quantum_deception::deception::{robust_victim_response, verify_theorem1};
use quantum_deception::equilibrium::{solve_equilibrium, SolverConfig};
use quantum_deception::hamiltonian::{canned_game, CannedGame};

fn main() -> quantum_deception::Result<()> {
    let game = canned_game(CannedGame::Pure);
    let budget = 20.0;
    let cfg = SolverConfig::default();

    let naive = solve_equilibrium(&game, &cfg)?;
    let (robust_rho, robust_value) = robust_victim_response(&game, budget, &cfg)?;
    println!("naive equilibrium value: {:+.4}", naive.value);
    println!("robust guaranteed value: {:+.4}  (budget {budget})", robust_value);
    let drift = robust_rho
        .operator()
        .as_matrix()
        .max_abs_diff(naive.rho_b.operator().as_matrix());
    println!("strategy difference (max entry): {drift:.2e}");

    let report = verify_theorem1(&game, budget, &cfg, 40)?;
    println!("\nfirst-principles verification:\n{report}");
    assert!(report.passed);
    Ok(())
}
