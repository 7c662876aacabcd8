//! Brackets the value of random qubit games with the grid-search oracle and
//! shows the bracket tightening as the resolution grows.
//!
//! ```bash
//! cargo run --release --example bloch_grid_oracle
//! ```

use quantum_deception::equilibrium::{bloch_grid_spacing, brute_force_value, solve_equilibrium, SolverConfig};
use quantum_deception::linalg::HermitianOperator;
use quantum_deception::QuantumGame;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> quantum_deception::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let h = HermitianOperator::random_gaussian(4, &mut rng).scale(25.0);
    let game = QuantumGame::new(2, 2, h, "random")?;
    let eq = solve_equilibrium(&game, &SolverConfig::default())?;
    println!("solver value: {:+.5}", eq.value);

    for resolution in [8usize, 16, 32, 64, 128] {
        let (lower, upper) = brute_force_value(&game, resolution)?;
        let slack = game.scale() * bloch_grid_spacing(resolution);
        println!(
            "resolution {resolution:>4}: bracket [{lower:+.5}, {upper:+.5}], width {:.5}, grid slack {slack:.3}",
            upper - lower
        );
        assert!(eq.value >= lower - slack && eq.value <= upper + slack);
    }
    Ok(())
}
