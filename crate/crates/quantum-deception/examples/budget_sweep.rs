//! Sweeps the deception budget over the canonical grid for one game and
//! prints the CSV rows a plotting tool would consume.
//!
//! ```bash
//! cargo run --release --example budget_sweep          # quantum game
//! cargo run --release --example budget_sweep diagonal
//! ```

use quantum_deception::cli::{rows_to_csv, run_sweep, SweepSpec};
use quantum_deception::hamiltonian::canned_game_by_name;

fn main() -> quantum_deception::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "quantum".into());
    let game = canned_game_by_name(&name)?;
    let spec = SweepSpec {
        seed: 7,
        ..SweepSpec::default()
    };
    let rows = run_sweep(&game, &spec)?;
    print!("{}", rows_to_csv(&rows));
    Ok(())
}
