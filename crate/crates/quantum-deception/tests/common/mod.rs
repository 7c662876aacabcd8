//! Shared helpers for the integration suites: random game generation, an
//! LP-free 2x2 classical game oracle, and small statistics.

use quantum_deception::linalg::HermitianOperator;
use quantum_deception::QuantumGame;
use rand::Rng;

/// Random two-qubit game at roughly the canonical payoff scale.
pub fn random_game(rng: &mut impl Rng, scale: f64) -> QuantumGame {
    let h = HermitianOperator::random_gaussian(4, rng).scale(scale * rng.gen_range(0.2..1.0));
    QuantumGame::new(2, 2, h, "random").expect("4 = 2 * 2")
}

/// Value of a 2x2 zero-sum matrix game by support enumeration: the row
/// player minimizes, the column player maximizes. Checks the four pure
/// saddle points first; without one, the unique completely mixed equilibrium
/// applies.
pub fn classical_value_2x2(g: [[f64; 2]; 2]) -> f64 {
    for a in 0..2 {
        for b in 0..2 {
            let col_best = g[a][b] >= g[a][1 - b];
            let row_best = g[a][b] <= g[1 - a][b];
            if col_best && row_best {
                return g[a][b];
            }
        }
    }
    let denom = g[0][0] + g[1][1] - g[0][1] - g[1][0];
    (g[0][0] * g[1][1] - g[0][1] * g[1][0]) / denom
}

/// Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        cov += (x - mx) * (y - my);
        vx += (x - mx).powi(2);
        vy += (y - my).powi(2);
    }
    cov / (vx.sqrt() * vy.sqrt())
}
