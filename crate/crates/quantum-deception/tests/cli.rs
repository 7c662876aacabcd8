//! End-to-end tests of the `qdec` binary: output determinism, artifact
//! round-trips, and the exit-code taxonomy.

use std::path::Path;
use std::process::Command;

use quantum_deception::cli::DeceptionArtifact;
use quantum_deception::hamiltonian::{canned_game, save_game, CannedGame};

fn qdec() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qdec"))
}

/// CSV with the wall-time column blanked, for byte comparisons.
fn strip_wall_time(csv: &str) -> String {
    csv.lines()
        .map(|line| {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() == 6 {
                format!("{},{},{},{},_,{}", cells[0], cells[1], cells[2], cells[3], cells[5])
            } else {
                line.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn run_sweep_to(path: &Path, seed: u64) -> String {
    let status = qdec()
        .args([
            "sweep",
            "--game",
            "diagonal",
            "--deltas",
            "0,30",
            "--restarts",
            "4",
            "--seed",
            &seed.to_string(),
            "--out",
        ])
        .arg(path)
        .status()
        .expect("qdec runs");
    assert!(status.success());
    std::fs::read_to_string(path).expect("sweep file exists")
}

#[test]
fn sweep_is_deterministic_for_fixed_seed() {
    let dir = tempfile::tempdir().unwrap();
    let first = run_sweep_to(&dir.path().join("a.csv"), 11);
    let second = run_sweep_to(&dir.path().join("b.csv"), 11);
    assert_eq!(strip_wall_time(&first), strip_wall_time(&second));

    let rows: Vec<&str> = first.lines().collect();
    assert_eq!(rows.len(), 3, "header plus one row per delta");
    assert!(rows[0].starts_with("delta,realized_payoff,perceived_value,residual,wall_time_s,winner_restart"));
    let d0: f64 = rows[1].split(',').next().unwrap().parse().unwrap();
    let d1: f64 = rows[2].split(',').next().unwrap().parse().unwrap();
    assert!(d0 < d1, "rows sorted by delta");

    // the zero-budget row is just the undeceived equilibrium
    let cells: Vec<f64> = rows[1].split(',').map(|c| c.parse().unwrap()).collect();
    assert!(cells[1].abs() < 0.1, "realized at delta=0 is the game value");
    assert!(cells[2].abs() < 0.1, "perceived at delta=0 is the game value");
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"seed": 11, "restarts": 4}"#).unwrap();

    let from_config = dir.path().join("cfg_run.csv");
    let status = qdec()
        .args(["--config"])
        .arg(&cfg)
        .args(["sweep", "--game", "diagonal", "--deltas", "0,30", "--out"])
        .arg(&from_config)
        .status()
        .unwrap();
    assert!(status.success());

    let from_flags = run_sweep_to(&dir.path().join("flag_run.csv"), 11);
    assert_eq!(
        strip_wall_time(&std::fs::read_to_string(&from_config).unwrap()),
        strip_wall_time(&from_flags),
        "config seed/restarts match explicit flags"
    );
}

#[test]
fn deceive_artifact_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("artifact.json");
    let status = qdec()
        .args([
            "deceive", "--game", "diagonal", "--delta", "20", "--restarts", "4", "--seed", "5",
            "--out",
        ])
        .arg(&out)
        .status()
        .expect("qdec runs");
    assert!(status.success());

    let text = std::fs::read_to_string(&out).unwrap();
    let artifact: DeceptionArtifact = serde_json::from_str(&text).unwrap();
    let recomputed = artifact.recompute_residuals().unwrap();
    assert!((recomputed.victim_certificate - artifact.residuals.victim_certificate).abs() < 1e-9);
    assert!((recomputed.dual_certificate - artifact.residuals.dual_certificate).abs() < 1e-9);
    assert!((recomputed.budget - artifact.residuals.budget).abs() < 1e-9);
    assert!((recomputed.psd - artifact.residuals.psd).abs() < 1e-9);
    assert!((recomputed.trace - artifact.residuals.trace).abs() < 1e-9);
    assert!(artifact.realized_payoff <= -19.0);
}

#[test]
fn value_reads_game_files_and_reports_zero_game() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.json");
    let zero = quantum_deception::hamiltonian::classical_embed(2, 2, &[0.0; 4], 1.0).unwrap();
    save_game(&path, &zero).unwrap();
    let output = qdec()
        .args(["value", "--game"])
        .arg(&path)
        .output()
        .expect("qdec runs");
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("value: 0.000000"), "stdout: {stdout}");
}

#[test]
fn exit_codes_follow_taxonomy() {
    // unknown game: input error
    let status = qdec().args(["value", "--game", "bogus"]).status().unwrap();
    assert_eq!(status.code(), Some(2));

    // non-Hermitian game file: input error
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let game = canned_game(CannedGame::Quantum);
    let mut file = quantum_deception::hamiltonian::GameFile::from_game(&game);
    file.h_im[1] += 25.0;
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let status = qdec().args(["value", "--game"]).arg(&path).status().unwrap();
    assert_eq!(status.code(), Some(2));

    // passing verify: success
    let status = qdec()
        .args(["verify", "--game", "diagonal", "--delta", "0", "--samples", "8"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
}

#[test]
fn verify_reports_pass_for_canned_games() {
    let output = qdec()
        .args(["verify", "--game", "quantum", "--delta", "50", "--samples", "20"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("overall: pass"), "stdout: {stdout}");
}

#[test]
fn verify_random_game_selector() {
    let status = qdec()
        .args(["verify", "--game", "random:7", "--delta", "50", "--samples", "10"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
}
