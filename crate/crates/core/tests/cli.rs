use std::process::{Command, Output};

use wehrl_core::io::{density_to_json, state_to_csv, state_to_json};
use wehrl_core::random::random_state;

fn wehrl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wehrl"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_z4_subgroup_2() {
    let out = wehrl(&["verify", "--group", "Z4", "--subgroup", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["passed"], true);
    for check in report["checks"].as_array().unwrap() {
        assert!(check["residual"].as_f64().unwrap() <= check["tolerance"].as_f64().unwrap());
    }
}

#[test]
fn entropy_of_maximally_mixed() {
    let out = wehrl(&[
        "entropy",
        "--group",
        "Z2",
        "--subgroup",
        "1",
        "--state",
        "maximally_mixed",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert!((report["wehrl"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-12);
    assert!((report["von_neumann"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-12);
    assert!(out.stderr.is_empty());
}

#[test]
fn minimize_witness() {
    let out = wehrl(&[
        "minimize",
        "--group",
        "Z4",
        "--subgroup",
        "2",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert!(report["best_entropy"].as_f64().unwrap() <= 1e-6);
    assert_eq!(report["seed"], 7);
    assert_eq!(report["fiducial_kind"], "vacuum");
}

#[test]
fn state_files_are_autodetected() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
    let psi = random_state(4, &mut rng);
    let cases = [
        ("psi.json", state_to_json(&psi)),
        ("psi.csv", state_to_csv(&psi)),
        ("rho.json", density_to_json(&psi.projector())),
    ];
    let mut values = Vec::new();
    for (name, text) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        let out = wehrl(&[
            "entropy",
            "--group",
            "Z2xZ2",
            "--subgroup",
            "1,0",
            "--state",
            path.to_str().unwrap(),
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        values.push(json(&out)["wehrl"].as_f64().unwrap());
    }
    assert!((values[0] - values[1]).abs() < 1e-12);
    assert!((values[0] - values[2]).abs() < 1e-10);
}

#[test]
fn channel_preserves_trace() {
    let out = wehrl(&[
        "channel",
        "--group",
        "Z6",
        "--subgroup",
        "3",
        "--state",
        "random:4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rho = wehrl_core::io::density_from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert!((rho.trace().re - 1.0).abs() < 1e-10);
    assert_eq!(rho.dim(), 6);
}

#[test]
fn group_info_lists_lattice() {
    let out = wehrl(&["group-info", "--group", "Z4xZ2"]);
    let info = json(&out);
    assert_eq!(info["order"], 8);
    assert_eq!(info["subgroup_count"], 8);
    for s in info["subgroups"].as_array().unwrap() {
        assert_eq!(
            s["order"].as_u64().unwrap() * s["annihilator_order"].as_u64().unwrap(),
            8
        );
    }
}

#[test]
fn scan_has_control_row() {
    let out = wehrl(&[
        "scan",
        "--group",
        "Z3",
        "--subgroup",
        "",
        "--trials",
        "2",
        "--output",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].contains(",vacuum,"));
    assert!(lines[2].contains(",random,"));
}

#[test]
fn husimi_csv_and_bits() {
    let out = wehrl(&["husimi", "--group", "Z2", "--state", "random_pure:3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("g_coords,lambda_coords,Q\n"));
    assert_eq!(text.lines().count(), 5);

    let out = wehrl(&[
        "entropy",
        "--group",
        "Z8",
        "--state",
        "maximally_mixed",
        "--log-base",
        "2",
    ]);
    assert!((json(&out)["wehrl"].as_f64().unwrap() - 3.0).abs() < 1e-12);
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["entropy", "--group", "Z4x"][..],
        &["entropy", "--group", "Z4", "--state", "nope.json"],
        &[
            "entropy",
            "--group",
            "Z4",
            "--subgroup",
            "1;2;x",
            "--state",
            "maximally_mixed",
        ],
        &["verify"],
        &["husimi", "--group", "Z2", "--state", "coherent:1"],
        &[
            "entropy",
            "--group",
            "Z4",
            "--log-base",
            "10",
            "--state",
            "maximally_mixed",
        ],
    ] {
        let out = wehrl(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn dimension_mismatch_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("psi.json");
    std::fs::write(&path, "[[1.0,0.0],[0.0,0.0]]").unwrap();
    let out = wehrl(&[
        "entropy",
        "--group",
        "Z3",
        "--state",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "minimize",
            "--group",
            "Z6",
            "--subgroup",
            "2",
            "--seed",
            "3",
        ][..],
        &["scan", "--group", "Z2xZ2", "--seed", "9", "--trials", "2"],
        &[
            "husimi", "--group", "Z4", "--state", "random:5", "--output", "json",
        ],
        &[
            "verify",
            "--group",
            "Z3xZ3",
            "--subgroup",
            "1,0",
            "--seed",
            "2",
        ],
    ] {
        let a = wehrl(args);
        let b = wehrl(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), Some(0));
    }
}
