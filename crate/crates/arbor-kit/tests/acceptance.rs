//! Acceptance suite: one line per criterion, asserted at the stated
//! tolerances (exact integer equalities throughout).

use std::process::Command;

use arbor_kit::config::RunConfig;
use arbor_kit::selftest;

#[test]
fn acceptance_criteria() {
    let config = RunConfig {
        seed: 42,
        ..RunConfig::default()
    };
    let report = selftest::run(&config);
    let mut all_pass = true;
    for c in &report.criteria {
        println!(
            "criterion {:2}: {} — {}",
            c.id,
            if c.pass { "PASS" } else { "FAIL" },
            c.name
        );
        for d in &c.details {
            println!("    {d}");
        }
        all_pass &= c.pass;
    }
    assert!(all_pass, "one or more acceptance criteria failed");
}

/// Criterion 11 against the real binary: two runs of
/// `arbor selftest --seed 42 --json` must be byte-identical.
#[test]
fn selftest_binary_determinism() {
    let exe = env!("CARGO_BIN_EXE_arbor");
    let run = || {
        let out = Command::new(exe)
            .args(["selftest", "--seed", "42", "--json"])
            .output()
            .expect("selftest runs");
        assert!(
            out.status.success(),
            "selftest exited with {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stdout)
        );
        out.stdout
    };
    let first = run();
    let second = run();
    println!(
        "criterion 11: {} — selftest --seed 42 --json byte-identical across runs ({} bytes)",
        if first == second { "PASS" } else { "FAIL" },
        first.len()
    );
    assert_eq!(first, second);
    let report: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(report["schema"], "arbor-kit/1");
    assert_eq!(report["pass"], true);
}
