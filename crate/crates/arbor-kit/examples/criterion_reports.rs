//! Full criterion reports: the |G_N| bracket, the k' hypothesis lattice,
//! the evidence filter, and the three-valued verdict.
//!
//! Run with: cargo run --example criterion_reports

use arbor_kit::config::RunConfig;
use arbor_kit::criterion::criterion_report;
use arbor_kit::dynamics::UnicriticalMap;
use arbor_kit::rational::rat_i64;

fn main() -> arbor_kit::Result<()> {
    let config = RunConfig::default();
    for (literal, alpha) in [
        ("x^2", 3i64),
        ("x^2", 2),
        ("x^2-1", 1),
        ("x^2-1", 2),
        ("x^2-2", 1),
    ] {
        let map = UnicriticalMap::parse(literal)?;
        let report = criterion_report(&map, &rat_i64(alpha), &config)?;
        println!(
            "{literal} at alpha = {alpha} (N = {}): bracket [{}, {}]{}",
            report.n,
            report.bracket.lower,
            report.bracket.upper,
            if report.bracket.certified { ", certified" } else { "" }
        );
        for h in report.hypotheses.iter().filter(|h| h.surviving) {
            println!(
                "    surviving hypothesis {:?}: LHS {} -> {}",
                h.basis, h.lhs, h.verdict
            );
        }
        println!("    overall: {:?}", report.overall);
    }
    Ok(())
}
