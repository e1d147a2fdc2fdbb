//! The constant-field candidate ledger over {-1, 2, -2}: certified
//! exclusions and evidential support from sampled specializations.
//!
//! Run with: cargo run --example constant_candidates

use arbor_kit::arboreal::constant_candidates;
use arbor_kit::dynamics::UnicriticalMap;
use arbor_kit::rational::rat_i64;

fn main() -> arbor_kit::Result<()> {
    let seed = 42;
    let cap = 256;

    let map = UnicriticalMap::parse("x^2")?;
    for depth in [2u32, 3] {
        let ledger = constant_candidates(&map, depth, &[rat_i64(3), rat_i64(5)], seed, cap)?;
        println!("x^2, samples {{3, 5}}, depth {depth}:");
        for (d, status) in &ledger.statuses {
            println!("  {d}: {status:?}");
        }
    }

    let map = UnicriticalMap::parse("x^2-1")?;
    for samples in [vec![1i64, 2], vec![1, 2, 3]] {
        let values: Vec<_> = samples.iter().map(|&v| rat_i64(v)).collect();
        let ledger = constant_candidates(&map, 2, &values, seed, cap)?;
        println!("x^2-1, samples {samples:?}, depth 2:");
        for (d, status) in &ledger.statuses {
            println!("  {d}: {status:?}");
        }
    }
    Ok(())
}
