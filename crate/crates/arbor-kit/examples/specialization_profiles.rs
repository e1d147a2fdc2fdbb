//! Per-level exact degrees [K_{alpha,i} : Q] for specializations, with the
//! square classes each level adjoins.
//!
//! Run with: cargo run --example specialization_profiles

use arbor_kit::arboreal::{gn_bracket, specialization_profile};
use arbor_kit::dynamics::UnicriticalMap;
use arbor_kit::rational::rat_i64;

fn main() -> arbor_kit::Result<()> {
    let seed = 42;
    let cap = 256;

    for (literal, alpha, depth) in [
        ("x^2-1", 1i64, 3u32),
        ("x^2-1", 2, 3),
        ("x^2", 3, 3),
        ("x^2-2", 1, 3),
        ("x^2-2", 3, 3),
        ("x^4-1", 3, 1),
    ] {
        let map = UnicriticalMap::parse(literal)?;
        let profile = specialization_profile(&map, &rat_i64(alpha), depth, seed, cap)?;
        println!("{literal} at alpha = {alpha}: degrees {:?}", profile.degrees());
        for level in &profile.levels {
            if !level.new_square_classes.is_empty() {
                println!(
                    "    level {} adjoined: {}",
                    level.level,
                    level.new_square_classes.join("; ")
                );
            }
        }
    }

    // the |G_N| bracket for the Chebyshev-like map
    let map = UnicriticalMap::parse("x^2-2")?;
    let bracket = gn_bracket(&map, &[rat_i64(1), rat_i64(3), rat_i64(5)], 3, seed, cap)?;
    println!(
        "x^2-2, N = 3: measured lower {}, wreath upper {}, certified: {}",
        bracket.lower, bracket.upper, bracket.certified
    );
    Ok(())
}
