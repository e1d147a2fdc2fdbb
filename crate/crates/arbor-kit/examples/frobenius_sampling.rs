//! Frobenius cycle types: degree multisets of f^n(x) - alpha modulo good
//! primes, checked against the exact splitting degree.
//!
//! Run with: cargo run --example frobenius_sampling

use arbor_kit::arboreal::{frobenius_samples, specialization_profile};
use arbor_kit::dynamics::UnicriticalMap;
use arbor_kit::rational::rat_i64;

fn main() -> arbor_kit::Result<()> {
    let map = UnicriticalMap::parse("x^2-1")?;
    let alpha = rat_i64(1);
    let n = 2;
    let samples = frobenius_samples(&map, &alpha, n, 12, 42)?;
    let exact = specialization_profile(&map, &alpha, n, 42, 256)?.degrees()[n as usize - 1];
    println!("f = x^2-1, alpha = 1, level {n}: exact degree {exact}");
    for s in &samples {
        let mut lcm = 1u64;
        for &d in &s.degrees {
            lcm = num_integer::lcm(lcm, d as u64);
        }
        println!(
            "  q = {:3}: cycle type {:?}, lcm {} (divides {exact}: {})",
            s.prime,
            s.degrees,
            lcm,
            exact % lcm == 0
        );
    }
    Ok(())
}
