//! Critical orbits, PCF certificates, and the collision condition.
//!
//! Run with: cargo run --example critical_orbits

use arbor_kit::criterion::frattini_depth;
use arbor_kit::dynamics::{
    collision_condition, critical_orbit, good_reduction_failures, strictly_post_critical,
    UnicriticalMap,
};
use arbor_kit::rational::rat_i64;

fn main() -> arbor_kit::Result<()> {
    for literal in ["x^2", "x^2-1", "x^2-2", "x^2+1", "x^2-3", "x^4-1"] {
        let map = UnicriticalMap::parse(literal)?;
        print!("{map}: ");
        match critical_orbit(&map) {
            Ok(orbit) => {
                let points: Vec<String> = orbit.points.iter().map(|p| p.to_string()).collect();
                println!(
                    "PCF, orbit {{{}}}, N = {}, tail {}, cycle {}",
                    points.join(", "),
                    orbit.size(),
                    orbit.tail_length,
                    orbit.cycle_length
                );
                println!("    collision condition: {:?}", collision_condition(&map)?);
                println!("    frattini depth: {:?}", frattini_depth(&map)?);
            }
            Err(cert) => println!("not PCF ({cert:?})"),
        }
    }

    let basilica = UnicriticalMap::parse("x^2-1")?;
    for alpha in [-1i64, 1, 2] {
        println!(
            "alpha = {alpha} strictly post-critical for x^2-1: {}",
            strictly_post_critical(&basilica, &rat_i64(alpha))?
        );
    }
    println!(
        "primes <= 20 where good separable reduction fails for x^2-1: {:?}",
        good_reduction_failures(&basilica, 20)
    );
    Ok(())
}
