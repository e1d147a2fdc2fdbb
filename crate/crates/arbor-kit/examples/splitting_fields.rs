//! Number towers: root adjunction, factorization over the tower, square
//! tests, and splitting fields.
//!
//! Run with: cargo run --example splitting_fields

use arbor_kit::qpoly::parse_poly;
use arbor_kit::rational::rat_i64;
use arbor_kit::tower::{ExtPoly, NumberTower, DEFAULT_DEGREE_CAP};

fn main() -> arbor_kit::Result<()> {
    let seed = 42;
    let cap = DEFAULT_DEGREE_CAP;

    // adjoin sqrt(2), then sqrt(1 + sqrt(2))
    let q = NumberTower::rationals();
    let step1 = q.adjoin_root(&ExtPoly::from_qpoly(&q, &parse_poly("x^2-2")?), seed, cap)?;
    println!(
        "Q(sqrt 2): degree {}, minimal polynomial {}",
        step1.tower.degree(),
        step1.tower.minimal_poly()
    );
    let gamma = step1.root.add(&step1.tower.one())?;
    let quad = ExtPoly::from_elements(
        &step1.tower,
        vec![gamma.neg(), step1.tower.zero(), step1.tower.one()],
    )?;
    let step2 = step1.tower.adjoin_root(&quad, seed, cap)?;
    println!(
        "Q(sqrt(1+sqrt 2)): degree {}, minimal polynomial {}",
        step2.tower.degree(),
        step2.tower.minimal_poly()
    );

    // factor the quartic over the degree-4 tower
    let quartic = parse_poly("x^4-2*x^2-1")?;
    let factors = step2
        .tower
        .factor(&ExtPoly::from_qpoly(&step2.tower, &quartic), seed, cap)?;
    println!(
        "x^4-2x^2-1 over that tower: {} irreducible factors, degrees {:?}",
        factors.factors().len(),
        factors.factors().iter().map(|(g, _)| g.deg()).collect::<Vec<_>>()
    );

    // full splitting tower
    let (tower, degree) = NumberTower::splitting_tower(&quartic, seed, cap)?;
    println!("splitting field of x^4-2x^2-1: degree {degree}");
    println!("history consistent: {}", tower.history_consistent());

    // squares: -1 needs i, which the splitting field contains
    let minus_one = tower.rational(rat_i64(-1));
    println!(
        "-1 a square in the splitting field: {}",
        tower.is_square(&minus_one, seed)?
    );
    let deg4 = NumberTower::new(quartic, seed)?;
    println!(
        "-1 a square in Q[x]/(x^4-2x^2-1): {}",
        deg4.is_square(&deg4.rational(rat_i64(-1)), seed)?
    );

    // serialization round-trip
    let text = tower.to_text();
    let back = NumberTower::from_text(&text)?;
    println!(
        "serialized ({} bytes) and restored: degree {}",
        text.len(),
        back.degree()
    );
    Ok(())
}
