//! Portraits of tree automorphisms, iterated wreath orders, abelianization,
//! and the brute-force Frattini oracle.
//!
//! Run with: cargo run --example wreath_groups

use arbor_kit::tree::{
    brute_force_frattini, enumerate, group_order, leaf_orbit, maximal_subgroup_count,
    seeded_portrait, subgroup_closure, Portrait, WreathDescriptor, CLOSURE_CAP,
};

fn main() -> arbor_kit::Result<()> {
    for depth in 1..=4 {
        let w = WreathDescriptor::new(2, 1, depth);
        println!(
            "[C_2]^{depth}: order {}, maximal subgroups {}",
            group_order(&w),
            maximal_subgroup_count(2, 1, depth)
        );
    }

    let w = WreathDescriptor::new(2, 1, 3);
    let g = seeded_portrait(w, 7);
    let h = seeded_portrait(w, 11);
    println!("g        = {g}");
    println!("h        = {h}");
    println!("g*h      = {}", g.compose(&h)?);
    println!("g^-1     = {}", g.inverse());
    println!("ab(g)    = {:?}", g.abelianize());
    println!("g([0,1,1]) = {:?}", g.act_on_leaf(&[0, 1, 1])?);

    // Frattini data by full enumeration
    for depth in [2u32, 3] {
        let w = WreathDescriptor::new(2, 1, depth);
        let (rank, maximal) = brute_force_frattini(&w, CLOSURE_CAP)?;
        println!("depth {depth}: Frattini quotient rank {rank}, maximal count {maximal}");
    }

    // the full depth-2 group from two generators
    let w2 = WreathDescriptor::new(2, 1, 2);
    let root_swap = Portrait::from_flat(w2, &[1, 0, 0])?;
    let leaf_swap = Portrait::from_flat(w2, &[0, 1, 0])?;
    let closure = subgroup_closure(&[root_swap, leaf_swap], CLOSURE_CAP)?;
    println!("closure of {{root swap, leaf swap}} at depth 2: {} elements", closure.len());

    // transitivity on leaves
    let all = enumerate(&w2, CLOSURE_CAP)?;
    let orbit = leaf_orbit(&all, &[0, 0])?;
    println!("orbit of leaf [0,0] under the full depth-2 group: {} leaves", orbit.len());
    Ok(())
}
