//! Index-p normal subgroup counts of free groups: the closed form
//! (p^s - 1)/(p - 1) against homomorphism enumeration.
//!
//! Run with: cargo run --example free_group_counts

use arbor_kit::tree::{free_group_index_p_normal_count, verify_free_group_count, HOM_CAP};

fn main() -> arbor_kit::Result<()> {
    println!("rank s, prime p: closed form vs enumeration");
    for (s, p) in [(1u32, 2u64), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3), (3, 3), (2, 5)] {
        let closed = free_group_index_p_normal_count(s, p);
        let brute = verify_free_group_count(s, p, HOM_CAP)?;
        println!("  s = {s}, p = {p}: {closed} vs {brute}");
    }
    Ok(())
}
