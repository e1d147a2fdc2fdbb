//! Finite-depth automorphisms of the p^n-ary rooted tree as labelled
//! portraits, and the iterated wreath products [C_{p^n}]^depth they fill out.
//!
//! Conventions (fixed so golden portraits are stable): children are indexed
//! 0..d-1, a node label r sends child i to i + r mod d, and composition is
//! "right acts first": (a*b)(leaf) = a(b(leaf)).

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

pub const CLOSURE_CAP: u64 = 1 << 16;
pub const HOM_CAP: u64 = 1 << 20;

/// The depth-fold iterated wreath product of C_{p^n} acting on the d-ary
/// rooted tree of the given depth, d = p^n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathDescriptor {
    pub p: u64,
    pub n: u32,
    pub depth: u32,
}

impl WreathDescriptor {
    pub fn new(p: u64, n: u32, depth: u32) -> Self {
        WreathDescriptor { p, n, depth }
    }

    pub fn arity(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// Number of internal nodes: 1 + d + ... + d^(depth-1).
    pub fn internal_nodes(&self) -> u64 {
        let d = self.arity();
        let mut total = 0u64;
        let mut level = 1u64;
        for _ in 0..self.depth {
            total += level;
            level *= d;
        }
        total
    }

    pub fn leaves(&self) -> u64 {
        self.arity().pow(self.depth)
    }
}

/// |[C_{p^n}]^depth| = p^(n * (d^depth - 1)/(d - 1)).
pub fn group_order(w: &WreathDescriptor) -> BigUint {
    let exponent = w.n as u64 * w.internal_nodes();
    BigUint::from(w.p).pow(exponent.try_into().expect("exponent fits u32"))
}

/// Count of maximal (index-p) subgroups of the full depth-N wreath group:
/// (p^N - 1)/(p - 1), the hyperplane count of its mod-p Frattini quotient.
/// The parameter n is part of the descriptor but does not enter the count.
pub fn maximal_subgroup_count(p: u64, _n: u32, depth: u32) -> BigUint {
    let p = BigUint::from(p);
    (p.pow(depth) - BigUint::one()) / (p - BigUint::one())
}

/// A tree automorphism as one cyclic label per internal node, stored level
/// by level in breadth-first order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Portrait {
    desc: WreathDescriptor,
    /// labels[l][i]: label of the i-th node of level l (path digits read as a
    /// base-d number, most significant digit first).
    labels: Vec<Vec<u64>>,
}

impl Portrait {
    pub fn identity(desc: WreathDescriptor) -> Self {
        let d = desc.arity();
        let labels = (0..desc.depth)
            .map(|l| vec![0u64; d.pow(l) as usize])
            .collect();
        Portrait { desc, labels }
    }

    /// Portrait from the flat breadth-first label list.
    pub fn from_flat(desc: WreathDescriptor, flat: &[u64]) -> Result<Self> {
        if flat.len() as u64 != desc.internal_nodes() {
            return Err(Error::Parse(format!(
                "expected {} labels, got {}",
                desc.internal_nodes(),
                flat.len()
            )));
        }
        let d = desc.arity();
        let mut labels = Vec::with_capacity(desc.depth as usize);
        let mut pos = 0usize;
        for l in 0..desc.depth {
            let count = d.pow(l) as usize;
            labels.push(flat[pos..pos + count].iter().map(|&v| v % d).collect());
            pos += count;
        }
        Ok(Portrait { desc, labels })
    }

    pub fn descriptor(&self) -> WreathDescriptor {
        self.desc
    }

    pub fn flat_labels(&self) -> Vec<u64> {
        self.labels.iter().flatten().copied().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.labels.iter().flatten().all(|&v| v == 0)
    }

    fn label(&self, level: usize, idx: usize) -> u64 {
        self.labels[level][idx]
    }

    /// Image of an internal-or-leaf path prefix under this automorphism.
    fn path_image(&self, path: &[u64]) -> Vec<u64> {
        let d = self.desc.arity();
        let mut out = Vec::with_capacity(path.len());
        let mut idx = 0usize; // index of the current node within its level
        for (k, &digit) in path.iter().enumerate() {
            let r = self.label(k, idx);
            out.push((digit + r) % d);
            idx = idx * d as usize + digit as usize;
        }
        out
    }

    /// Apply the automorphism to a leaf path of length `depth`.
    pub fn act_on_leaf(&self, path: &[u64]) -> Result<Vec<u64>> {
        if path.len() != self.desc.depth as usize {
            return Err(Error::Parse(format!(
                "leaf path must have length {}",
                self.desc.depth
            )));
        }
        let d = self.desc.arity();
        if path.iter().any(|&v| v >= d) {
            return Err(Error::Parse("leaf digit out of range".into()));
        }
        Ok(self.path_image(path))
    }

    fn check_same(&self, other: &Portrait) -> Result<()> {
        if self.desc != other.desc {
            return Err(Error::DomainMismatch(format!(
                "{:?} vs {:?}",
                self.desc, other.desc
            )));
        }
        Ok(())
    }

    /// Composition, right acts first: label_(a*b)(w) = label_b(w) + label_a(b(w)).
    pub fn compose(&self, other: &Portrait) -> Result<Portrait> {
        self.check_same(other)?;
        let d = self.desc.arity();
        let mut labels = Vec::with_capacity(self.labels.len());
        for l in 0..self.labels.len() {
            let count = self.labels[l].len();
            let mut level = Vec::with_capacity(count);
            for idx in 0..count {
                let path = index_to_path(idx, l, d);
                let image = other.path_image(&path);
                let image_idx = path_to_index(&image, d);
                level.push((other.label(l, idx) + self.label(l, image_idx)) % d);
            }
            labels.push(level);
        }
        Ok(Portrait {
            desc: self.desc,
            labels,
        })
    }

    /// Inverse: label_inv(w) = -label(inv(w)).
    pub fn inverse(&self) -> Portrait {
        let d = self.desc.arity();
        let mut inv = Portrait::identity(self.desc);
        for l in 0..self.labels.len() {
            for idx in 0..self.labels[l].len() {
                let path = index_to_path(idx, l, d);
                // image of path under the inverse, using levels < l already set
                let image = inv.path_image(&path);
                let image_idx = path_to_index(&image, d);
                let r = self.label(l, image_idx);
                inv.labels[l][idx] = (d - r) % d;
            }
        }
        inv
    }

    /// Root label plus the level sums: component i = sum of level-i labels
    /// mod p^n.
    pub fn abelianize(&self) -> Vec<u64> {
        let d = self.desc.arity();
        self.labels
            .iter()
            .map(|level| level.iter().fold(0u64, |acc, &v| (acc + v) % d))
            .collect()
    }
}

fn index_to_path(mut idx: usize, level: usize, d: u64) -> Vec<u64> {
    let mut path = vec![0u64; level];
    for k in (0..level).rev() {
        path[k] = (idx as u64) % d;
        idx /= d as usize;
    }
    path
}

fn path_to_index(path: &[u64], d: u64) -> usize {
    path.iter().fold(0usize, |acc, &v| acc * d as usize + v as usize)
}

impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flat = self.flat_labels();
        let strs: Vec<String> = flat.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl fmt::Debug for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Portrait(p={},n={},depth={};{})",
            self.desc.p, self.desc.n, self.desc.depth, self
        )
    }
}

impl Portrait {
    pub fn parse(desc: WreathDescriptor, s: &str) -> Result<Portrait> {
        let flat: Vec<u64> = s
            .split(',')
            .map(|t| {
                u64::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad label {t:?}")))
            })
            .collect::<Result<_>>()?;
        Portrait::from_flat(desc, &flat)
    }
}

/// All portraits, in ascending flat-label order. Errors if the group order
/// exceeds `cap` (default CLOSURE_CAP).
pub fn enumerate(w: &WreathDescriptor, cap: u64) -> Result<Vec<Portrait>> {
    let order = group_order(w);
    let order_u64 = order
        .to_u64()
        .filter(|&o| o <= cap)
        .ok_or(Error::OrderCapExceeded { cap })?;
    let d = w.arity();
    let m = w.internal_nodes() as usize;
    let mut out = Vec::with_capacity(order_u64 as usize);
    let mut counter = vec![0u64; m];
    loop {
        out.push(Portrait::from_flat(*w, &counter)?);
        // increment the base-d counter, most significant digit first
        let mut k = m;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            counter[k] += 1;
            if counter[k] < d {
                break;
            }
            counter[k] = 0;
        }
    }
}

/// Breadth-first closure of a generating set under composition and inverse,
/// including the identity. Elements come back in ascending canonical order.
pub fn subgroup_closure(generators: &[Portrait], cap: u64) -> Result<Vec<Portrait>> {
    let desc = match generators.first() {
        Some(g) => g.descriptor(),
        None => return Err(Error::Parse("empty generating set".into())),
    };
    let mut muls = Vec::with_capacity(generators.len() * 2);
    for g in generators {
        g.check_same(&generators[0])?;
        muls.push(g.clone());
        muls.push(g.inverse());
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let id = Portrait::identity(desc);
    seen.insert(id.flat_labels());
    let mut frontier = vec![id];
    let mut all = frontier.clone();
    while let Some(g) = frontier.pop() {
        for m in &muls {
            let h = g.compose(m)?;
            let key = h.flat_labels();
            if seen.insert(key) {
                if seen.len() as u64 > cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                frontier.push(h.clone());
                all.push(h);
            }
        }
    }
    all.sort();
    Ok(all)
}

/// Brute-force Frattini data of the full wreath group: enumerate everything,
/// close the set of p-th powers and commutators into a subgroup, and read
/// the elementary abelian quotient rank off the index.
///
/// Returns (rank, maximal subgroup count = (p^rank - 1)/(p - 1)).
pub fn brute_force_frattini(w: &WreathDescriptor, cap: u64) -> Result<(u32, u64)> {
    let all = enumerate(w, cap)?;
    let p = w.p;
    let mut gens: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut gen_portraits = Vec::new();
    // p-th powers
    for g in &all {
        let mut acc = Portrait::identity(*w);
        for _ in 0..p {
            acc = acc.compose(g)?;
        }
        if gens.insert(acc.flat_labels()) {
            gen_portraits.push(acc);
        }
    }
    // commutators
    for g in &all {
        let ginv = g.inverse();
        for h in &all {
            let comm = g.compose(h)?.compose(&ginv)?.compose(&h.inverse())?;
            if gens.insert(comm.flat_labels()) {
                gen_portraits.push(comm);
            }
        }
    }
    let frattini = subgroup_closure(&gen_portraits, cap)?;
    let order = all.len() as u64;
    let phi = frattini.len() as u64;
    debug_assert_eq!(order % phi, 0);
    let quotient = order / phi;
    // quotient = p^rank
    let mut rank = 0u32;
    let mut q = quotient;
    while q > 1 {
        debug_assert_eq!(q % p, 0);
        q /= p;
        rank += 1;
    }
    let count = (p.pow(rank) - 1) / (p - 1);
    Ok((rank, count))
}

/// Closed form (p^s - 1)/(p - 1) for the number of index-p normal subgroups
/// of a free group of rank s.
pub fn free_group_index_p_normal_count(s: u32, p: u64) -> BigUint {
    let p = BigUint::from(p);
    (p.pow(s) - BigUint::one()) / (p - BigUint::one())
}

/// Verification by enumeration: all p^s homomorphisms to Z/p, counting the
/// kernels of nontrivial ones up to the (p-1)-fold scalar equivalence.
pub fn verify_free_group_count(s: u32, p: u64, cap: u64) -> Result<u64> {
    let total = (p as u128).checked_pow(s).ok_or(Error::HomCapExceeded { cap })?;
    if total > cap as u128 {
        return Err(Error::HomCapExceeded { cap });
    }
    let mut kernels: HashSet<Vec<u64>> = HashSet::new();
    for code in 1..total {
        // hom determined by images of the s generators
        let mut v = Vec::with_capacity(s as usize);
        let mut c = code;
        for _ in 0..s {
            v.push((c % p as u128) as u64);
            c /= p as u128;
        }
        // canonical representative of the scalar class: first nonzero
        // coordinate scaled to 1
        let lead = v.iter().find(|&&x| x != 0).copied().unwrap();
        let inv = mod_inv_u64(lead, p);
        let canon: Vec<u64> = v.iter().map(|&x| mulmod(x, inv, p)).collect();
        kernels.insert(canon);
    }
    Ok(kernels.len() as u64)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inv_u64(a: u64, p: u64) -> u64 {
    // p prime
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Orbit of a leaf under a set of portraits (used for transitivity checks).
pub fn leaf_orbit(elements: &[Portrait], leaf: &[u64]) -> Result<Vec<Vec<u64>>> {
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for g in elements {
        seen.insert(g.act_on_leaf(leaf)?);
    }
    let mut out: Vec<Vec<u64>> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Deterministic pseudo-random portrait for tests and examples.
pub fn seeded_portrait(desc: WreathDescriptor, seed: u64) -> Portrait {
    let d = desc.arity();
    let m = desc.internal_nodes() as usize;
    let mut state = seed ^ 0x9e3779b97f4a7c15;
    let mut flat = Vec::with_capacity(m);
    for _ in 0..m {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        flat.push(state % d);
    }
    Portrait::from_flat(desc, &flat).expect("label count matches")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: u64, n: u32, depth: u32) -> WreathDescriptor {
        WreathDescriptor::new(p, n, depth)
    }

    #[test]
    fn orders() {
        assert_eq!(group_order(&w(2, 1, 1)), BigUint::from(2u32));
        assert_eq!(group_order(&w(2, 1, 2)), BigUint::from(8u32));
        assert_eq!(group_order(&w(2, 1, 3)), BigUint::from(128u32));
        assert_eq!(group_order(&w(2, 1, 4)), BigUint::from(32768u32));
        assert_eq!(group_order(&w(2, 2, 2)), BigUint::from(1024u32));
    }

    #[test]
    fn maximal_counts() {
        assert_eq!(maximal_subgroup_count(2, 1, 3), BigUint::from(7u32));
        assert_eq!(maximal_subgroup_count(3, 1, 2), BigUint::from(4u32));
        assert_eq!(maximal_subgroup_count(2, 1, 1), BigUint::from(1u32));
    }

    #[test]
    fn enumeration_matches_order() {
        for desc in [w(2, 1, 1), w(2, 1, 2), w(2, 1, 3), w(3, 1, 2), w(2, 2, 2)] {
            let all = enumerate(&desc, CLOSURE_CAP).unwrap();
            assert_eq!(BigUint::from(all.len()), group_order(&desc));
        }
    }

    #[test]
    fn compose_identity_and_inverse() {
        let desc = w(2, 1, 3);
        let id = Portrait::identity(desc);
        for seed in 0..40u64 {
            let g = seeded_portrait(desc, seed);
            assert_eq!(id.compose(&g).unwrap(), g);
            assert_eq!(g.compose(&id).unwrap(), g);
            assert_eq!(g.compose(&g.inverse()).unwrap(), id);
            assert_eq!(g.inverse().compose(&g).unwrap(), id);
        }
    }

    #[test]
    fn root_swap_involution() {
        let desc = w(2, 1, 2);
        let swap = Portrait::from_flat(desc, &[1, 0, 0]).unwrap();
        assert_eq!(swap.compose(&swap).unwrap(), Portrait::identity(desc));
    }

    #[test]
    fn compose_associative_seeded() {
        for desc in [w(2, 1, 3), w(3, 1, 2), w(2, 2, 2)] {
            for seed in 0..34u64 {
                let a = seeded_portrait(desc, seed);
                let b = seeded_portrait(desc, seed.wrapping_mul(31) + 7);
                let c = seeded_portrait(desc, seed.wrapping_mul(101) + 13);
                let left = a.compose(&b).unwrap().compose(&c).unwrap();
                let right = a.compose(&b.compose(&c).unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn compose_matches_leaf_action() {
        let desc = w(2, 1, 3);
        for seed in 0..20u64 {
            let a = seeded_portrait(desc, seed * 3 + 1);
            let b = seeded_portrait(desc, seed * 5 + 2);
            let ab = a.compose(&b).unwrap();
            for leaf_code in 0..8u64 {
                let leaf = vec![(leaf_code >> 2) & 1, (leaf_code >> 1) & 1, leaf_code & 1];
                let via_b = b.act_on_leaf(&leaf).unwrap();
                let expected = a.act_on_leaf(&via_b).unwrap();
                assert_eq!(ab.act_on_leaf(&leaf).unwrap(), expected);
            }
        }
    }

    #[test]
    fn leaf_action_bijective_and_transitive() {
        for desc in [w(2, 1, 2), w(2, 1, 3), w(3, 1, 2)] {
            let all = enumerate(&desc, CLOSURE_CAP).unwrap();
            let d = desc.arity();
            let leaves: Vec<Vec<u64>> = (0..desc.leaves())
                .map(|code| {
                    let mut v = vec![0u64; desc.depth as usize];
                    let mut c = code;
                    for k in (0..desc.depth as usize).rev() {
                        v[k] = c % d;
                        c /= d;
                    }
                    v
                })
                .collect();
            for g in all.iter().step_by(all.len() / 16 + 1) {
                let images: HashSet<Vec<u64>> = leaves
                    .iter()
                    .map(|leaf| g.act_on_leaf(leaf).unwrap())
                    .collect();
                assert_eq!(images.len(), leaves.len()); // bijection
            }
            // the full group is transitive on leaves
            let orbit = leaf_orbit(&all, &leaves[0]).unwrap();
            assert_eq!(orbit.len(), leaves.len());
        }
    }

    #[test]
    fn abelianize_examples_and_homomorphism() {
        let desc = w(2, 1, 2);
        let id = Portrait::identity(desc);
        assert_eq!(id.abelianize(), vec![0, 0]);
        let swap = Portrait::from_flat(desc, &[1, 0, 0]).unwrap();
        assert_eq!(swap.abelianize(), vec![1, 0]);
        for seed in 0..32u64 {
            let a = seeded_portrait(w(2, 1, 3), seed);
            let b = seeded_portrait(w(2, 1, 3), seed + 1000);
            let ab = a.compose(&b).unwrap();
            let sum: Vec<u64> = a
                .abelianize()
                .iter()
                .zip(b.abelianize())
                .map(|(x, y)| (x + y) % 2)
                .collect();
            assert_eq!(ab.abelianize(), sum);
        }
    }

    #[test]
    fn abelianize_surjective_small_depths() {
        for desc in [w(2, 1, 2), w(2, 1, 3), w(3, 1, 2)] {
            let all = enumerate(&desc, CLOSURE_CAP).unwrap();
            let images: HashSet<Vec<u64>> = all.iter().map(|g| g.abelianize()).collect();
            assert_eq!(images.len() as u64, desc.arity().pow(desc.depth));
        }
    }

    #[test]
    fn frattini_oracle_depths_two_three() {
        assert_eq!(brute_force_frattini(&w(2, 1, 2), CLOSURE_CAP).unwrap(), (2, 3));
        assert_eq!(brute_force_frattini(&w(2, 1, 3), CLOSURE_CAP).unwrap(), (3, 7));
        assert_eq!(brute_force_frattini(&w(2, 1, 1), CLOSURE_CAP).unwrap(), (1, 1));
        // rank equals depth; count matches the closed form
        assert_eq!(brute_force_frattini(&w(3, 1, 2), CLOSURE_CAP).unwrap(), (2, 4));
        assert_eq!(
            BigUint::from(brute_force_frattini(&w(3, 1, 2), CLOSURE_CAP).unwrap().1),
            maximal_subgroup_count(3, 1, 2)
        );
    }

    #[test]
    fn frattini_cap_errors() {
        let err = brute_force_frattini(&w(2, 1, 5), CLOSURE_CAP).unwrap_err();
        assert!(matches!(err, Error::OrderCapExceeded { .. }));
    }

    #[test]
    fn free_group_counts() {
        assert_eq!(free_group_index_p_normal_count(2, 2), BigUint::from(3u32));
        assert_eq!(free_group_index_p_normal_count(1, 5), BigUint::from(1u32));
        assert_eq!(free_group_index_p_normal_count(3, 2), BigUint::from(7u32));
        for (s, p) in [(1u32, 2u64), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3), (3, 3), (3, 5)] {
            let brute = verify_free_group_count(s, p, HOM_CAP).unwrap();
            assert_eq!(BigUint::from(brute), free_group_index_p_normal_count(s, p));
        }
        assert!(matches!(
            verify_free_group_count(40, 3, HOM_CAP),
            Err(Error::HomCapExceeded { .. })
        ));
    }

    #[test]
    fn closure_examples() {
        let desc = w(2, 1, 2);
        let id = Portrait::identity(desc);
        assert_eq!(subgroup_closure(&[id], CLOSURE_CAP).unwrap().len(), 1);

        let root_swap_d1 = Portrait::from_flat(w(2, 1, 1), &[1]).unwrap();
        assert_eq!(subgroup_closure(&[root_swap_d1], CLOSURE_CAP).unwrap().len(), 2);

        // the depth-2 full group from a root swap and one leaf swap
        let root_swap = Portrait::from_flat(desc, &[1, 0, 0]).unwrap();
        let leaf_swap = Portrait::from_flat(desc, &[0, 1, 0]).unwrap();
        let closure = subgroup_closure(&[root_swap, leaf_swap], CLOSURE_CAP).unwrap();
        assert_eq!(closure.len(), 8);
        assert_eq!(BigUint::from(closure.len()), group_order(&desc));
    }

    #[test]
    fn portrait_serialization() {
        let desc = w(2, 1, 3);
        let g = seeded_portrait(desc, 17);
        let text = g.to_string();
        let back = Portrait::parse(desc, &text).unwrap();
        assert_eq!(back, g);
        assert!(Portrait::parse(desc, "1,2,3").is_err());
    }
}
