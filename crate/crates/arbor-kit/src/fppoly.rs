//! Dense univariate polynomials over a prime field F_p.
//!
//! The modulus rides on each polynomial; mixing moduli is a domain-mismatch
//! error. Factorization is squarefree decomposition, then distinct-degree,
//! then Cantor-Zassenhaus equal-degree splitting with seeded randomness.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factor::FactorList;
use crate::qpoly::QPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = (a as u128 + b as u128) % p as u128;
    s as u64
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    let s = (a as u128 + p as u128 - b as u128 % p as u128) % p as u128;
    s as u64
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

fn invm(a: u64, p: u64) -> u64 {
    // p prime, a nonzero mod p
    powm(a, p - 2, p)
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    /// Reduce a rational polynomial mod p. None if a denominator vanishes mod p.
    pub fn from_qpoly(f: &QPoly, p: u64) -> Option<FpPoly> {
        let pb = num_bigint::BigInt::from(p);
        let mut coeffs = Vec::with_capacity(f.coeffs().len());
        for c in f.coeffs() {
            let den = c.denom().mod_floor(&pb);
            if den.is_zero() {
                return None;
            }
            let num = c.numer().mod_floor(&pb);
            let den_u = den.to_u64().unwrap();
            let num_u = num.to_u64().unwrap();
            coeffs.push(mulm(num_u, invm(den_u, p), p));
        }
        Some(FpPoly::new(p, coeffs))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn check_domain(&self, other: &FpPoly) -> Result<()> {
        if self.p != other.p {
            return Err(Error::DomainMismatch(format!(
                "F_{} vs F_{}",
                self.p, other.p
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check_domain(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(addm(self.coeff(i), other.coeff(i), self.p));
        }
        Ok(FpPoly::new(self.p, out))
    }

    pub fn sub(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check_domain(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(subm(self.coeff(i), other.coeff(i), self.p));
        }
        Ok(FpPoly::new(self.p, out))
    }

    pub fn mul(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check_domain(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(FpPoly::zero(self.p));
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = addm(out[i + j], mulm(a, b, self.p), self.p);
            }
        }
        Ok(FpPoly::new(self.p, out))
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        FpPoly::new(
            self.p,
            self.coeffs.iter().map(|&a| mulm(a, c, self.p)).collect(),
        )
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invm(self.lc(), self.p))
    }

    pub fn div_rem(&self, divisor: &FpPoly) -> Result<(FpPoly, FpPoly)> {
        self.check_domain(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let db = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((FpPoly::zero(self.p), self.clone()));
        }
        let p = self.p;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - db];
        let inv_lc = invm(divisor.lc(), p);
        for i in (db..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            let q = mulm(rem[i], inv_lc, p);
            quot[i - db] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = i - db + j;
                rem[idx] = subm(rem[idx], mulm(q, d, p), p);
            }
        }
        Ok((FpPoly::new(p, quot), FpPoly::new(p, rem)))
    }

    pub fn rem(&self, divisor: &FpPoly) -> Result<FpPoly> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn div_exact(&self, divisor: &FpPoly) -> Result<FpPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::DomainMismatch("inexact division".into()));
        }
        Ok(q)
    }

    pub fn gcd(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check_domain(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulm(c, (i as u64) % self.p, self.p))
            .collect();
        FpPoly::new(self.p, coeffs)
    }

    pub fn evaluate(&self, at: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = addm(mulm(acc, at, self.p), c, self.p);
        }
        acc
    }

    /// self^e mod m, with a big exponent.
    pub fn pow_mod(&self, e: &BigUint, m: &FpPoly) -> Result<FpPoly> {
        self.check_domain(m)?;
        let mut base = self.rem(m)?;
        let mut acc = FpPoly::one(self.p);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base)?.rem(m)?;
            }
            if i + 1 < bits {
                base = base.mul(&base)?.rem(m)?;
            }
        }
        Ok(acc)
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.p
            .cmp(&other.p)
            .then(self.deg().cmp(&other.deg()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl std::fmt::Display for FpPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => {
                    if c == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "{c}*x")?;
                    }
                }
                _ => {
                    if c == 1 {
                        write!(f, "x^{k}")?;
                    } else {
                        write!(f, "{c}*x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FpPoly[{}]({})", self.p, self)
    }
}

/// Complete irreducible factorization over F_p.
///
/// Deterministic for a fixed seed: the equal-degree splitting stream is
/// derived from the seed and the input polynomial, so results do not depend
/// on call order.
pub fn factor_mod_p(f: &FpPoly, seed: u64) -> Result<FactorList<FpPoly, u64>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let unit = f.lc();
    let monic = f.monic();
    let mut list: Vec<(FpPoly, u32)> = Vec::new();
    if monic.deg() == 0 {
        return Ok(FactorList::new(unit, list));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fp_fingerprint(f));
    for (g, mult) in squarefree_decomposition_fp(&monic)? {
        for (h, d) in distinct_degree(&g)? {
            let mut irreducibles = Vec::new();
            equal_degree_split(&h, d, &mut rng, &mut irreducibles)?;
            for irr in irreducibles {
                list.push((irr, mult));
            }
        }
    }
    list.sort();
    Ok(FactorList::new(unit, list))
}

fn fp_fingerprint(f: &FpPoly) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &c in &f.coeffs {
        h ^= c;
        h = h.wrapping_mul(0x100000001b3);
    }
    h ^ f.p
}

/// Squarefree decomposition of a monic polynomial over F_p.
fn squarefree_decomposition_fp(f: &FpPoly) -> Result<Vec<(FpPoly, u32)>> {
    let p = f.p;
    let mut out: Vec<(FpPoly, u32)> = Vec::new();
    let fp = f.derivative();
    let mut c = if fp.is_zero() { f.clone() } else { f.gcd(&fp)? };
    let mut w = f.div_exact(&c)?;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let z = w.div_exact(&y)?;
        if z.deg() > 0 {
            out.push((z, i));
        }
        w = y;
        c = c.div_exact(&w)?;
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power: take the p-th root (a^p = a on F_p coefficients)
        let mut root = Vec::with_capacity(c.deg() / p as usize + 1);
        for (k, &a) in c.coeffs.iter().enumerate() {
            if (k as u64).is_multiple_of(p) {
                root.push(a);
            } else if a != 0 {
                return Err(Error::DomainMismatch("not a p-th power".into()));
            }
        }
        for (g, m) in squarefree_decomposition_fp(&FpPoly::new(p, root))? {
            out.push((g, m * p as u32));
        }
    }
    Ok(out)
}

/// Distinct-degree factorization of a monic squarefree polynomial: returns
/// (product of all irreducible factors of degree d, d) pairs.
fn distinct_degree(f: &FpPoly) -> Result<Vec<(FpPoly, usize)>> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rem = f.clone();
    let mut h = FpPoly::x(p).rem(&rem)?;
    let mut d = 0usize;
    let pe = BigUint::from(p);
    while rem.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&pe, &rem)?;
        let diff = h.sub(&FpPoly::x(p))?;
        let g = diff.gcd(&rem)?;
        if g.deg() > 0 {
            out.push((g.clone(), d));
            rem = rem.div_exact(&g)?;
            h = h.rem(&rem)?;
        }
    }
    if rem.deg() > 0 {
        out.push((rem.clone(), rem.deg()));
    }
    Ok(out)
}

/// Cantor-Zassenhaus equal-degree splitting: f is monic squarefree, all of
/// whose irreducible factors have degree d.
fn equal_degree_split(
    f: &FpPoly,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<FpPoly>,
) -> Result<()> {
    if f.deg() == d {
        out.push(f.clone());
        return Ok(());
    }
    let p = f.p;
    let split = loop {
        let a = random_poly(p, f.deg(), rng);
        if a.deg() == 0 {
            continue;
        }
        let g = a.gcd(f)?;
        if g.deg() > 0 && g.deg() < f.deg() {
            break g; // lucky split
        }
        let candidate = if p == 2 {
            // trace map sum_{i<d} a^(2^i)
            let mut t = FpPoly::zero(2);
            let mut term = a.rem(f)?;
            for _ in 0..d {
                t = t.add(&term)?;
                term = term.mul(&term.clone())?.rem(f)?;
            }
            t
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = a.pow_mod(&e, f)?;
            b.sub(&FpPoly::one(p))?
        };
        if candidate.is_zero() {
            continue;
        }
        let g = candidate.gcd(f)?;
        if g.deg() > 0 && g.deg() < f.deg() {
            break g;
        }
    };
    let other = f.div_exact(&split)?;
    equal_degree_split(&split.monic(), d, rng, out)?;
    equal_degree_split(&other.monic(), d, rng, out)?;
    Ok(())
}

fn random_poly(p: u64, max_deg: usize, rng: &mut ChaCha8Rng) -> FpPoly {
    let deg = rng.gen_range(1..=max_deg.max(1));
    let coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
    FpPoly::new(p, coeffs)
}

/// Degree multiset of the irreducible factors, with multiplicity.
pub fn factor_degree_multiset(f: &FpPoly, seed: u64) -> Result<Vec<usize>> {
    let factors = factor_mod_p(f, seed)?;
    let mut degs = Vec::new();
    for (g, m) in factors.factors() {
        for _ in 0..*m {
            degs.push(g.deg());
        }
    }
    degs.sort_unstable();
    Ok(degs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, coeffs: &[u64]) -> FpPoly {
        FpPoly::new(p, coeffs.to_vec())
    }

    #[test]
    fn basic_arithmetic() {
        let p = 5;
        let a = fp(p, &[4, 1]); // x + 4
        let b = fp(p, &[1, 1]); // x + 1
        assert_eq!(a.mul(&b).unwrap(), fp(p, &[4, 0, 1])); // x^2 + 4 = x^2 - 1
        let (q, r) = fp(p, &[4, 0, 1]).div_rem(&a).unwrap();
        assert_eq!(q, b);
        assert!(r.is_zero());
    }

    #[test]
    fn domain_mismatch_rejected() {
        let a = fp(5, &[1, 1]);
        let b = fp(7, &[1, 1]);
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn factor_x2_minus_1_mod_5() {
        // x^2 - 1 = (x+1)(x+4) mod 5
        let f = fp(5, &[4, 0, 1]);
        let fl = factor_mod_p(&f, 42).unwrap();
        let factors: Vec<_> = fl.factors().to_vec();
        assert_eq!(
            factors,
            vec![(fp(5, &[1, 1]), 1), (fp(5, &[4, 1]), 1)]
        );
        assert_eq!(fl.unit(), &1);
    }

    #[test]
    fn irreducible_mod_3() {
        // x^2 + 1 is irreducible mod 3
        let f = fp(3, &[1, 0, 1]);
        let fl = factor_mod_p(&f, 42).unwrap();
        assert_eq!(fl.factors().len(), 1);
        assert_eq!(fl.factors()[0], (f.clone(), 1));
    }

    /// Brute-force oracle: all monic divisors of degree <= half, by trial
    /// division over F_p.
    fn brute_force_degrees(f: &FpPoly) -> Vec<usize> {
        let p = f.modulus();
        let mut rem = f.monic();
        let mut degs = Vec::new();
        let mut d = 1usize;
        while rem.deg() >= 1 {
            if rem.deg() < 2 * d {
                degs.push(rem.deg());
                break;
            }
            // enumerate monic degree-d polys
            let total = (p as u128).pow(d as u32);
            let mut found = false;
            for code in 0..total {
                let mut c = code;
                let mut coeffs = Vec::with_capacity(d + 1);
                for _ in 0..d {
                    coeffs.push((c % p as u128) as u64);
                    c /= p as u128;
                }
                coeffs.push(1);
                let cand = FpPoly::new(p, coeffs);
                let (q, r) = rem.div_rem(&cand).unwrap();
                if r.is_zero() {
                    degs.push(d);
                    rem = q;
                    found = true;
                    break;
                }
            }
            if !found {
                d += 1;
            }
        }
        degs.sort_unstable();
        degs
    }

    #[test]
    fn quartic_mod_7_frozen_multiset() {
        // x^4 - 2x^2 - 1 mod 7 = x^4 + 5x^2 + 6
        let f = fp(7, &[6, 0, 5, 0, 1]);
        let oracle = brute_force_degrees(&f);
        assert_eq!(oracle, vec![1, 1, 2]); // frozen from the oracle
        assert_eq!(factor_degree_multiset(&f, 42).unwrap(), vec![1, 1, 2]);
    }

    #[test]
    fn merge_property_random_products() {
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for p in [3u64, 5, 7, 13] {
            for _ in 0..15 {
                let mk = |deg: usize, next: &mut dyn FnMut() -> u64| {
                    let mut v: Vec<u64> = (0..=deg).map(|_| next() % p).collect();
                    let last = v.len() - 1;
                    if v[last] == 0 {
                        v[last] = 1;
                    }
                    FpPoly::new(p, v)
                };
                let da = (next() % 8 + 1) as usize;
                let db = (next() % 8 + 1) as usize;
                let a = mk(da, &mut next);
                let b = mk(db, &mut next);
                let ab = a.mul(&b).unwrap();
                let fa = factor_mod_p(&a, 7).unwrap();
                let fb = factor_mod_p(&b, 7).unwrap();
                let fab = factor_mod_p(&ab, 7).unwrap();
                // merged factorization equals the product's factorization
                let merged = fa.merge(&fb, |u, v| mulm(*u, *v, p));
                assert_eq!(fab, merged, "p={p} a={a} b={b}");
                // round-trip: expanding reproduces the input
                let mut prod = FpPoly::constant(p, *fab.unit());
                for (g, m) in fab.factors() {
                    for _ in 0..*m {
                        prod = prod.mul(g).unwrap();
                    }
                }
                assert_eq!(prod, ab);
                // degree bookkeeping
                let degsum: usize = fab.factors().iter().map(|(g, m)| g.deg() * *m as usize).sum();
                assert_eq!(degsum, ab.deg());
            }
        }
    }

    #[test]
    fn char_2_factorization() {
        // x^4 + x + 1 is irreducible over F_2; x^2+1 = (x+1)^2
        let f = fp(2, &[1, 1, 0, 0, 1]);
        let fl = factor_mod_p(&f, 9).unwrap();
        assert_eq!(fl.factors(), &[(f.clone(), 1)]);
        let g = fp(2, &[1, 0, 1]);
        let fl = factor_mod_p(&g, 9).unwrap();
        assert_eq!(fl.factors(), &[(fp(2, &[1, 1]), 2)]);
        // squarefree split: x^2 + x = x(x+1) exercises the trace-map branch
        let h = fp(2, &[0, 1, 1]);
        let fl = factor_mod_p(&h, 9).unwrap();
        assert_eq!(fl.factors(), &[(fp(2, &[0, 1]), 1), (fp(2, &[1, 1]), 1)]);
        // and a split pair of quadratics: (x^2+x+1)(x^2+x+1) is not
        // squarefree, so use (x^2+x+1) * x * (x+1)
        let q = fp(2, &[1, 1, 1]);
        let prod = q.mul(&h).unwrap();
        let fl = factor_mod_p(&prod, 9).unwrap();
        assert_eq!(fl.factors().len(), 3);
    }

    #[test]
    fn pth_power_multiplicities() {
        // (x+1)^3 over F_3 exercises the p-th-root branch
        let lin = fp(3, &[1, 1]);
        let f = lin.mul(&lin).unwrap().mul(&lin).unwrap();
        let fl = factor_mod_p(&f, 1).unwrap();
        assert_eq!(fl.factors(), &[(lin, 3)]);
    }
}
