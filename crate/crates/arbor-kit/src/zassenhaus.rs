//! Factorization over the rationals: Zassenhaus with Hensel lifting.
//!
//! Squarefree part, smallest good odd prime, Cantor-Zassenhaus mod p,
//! quadratic Hensel lifting to past the Mignotte bound, then subset
//! recombination capped at 2^20 candidates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::factor::FactorList;
use crate::fppoly::{factor_mod_p, FpPoly};
use crate::qpoly::{resultant, QPoly};
use crate::rational::Rational;

pub const DEFAULT_RECOMBINATION_CAP: u64 = 1 << 20;

/// Complete factorization of a nonzero rational polynomial into monic
/// irreducibles times a rational unit.
pub fn factor_over_rationals(f: &QPoly, seed: u64) -> Result<FactorList<QPoly, Rational>> {
    factor_over_rationals_with(f, seed, DEFAULT_RECOMBINATION_CAP)
}

pub fn factor_over_rationals_with(
    f: &QPoly,
    seed: u64,
    recomb_cap: u64,
) -> Result<FactorList<QPoly, Rational>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let unit = f.lc();
    let mut factors: Vec<(QPoly, u32)> = Vec::new();
    for (g, mult) in f.squarefree_decomposition() {
        for irr in factor_squarefree(&g, seed, recomb_cap)? {
            factors.push((irr, mult));
        }
    }
    factors.sort();
    Ok(FactorList::new(unit, factors))
}

pub fn is_irreducible(f: &QPoly, seed: u64) -> Result<bool> {
    if f.is_zero() || f.deg() == 0 {
        return Ok(false);
    }
    let fl = factor_over_rationals(f, seed)?;
    Ok(fl.factors().len() == 1 && fl.factors()[0].1 == 1)
}

/// Factor a monic squarefree rational polynomial into monic irreducibles.
fn factor_squarefree(g: &QPoly, seed: u64, recomb_cap: u64) -> Result<Vec<QPoly>> {
    debug_assert!(g.is_monic());
    let mut out = Vec::new();
    let mut g = g.clone();
    if g.deg() == 0 {
        return Ok(out);
    }
    // strip a root at zero so constant terms are nonzero below
    if g.coeff(0).is_zero() {
        out.push(QPoly::x());
        g = g.div_exact(&QPoly::x())?;
    }
    if g.deg() == 0 {
        return Ok(out);
    }
    if g.deg() == 1 {
        out.push(g);
        return Ok(out);
    }
    let (_, ints) = g.to_integer_primitive();
    for h in zassenhaus_integer(&ints, seed, recomb_cap)? {
        out.push(QPoly::from_bigint_coeffs(&h).monic());
    }
    Ok(out)
}

/// Zassenhaus on a primitive squarefree integer polynomial with nonzero
/// constant term; returns the primitive integer irreducible factors.
fn zassenhaus_integer(f: &[BigInt], seed: u64, recomb_cap: u64) -> Result<Vec<Vec<BigInt>>> {
    let n = f.len() - 1;
    debug_assert!(n >= 2);
    let fq = QPoly::from_bigint_coeffs(f);
    let lc = f[n].clone();

    // smallest odd prime not dividing lc * disc(f)
    let disc = resultant(&fq, &fq.derivative())?;
    debug_assert!(disc.denom().is_one());
    let screen = (&lc * disc.numer()).abs();
    let mut p = 3u64;
    loop {
        if is_prime_u64(p) && !(&screen % BigInt::from(p)).is_zero() {
            break;
        }
        p += 2;
    }

    let fp = FpPoly::from_qpoly(&fq, p).expect("p does not divide lc");
    let local = factor_mod_p(&fp, seed)?;
    let local_factors: Vec<FpPoly> = local.factors().iter().map(|(g, _)| g.clone()).collect();
    debug_assert!(local.factors().iter().all(|(_, m)| *m == 1));
    if local_factors.len() == 1 {
        return Ok(vec![f.to_vec()]);
    }

    // p^k > 2 * |lc| * 2^n * ||f||_2
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound: BigInt = lc.abs() * (BigInt::one() << n) * norm2;
    let target: BigInt = &bound * 2 + 1;
    let mut modulus = BigInt::from(p);
    let mut k = 1u32;
    while modulus < target {
        modulus = &modulus * BigInt::from(p);
        k += 1;
    }

    let lifted = hensel_lift_tree(f, &local_factors, p, k, &modulus)?;
    recombine(f, lifted, &modulus, recomb_cap)
}

// ---- arithmetic on polynomials with coefficients mod m (canonical in [0, m)) ----

fn zm_trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn zm_reduce(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.iter().map(|c| c.mod_floor(m)).collect();
    zm_trim(&mut out);
    out
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero);
        out.push(x.mod_floor(m));
    }
    zm_trim(&mut out);
    out
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero);
        out.push(x.mod_floor(m));
    }
    zm_trim(&mut out);
    out
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    for c in out.iter_mut() {
        *c = c.mod_floor(m);
    }
    zm_trim(&mut out);
    out
}

/// Division by a monic divisor, coefficients mod m.
fn zm_divrem_monic(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(d.last().is_some_and(|c| c.is_one()));
    let dd = d.len() - 1;
    if a.len() <= dd {
        return (vec![], a.to_vec());
    }
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let q = rem[i].mod_floor(m);
        if q.is_zero() {
            rem[i] = BigInt::zero();
            continue;
        }
        quot[i - dd] = q.clone();
        for (j, c) in d.iter().enumerate() {
            let idx = i - dd + j;
            rem[idx] = (&rem[idx] - &q * c).mod_floor(m);
        }
    }
    zm_trim(&mut quot);
    zm_trim(&mut rem);
    (quot, rem)
}

/// One quadratic Hensel step: from f = g*h (mod m), sigma*g + tau*h = 1
/// (mod m), h monic, to the same data mod m^2 (all inputs canonical mod the
/// new modulus m2 on return).
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    sigma: &[BigInt],
    tau: &[BigInt],
    m2: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let f2 = zm_reduce(f, m2);
    let g = zm_reduce(g, m2);
    let h = zm_reduce(h, m2);
    let sigma = zm_reduce(sigma, m2);
    let tau = zm_reduce(tau, m2);

    let e = zm_sub(&f2, &zm_mul(&g, &h, m2), m2);
    let (q, r) = zm_divrem_monic(&zm_mul(&sigma, &e, m2), &h, m2);
    let g_new = zm_add(&zm_add(&g, &zm_mul(&tau, &e, m2), m2), &zm_mul(&q, &g, m2), m2);
    let h_new = zm_add(&h, &r, m2);

    let b = zm_sub(
        &zm_add(
            &zm_mul(&sigma, &g_new, m2),
            &zm_mul(&tau, &h_new, m2),
            m2,
        ),
        &[BigInt::one()],
        m2,
    );
    let (c, d) = zm_divrem_monic(&zm_mul(&sigma, &b, m2), &h_new, m2);
    let sigma_new = zm_sub(&sigma, &d, m2);
    let tau_new = zm_sub(
        &zm_sub(&tau, &zm_mul(&tau, &b, m2), m2),
        &zm_mul(&c, &g_new, m2),
        m2,
    );
    (g_new, h_new, sigma_new, tau_new)
}

/// Lift the monic local factors so that f = lc(f) * prod(lifted) mod p^k,
/// each lifted factor monic and congruent to its local factor mod p.
fn hensel_lift_tree(
    f: &[BigInt],
    local: &[FpPoly],
    p: u64,
    k: u32,
    modulus: &BigInt,
) -> Result<Vec<Vec<BigInt>>> {
    let mut out = Vec::with_capacity(local.len());
    lift_rec(f, local, p, k, modulus, &mut out)?;
    Ok(out)
}

fn lift_rec(
    f: &[BigInt],
    local: &[FpPoly],
    p: u64,
    k: u32,
    modulus: &BigInt,
    out: &mut Vec<Vec<BigInt>>,
) -> Result<()> {
    if local.len() == 1 {
        // f is lc * (monic lift); normalize to the monic associate mod modulus
        let lc = f.last().unwrap().mod_floor(modulus);
        let inv = mod_inverse(&lc, modulus)
            .ok_or_else(|| Error::Parse("leading coefficient not a unit".into()))?;
        let mut monic: Vec<BigInt> =
            f.iter().map(|c| (c * &inv).mod_floor(modulus)).collect();
        zm_trim(&mut monic);
        out.push(monic);
        return Ok(());
    }
    let mid = local.len() / 2;
    let (left, right) = local.split_at(mid);

    // g0 = lc(f) * prod(left), h0 = prod(right), all mod p
    let pbig = BigInt::from(p);
    let lc_mod_p = f.last().unwrap().mod_floor(&pbig);
    let mut g0 = FpPoly::constant(p, bigint_to_u64(&lc_mod_p));
    for gi in left {
        g0 = g0.mul(gi)?;
    }
    let mut h0 = FpPoly::one(p);
    for hi in right {
        h0 = h0.mul(hi)?;
    }
    let (gcd, s, t) = fp_xgcd(&g0, &h0)?;
    if gcd.deg() != 0 {
        return Err(Error::Parse("local factors not coprime".into()));
    }
    // normalize bezout so s*g0 + t*h0 = 1
    let cinv = fp_inv(gcd.coeff(0), p);
    let s = s.scale(cinv);
    let t = t.scale(cinv);

    let mut g = fp_to_bigints(&g0);
    let mut h = fp_to_bigints(&h0);
    let mut sigma = fp_to_bigints(&s);
    let mut tau = fp_to_bigints(&t);

    let mut e = 1u32;
    while e < k {
        let e2 = (2 * e).min(k);
        let m2 = pbig.pow(e2);
        let (g2, h2, s2, t2) = hensel_step(f, &g, &h, &sigma, &tau, &m2);
        g = g2;
        h = h2;
        sigma = s2;
        tau = t2;
        e = e2;
    }
    let g = zm_reduce(&g, modulus);
    let h = zm_reduce(&h, modulus);

    lift_rec(&g, left, p, k, modulus, out)?;
    lift_rec(&h, right, p, k, modulus, out)?;
    Ok(())
}

fn bigint_to_u64(v: &BigInt) -> u64 {
    use num_traits::ToPrimitive;
    v.to_u64().expect("residue fits u64")
}

fn fp_to_bigints(f: &FpPoly) -> Vec<BigInt> {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // p prime
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Extended gcd over F_p: returns (g, s, t) with s*a + t*b = g.
fn fp_xgcd(a: &FpPoly, b: &FpPoly) -> Result<(FpPoly, FpPoly, FpPoly)> {
    let p = a.modulus();
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = FpPoly::one(p);
    let mut s1 = FpPoly::zero(p);
    let mut t0 = FpPoly::zero(p);
    let mut t1 = FpPoly::one(p);
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = s0.sub(&q.mul(&s1)?)?;
        let t = t0.sub(&q.mul(&t1)?)?;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    Ok((r0, s0, t0))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

fn symmetric(v: &BigInt, m: &BigInt) -> BigInt {
    let r = v.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn symmetric_poly(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.iter().map(|c| symmetric(c, m)).collect();
    zm_trim(&mut out);
    out
}

fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|c| c / &g).collect()
}

/// Subset recombination of the lifted modular factors into true factors of f.
fn recombine(
    f: &[BigInt],
    lifted: Vec<Vec<BigInt>>,
    modulus: &BigInt,
    cap: u64,
) -> Result<Vec<Vec<BigInt>>> {
    let mut remaining = f.to_vec();
    let mut pool = lifted;
    let mut found: Vec<Vec<BigInt>> = Vec::new();
    let mut tested: u64 = 0;
    let mut size = 1usize;
    'outer: while 2 * size <= pool.len() {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            tested += 1;
            if tested > cap {
                return Err(Error::RecombinationCapExceeded { cap });
            }
            if let Some(h) = try_subset(&remaining, &pool, &combo, modulus) {
                // divide out, drop used local factors, stay at this size
                remaining = exact_div_z(&remaining, &h);
                let used: std::collections::BTreeSet<usize> = combo.iter().copied().collect();
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !used.contains(i))
                    .map(|(_, g)| g)
                    .collect();
                found.push(h);
                continue 'outer;
            }
            if !next_combination(&mut combo, pool.len()) {
                break;
            }
        }
        size += 1;
    }
    if remaining.len() > 1 {
        found.push(primitive_part(&remaining));
    }
    Ok(found)
}

/// Candidate check: does lc(f) * prod(pool[combo]) reduce (symmetrically) to a
/// true factor of f over Z?
fn try_subset(
    f: &[BigInt],
    pool: &[Vec<BigInt>],
    combo: &[usize],
    modulus: &BigInt,
) -> Option<Vec<BigInt>> {
    let lc = f.last().unwrap();
    // cheap filter on the constant coefficient
    let f0 = &f[0];
    let mut c0 = lc.mod_floor(modulus);
    for &i in combo {
        c0 = (&c0 * &pool[i][0]).mod_floor(modulus);
    }
    let c0 = symmetric(&c0, modulus);
    if c0.is_zero() {
        return None;
    }
    // constant term of the primitive candidate divides lc * f(0)
    if !((lc * f0).mod_floor(&c0.abs())).is_zero() {
        return None;
    }
    let mut prod = vec![lc.mod_floor(modulus)];
    for &i in combo {
        prod = zm_mul(&prod, &pool[i], modulus);
    }
    let cand = primitive_part(&symmetric_poly(&prod, modulus));
    divides_z(f, &cand).then_some(cand)
}

fn divides_z(f: &[BigInt], d: &[BigInt]) -> bool {
    if d.len() < 2 || d.len() > f.len() {
        return false;
    }
    let fq = QPoly::from_bigint_coeffs(f);
    let dq = QPoly::from_bigint_coeffs(d);
    match fq.div_rem(&dq) {
        Ok((_, r)) => r.is_zero(),
        Err(_) => false,
    }
}

fn exact_div_z(f: &[BigInt], d: &[BigInt]) -> Vec<BigInt> {
    let fq = QPoly::from_bigint_coeffs(f);
    let dq = QPoly::from_bigint_coeffs(d);
    let q = fq.div_exact(&dq).expect("checked divisor");
    let (_, ints) = q.to_integer_primitive();
    ints
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = 37u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes up to and including `bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return vec![];
    }
    let mut sieve = vec![true; bound as usize + 1];
    sieve[0] = false;
    if bound >= 1 {
        sieve[1] = false;
    }
    let mut i = 2usize;
    while i * i <= bound as usize {
        if sieve[i] {
            let mut j = i * i;
            while j <= bound as usize {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}
