//! Unicritical dynamics over the rationals: critical orbits, PCF
//! certificates, post-critical tests, and good-reduction screening.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qpoly::{parse_poly, QPoly};
use crate::rational::{parse_rational, Rational};
use crate::zassenhaus::{is_prime_u64, primes_up_to};

/// The map f(x) = x^(p^n) + c. The finite critical point is 0 (with
/// multiplicity d-1); infinity is the other critical point and is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnicriticalMap {
    p: u64,
    n: u32,
    c: Rational,
}

impl UnicriticalMap {
    pub fn new(p: u64, n: u32, c: Rational) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::Parse("n must be positive".into()));
        }
        let d = (p as u128).checked_pow(n);
        match d {
            Some(d) if d >= 2 && d <= u32::MAX as u128 => {}
            _ => return Err(Error::Parse("degree p^n out of range".into())),
        }
        Ok(UnicriticalMap { p, n, c })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn degree(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// f(x) as a polynomial.
    pub fn poly(&self) -> QPoly {
        let mut coeffs = vec![Rational::zero(); self.degree() as usize + 1];
        coeffs[0] = self.c.clone();
        coeffs[self.degree() as usize] = Rational::one();
        QPoly::new(coeffs)
    }

    /// f^k(x) by repeated composition.
    pub fn iterate_poly(&self, k: u32) -> QPoly {
        let f = self.poly();
        let mut acc = QPoly::x();
        for _ in 0..k {
            acc = f.compose(&acc);
        }
        acc
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        let d = self.degree();
        let mut acc = Rational::one();
        let mut base = x.clone();
        let mut e = d;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc + &self.c
    }

    /// Parse "x^2-1" or "p=2,n=1,c=-1".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('=') {
            let mut p = None;
            let mut n = None;
            let mut c = None;
            for part in s.split(',') {
                let (key, value) = part
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("bad map component {part:?}")))?;
                match key.trim() {
                    "p" => {
                        p = Some(value.trim().parse::<u64>().map_err(|_| {
                            Error::Parse(format!("bad prime {value:?}"))
                        })?)
                    }
                    "n" => {
                        n = Some(value.trim().parse::<u32>().map_err(|_| {
                            Error::Parse(format!("bad exponent {value:?}"))
                        })?)
                    }
                    "c" => c = Some(parse_rational(value)?),
                    other => return Err(Error::Parse(format!("unknown key {other:?}"))),
                }
            }
            let (p, n, c) = match (p, n, c) {
                (Some(p), Some(n), Some(c)) => (p, n, c),
                _ => return Err(Error::Parse("map needs p=, n=, c=".into())),
            };
            return UnicriticalMap::new(p, n, c);
        }
        // polynomial shorthand: must be x^d + c with d = p^n
        let poly = parse_poly(s)?;
        let d = poly
            .degree()
            .ok_or_else(|| Error::Parse("zero polynomial".into()))?;
        if d < 2 {
            return Err(Error::Parse("degree must be at least 2".into()));
        }
        if !poly.lc().is_one() {
            return Err(Error::Parse("map must be monic".into()));
        }
        for k in 1..d {
            if !poly.coeff(k).is_zero() {
                return Err(Error::Parse(
                    "map must have the shape x^(p^n) + c".into(),
                ));
            }
        }
        let (p, n) = prime_power(d as u64)
            .ok_or_else(|| Error::Parse(format!("degree {d} is not a prime power")))?;
        UnicriticalMap::new(p, n, poly.coeff(0))
    }
}

impl fmt::Display for UnicriticalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly())
    }
}

fn prime_power(d: u64) -> Option<(u64, u32)> {
    if d < 2 {
        return None;
    }
    let mut p = 2u64;
    loop {
        if p * p > d {
            return Some((d, 1)); // d itself prime
        }
        if d.is_multiple_of(p) {
            let mut m = d;
            let mut n = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                n += 1;
            }
            return if m == 1 { Some((p, n)) } else { None };
        }
        p += 1;
    }
}

/// The forward orbit of the critical point 0 under a PCF map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalOrbit {
    /// 0 = f^0(0), f(0), f^2(0), ... — the N distinct orbit points in order.
    pub points: Vec<Rational>,
    pub tail_length: usize,
    pub cycle_length: usize,
}

impl CriticalOrbit {
    /// Orbit size N = tail + cycle.
    pub fn size(&self) -> usize {
        self.points.len()
    }
}

/// Why a map is certified not post-critically finite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NotPcfCertificate {
    /// |f^index(0)| exceeds max(2, |c|+1), so the orbit strictly escapes.
    Escape { index: usize, value: String },
    /// denom(f^index(0)) exceeds denom(c)^2, so denominators grow strictly
    /// from here on and the orbit can never repeat.
    DenominatorGrowth { index: usize, value: String },
}

/// Critical orbit, or a certificate that the orbit is infinite.
pub fn critical_orbit(map: &UnicriticalMap) -> std::result::Result<CriticalOrbit, NotPcfCertificate> {
    let escape: Rational = {
        let two = Rational::from_integer(2.into());
        let bound = map.c().abs() + Rational::one();
        if bound > two {
            bound
        } else {
            two
        }
    };
    let denom_bound: BigInt = map.c().denom() * map.c().denom();
    let mut seen: HashMap<Rational, usize> = HashMap::new();
    let mut z = Rational::zero();
    let mut points = Vec::new();
    for index in 0.. {
        if z.abs() > escape {
            return Err(NotPcfCertificate::Escape {
                index,
                value: z.to_string(),
            });
        }
        if z.denom() > &denom_bound {
            return Err(NotPcfCertificate::DenominatorGrowth {
                index,
                value: z.to_string(),
            });
        }
        if let Some(&first) = seen.get(&z) {
            return Ok(CriticalOrbit {
                points,
                tail_length: first,
                cycle_length: index - first,
            });
        }
        seen.insert(z.clone(), index);
        points.push(z.clone());
        z = map.apply(&z);
    }
    unreachable!()
}

/// True iff alpha = f^i(0) for some i >= 1.
pub fn strictly_post_critical(map: &UnicriticalMap, alpha: &Rational) -> Result<bool> {
    let orbit = critical_orbit(map).map_err(|c| Error::NotPcf(format!("{c:?}")))?;
    let mut z = map.apply(&Rational::zero());
    for _ in 0..orbit.size() {
        if &z == alpha {
            return Ok(true);
        }
        z = map.apply(&z);
    }
    Ok(false)
}

/// The critical points checked by the collision condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CriticalPoint {
    Zero,
    Infinity,
}

/// Outcome of checking f^i(a) != f^j(b) unless a = b = 0 and i = j, over
/// a = 0, b in {0, infinity}, 0 <= i, j <= N.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CollisionOutcome {
    Pass,
    /// First violating tuple (a = 0, b, i, j) in lexicographic order.
    Witness {
        b: CriticalPoint,
        i: usize,
        j: usize,
    },
}

pub fn collision_condition(map: &UnicriticalMap) -> Result<CollisionOutcome> {
    let orbit = critical_orbit(map).map_err(|c| Error::NotPcf(format!("{c:?}")))?;
    let n = orbit.size();
    // orbit values f^i(0) for 0 <= i <= N
    let mut values = orbit.points.clone();
    values.push(map.apply(values.last().unwrap()));
    for (bi, b) in [CriticalPoint::Zero, CriticalPoint::Infinity]
        .into_iter()
        .enumerate()
    {
        for i in 0..=n {
            for j in 0..=n {
                let exempt = bi == 0 && i == j;
                if exempt {
                    continue;
                }
                let collides = match b {
                    // f^j(infinity) = infinity never meets a finite value
                    CriticalPoint::Infinity => false,
                    CriticalPoint::Zero => values[i] == values[j],
                };
                if collides {
                    return Ok(CollisionOutcome::Witness { b, i, j });
                }
            }
        }
    }
    Ok(CollisionOutcome::Pass)
}

/// Primes q <= bound at which explicit good separable reduction FAILS:
/// q divides denom(c), or q = p (the reduced derivative vanishes).
pub fn good_reduction_failures(map: &UnicriticalMap, bound: u64) -> Vec<u64> {
    let denom = map.c().denom().clone();
    primes_up_to(bound)
        .into_iter()
        .filter(|&q| q == map.p() || denom.mod_floor(&BigInt::from(q)).is_zero())
        .collect()
}
