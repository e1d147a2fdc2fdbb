//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored constant term first; the leading coefficient of a
//! nonzero polynomial is nonzero. Everything here is exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        QPoly::new(vec![Rational::zero(), Rational::one()])
    }

    /// c * x^k.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    pub fn from_integers(ints: &[i64]) -> Self {
        QPoly::new(ints.iter().map(|&n| Rational::from_integer(n.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with deg 0 for the zero polynomial; callers that care about the
    /// zero case use `degree()`.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        QPoly::new(out)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        QPoly::new(out)
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> QPoly {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly)> {
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let db = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - db];
        let inv_lc = Rational::one() / divisor.lc();
        for i in (db..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &inv_lc;
            quot[i - db] = q.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let idx = i - db + j;
                let t = &q * d;
                rem[idx] -= t;
            }
        }
        Ok((QPoly::new(quot), QPoly::new(rem)))
    }

    pub fn rem(&self, divisor: &QPoly) -> Result<QPoly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &QPoly) -> Result<QPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Parse(format!(
                "inexact polynomial division: {self} by {divisor}"
            )));
        }
        Ok(q)
    }

    /// Extended gcd: (g, s, t) with s*self + t*other = g, g monic (or zero).
    pub fn xgcd(&self, other: &QPoly) -> (QPoly, QPoly, QPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = QPoly::one();
        let mut s1 = QPoly::zero();
        let mut t0 = QPoly::zero();
        let mut t1 = QPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Rational::one() / r0.lc();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Monic gcd; gcd(0, 0) = 0. Runs over the integers with the
    /// subresultant remainder sequence, so coefficients stay minor-bounded.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (_, a) = self.to_integer_primitive();
        let (_, b) = other.to_integer_primitive();
        let g = gcd_z(&a, &b);
        QPoly::from_bigint_coeffs(&g).monic()
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let inv = Rational::one() / self.lc();
        self.scale(&inv)
    }

    /// self(other): substitute `other` for x.
    pub fn compose(&self, other: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(other);
            acc = acc.add(&QPoly::constant(c.clone()));
        }
        acc
    }

    pub fn evaluate(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect();
        QPoly::new(coeffs)
    }

    /// x -> x + shift.
    pub fn shift_var(&self, shift: &Rational) -> QPoly {
        self.compose(&QPoly::new(vec![shift.clone(), Rational::one()]))
    }

    /// Largest squarefree divisor (monic).
    pub fn squarefree_part(&self) -> QPoly {
        if self.is_zero() || self.deg() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.deg() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Yun's squarefree decomposition: self = lc * prod g_i^i with the g_i
    /// monic, squarefree, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, u32)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let f = self.monic();
        if f.deg() == 0 {
            return vec![];
        }
        let mut out = Vec::new();
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.div_exact(&a).unwrap();
        let mut c = fp.div_exact(&a).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut i = 1u32;
        while b.deg() != 0 {
            let g = b.gcd(&d);
            if g.deg() > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g).unwrap();
            c = d.div_exact(&g).unwrap();
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Clears denominators: returns (content, integer coefficients) with
    /// self = content * (integer poly), the integer poly primitive with
    /// positive leading coefficient. Zero returns (0, []).
    pub fn to_integer_primitive(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), vec![]);
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut gcd = BigInt::zero();
        for v in &ints {
            gcd = gcd.gcd(v);
        }
        if ints.last().unwrap().is_negative() {
            gcd = -gcd;
        }
        let prim: Vec<BigInt> = ints.iter().map(|v| v / &gcd).collect();
        (Rational::new(gcd, den), prim)
    }

    pub fn from_bigint_coeffs(ints: &[BigInt]) -> QPoly {
        QPoly::new(ints.iter().map(|n| Rational::from_integer(n.clone())).collect())
    }
}

/// Resultant of two nonzero polynomials over the rationals.
///
/// Denominators are cleared and the integer resultant is computed by the
/// subresultant pseudo-remainder sequence, which keeps intermediate
/// coefficients at single-minor size.
pub fn resultant(a: &QPoly, b: &QPoly) -> Result<Rational> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (ca, ia) = a.to_integer_primitive();
    let (cb, ib) = b.to_integer_primitive();
    let res = resultant_z(&ia, &ib);
    // res(c*A, e*B) = c^(deg B) e^(deg A) res(A, B)
    let scale = pow_rat(&ca, b.deg() as u32) * pow_rat(&cb, a.deg() as u32);
    Ok(Rational::from_integer(res) * scale)
}

fn pow_rat(c: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    let mut base = c.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

fn z_deg(v: &[BigInt]) -> usize {
    v.len().saturating_sub(1)
}

fn z_trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, over Z.
fn z_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = z_deg(b);
    let lc_b = b.last().unwrap();
    let mut rem = a.to_vec();
    let mut steps = z_deg(a) as isize - db as isize + 1;
    while z_deg(&rem) >= db && !rem.is_empty() && steps > 0 {
        let da = z_deg(&rem);
        let lead = rem.last().unwrap().clone();
        for c in rem.iter_mut() {
            *c *= lc_b;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[da - db + j] -= &lead * bc;
        }
        z_trim(&mut rem);
        steps -= 1;
    }
    // remaining multiplications to reach the fixed power
    for _ in 0..steps.max(0) {
        for c in rem.iter_mut() {
            *c *= lc_b;
        }
    }
    rem
}

/// Gcd of primitive integer polynomials: the primitive part of the last
/// nonzero element of the subresultant remainder sequence.
fn gcd_z(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    z_trim(&mut a);
    z_trim(&mut b);
    if z_deg(&a) < z_deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    if z_deg(&b) == 0 {
        return vec![BigInt::one()];
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (z_deg(&a) - z_deg(&b)) as u32;
        let r = z_prem(&a, &b);
        if r.is_empty() {
            return z_primitive_part(&b);
        }
        a = b;
        let divisor = &g * h.pow(delta);
        b = r.into_iter().map(|c| &c / &divisor).collect();
        z_trim(&mut b);
        if z_deg(&b) == 0 {
            return vec![BigInt::one()];
        }
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            &g.pow(delta) / &h.pow(delta - 1)
        };
    }
}

fn z_primitive_part(v: &[BigInt]) -> Vec<BigInt> {
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

/// Integer resultant via the subresultant pseudo-remainder sequence.
pub fn resultant_z(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    z_trim(&mut a);
    z_trim(&mut b);
    assert!(!a.is_empty() && !b.is_empty(), "nonzero inputs");
    let mut sign = 1i32;
    if z_deg(&a) < z_deg(&b) {
        if z_deg(&a) % 2 == 1 && z_deg(&b) % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if z_deg(&b) == 0 {
        let v = b[0].pow(z_deg(&a) as u32);
        return if sign < 0 { -v } else { v };
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = z_deg(&a);
        let db = z_deg(&b);
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = z_prem(&a, &b);
        if r.is_empty() {
            return BigInt::zero(); // deg b > 0 here, so a common factor exists
        }
        a = b;
        let divisor = &g * h.pow(delta);
        b = r.into_iter().map(|c| &c / &divisor).collect();
        z_trim(&mut b);
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            // h^(1-delta) g^delta, exact
            let num = g.pow(delta);
            let den = h.pow(delta - 1);
            &num / &den
        };
        if z_deg(&b) == 0 {
            let da = z_deg(&a) as u32;
            // lc(b)^(deg a) / h^(deg a - 1), exact
            let num = b[0].pow(da);
            let den = if da == 0 { BigInt::one() } else { h.pow(da - 1) };
            let v = &num / &den;
            return if sign < 0 { -v } else { v };
        }
    }
}

/// Unique polynomial of degree < points.len() through the given points
/// (Newton's divided differences; the x-coordinates must be distinct).
pub fn interpolate(points: &[(Rational, Rational)]) -> QPoly {
    if points.is_empty() {
        return QPoly::zero();
    }
    let n = points.len();
    // divided-difference coefficients
    let mut table: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    let mut coeffs = vec![table[0].clone()];
    for level in 1..n {
        for i in (level..n).rev() {
            let dx = &points[i].0 - &points[i - level].0;
            table[i] = (&table[i] - &table[i - 1]) / dx;
        }
        coeffs.push(table[level].clone());
    }
    // newton form -> dense coefficients
    let mut acc = QPoly::zero();
    for i in (0..n).rev() {
        let lin = QPoly::new(vec![-points[i].0.clone(), Rational::one()]);
        acc = if i + 1 == n {
            QPoly::constant(coeffs[i].clone())
        } else {
            acc.mul(&lin).add(&QPoly::constant(coeffs[i].clone()))
        };
    }
    acc
}

/// Discriminant: (-1)^(d(d-1)/2) * res(a, a') / lc(a).
pub fn discriminant(a: &QPoly) -> Result<Rational> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let d = a.deg();
    if d == 0 {
        return Err(Error::ZeroInput);
    }
    if d == 1 {
        return Ok(Rational::one());
    }
    let r = resultant(a, &a.derivative())?;
    let sign = if (d * (d - 1) / 2) % 2 == 1 {
        -Rational::one()
    } else {
        Rational::one()
    };
    Ok(sign * r / a.lc())
}

impl PartialOrd for QPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.deg()
            .cmp(&other.deg())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coef_is_one = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 => {
                    if coef_is_one {
                        write!(f, "x")?;
                    } else {
                        write!(f, "{mag}*x")?;
                    }
                }
                _ => {
                    if coef_is_one {
                        write!(f, "x^{k}")?;
                    } else {
                        write!(f, "{mag}*x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// Parse "x^4-2*x^2-1", "1/2*x + 3", "-x". The '*' is optional.
pub fn parse_poly(input: &str) -> Result<QPoly> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bytes = s.as_bytes();
    let mut terms: Vec<(Rational, usize)> = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let mut sign = 1i64;
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        if i >= bytes.len() {
            return Err(Error::Parse(format!("dangling sign in {input:?}")));
        }
        // coefficient (optional)
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
            i += 1;
        }
        let had_coef = i > start;
        let mut coef = if had_coef {
            parse_rational(&s[start..i])?
        } else {
            Rational::one()
        };
        if sign < 0 {
            coef = -coef;
        }
        if had_coef && i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        // variable part (optional)
        let mut power = 0usize;
        if i < bytes.len() && (bytes[i] == b'x' || bytes[i] == b'X') {
            i += 1;
            power = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let pstart = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == pstart {
                    return Err(Error::Parse(format!("missing exponent in {input:?}")));
                }
                power = s[pstart..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {input:?}")))?;
            }
        } else if i == start {
            return Err(Error::Parse(format!(
                "unexpected character {:?} in {input:?}",
                s[i..].chars().next().unwrap()
            )));
        }
        terms.push((coef, power));
    }
    let deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (c, k) in terms {
        coeffs[k] += c;
    }
    Ok(QPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i64};
    use num_bigint::BigInt;

    fn p(s: &str) -> QPoly {
        parse_poly(s).unwrap()
    }

    /// Independent Sylvester-determinant resultant via Bareiss fraction-free
    /// elimination over the integers (after clearing denominators).
    #[allow(clippy::needless_range_loop)]
    fn sylvester_resultant(a: &QPoly, b: &QPoly) -> Rational {
        let da = a.deg();
        let db = b.deg();
        let n = da + db;
        if n == 0 {
            return Rational::one();
        }
        let mut m = vec![vec![Rational::zero(); n]; n];
        for row in 0..db {
            for (k, c) in a.coeffs().iter().enumerate() {
                m[row][row + da - k] = c.clone();
            }
        }
        for row in 0..da {
            for (k, c) in b.coeffs().iter().enumerate() {
                m[db + row][row + db - k] = c.clone();
            }
        }
        // fraction-free Gaussian elimination (Bareiss) over Q is fine here
        let mut det = Rational::one();
        let mut mat = m;
        for col in 0..n {
            let piv = (col..n).find(|&r| !mat[r][col].is_zero());
            let piv = match piv {
                Some(r) => r,
                None => return Rational::zero(),
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            let pv = mat[col][col].clone();
            det *= pv.clone();
            for r in col + 1..n {
                let factor = mat[r][col].clone() / pv.clone();
                if factor.is_zero() {
                    continue;
                }
                for c2 in col..n {
                    let t = &factor * &mat[col][c2];
                    mat[r][c2] -= t;
                }
            }
        }
        det
    }

    #[test]
    fn gcd_common_root() {
        // gcd(x^2-1, x-1) = x-1
        assert_eq!(p("x^2-1").gcd(&p("x-1")), p("x-1"));
    }

    #[test]
    fn compose_square() {
        // (x^2-1) o (x^2-1) = x^4 - 2x^2
        assert_eq!(p("x^2-1").compose(&p("x^2-1")), p("x^4-2*x^2"));
    }

    #[test]
    fn evaluate_at_zero() {
        assert_eq!(p("x^2-1").evaluate(&rat_i64(0)), rat_i64(-1));
    }

    #[test]
    fn division_errors() {
        assert!(p("x^2-1").div_rem(&QPoly::zero()).is_err());
        let (q, r) = p("x^3+2*x+1").div_rem(&p("x+1")).unwrap();
        assert_eq!(q.mul(&p("x+1")).add(&r), p("x^3+2*x+1"));
    }

    #[test]
    fn disc_quadratic() {
        // b^2 - 4ac with a=1, b=0, c=-2
        assert_eq!(discriminant(&p("x^2-2")).unwrap(), rat_i64(8));
    }

    #[test]
    fn resultant_linear_pair() {
        assert_eq!(resultant(&p("x-1"), &p("x+1")).unwrap(), rat_i64(2));
    }

    #[test]
    fn disc_quartic_frozen() {
        // Independent oracle first: Sylvester determinant of (f, f').
        let f = p("x^4-2*x^2-1");
        let fp = f.derivative();
        let sylv = sylvester_resultant(&f, &fp);
        // disc = (-1)^(4*3/2) res(f,f')/lc = res
        assert_eq!(sylv, rat_i64(-1024));
        assert_eq!(discriminant(&f).unwrap(), rat_i64(-1024));
    }

    #[test]
    fn resultant_matches_sylvester_oracle() {
        // seeded pseudo-random pairs, degree <= 6
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut nonconst_gcd_seen = 0;
        for _ in 0..120 {
            let da = (next() % 6 + 1) as usize;
            let db = (next() % 6 + 1) as usize;
            let mk = |deg: usize, next: &mut dyn FnMut() -> u64| {
                let mut v: Vec<Rational> =
                    (0..=deg).map(|_| rat_i64((next() % 11) as i64 - 5)).collect();
                if v[deg].is_zero() {
                    v[deg] = rat_i64(1);
                }
                QPoly::new(v)
            };
            let a = mk(da, &mut next);
            let b = mk(db, &mut next);
            let r = resultant(&a, &b).unwrap();
            assert_eq!(r, sylvester_resultant(&a, &b), "a={a} b={b}");
            // res = 0 iff gcd nonconstant
            let g = a.gcd(&b);
            assert_eq!(r.is_zero(), g.deg() > 0, "a={a} b={b}");
            if g.deg() > 0 {
                nonconst_gcd_seen += 1;
            }
        }
        // make a few pairs share a factor so both sides of the iff are hit
        for k in 1..6i64 {
            let sh = QPoly::new(vec![rat_i64(k), rat_i64(1)]);
            let a = p("x^2+1").mul(&sh);
            let b = p("x^3-2").mul(&sh);
            assert!(resultant(&a, &b).unwrap().is_zero());
            nonconst_gcd_seen += 1;
        }
        assert!(nonconst_gcd_seen >= 5);
    }

    #[test]
    fn squarefree_decomposition_recovers() {
        // f = (x-1)^2 (x^2+1)
        let f = p("x-1").pow(2).mul(&p("x^2+1"));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p("x^2+1"), 1), (p("x-1"), 2)]);
        assert!(!f.is_squarefree());
        assert_eq!(f.squarefree_part(), p("x-1").mul(&p("x^2+1")).monic());
    }

    #[test]
    fn integer_primitive_roundtrip() {
        let f = p("1/2*x^2 - 3/4");
        let (content, ints) = f.to_integer_primitive();
        assert_eq!(ints, vec![BigInt::from(-3), BigInt::from(0), BigInt::from(2)]);
        assert_eq!(content, rat(1, 4));
        assert_eq!(QPoly::from_bigint_coeffs(&ints).scale(&content), f);
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in ["x^4-2*x^2-1", "x", "-x+1", "1/2*x^3+x-5", "7"] {
            let f = p(s);
            assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
        }
        assert!(parse_poly("x^").is_err());
        assert!(parse_poly("").is_err());
    }

    #[test]
    fn shift_var_works() {
        // (x+1)^2 = x^2+2x+1
        assert_eq!(p("x^2").shift_var(&rat_i64(1)), p("x^2+2*x+1"));
    }

    #[test]
    fn interpolate_recovers_polynomial() {
        let f = p("x^3-2*x+1/2");
        let pts: Vec<(Rational, Rational)> = (0..=3)
            .map(|k| (rat_i64(k), f.evaluate(&rat_i64(k))))
            .collect();
        assert_eq!(interpolate(&pts), f);
        assert_eq!(interpolate(&[(rat_i64(5), rat_i64(7))]), p("7"));
    }

    #[test]
    fn xgcd_bezout_identity() {
        let a = p("x^4-2*x^2-1");
        let b = p("x^2+1");
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, a.gcd(&b));
        let (g2, s2, t2) = p("x^2-1").xgcd(&p("x-1"));
        assert_eq!(g2, p("x-1"));
        assert_eq!(s2.mul(&p("x^2-1")).add(&t2.mul(&p("x-1"))), g2);
    }
}
