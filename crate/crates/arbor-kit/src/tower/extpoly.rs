//! Dense polynomials with coefficients in a number tower.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::qpoly::QPoly;

use super::{AdjoinOutcome, FieldElement, NumberTower};

#[derive(Clone)]
pub struct ExtPoly {
    tower: NumberTower,
    /// Reduced representations, constant term first.
    coeffs: Vec<QPoly>,
}

impl ExtPoly {
    pub fn new(tower: &NumberTower, coeffs: Vec<QPoly>) -> Self {
        let mut coeffs: Vec<QPoly> = coeffs.iter().map(|c| tower.reduce(c)).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExtPoly {
            tower: tower.clone(),
            coeffs,
        }
    }

    pub fn zero(tower: &NumberTower) -> Self {
        ExtPoly {
            tower: tower.clone(),
            coeffs: vec![],
        }
    }

    pub fn one(tower: &NumberTower) -> Self {
        ExtPoly::new(tower, vec![QPoly::one()])
    }

    pub fn x(tower: &NumberTower) -> Self {
        ExtPoly::new(tower, vec![QPoly::zero(), QPoly::one()])
    }

    /// Lift a rational polynomial coefficientwise.
    pub fn from_qpoly(tower: &NumberTower, f: &QPoly) -> Self {
        ExtPoly::new(
            tower,
            f.coeffs().iter().map(|c| QPoly::constant(c.clone())).collect(),
        )
    }

    pub fn from_elements(tower: &NumberTower, coeffs: Vec<FieldElement>) -> Result<Self> {
        for c in &coeffs {
            if c.tower() != tower {
                return Err(Error::DomainMismatch("coefficient from another tower".into()));
            }
        }
        Ok(ExtPoly::new(
            tower,
            coeffs.into_iter().map(|c| c.repr().clone()).collect(),
        ))
    }

    pub fn tower(&self) -> &NumberTower {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> usize {
        if self.coeffs.is_empty() {
            0
        } else {
            self.coeffs.len() - 1
        }
    }

    pub fn coeff_repr(&self, k: usize) -> QPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn coeff_reprs(&self) -> Vec<QPoly> {
        self.coeffs.clone()
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.tower.element(self.coeff_repr(k))
    }

    pub fn lc(&self) -> FieldElement {
        self.tower.element(self.coeffs.last().cloned().unwrap_or_else(QPoly::zero))
    }

    /// Constant polynomials descend to Q.
    pub fn to_qpoly(&self) -> Option<QPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if c.is_zero() {
                out.push(crate::rational::Rational::from_integer(0.into()));
            } else if c.deg() == 0 {
                out.push(c.coeff(0));
            } else {
                return None;
            }
        }
        Some(QPoly::new(out))
    }

    fn check_same(&self, other: &ExtPoly) -> Result<()> {
        if self.tower != other.tower {
            return Err(Error::DomainMismatch("polynomials over different towers".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ExtPoly) -> Result<ExtPoly> {
        self.check_same(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff_repr(i).add(&other.coeff_repr(i)));
        }
        Ok(ExtPoly::new(&self.tower, out))
    }

    pub fn sub(&self, other: &ExtPoly) -> Result<ExtPoly> {
        self.check_same(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff_repr(i).sub(&other.coeff_repr(i)));
        }
        Ok(ExtPoly::new(&self.tower, out))
    }

    pub fn mul(&self, other: &ExtPoly) -> Result<ExtPoly> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(ExtPoly::zero(&self.tower));
        }
        let mut out = vec![QPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = self.tower.mul_repr(a, b);
                out[i + j] = out[i + j].add(&t);
            }
        }
        Ok(ExtPoly::new(&self.tower, out))
    }

    pub fn scale_el(&self, c: &QPoly) -> ExtPoly {
        ExtPoly::new(
            &self.tower,
            self.coeffs
                .iter()
                .map(|a| self.tower.mul_repr(a, c))
                .collect(),
        )
    }

    pub fn neg(&self) -> ExtPoly {
        ExtPoly::new(&self.tower, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn monic(&self) -> Result<ExtPoly> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let inv = self.tower.inv_repr(self.coeffs.last().unwrap())?;
        Ok(self.scale_el(&inv))
    }

    pub fn div_rem(&self, divisor: &ExtPoly) -> Result<(ExtPoly, ExtPoly)> {
        self.check_same(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let db = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((ExtPoly::zero(&self.tower), self.clone()));
        }
        let lead_inv = self.tower.inv_repr(divisor.coeffs.last().unwrap())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![QPoly::zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = self.tower.mul_repr(&rem[i], &lead_inv);
            quot[i - db] = q.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let idx = i - db + j;
                let t = self.tower.mul_repr(&q, c);
                rem[idx] = rem[idx].sub(&t);
            }
        }
        Ok((ExtPoly::new(&self.tower, quot), ExtPoly::new(&self.tower, rem)))
    }

    pub fn rem(&self, divisor: &ExtPoly) -> Result<ExtPoly> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn div_exact(&self, divisor: &ExtPoly) -> Result<ExtPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Parse("inexact division over tower".into()));
        }
        Ok(q)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &ExtPoly) -> Result<ExtPoly> {
        self.check_same(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Ok(a);
        }
        a.monic()
    }

    pub fn derivative(&self) -> ExtPoly {
        if self.coeffs.len() <= 1 {
            return ExtPoly::zero(&self.tower);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&crate::rational::Rational::from_integer(i.into())))
            .collect();
        ExtPoly::new(&self.tower, coeffs)
    }

    pub fn evaluate(&self, at: &FieldElement) -> Result<FieldElement> {
        if at.tower() != &self.tower {
            return Err(Error::DomainMismatch("evaluation point from another tower".into()));
        }
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = self.tower.mul_repr(&acc, at.repr());
            acc = acc.add(c);
        }
        Ok(self.tower.element(acc))
    }

    /// Substitute x -> x + shift (shift a tower element).
    pub fn shift_by(&self, shift: &QPoly) -> ExtPoly {
        // Horner in (x + shift)
        let lin = ExtPoly::new(&self.tower, vec![shift.clone(), QPoly::one()]);
        let mut acc = ExtPoly::zero(&self.tower);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).expect("same tower");
            acc = acc
                .add(&ExtPoly::new(&self.tower, vec![c.clone()]))
                .expect("same tower");
        }
        acc
    }

    /// Yun squarefree decomposition (characteristic zero).
    pub fn squarefree_decomposition(&self) -> Result<Vec<(ExtPoly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let f = self.monic()?;
        if f.deg() == 0 {
            return Ok(vec![]);
        }
        let mut out = Vec::new();
        let fp = f.derivative();
        let a = f.gcd(&fp)?;
        let mut b = f.div_exact(&a)?;
        let mut c = fp.div_exact(&a)?;
        let mut d = c.sub(&b.derivative())?;
        let mut i = 1u32;
        while b.deg() != 0 {
            let g = b.gcd(&d)?;
            if g.deg() > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g)?;
            c = d.div_exact(&g)?;
            d = c.sub(&b.derivative())?;
            i += 1;
        }
        Ok(out)
    }

    /// Carry this polynomial into an extension of its tower.
    pub fn map_into(&self, outcome: &AdjoinOutcome) -> ExtPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| super::compose_mod(c, &outcome.embedding, outcome.tower.minimal_poly()))
            .collect();
        ExtPoly::new(&outcome.tower, coeffs)
    }

    /// Deterministic ordering for canonical factor lists.
    pub fn cmp_canonical(&self, other: &ExtPoly) -> Ordering {
        self.deg()
            .cmp(&other.deg())
            .then_with(|| {
                for k in (0..=self.deg()).rev() {
                    let c = self.coeff_repr(k).cmp(&other.coeff_repr(k));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialEq for ExtPoly {
    fn eq(&self, other: &Self) -> bool {
        self.tower == other.tower && self.coeffs == other.coeffs
    }
}

impl Eq for ExtPoly {}

impl fmt::Debug for ExtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtPoly[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({c})")?;
        }
        write!(f, "]")
    }
}
