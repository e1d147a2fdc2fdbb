//! Coordinate arithmetic in a tower of quadratic extensions
//! Q ⊂ Q(b1) ⊂ Q(b1, b2) ⊂ ... with b_j^2 = gamma_j in the previous level.
//!
//! Elements are coordinate vectors over the 2^k square-root monomials, kept
//! in the natural prefix order: the first half of a vector is the previous
//! level, so subfield embedding is zero padding and the square-root
//! recursion works on halves. `to_tower` materializes the absolute
//! simple-extension form on demand.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::rational::{rational_sqrt, Rational};

use super::{ExtPoly, NumberTower};

/// A pure quadratic chain; `gammas[j]` (length 2^j) is the square of the
/// level-j generator written over the first j generators.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainField {
    gammas: Vec<Vec<Rational>>,
}

pub type ChainElt = Vec<Rational>;

impl ChainField {
    pub fn rationals() -> Self {
        ChainField { gammas: Vec::new() }
    }

    pub fn levels(&self) -> usize {
        self.gammas.len()
    }

    pub fn degree(&self) -> usize {
        1usize << self.gammas.len()
    }

    pub fn gamma(&self, j: usize) -> &[Rational] {
        &self.gammas[j]
    }

    pub fn zero(&self) -> ChainElt {
        vec![Rational::zero(); self.degree()]
    }

    pub fn one(&self) -> ChainElt {
        self.rational(Rational::one())
    }

    pub fn rational(&self, v: Rational) -> ChainElt {
        let mut out = vec![Rational::zero(); self.degree()];
        out[0] = v;
        out
    }

    /// The level-j generator b_j as an element.
    pub fn generator(&self, j: usize) -> ChainElt {
        let mut out = vec![Rational::zero(); self.degree()];
        out[1 << j] = Rational::one();
        out
    }

    pub fn is_zero_elt(elt: &[Rational]) -> bool {
        elt.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, a: &[Rational], b: &[Rational]) -> ChainElt {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[Rational], b: &[Rational]) -> ChainElt {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &[Rational]) -> ChainElt {
        a.iter().map(|x| -x.clone()).collect()
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> ChainElt {
        self.mul_level(a, b, self.levels())
    }

    fn mul_level(&self, a: &[Rational], b: &[Rational], j: usize) -> ChainElt {
        if j == 0 {
            return vec![&a[0] * &b[0]];
        }
        let half = 1usize << (j - 1);
        let (a0, a1) = a.split_at(half);
        let (b0, b1) = b.split_at(half);
        let p00 = self.mul_level(a0, b0, j - 1);
        let p11 = self.mul_level(a1, b1, j - 1);
        let asum: Vec<Rational> = a0.iter().zip(a1).map(|(x, y)| x + y).collect();
        let bsum: Vec<Rational> = b0.iter().zip(b1).map(|(x, y)| x + y).collect();
        let pmix = self.mul_level(&asum, &bsum, j - 1);
        let gamma_p11 = self.mul_level(&self.gammas[j - 1], &p11, j - 1);
        let mut out = Vec::with_capacity(1usize << j);
        for i in 0..half {
            out.push(&p00[i] + &gamma_p11[i]);
        }
        for i in 0..half {
            out.push(&pmix[i] - &p00[i] - &p11[i]);
        }
        out
    }

    pub fn inv(&self, a: &[Rational]) -> Result<ChainElt> {
        self.inv_level(a, self.levels())
    }

    fn inv_level(&self, a: &[Rational], j: usize) -> Result<ChainElt> {
        if ChainField::is_zero_elt(a) {
            return Err(Error::ZeroDivisor);
        }
        if j == 0 {
            return Ok(vec![Rational::one() / a[0].clone()]);
        }
        let half = 1usize << (j - 1);
        let (a0, a1) = a.split_at(half);
        // (a0 + a1 b)^-1 = (a0 - a1 b) / (a0^2 - gamma a1^2)
        let a0sq = self.mul_level(a0, a0, j - 1);
        let a1sq = self.mul_level(a1, a1, j - 1);
        let ga1sq = self.mul_level(&self.gammas[j - 1], &a1sq, j - 1);
        let norm: Vec<Rational> = a0sq.iter().zip(&ga1sq).map(|(x, y)| x - y).collect();
        let ninv = self.inv_level(&norm, j - 1)?;
        let mut out = self.mul_level(a0, &ninv, j - 1);
        let lower = self.mul_level(a1, &ninv, j - 1);
        out.extend(lower.into_iter().map(|c| -c));
        Ok(out)
    }

    /// Exact square root, when the element is a square in this field.
    pub fn sqrt(&self, a: &[Rational]) -> Option<ChainElt> {
        self.sqrt_level(a, self.levels())
    }

    fn sqrt_level(&self, v: &[Rational], j: usize) -> Option<ChainElt> {
        if j == 0 {
            return rational_sqrt(&v[0]).map(|r| vec![r]);
        }
        let half = 1usize << (j - 1);
        let (u, w) = v.split_at(half);
        let gamma = &self.gammas[j - 1];

        if w.iter().all(|c| c.is_zero()) {
            // either a square one level down, or gamma times one
            if let Some(r) = self.sqrt_level(u, j - 1) {
                let mut out = r;
                out.resize(1 << j, Rational::zero());
                return Some(out);
            }
            let t = self.mul_level(u, gamma, j - 1);
            if let Some(r) = self.sqrt_level(&t, j - 1) {
                let ginv = self.inv_level(gamma, j - 1).ok()?;
                let y = self.mul_level(&r, &ginv, j - 1);
                let mut out = vec![Rational::zero(); half];
                out.extend(y);
                return Some(out);
            }
            return None;
        }

        // v = u + w b: a root x + y b needs x^2 = (u ± s)/2 with
        // s^2 = u^2 - gamma w^2, then y = w / (2x)
        let u2 = self.mul_level(u, u, j - 1);
        let w2 = self.mul_level(w, w, j - 1);
        let gw2 = self.mul_level(gamma, &w2, j - 1);
        let normish: Vec<Rational> = u2.iter().zip(&gw2).map(|(x, y)| x - y).collect();
        let s = self.sqrt_level(&normish, j - 1)?;
        let two = Rational::from_integer(2.into());
        for sign in [1, -1] {
            let x2: Vec<Rational> = u
                .iter()
                .zip(&s)
                .map(|(a, e)| {
                    if sign == 1 {
                        (a + e) / &two
                    } else {
                        (a - e) / &two
                    }
                })
                .collect();
            if let Some(x) = self.sqrt_level(&x2, j - 1) {
                if x.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let twox: Vec<Rational> = x.iter().map(|c| c * &two).collect();
                let inv = self.inv_level(&twox, j - 1).ok()?;
                let y = self.mul_level(w, &inv, j - 1);
                let mut out = x;
                out.extend(y);
                return Some(out);
            }
        }
        None
    }

    pub fn is_square(&self, a: &[Rational]) -> bool {
        self.sqrt(a).is_some()
    }

    /// Extend by a square root of gamma (caller certifies gamma is not a
    /// square here). Elements embed by `pad`.
    pub fn extend(&self, gamma: ChainElt) -> ChainField {
        debug_assert_eq!(gamma.len(), self.degree());
        debug_assert!(!self.is_square(&gamma));
        let mut gammas = self.gammas.clone();
        gammas.push(gamma);
        ChainField { gammas }
    }

    /// Embed an element of this field into a one-level extension.
    pub fn pad(elt: &[Rational]) -> ChainElt {
        let mut out = elt.to_vec();
        out.extend(std::iter::repeat_n(Rational::zero(), elt.len()));
        out
    }

    /// Human-readable form over named generators b1, ..., bk.
    pub fn elt_to_string(elt: &[Rational]) -> String {
        let mut terms = Vec::new();
        for (mask, c) in elt.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut gens = String::new();
            for j in 0..usize::BITS {
                if mask & (1usize << j) != 0 {
                    gens.push_str(&format!("*b{}", j + 1));
                }
            }
            if gens.is_empty() {
                terms.push(format!("{c}"));
            } else if c.is_one() {
                terms.push(gens[1..].to_string());
            } else {
                terms.push(format!("{c}{gens}"));
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Materialize the absolute simple-extension form by adjoining the chain
    /// generators one at a time. Expensive for deep chains.
    pub fn to_tower(&self, degree_cap: usize) -> Result<NumberTower> {
        let mut tower = NumberTower::rationals();
        // images of the generators seen so far, as polynomials in theta
        let mut gen_images: Vec<QPoly> = Vec::new();
        for (j, gamma) in self.gammas.iter().enumerate() {
            // gamma as an element of the current tower
            let mut repr = QPoly::zero();
            for (mask, c) in gamma.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut term = QPoly::constant(c.clone());
                for (b, img) in gen_images.iter().enumerate().take(j) {
                    if mask & (1usize << b) != 0 {
                        term = tower.mul_repr(&term, img);
                    }
                }
                repr = repr.add(&term);
            }
            let quad = ExtPoly::new(&tower, vec![repr.neg(), QPoly::zero(), QPoly::one()]);
            let outcome = tower.adjoin_irreducible(&quad, degree_cap)?;
            for img in gen_images.iter_mut() {
                *img = super::compose_mod(img, &outcome.embedding, outcome.tower.minimal_poly());
            }
            gen_images.push(outcome.root.repr().clone());
            tower = outcome.tower;
        }
        Ok(tower)
    }
}
