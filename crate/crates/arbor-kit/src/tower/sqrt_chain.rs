//! Fast square roots in towers built as doubling chains of quadratic
//! adjunctions: recurse through the chain, reducing a square root at each
//! level to square roots one level down, bottoming out at rational squares.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::rational::{rational_sqrt, Rational};

use super::{FieldElement, NumberTower};

/// Monomial basis data for a chain tower: the 2^k products of chain
/// generators, the inverse of their coefficient matrix, and the squares of
/// the generators in prefix coordinates.
#[derive(Debug)]
pub(crate) struct ChainBasis {
    dim: usize,
    levels: usize,
    monomials: Vec<QPoly>,
    /// inverse[i][r]: row i of the inverted monomial matrix.
    inverse: Vec<Vec<Rational>>,
    /// squares[j]: coordinates (length 2^j) of chain[j]^2 over the level-j
    /// prefix monomials.
    squares: Vec<Vec<Rational>>,
}

impl ChainBasis {
    fn build(tower: &NumberTower) -> Result<ChainBasis> {
        let chain = tower
            .chain()
            .ok_or_else(|| Error::Parse("tower has no quadratic chain".into()))?;
        let levels = chain.len();
        let dim = tower.degree();
        if 1usize << levels != dim {
            return Err(Error::Parse("chain does not span the tower".into()));
        }
        let mut monomials = Vec::with_capacity(dim);
        monomials.push(QPoly::one());
        for mask in 1..dim {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let m = tower.mul_repr(&monomials[rest], &chain[low]);
            monomials.push(m);
        }
        let inverse = invert_matrix(&monomials, dim)?;
        let mut squares = Vec::with_capacity(levels);
        for (j, gen) in chain.iter().enumerate() {
            let sq = tower.mul_repr(gen, gen);
            let coords = coords_of(&inverse, &sq, dim);
            let prefix = 1usize << j;
            if coords[prefix..].iter().any(|c| !c.is_zero()) {
                return Err(Error::Parse(
                    "chain generator square leaves its level".into(),
                ));
            }
            squares.push(coords[..prefix].to_vec());
        }
        Ok(ChainBasis {
            dim,
            levels,
            monomials,
            inverse,
            squares,
        })
    }
}

/// Gauss-Jordan inverse of the dim x dim matrix whose column c holds the
/// theta-power coefficients of monomial c.
fn invert_matrix(monomials: &[QPoly], dim: usize) -> Result<Vec<Vec<Rational>>> {
    let mut a: Vec<Vec<Rational>> = (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| monomials[c].coeff(r))
                .collect::<Vec<Rational>>()
        })
        .collect();
    let mut inv: Vec<Vec<Rational>> = (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| {
                    if r == c {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect::<Vec<Rational>>()
        })
        .collect();
    for col in 0..dim {
        let pivot = (col..dim)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Parse("monomials do not form a basis".into()))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pv = a[col][col].clone();
        let pv_inv = Rational::one() / pv;
        for c in 0..dim {
            a[col][c] *= &pv_inv;
            inv[col][c] *= &pv_inv;
        }
        for r in 0..dim {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..dim {
                let t = &factor * &a[col][c];
                a[r][c] -= t;
                let t = &factor * &inv[col][c];
                inv[r][c] -= t;
            }
        }
    }
    Ok(inv)
}

fn coords_of(inverse: &[Vec<Rational>], repr: &QPoly, dim: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(dim);
    for row in inverse.iter() {
        let mut acc = Rational::zero();
        for (r, coeff) in row.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let v = repr.coeff(r);
            if !v.is_zero() {
                acc += coeff * v;
            }
        }
        out.push(acc);
    }
    out
}

struct Ctx<'a> {
    basis: &'a ChainBasis,
    tower: &'a NumberTower,
}

impl Ctx<'_> {
    fn lift(&self, coords: &[Rational]) -> QPoly {
        let mut acc = QPoly::zero();
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&self.basis.monomials[i].scale(c));
        }
        acc
    }

    fn drop_to(&self, repr: &QPoly, len: usize) -> Vec<Rational> {
        let coords = coords_of(&self.basis.inverse, repr, self.basis.dim);
        debug_assert!(coords[len..].iter().all(|c| c.is_zero()));
        coords[..len].to_vec()
    }

    fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let repr = self.tower.mul_repr(&self.lift(a), &self.lift(b));
        self.drop_to(&repr, a.len())
    }

    fn inv(&self, a: &[Rational]) -> Result<Vec<Rational>> {
        let repr = self.tower.inv_repr(&self.lift(a))?;
        Ok(self.drop_to(&repr, a.len()))
    }

    fn sqrt_rec(&self, v: &[Rational], level: usize) -> Result<Option<Vec<Rational>>> {
        if level == 0 {
            return Ok(rational_sqrt(&v[0]).map(|r| vec![r]));
        }
        let half = v.len() / 2;
        let (u, w) = v.split_at(half);
        let b = &self.basis.squares[level - 1];

        if w.iter().all(|c| c.is_zero()) {
            // gamma in the subfield: either a square there, or gamma*b is
            if let Some(r) = self.sqrt_rec(u, level - 1)? {
                let mut out = r;
                out.extend(std::iter::repeat_n(Rational::zero(), half));
                return Ok(Some(out));
            }
            let t = self.mul(u, b);
            if let Some(r) = self.sqrt_rec(&t, level - 1)? {
                let y = self.mul(&r, &self.inv(b)?);
                let mut out = vec![Rational::zero(); half];
                out.extend(y);
                return Ok(Some(out));
            }
            return Ok(None);
        }

        // gamma = u + w*beta, w != 0: a root x + y*beta needs
        // x^2 = (u +- s)/2 with s^2 = u^2 - b w^2, then y = w/(2x)
        let u2 = self.mul(u, u);
        let w2 = self.mul(w, w);
        let bw2 = self.mul(b, &w2);
        let big: Vec<Rational> = u2.iter().zip(&bw2).map(|(x, y)| x - y).collect();
        let s = match self.sqrt_rec(&big, level - 1)? {
            Some(s) => s,
            None => return Ok(None),
        };
        for sign in [1i64, -1] {
            let eps: Vec<Rational> = if sign == 1 {
                s.clone()
            } else {
                s.iter().map(|c| -c.clone()).collect()
            };
            let x2: Vec<Rational> = u
                .iter()
                .zip(&eps)
                .map(|(a, e)| (a + e) / Rational::from_integer(2.into()))
                .collect();
            if let Some(x) = self.sqrt_rec(&x2, level - 1)? {
                if x.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let two_x: Vec<Rational> =
                    x.iter().map(|c| c * Rational::from_integer(2.into())).collect();
                let y = self.mul(w, &self.inv(&two_x)?);
                let mut out = x;
                out.extend(y);
                return Ok(Some(out));
            }
        }
        Ok(None)
    }
}

pub(crate) fn sqrt_via_chain(
    tower: &NumberTower,
    gamma: &FieldElement,
) -> Result<Option<FieldElement>> {
    let cell = tower.chain_basis_cell();
    if cell.get().is_none() {
        let built = ChainBasis::build(tower)?;
        let _ = cell.set(built);
    }
    let basis = cell.get().expect("basis just built");
    let ctx = Ctx { basis, tower };
    let coords = coords_of(&basis.inverse, gamma.repr(), basis.dim);
    match ctx.sqrt_rec(&coords, basis.levels)? {
        None => Ok(None),
        Some(root) => {
            let repr = ctx.lift(&root);
            let el = tower.element(repr);
            debug_assert_eq!(el.mul(&el).unwrap(), *gamma);
            Ok(Some(el))
        }
    }
}
