//! Trager's algorithm: factorization over a number tower via squarefree
//! norms. Shift x by multiples of theta until the norm (a resultant in
//! theta) is squarefree, factor the norm over the rationals, and recover the
//! factors by gcds over the tower.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::factor::FactorList;
use crate::qpoly::{interpolate, resultant, QPoly};
use crate::rational::Rational;
use crate::zassenhaus::factor_over_rationals;

use super::{ExtPoly, FieldElement, NumberTower};

pub fn factor_over_tower(
    tower: &NumberTower,
    a: &ExtPoly,
    seed: u64,
    degree_cap: usize,
) -> Result<FactorList<ExtPoly, FieldElement>> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let needed = tower.degree() * a.deg().max(1);
    if needed > degree_cap {
        return Err(Error::DegreeCapExceeded {
            cap: degree_cap,
            needed,
        });
    }
    let unit = a.lc();
    let mut factors: Vec<(ExtPoly, u32)> = Vec::new();
    if a.deg() == 0 {
        return Ok(FactorList::new(unit, factors));
    }

    // fast path: over Q proper, descend to the rational machinery
    if tower.degree() == 1 {
        let aq = a.to_qpoly().expect("degree-1 tower elements are rational");
        let fl = factor_over_rationals(&aq, seed)?;
        for (g, m) in fl.factors() {
            factors.push((ExtPoly::from_qpoly(tower, g), *m));
        }
        factors.sort_by(|x, y| x.0.cmp_canonical(&y.0));
        return Ok(FactorList::new(unit, factors));
    }

    for (g, mult) in a.squarefree_decomposition()? {
        for irr in factor_squarefree(tower, &g, seed)? {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|x, y| x.0.cmp_canonical(&y.0).then(x.1.cmp(&y.1)));
    Ok(FactorList::new(unit, factors))
}

/// Norm of b as Res_t(m(t), b~(t, x)) by evaluation-interpolation; b monic,
/// so the norm is monic of degree deg(m) * deg(b).
fn norm_poly(tower: &NumberTower, b: &ExtPoly) -> QPoly {
    let d = tower.degree();
    let e = b.deg();
    let target = d * e;
    let m = tower.minimal_poly();
    let mut pts = Vec::with_capacity(target + 1);
    for k in 0..=target {
        let x0 = Rational::from_integer(k.into());
        // b~(t, x0): rational polynomial in t
        let mut h = QPoly::zero();
        let mut power = Rational::from_integer(1.into());
        for j in 0..=e {
            h = h.add(&b.coeff_repr(j).scale(&power));
            power *= &x0;
        }
        let v = if h.is_zero() {
            Rational::zero()
        } else {
            resultant(m, &h).expect("nonzero inputs")
        };
        pts.push((x0, v));
    }
    interpolate(&pts).monic()
}

fn factor_squarefree(
    tower: &NumberTower,
    g: &ExtPoly,
    seed: u64,
) -> Result<Vec<ExtPoly>> {
    debug_assert!(g.deg() >= 1);
    if g.deg() == 1 {
        return Ok(vec![g.monic()?]);
    }
    // shift until the norm is squarefree
    let mut shift = 0i64;
    let (norm, shifted, shift) = loop {
        let s = QPoly::x().scale(&Rational::from_integer(shift.into()));
        let shifted = g.shift_by(&s.neg());
        let norm = norm_poly(tower, &shifted);
        if norm.is_squarefree() {
            break (norm, shifted, shift);
        }
        shift += 1;
    };

    let norm_factors = factor_over_rationals(&norm, seed)?;
    let mut out = Vec::new();
    if norm_factors.factors().len() == 1 {
        // the norm is irreducible, hence so is g
        out.push(g.monic()?);
        return Ok(out);
    }
    let back = QPoly::x().scale(&Rational::from_integer(shift.into()));
    for (nf, _) in norm_factors.factors() {
        let lifted = ExtPoly::from_qpoly(tower, nf);
        let factor = shifted.gcd(&lifted)?;
        if factor.deg() >= 1 {
            out.push(factor.shift_by(&back).monic()?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::parse_poly;
    use crate::tower::DEFAULT_DEGREE_CAP;

    fn p(s: &str) -> QPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn x2_minus_2_splits_over_sqrt2() {
        let tower = NumberTower::new(p("x^2-2"), 42).unwrap();
        let f = ExtPoly::from_qpoly(&tower, &p("x^2-2"));
        let fl = factor_over_tower(&tower, &f, 42, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(fl.factors().len(), 2);
        assert!(fl.factors().iter().all(|(g, _)| g.deg() == 1));
        // roots are +-theta
        let roots: Vec<_> = fl
            .factors()
            .iter()
            .map(|(g, _)| tower.element(g.coeff_repr(0).neg()))
            .collect();
        assert!(roots.contains(&tower.theta()));
        assert!(roots.contains(&tower.theta().neg()));
    }

    #[test]
    fn x2_plus_1_irreducible_over_sqrt2() {
        let tower = NumberTower::new(p("x^2-2"), 42).unwrap();
        let f = ExtPoly::from_qpoly(&tower, &p("x^2+1"));
        let fl = factor_over_tower(&tower, &f, 42, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(fl.factors().len(), 1);
        assert_eq!(fl.factors()[0].0.deg(), 2);
    }

    #[test]
    fn multiplicities_preserved() {
        let tower = NumberTower::new(p("x^2-2"), 42).unwrap();
        // (x^2 - 2)^2 * (x - 1)
        let sq = ExtPoly::from_qpoly(&tower, &p("x^2-2"));
        let f = sq
            .mul(&sq)
            .unwrap()
            .mul(&ExtPoly::from_qpoly(&tower, &p("x-1")))
            .unwrap();
        let fl = factor_over_tower(&tower, &f, 42, DEFAULT_DEGREE_CAP).unwrap();
        let mut linear_mult2 = 0;
        let mut linear_mult1 = 0;
        for (g, m) in fl.factors() {
            assert_eq!(g.deg(), 1);
            match m {
                2 => linear_mult2 += 1,
                1 => linear_mult1 += 1,
                _ => panic!("unexpected multiplicity"),
            }
        }
        assert_eq!((linear_mult2, linear_mult1), (2, 1));
        // product reproduces the input
        let mut acc = ExtPoly::new(&tower, vec![fl.unit().repr().clone()]);
        for (g, m) in fl.factors() {
            for _ in 0..*m {
                acc = acc.mul(g).unwrap();
            }
        }
        assert_eq!(acc, f);
    }

    #[test]
    fn norm_of_quadratic_over_quartic_field() {
        // the splitting tower of x^4-2x^2-1 at degree 4 contains sqrt(1+sqrt2)
        let tower = NumberTower::new(p("x^4-2*x^2-1"), 42).unwrap();
        // x^2 + 1 stays irreducible (field is a subfield of R under one
        // embedding, and squares are embedding independent)
        let f = ExtPoly::from_qpoly(&tower, &p("x^2+1"));
        let fl = factor_over_tower(&tower, &f, 42, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(fl.factors().len(), 1);
        assert_eq!(fl.factors()[0].0.deg(), 2);
    }

    #[test]
    fn cap_enforced() {
        let tower = NumberTower::new(p("x^4-2*x^2-1"), 42).unwrap();
        let f = ExtPoly::from_qpoly(&tower, &p("x^2+1"));
        let err = factor_over_tower(&tower, &f, 42, 4).unwrap_err();
        assert!(matches!(err, Error::DegreeCapExceeded { .. }));
    }

    #[test]
    fn evaluate_factor_roots() {
        // factor x^2 - (1 + theta) over Q(theta = sqrt2) after extending: the
        // linear factors of any factorization evaluate to zero
        let tower = NumberTower::new(p("x^4-2*x^2-1"), 42).unwrap();
        let quartic = ExtPoly::from_qpoly(&tower, &p("x^4-2*x^2-1"));
        let fl = factor_over_tower(&tower, &quartic, 42, DEFAULT_DEGREE_CAP).unwrap();
        for (g, _) in fl.factors() {
            if g.deg() == 1 {
                let root = tower.element(g.coeff_repr(0).neg());
                let value = quartic.evaluate(&root).unwrap();
                assert!(value.is_zero());
            }
        }
        assert!(fl.factors().iter().any(|(g, _)| g.deg() == 1));
    }
}
