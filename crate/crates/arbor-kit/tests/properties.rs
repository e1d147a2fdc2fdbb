//! Property tests for the algebraic kernels.

use proptest::prelude::*;

use arbor_kit::fppoly::{factor_mod_p, FpPoly};
use arbor_kit::qpoly::{parse_poly, QPoly};
use arbor_kit::rational::rat_i64;
use arbor_kit::tree::{seeded_portrait, Portrait, WreathDescriptor};
use arbor_kit::zassenhaus::factor_over_rationals;

fn small_qpoly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-6i64..=6, 1..=max_deg + 1).prop_map(|mut v| {
        if let Some(last) = v.last_mut() {
            if *last == 0 {
                *last = 1;
            }
        }
        QPoly::new(v.into_iter().map(rat_i64).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parse_display_roundtrip(f in small_qpoly(6)) {
        let back = parse_poly(&f.to_string()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn rational_factorization_roundtrip(a in small_qpoly(3), b in small_qpoly(3)) {
        let f = a.mul(&b);
        let fl = factor_over_rationals(&f, 42).unwrap();
        let mut acc = QPoly::constant(fl.unit().clone());
        for (g, m) in fl.factors() {
            prop_assert!(g.is_monic());
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        prop_assert_eq!(acc, f);
    }

    #[test]
    fn mod_p_factorization_roundtrip(coeffs in prop::collection::vec(0u64..5, 2..8)) {
        let p = 5u64;
        let mut v = coeffs;
        if let Some(last) = v.last_mut() {
            if *last == 0 {
                *last = 1;
            }
        }
        let f = FpPoly::new(p, v);
        let fl = factor_mod_p(&f, 42).unwrap();
        let mut acc = FpPoly::constant(p, *fl.unit());
        let mut degsum = 0usize;
        for (g, m) in fl.factors() {
            degsum += g.deg() * *m as usize;
            for _ in 0..*m {
                acc = acc.mul(g).unwrap();
            }
        }
        prop_assert_eq!(&acc, &f);
        prop_assert_eq!(degsum, f.deg());
    }

    #[test]
    fn portrait_group_laws(seed1 in 0u64..500, seed2 in 0u64..500) {
        let desc = WreathDescriptor::new(2, 1, 3);
        let id = Portrait::identity(desc);
        let a = seeded_portrait(desc, seed1);
        let b = seeded_portrait(desc, seed2);
        prop_assert_eq!(a.compose(&a.inverse()).unwrap(), id.clone());
        let ab = a.compose(&b).unwrap();
        let ab_inv = ab.inverse();
        prop_assert_eq!(
            ab_inv,
            b.inverse().compose(&a.inverse()).unwrap()
        );
        prop_assert_eq!(ab.compose(&b.inverse()).unwrap(), a);
    }
}
