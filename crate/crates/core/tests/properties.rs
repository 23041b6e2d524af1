//! Property tests for the exact arithmetic layer.

use std::collections::BTreeMap;

use proptest::prelude::*;

use ydouble::laurent::{bicoeff, laurent_expand, ExpansionRegion, Laurent};
use ydouble::poly::Poly;
use ydouble::ratfun::RatFun;
use ydouble::scalar::{rat, sym, sym_hbar, BigRat};

fn small_rat() -> impl Strategy<Value = BigRat> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

/// Random small polynomial in u and hbar.
fn small_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((0u32..3, 0u32..2, -9i64..=9), 0..5).prop_map(|terms| {
        let mut p = Poly::zero();
        for (eu, eh, c) in terms {
            let m = ydouble::poly::Monomial::var(sym("u"), eu)
                .mul(&ydouble::poly::Monomial::var(sym_hbar(), eh));
            p.add_term(m, rat(c, 1));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Structural equality of reduced rational functions agrees with
    /// evaluation at random points away from poles.
    #[test]
    fn ratfun_equality_matches_evaluation(
        a in small_poly(),
        b in small_poly(),
        d in small_poly(),
        u0 in small_rat(),
        h0 in small_rat(),
    ) {
        prop_assume!(!d.is_zero());
        let r1 = RatFun::new(a.clone(), d.clone()).unwrap();
        let r2 = RatFun::new(b.clone(), d.clone()).unwrap();
        let sum = (&r1 + &r2);
        let direct = RatFun::new(&a + &b, d).unwrap();
        prop_assert_eq!(sum.clone(), direct.clone());
        let vals = BTreeMap::from([(sym("u"), u0), (sym_hbar(), h0)]);
        if let (Ok(x), Ok(y)) = (sum.eval(&vals), direct.eval(&vals)) {
            prop_assert_eq!(x, y);
        }
    }

    /// Cross-multiplied equality of two random quotients agrees with the
    /// canonical-form comparison.
    #[test]
    fn ratfun_cross_multiplication(
        a in small_poly(),
        b in small_poly(),
        c in small_poly(),
        d in small_poly(),
    ) {
        prop_assume!(!b.is_zero() && !d.is_zero());
        let r1 = RatFun::new(a.clone(), b.clone()).unwrap();
        let r2 = RatFun::new(c.clone(), d.clone()).unwrap();
        let cross = &a * &d == &c * &b;
        prop_assert_eq!(r1 == r2, cross);
    }

    /// The difference of the two one-sided expansions of P(u)/(u - v) is the
    /// smeared formal delta P(u) delta(u - v): at bigrade (n, m) it equals
    /// the numerator coefficient of degree n + m + 1.
    #[test]
    fn one_sided_expansions_difference(extra in small_poly()) {
        let u = sym("u");
        let v = sym("v");
        let den = &Poly::var(u) - &Poly::var(v);
        let num = &Poly::one() + &extra.subst(sym_hbar(), &rat(1, 3));
        let r = RatFun::new(num.clone(), den).unwrap();
        let in_u = laurent_expand(&r, ExpansionRegion::AtInfinity(u), -8, 6).unwrap();
        let in_v = laurent_expand(&r, ExpansionRegion::AtInfinity(v), -8, 6).unwrap();
        for n in -4..=2i64 {
            for m in -4..=2i64 {
                let a = if m >= 0 { bicoeff(&in_u, n, v, m as u32).unwrap() } else { Poly::zero() };
                let b = if n >= 0 { bicoeff(&in_v, m, u, n as u32).unwrap() } else { Poly::zero() };
                let diff = &a - &b;
                let deg = n + m + 1;
                let expect = if deg >= 0 {
                    num.coeff_of(u, deg as u32)
                } else {
                    Poly::zero()
                };
                prop_assert_eq!(diff, expect, "grade ({}, {})", n, m);
            }
        }
    }

    /// Shift composition: shifting by two amounts equals shifting by their
    /// sum on the doubly narrowed window.
    #[test]
    fn shift_composition(p1 in -3i64..=2, c in -9i64..=9, g1 in small_rat(), g2 in small_rat()) {
        let u = sym("u");
        let s = Laurent::<Poly>::monomial(u, p1, Poly::constant(rat(c, 1)))
            .clip(-8, i64::MAX);
        let a = s
            .shift(&Poly::constant(g1.clone())).unwrap()
            .shift(&Poly::constant(g2.clone())).unwrap();
        let b = s.shift(&Poly::constant(g1 + g2)).unwrap();
        for p in -8..=4 {
            prop_assert_eq!(a.coeff(p), b.coeff(p), "power {}", p);
        }
    }

    /// Exponentials of commuting scalar series are additive, and inverse
    /// against the negated exponent.
    #[test]
    fn exp_additivity(c1 in -5i64..=5, c2 in -5i64..=5) {
        let u = sym("u");
        let a = Laurent::<Poly>::monomial(u, -1, Poly::int(c1)).clip(-5, i64::MAX);
        let b = Laurent::<Poly>::monomial(u, -2, Poly::int(c2)).clip(-5, i64::MAX);
        let lhs = a.exp().unwrap().mul(&b.exp().unwrap());
        let rhs = a.add(&b).exp().unwrap();
        for p in -5..=0 {
            prop_assert_eq!(lhs.coeff(p), rhs.coeff(p), "power {}", p);
        }
        let inv = a.neg().exp().unwrap();
        let prod = a.exp().unwrap().mul(&inv);
        for p in -5..=0 {
            let expect = if p == 0 { Poly::one() } else { Poly::zero() };
            prop_assert_eq!(prod.coeff(p).unwrap(), expect);
        }
    }
}
