//! Rational functions in named variables, kept in canonical reduced form.
//!
//! Canonical form: numerator and denominator share no factor, the denominator
//! is integer-primitive, and its leading coefficient under graded lex is
//! positive. Equality is then structural; a randomized evaluation cross-check
//! lives in the test suite.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{gcd, Poly};
use crate::scalar::{BigRat, Sym};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun { num, den }.reduced())
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var(s: Sym) -> RatFun {
        RatFun::from_poly(Poly::var(s))
    }

    pub fn constant(c: BigRat) -> RatFun {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> RatFun {
        RatFun::from_poly(Poly::int(n))
    }

    pub fn zero() -> RatFun {
        RatFun::from_poly(Poly::zero())
    }

    pub fn one() -> RatFun {
        RatFun::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<BigRat> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    fn reduced(self) -> RatFun {
        if self.num.is_zero() {
            return RatFun {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = gcd(&self.num, &self.den);
        let mut num = self.num.div_exact(&g).expect("gcd divides");
        let mut den = self.den.div_exact(&g).expect("gcd divides");
        // Scale so den is integer-primitive with positive leading coefficient.
        let mut c = den.content();
        if den.leading().unwrap().1.is_negative() {
            c = -c;
        }
        let inv = BigRat::one() / c;
        num = num.scale(&inv);
        den = den.scale(&inv);
        RatFun { num, den }
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun {
            num: self.den.clone(),
            den: self.num.clone(),
        }
        .reduced())
    }

    /// Integer power, negative allowed for nonzero functions.
    pub fn powi(&self, e: i64) -> Result<RatFun> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFun::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Evaluates at exact rational points. Error if the denominator vanishes.
    pub fn eval(&self, vals: &BTreeMap<Sym, BigRat>) -> Result<BigRat> {
        let d = self.den.eval(vals);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(vals) / d)
    }

    pub fn subst(&self, s: Sym, val: &BigRat) -> Result<RatFun> {
        RatFun::new(self.num.subst(s, val), self.den.subst(s, val))
    }

    /// Substitutes a polynomial for one variable.
    pub fn subst_poly(&self, s: Sym, val: &Poly) -> Result<RatFun> {
        RatFun::new(self.num.subst_poly(s, val), self.den.subst_poly(s, val))
    }

    /// Renames variables according to the map (used for x <-> y swaps).
    pub fn rename(&self, map: &BTreeMap<Sym, Sym>) -> RatFun {
        let rename_poly = |p: &Poly| {
            let mut out = Poly::zero();
            for (m, c) in p.terms() {
                let mut nm = crate::poly::Monomial::one();
                for s in m.vars() {
                    let e = m.degree_in(s);
                    let t = map.get(&s).copied().unwrap_or(s);
                    nm = nm.mul(&crate::poly::Monomial::var(t, e));
                }
                out.add_term(nm, c.clone());
            }
            out
        };
        RatFun {
            num: rename_poly(&self.num),
            den: rename_poly(&self.den),
        }
        .reduced()
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        RatFun {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
        .reduced()
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        RatFun {
            num: &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
        .reduced()
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        // Cross-reduce first to keep intermediate degrees small.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RatFun {
            num: &n1 * &n2,
            den: &d1 * &d2,
        }
        .reduced()
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        self.mul(&rhs.inv().expect("division by zero rational function"))
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, sym, sym_hbar};

    fn u() -> Poly {
        Poly::var(sym("u"))
    }
    fn v() -> Poly {
        Poly::var(sym("v"))
    }
    fn h() -> Poly {
        Poly::var(sym_hbar())
    }

    #[test]
    fn factor_cancellation() {
        // (u^2 - hbar^2)/(u - hbar) -> u + hbar
        let r = RatFun::new(&u().pow(2) - &h().pow(2), &u() - &h()).unwrap();
        assert_eq!(r, RatFun::from_poly(&u() + &h()));
    }

    #[test]
    fn inverse_pair() {
        // ((u-v+h)/(u-v-h)) * ((u-v-h)/(u-v+h)) = 1
        let w = &u() - &v();
        let a = RatFun::new(&w + &h(), &w - &h()).unwrap();
        let b = RatFun::new(&w - &h(), &w + &h()).unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn middle_block_row_sum() {
        // u/(u+h) + h/(u+h) = 1 (row sums of the R-matrix middle block)
        let a = RatFun::new(u(), &u() + &h()).unwrap();
        let b = RatFun::new(h(), &u() + &h()).unwrap();
        assert!((&a + &b).is_one());
    }

    #[test]
    fn zero_division_error() {
        assert_eq!(
            RatFun::new(u(), Poly::zero()).unwrap_err(),
            Error::DivisionByZero
        );
        assert!(RatFun::zero().inv().is_err());
    }

    #[test]
    fn canonical_sign() {
        // 1/(-u) normalizes to (-1)/u.
        let r = RatFun::new(Poly::one(), -&u()).unwrap();
        assert_eq!(r.den(), &u());
        assert_eq!(r.num(), &Poly::int(-1));
    }

    #[test]
    fn eval_cross_check() {
        let r = RatFun::new(&u().pow(2) - &h().pow(2), &u() - &h()).unwrap();
        let mut vals = BTreeMap::new();
        vals.insert(sym("u"), rat(7, 3));
        vals.insert(sym_hbar(), rat(1, 2));
        assert_eq!(r.eval(&vals).unwrap(), rat(7, 3) + rat(1, 2));
    }

    #[test]
    fn powi_negative() {
        let x = RatFun::var(sym("x"));
        let p = x.powi(-2).unwrap();
        assert_eq!(&p * &x.powi(2).unwrap(), RatFun::one());
        assert_eq!(p.eval(&BTreeMap::from([(sym("x"), int(2))])).unwrap(), rat(1, 4));
    }
}
