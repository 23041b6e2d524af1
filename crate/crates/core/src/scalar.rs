//! Interned variable symbols and the exact rational scalar type.

use std::collections::HashSet;
use std::fmt;
use std::sync::Mutex;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

/// Exact rational scalar used for every coefficient of the symbolic track.
pub type BigRat = BigRational;

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn binom_rat(top: i64, j: u32) -> BigRat {
    // Generalized binomial coefficient: top*(top-1)*...*(top-j+1)/j!.
    let mut num = BigRat::one();
    for i in 0..j as i64 {
        num *= int(top - i);
    }
    let mut den = BigInt::one();
    for i in 1..=j as u64 {
        den *= BigInt::from(i);
    }
    num / BigRational::from_integer(den)
}

pub fn binom_u(n: u64, k: u64) -> BigRat {
    if k > n {
        return BigRat::zero();
    }
    binom_rat(n as i64, k as u32)
}

static SYMBOLS: Lazy<Mutex<HashSet<&'static str>>> = Lazy::new(|| Mutex::new(HashSet::new()));

/// An interned variable name. Ordering is by name, so canonical forms do not
/// depend on interning order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sym(&'static str);

impl Sym {
    pub fn new(name: &str) -> Sym {
        let mut set = SYMBOLS.lock().unwrap();
        if let Some(s) = set.get(name) {
            return Sym(s);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        set.insert(leaked);
        Sym(leaked)
    }

    pub fn name(&self) -> &'static str {
        self.0
    }
}

impl PartialOrd for Sym {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Sym {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.cmp(other.0)
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The deformation parameter. Every exact module coefficient lives in Q[hbar].
pub fn sym_hbar() -> Sym {
    Sym::new("hbar")
}

pub fn sym(name: &str) -> Sym {
    Sym::new(name)
}

/// Formats a rational in the lossless "p/q" (or "p") form used by reports.
pub fn rat_string(r: &BigRat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// gcd of two rationals: gcd of numerators over lcm of denominators.
/// Used for polynomial content computations; gcd(0, x) = |x|.
pub fn rat_gcd(a: &BigRat, b: &BigRat) -> BigRat {
    use num::Integer;
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    BigRational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_orders_by_name() {
        let u = sym("u");
        let v = sym("v");
        let h = sym_hbar();
        assert!(h < u && u < v);
        assert_eq!(sym("u"), u);
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_rat(4, 2), int(6));
        assert_eq!(binom_rat(-1, 3), int(-1));
        assert_eq!(binom_rat(-2, 2), int(3));
        assert_eq!(binom_u(3, 5), BigRat::zero());
    }

    #[test]
    fn rational_gcd() {
        assert_eq!(rat_gcd(&rat(4, 3), &rat(2, 9)), rat(2, 9));
        assert_eq!(rat_gcd(&BigRat::zero(), &rat(-5, 2)), rat(5, 2));
    }
}
