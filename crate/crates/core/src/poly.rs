//! Sparse multivariate polynomials over exact rationals.
//!
//! Monomials are compared in graded lexicographic order with variables
//! ordered by name, which fixes canonical forms for equality tests and for
//! report serialization. Reduction of rational functions only needs
//! gcd-based machinery: content extraction plus a primitive polynomial
//! remainder sequence in a chosen main variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int, rat_gcd, BigRat, Sym};

/// Exponent vector, sorted by symbol, no zero exponents.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct Monomial(Vec<(Sym, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(s: Sym, e: u32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(s, e)])
        }
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn degree_in(&self, s: Sym) -> u32 {
        self.0
            .iter()
            .find(|&&(v, _)| v == s)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for &(s, e) in &other.0 {
            match out.binary_search_by(|&(v, _)| v.cmp(&s)) {
                Ok(i) => out[i].1 += e,
                Err(i) => out.insert(i, (s, e)),
            }
        }
        Monomial(out)
    }

    /// Exact division; None when not divisible.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut it = self.0.iter().peekable();
        for &(s, e) in &other.0 {
            loop {
                let &&(v, f) = it.peek()?;
                if v < s {
                    out.push((v, f));
                    it.next();
                } else if v == s {
                    if f < e {
                        return None;
                    }
                    if f > e {
                        out.push((v, f - e));
                    }
                    it.next();
                    break;
                } else {
                    return None;
                }
            }
        }
        out.extend(it.copied());
        Some(Monomial(out))
    }

    pub fn without(&self, s: Sym) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(v, _)| v != s).collect())
    }

    pub fn vars(&self) -> impl Iterator<Item = Sym> + '_ {
        self.0.iter().map(|&(s, _)| s)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // Lexicographic on the exponent vectors, earlier variable first.
        let mut a = self.0.iter();
        let mut b = other.0.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                // A missing variable means exponent zero there; the side that
                // still has variables is lex-larger on the earliest of them.
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        return Ordering::Greater;
                    }
                    if va > vb {
                        return Ordering::Less;
                    }
                    match ea.cmp(&eb) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
            }
        }
    }
}

/// A polynomial over `BigRat` in named commuting variables.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(int(n))
    }

    pub fn var(s: Sym) -> Poly {
        Poly::monomial(Monomial::var(s, 1), BigRat::one())
    }

    pub fn var_pow(s: Sym, e: u32) -> Poly {
        Poly::monomial(Monomial::var(s, e), BigRat::one())
    }

    pub fn monomial(m: Monomial, c: BigRat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()))
    }

    pub fn as_constant(&self) -> Option<BigRat> {
        if self.terms.is_empty() {
            return Some(BigRat::zero());
        }
        if self.is_constant() {
            return self.terms.get(&Monomial::one()).cloned();
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, s: Sym) -> u32 {
        self.terms.keys().map(|m| m.degree_in(s)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, s: Sym) -> bool {
        self.terms.keys().any(|m| m.degree_in(s) > 0)
    }

    pub fn vars(&self) -> Vec<Sym> {
        let mut vs: Vec<Sym> = Vec::new();
        for m in self.terms.keys() {
            for s in m.vars() {
                if !vs.contains(&s) {
                    vs.push(s);
                }
            }
        }
        vs.sort();
        vs
    }

    /// Leading (largest) term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &BigRat)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes exact rational values for every variable.
    /// Panics if a variable remains unvalued.
    pub fn eval(&self, vals: &BTreeMap<Sym, BigRat>) -> BigRat {
        let mut out = BigRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, e) in m.0.iter() {
                let v = vals
                    .get(s)
                    .unwrap_or_else(|| panic!("no value for variable {}", s));
                for _ in 0..*e {
                    t *= v;
                }
            }
            out += t;
        }
        out
    }

    /// Substitutes a rational value for one variable, keeping the rest symbolic.
    pub fn subst(&self, s: Sym, val: &BigRat) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.degree_in(s);
            let mut coef = c.clone();
            for _ in 0..e {
                coef *= val;
            }
            out.add_term(m.without(s), coef);
        }
        out
    }

    /// Substitutes a polynomial for one variable.
    pub fn subst_poly(&self, s: Sym, val: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.degree_in(s);
            let base = Poly::monomial(m.without(s), c.clone());
            let repl = val.pow(e);
            out = &out + &(&base * &repl);
        }
        out
    }

    /// View as univariate in `s`: exponent -> coefficient polynomial free of `s`.
    pub fn as_univariate(&self, s: Sym) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.degree_in(s);
            out.entry(e)
                .or_insert_with(Poly::zero)
                .add_term(m.without(s), c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    pub fn from_univariate(s: Sym, coeffs: &BTreeMap<u32, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (e, p) in coeffs {
            for (m, c) in &p.terms {
                out.add_term(m.mul(&Monomial::var(s, *e)), c.clone());
            }
        }
        out
    }

    /// Coefficient of `s^e`, as a polynomial free of `s`.
    pub fn coeff_of(&self, s: Sym, e: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.degree_in(s) == e {
                out.add_term(m.without(s), c.clone());
            }
        }
        out
    }

    /// Rational content: gcd of all coefficients (positive).
    pub fn content(&self) -> BigRat {
        let mut g = BigRat::zero();
        for c in self.terms.values() {
            g = rat_gcd(&g, c);
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        let inv = BigRat::one() / c;
        self.scale(&inv)
    }

    /// Exact division; error if the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = d.as_constant() {
            return Ok(self.scale(&(BigRat::one() / c)));
        }
        let (dl_m, dl_c) = d.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while !rem.is_zero() {
            let (rl_m, rl_c) = rem.leading().unwrap();
            let m = rl_m
                .div(dl_m)
                .ok_or_else(|| Error::NotDivisible(format!("{}", d)))?;
            let c = rl_c / dl_c;
            quot.add_term(m.clone(), c.clone());
            rem = &rem - &d.mul_monomial(&m, &c);
        }
        Ok(quot)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_exact(self).is_ok()
    }

    /// Derivative with respect to `s`.
    pub fn derivative(&self, s: Sym) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.degree_in(s);
            if e > 0 {
                let mut reduced = m.without(s);
                if e > 1 {
                    reduced = reduced.mul(&Monomial::var(s, e - 1));
                }
                out.add_term(reduced, c * int(e as i64));
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
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
            let show_coef = !abs.is_one() || m.0.is_empty();
            if show_coef {
                write!(f, "{}", crate::scalar::rat_string(&abs))?;
            }
            for (i, (s, e)) in m.0.iter().enumerate() {
                if show_coef || i > 0 {
                    write!(f, "*")?;
                }
                write!(f, "{}", s)?;
                if *e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        if self.terms.len() > rhs.terms.len() {
            return rhs.mul(self);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// Pseudo-remainder of `a` by `b` in the variable `s`.
fn pseudo_rem(a: &Poly, b: &Poly, s: Sym) -> Poly {
    let db = b.degree_in(s);
    let lb = b.coeff_of(s, db);
    let mut r = a.clone();
    loop {
        let dr = r.degree_in(s);
        if r.is_zero() || dr < db {
            return r;
        }
        let lr = r.coeff_of(s, dr);
        // lb * r - lr * s^(dr-db) * b
        let shift = Poly::var_pow(s, dr - db);
        r = &(&r * &lb) - &(&(&lr * &shift) * b);
    }
}

/// Content of `a` seen as univariate in `s`: gcd of its coefficient polys.
fn content_in(a: &Poly, s: Sym) -> Poly {
    let coeffs = a.as_univariate(s);
    let mut g = Poly::zero();
    for p in coeffs.values() {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// gcd of multivariate polynomials over the rationals, returned primitive
/// with positive leading coefficient. gcd(0, b) = primitive(b).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    // Main variable: the last (name-wise largest) variable appearing in either,
    // so recursion strictly shrinks the variable set.
    let mut vars = a.vars();
    for v in b.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort();
    let s = *vars.last().unwrap();

    if !a.contains_var(s) {
        // gcd divides b's coefficients in s.
        return gcd(a, &content_in(b, s));
    }
    if !b.contains_var(s) {
        return gcd(&content_in(a, s), b);
    }

    let ca = content_in(a, s);
    let cb = content_in(b, s);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let cg = gcd(&ca, &cb);

    // Primitive PRS on the primitive parts.
    let (mut f, mut g) = if pa.degree_in(s) >= pb.degree_in(s) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = pseudo_rem(&f, &g, s);
        if r.is_zero() {
            break;
        }
        if r.degree_in(s) == 0 {
            // Coefficient-level gcd only.
            g = Poly::one();
            break;
        }
        let rc = content_in(&r, s);
        f = g;
        g = r.div_exact(&rc).expect("content divides").primitive();
    }
    (&cg * &g).primitive()
}
