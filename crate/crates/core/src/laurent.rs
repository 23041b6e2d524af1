//! Truncated Laurent series with explicit reliability windows.
//!
//! A series knows the interval of powers on which its coefficients are
//! reliable. Outside that interval a coefficient is *unknown*, never assumed
//! zero; the interval endpoints may be infinite when a side is exactly zero
//! beyond the stored support (polynomials, one-sided expansions). Arithmetic
//! narrows the reliable interval pessimistically, so an identity that checks
//! out on a window is exact on that window.

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::scalar::{binom_rat, BigRat, Sym};

/// Coefficient ring abstraction shared by the exact and numeric tracks.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rat(r: &BigRat) -> Self;
    /// Multiplicative inverse when the value is a unit of the ring.
    fn try_unit_inv(&self) -> Option<Self>;
}

impl Coeff for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rat(r: &BigRat) -> Self {
        Poly::constant(r.clone())
    }
    fn try_unit_inv(&self) -> Option<Self> {
        let c = self.as_constant()?;
        if c.is_zero() {
            None
        } else {
            Some(Poly::constant(BigRat::one() / c))
        }
    }
}

impl Coeff for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rat(r: &BigRat) -> Self {
        use num::ToPrimitive;
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn try_unit_inv(&self) -> Option<Self> {
        if self.re == 0.0 && self.im == 0.0 {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
}

const NEG_INF: i128 = i128::MIN / 4;
const POS_INF: i128 = i128::MAX / 4;

fn ext(v: i64) -> i128 {
    if v == i64::MIN {
        NEG_INF
    } else if v == i64::MAX {
        POS_INF
    } else {
        v as i128
    }
}

fn unext(v: i128) -> i64 {
    if v <= NEG_INF {
        i64::MIN
    } else if v >= POS_INF {
        i64::MAX
    } else {
        v as i64
    }
}

/// Expansion region for a rational function: which variable dominates and
/// whether the series runs in inverse powers (at infinity) or direct powers
/// (at zero) of that variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionRegion {
    /// Powers of `var^-1`; for bivariate use this is the "|var| largest" side.
    AtInfinity(Sym),
    /// Powers of `var`; the "|var| smallest" side.
    AtZero(Sym),
}

impl ExpansionRegion {
    pub fn var(&self) -> Sym {
        match *self {
            ExpansionRegion::AtInfinity(s) | ExpansionRegion::AtZero(s) => s,
        }
    }
}

/// A Laurent series in one distinguished variable.
///
/// `known_lo`/`known_hi` bound the reliable window; the sentinels
/// `i64::MIN`/`i64::MAX` mean "exactly zero beyond the stored support" on
/// that side.
#[derive(Clone, PartialEq)]
pub struct Laurent<C: Coeff> {
    var: Sym,
    known_lo: i64,
    known_hi: i64,
    coeffs: BTreeMap<i64, C>,
}

impl<C: Coeff> Laurent<C> {
    /// The zero series, known everywhere.
    pub fn zero(var: Sym) -> Self {
        Laurent {
            var,
            known_lo: i64::MIN,
            known_hi: i64::MAX,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(var: Sym) -> Self {
        Laurent::monomial(var, 0, C::one())
    }

    pub fn monomial(var: Sym, power: i64, c: C) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(power, c);
        }
        Laurent {
            var,
            known_lo: i64::MIN,
            known_hi: i64::MAX,
            coeffs,
        }
    }

    pub fn from_terms(var: Sym, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut out = Laurent::zero(var);
        for (p, c) in terms {
            out.add_coeff(p, c);
        }
        out
    }

    pub fn var(&self) -> Sym {
        self.var
    }

    pub fn known_lo(&self) -> i64 {
        self.known_lo
    }

    pub fn known_hi(&self) -> i64 {
        self.known_hi
    }

    pub fn is_known(&self, p: i64) -> bool {
        self.known_lo <= p && p <= self.known_hi
    }

    /// True when every reliable coefficient is zero and the window is total.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.known_lo == i64::MIN && self.known_hi == i64::MAX
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some((
                *self.coeffs.keys().next().unwrap(),
                *self.coeffs.keys().next_back().unwrap(),
            ))
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &C)> {
        self.coeffs.iter()
    }

    /// Reliable coefficient at `p`, or None when `p` is outside the window.
    pub fn coeff(&self, p: i64) -> Option<C> {
        if !self.is_known(p) {
            return None;
        }
        Some(self.coeffs.get(&p).cloned().unwrap_or_else(C::zero))
    }

    pub fn coeff_checked(&self, p: i64) -> Result<C> {
        self.coeff(p).ok_or(Error::PowerOutsideWindow(p))
    }

    fn add_coeff(&mut self, p: i64, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(p) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Restricts the reliable window (coefficients outside are dropped).
    pub fn clip(&self, lo: i64, hi: i64) -> Self {
        let known_lo = self.known_lo.max(lo);
        let known_hi = self.known_hi.min(hi);
        let coeffs = if known_lo <= known_hi {
            self.coeffs
                .range(known_lo..=known_hi)
                .map(|(p, c)| (*p, c.clone()))
                .collect()
        } else {
            BTreeMap::new()
        };
        Laurent {
            var: self.var,
            known_lo,
            known_hi,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        Laurent {
            var: self.var,
            known_lo: self.known_lo,
            known_hi: self.known_hi,
            coeffs: self.coeffs.iter().map(|(p, c)| (*p, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            // Zero times anything, known or not, is zero everywhere.
            return Laurent::zero(self.var);
        }
        let mut coeffs = BTreeMap::new();
        for (p, v) in &self.coeffs {
            let w = v.mul(c);
            if !w.is_zero() {
                coeffs.insert(*p, w);
            }
        }
        Laurent {
            var: self.var,
            known_lo: self.known_lo,
            known_hi: self.known_hi,
            coeffs,
        }
    }

    /// Multiply by `c * var^k`.
    pub fn mul_monomial(&self, k: i64, c: &C) -> Self {
        let s = self.scale(c);
        if c.is_zero() {
            return s;
        }
        let known_lo = if s.known_lo == i64::MIN {
            i64::MIN
        } else {
            s.known_lo.saturating_add(k)
        };
        let known_hi = if s.known_hi == i64::MAX {
            i64::MAX
        } else {
            s.known_hi.saturating_add(k)
        };
        Laurent {
            var: s.var,
            known_lo,
            known_hi,
            coeffs: s.coeffs.into_iter().map(|(p, v)| (p + k, v)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.var, other.var, "mismatched series variables");
        let known_lo = self.known_lo.max(other.known_lo);
        let known_hi = self.known_hi.min(other.known_hi);
        let mut out = Laurent {
            var: self.var,
            known_lo,
            known_hi,
            coeffs: BTreeMap::new(),
        };
        if known_lo > known_hi {
            return out;
        }
        for (p, c) in self.coeffs.range(known_lo..=known_hi) {
            out.add_coeff(*p, c.clone());
        }
        for (p, c) in other.coeffs.range(known_lo..=known_hi) {
            out.add_coeff(*p, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Possibly-nonzero region (extended bounds).
    fn p_bounds(&self) -> (i128, i128) {
        let (slo, shi) = match self.support() {
            Some((a, b)) => (a as i128, b as i128),
            None => (POS_INF, NEG_INF), // empty support
        };
        let lo = if self.known_lo == i64::MIN { slo } else { NEG_INF };
        let hi = if self.known_hi == i64::MAX { shi } else { POS_INF };
        (lo, hi)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.var, other.var, "mismatched series variables");
        let (pla, pha) = self.p_bounds();
        let (plb, phb) = other.p_bounds();
        let (kla, kha) = (ext(self.known_lo), ext(self.known_hi));
        let (klb, khb) = (ext(other.known_lo), ext(other.known_hi));

        // Reliable window of the product: a power p is computable when every
        // potentially contributing split has both factors inside their
        // reliable windows.
        let mut lo = NEG_INF;
        let mut hi = POS_INF;
        if pla < kla {
            lo = lo.max(kla.saturating_add(phb));
        }
        if plb < klb {
            lo = lo.max(klb.saturating_add(pha));
        }
        if pha > kha {
            hi = hi.min(kha.saturating_add(plb));
        }
        if phb > khb {
            hi = hi.min(khb.saturating_add(pla));
        }

        let mut out = Laurent {
            var: self.var,
            known_lo: unext(lo),
            known_hi: unext(hi),
            coeffs: BTreeMap::new(),
        };
        if lo > hi {
            out.known_lo = 0;
            out.known_hi = -1;
            return out;
        }
        for (pa, ca) in &self.coeffs {
            for (pb, cb) in &other.coeffs {
                let p = (*pa as i128) + (*pb as i128);
                if p >= lo && p <= hi {
                    out.add_coeff(p as i64, ca.mul(cb));
                }
            }
        }
        out
    }

    /// Inverse as a series running downward from the top of the support
    /// (expansion at infinity), reliable on `[out_lo, +inf)`. The edge
    /// coefficient must be a unit.
    pub fn inv_at_top(&self, out_lo: i64) -> Result<Self> {
        let (_, shi) = self.support().ok_or(Error::NonUnitEdge)?;
        if self.known_hi != i64::MAX {
            return Err(Error::NonUnitEdge);
        }
        let lead = self.coeffs.get(&shi).unwrap();
        let lead_inv = lead.try_unit_inv().ok_or(Error::NonUnitEdge)?;
        // Depth needed in the operand: coefficients of the inverse at
        // -shi - k use operand coefficients down to shi - k.
        let k_max_i128 = (-(out_lo as i128)) - (shi as i128);
        if k_max_i128 < 0 {
            // Requested window lies entirely above the support top of the
            // inverse; everything there is zero and known.
            return Ok(Laurent {
                var: self.var,
                known_lo: out_lo,
                known_hi: i64::MAX,
                coeffs: BTreeMap::new(),
            });
        }
        let k_max = k_max_i128 as i64;
        if self.known_lo != i64::MIN && (shi - k_max) < self.known_lo {
            return Err(Error::WindowExceeded {
                lo: out_lo,
                hi: -shi,
                have_lo: self.known_lo,
                have_hi: self.known_hi,
            });
        }
        let mut inv: BTreeMap<i64, C> = BTreeMap::new();
        inv.insert(-shi, lead_inv.clone());
        for k in 1..=k_max {
            // y_{-shi-k} = -lead_inv * sum_{j=1..=k} x_{shi-j} y_{-shi-k+j}
            let mut acc = C::zero();
            for j in 1..=k {
                if let Some(x) = self.coeffs.get(&(shi - j)) {
                    if let Some(y) = inv.get(&(-shi - k + j)) {
                        acc = acc.add(&x.mul(y));
                    }
                }
            }
            let val = lead_inv.mul(&acc).neg();
            if !val.is_zero() {
                inv.insert(-shi - k, val);
            }
        }
        Ok(Laurent {
            var: self.var,
            known_lo: out_lo,
            known_hi: i64::MAX,
            coeffs: inv,
        })
    }

    /// Inverse as a series running upward from the bottom of the support
    /// (expansion at zero), reliable on `(-inf, out_hi]`.
    pub fn inv_at_bottom(&self, out_hi: i64) -> Result<Self> {
        let (slo, _) = self.support().ok_or(Error::NonUnitEdge)?;
        if self.known_lo != i64::MIN {
            return Err(Error::NonUnitEdge);
        }
        let lead = self.coeffs.get(&slo).unwrap();
        let lead_inv = lead.try_unit_inv().ok_or(Error::NonUnitEdge)?;
        let k_max_i128 = (out_hi as i128) + (slo as i128);
        if k_max_i128 < 0 {
            return Ok(Laurent {
                var: self.var,
                known_lo: i64::MIN,
                known_hi: out_hi,
                coeffs: BTreeMap::new(),
            });
        }
        let k_max = k_max_i128 as i64;
        if self.known_hi != i64::MAX && (slo + k_max) > self.known_hi {
            return Err(Error::WindowExceeded {
                lo: -slo,
                hi: out_hi,
                have_lo: self.known_lo,
                have_hi: self.known_hi,
            });
        }
        let mut inv: BTreeMap<i64, C> = BTreeMap::new();
        inv.insert(-slo, lead_inv.clone());
        for k in 1..=k_max {
            let mut acc = C::zero();
            for j in 1..=k {
                if let Some(x) = self.coeffs.get(&(slo + j)) {
                    if let Some(y) = inv.get(&(-slo + k - j)) {
                        acc = acc.add(&x.mul(y));
                    }
                }
            }
            let val = lead_inv.mul(&acc).neg();
            if !val.is_zero() {
                inv.insert(-slo + k, val);
            }
        }
        Ok(Laurent {
            var: self.var,
            known_lo: i64::MIN,
            known_hi: out_hi,
            coeffs: inv,
        })
    }

    /// Division through the one-sided inverse; the divisor's edge coefficient
    /// must be a unit.
    pub fn div_at_top(&self, other: &Self, out_lo: i64) -> Result<Self> {
        Ok(self.mul(&other.inv_at_top(out_lo)?))
    }

    /// Substitute `var -> var + gamma`, exactly. Requires the series to be
    /// exactly zero above its support (one-sided at infinity or polynomial);
    /// each output coefficient is then a finite binomial sum.
    pub fn shift(&self, gamma: &C) -> Result<Self> {
        if self.known_hi != i64::MAX {
            return Err(Error::WindowExceeded {
                lo: self.known_lo,
                hi: self.known_hi,
                have_lo: self.known_lo,
                have_hi: i64::MAX,
            });
        }
        let mut out = Laurent {
            var: self.var,
            known_lo: self.known_lo,
            known_hi: i64::MAX,
            coeffs: BTreeMap::new(),
        };
        if gamma.is_zero() {
            out.coeffs = self.coeffs.clone();
            return Ok(out);
        }
        let lo_cut = self.known_lo;
        for (q, c) in &self.coeffs {
            // var^q -> sum_j binom(q, j) gamma^j var^(q-j), truncated at the
            // reliable window floor; for q >= 0 the binomial terminates.
            let floor: i128 = if lo_cut == i64::MIN {
                NEG_INF
            } else {
                lo_cut as i128
            };
            let mut cap: i128 = (*q as i128) - floor;
            if *q >= 0 {
                cap = cap.min(*q as i128);
            } else if lo_cut == i64::MIN {
                // Infinite binomial descent: a finite window floor is needed.
                return Err(Error::WindowExceeded {
                    lo: i64::MIN,
                    hi: *q,
                    have_lo: i64::MIN,
                    have_hi: i64::MAX,
                });
            }
            let mut gpow = C::one();
            for j in 0..=cap as u32 {
                let p = q - j as i64;
                let b = C::from_rat(&binom_rat(*q, j));
                out.add_coeff(p, c.mul(&gpow).mul(&b));
                gpow = gpow.mul(gamma);
            }
        }
        Ok(out)
    }

    /// Exponential of a series with zero constant term and one-sided support.
    pub fn exp(&self) -> Result<Self> {
        match self.coeff(0) {
            Some(c) if c.is_zero() => {}
            _ => return Err(Error::NonzeroConstantTerm),
        }
        let (slo, shi) = match self.support() {
            None => return Ok(Laurent::one(self.var)),
            Some(s) => s,
        };
        // The exponential of a one-sided series has unbounded support on that
        // side, so the operand must carry a finite window there.
        let depth;
        if shi < 0 && self.known_hi == i64::MAX && self.known_lo != i64::MIN {
            depth = ((self.known_lo / shi).max(1)) as usize + 1;
        } else if slo > 0 && self.known_lo == i64::MIN && self.known_hi != i64::MAX {
            depth = ((self.known_hi / slo).max(1)) as usize + 1;
        } else {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut acc = Laurent::one(self.var);
        let mut term = Laurent::one(self.var);
        for k in 1..=depth {
            term = term.mul(self);
            let inv_k = C::from_rat(&BigRat::new(1.into(), (k as i64).into()));
            term = term.scale(&inv_k);
            if term.coeffs.is_empty() {
                break;
            }
            acc = acc.add(&term);
        }
        // The sum's window already reflects every term's window.
        Ok(acc)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        Laurent {
            var: self.var,
            known_lo: self.known_lo,
            known_hi: self.known_hi,
            coeffs: self.coeffs.iter().map(|(p, c)| (*p, f(c))).collect(),
        }
    }
}

impl<C: Coeff> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent[{}; window ", self.var)?;
        if self.known_lo == i64::MIN {
            write!(f, "(-inf")?;
        } else {
            write!(f, "[{}", self.known_lo)?;
        }
        if self.known_hi == i64::MAX {
            write!(f, ", inf)")?;
        } else {
            write!(f, ", {}]", self.known_hi)?;
        }
        write!(f, "; ")?;
        for (i, (p, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:?})*{}^{}", c, self.var, p)?;
        }
        write!(f, "]")
    }
}

/// Converts a polynomial into a series in `var` whose coefficients are
/// polynomials in the remaining variables.
pub fn poly_to_series(p: &Poly, var: Sym) -> Laurent<Poly> {
    let uni = p.as_univariate(var);
    Laurent::from_terms(var, uni.into_iter().map(|(e, c)| (e as i64, c)))
}

/// Laurent expansion of a rational function in the given region, reliable on
/// the requested window. Coefficients are polynomials in the remaining
/// variables, so the extreme denominator coefficient in the region's
/// variable must be a nonzero constant.
pub fn laurent_expand(r: &RatFun, region: ExpansionRegion, lo: i64, hi: i64) -> Result<Laurent<Poly>> {
    if lo > hi {
        return Err(Error::WindowExceeded {
            lo,
            hi,
            have_lo: 0,
            have_hi: -1,
        });
    }
    let var = region.var();
    let num = poly_to_series(r.num(), var);
    let den = poly_to_series(r.den(), var);
    let out = match region {
        ExpansionRegion::AtInfinity(_) => {
            let dd = r.den().degree_in(var);
            let lead = r.den().coeff_of(var, dd);
            if lead.as_constant().map(|c| c.is_zero()).unwrap_or(true) {
                return Err(Error::RegionIncompatible(format!(
                    "denominator leading coefficient in {} is not a nonzero constant",
                    var
                )));
            }
            let n_hi = num.support().map(|(_, b)| b).unwrap_or(0);
            let inv = den.inv_at_top(lo - n_hi.max(0) - 1)?;
            num.mul(&inv)
        }
        ExpansionRegion::AtZero(_) => {
            let trail = r.den().coeff_of(var, 0);
            if trail.as_constant().map(|c| c.is_zero()).unwrap_or(true) {
                return Err(Error::RegionIncompatible(format!(
                    "denominator constant coefficient in {} is not a nonzero constant",
                    var
                )));
            }
            let n_lo = num.support().map(|(a, _)| a).unwrap_or(0);
            let inv = den.inv_at_bottom(hi - n_lo.min(0) + 1)?;
            num.mul(&inv)
        }
    };
    if out.known_lo() > lo || out.known_hi() < hi {
        return Err(Error::WindowExceeded {
            lo,
            hi,
            have_lo: out.known_lo(),
            have_hi: out.known_hi(),
        });
    }
    Ok(out.clip(lo, hi))
}

/// Extracts the coefficient of `main^p * other^q` from an expansion whose
/// coefficients are polynomials.
pub fn bicoeff(series: &Laurent<Poly>, p: i64, other: Sym, q: u32) -> Result<Poly> {
    let c = series.coeff_checked(p)?;
    Ok(c.coeff_of(other, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, sym, sym_hbar};

    fn u() -> Sym {
        sym("u")
    }
    fn v() -> Sym {
        sym("v")
    }

    /// Geometric series oracle: 1/(u - a) at infinity = sum a^j u^(-j-1).
    fn geometric_oracle(a: &Poly, terms: i64) -> Vec<(i64, Poly)> {
        let mut out = Vec::new();
        let mut pw = Poly::one();
        for j in 0..terms {
            out.push((-j - 1, pw.clone()));
            pw = &pw * a;
        }
        out
    }

    #[test]
    fn expand_at_infinity_matches_geometric_oracle() {
        // 1/(u - v), |u| > |v|, three terms: u^-1 + v u^-2 + v^2 u^-3
        let r = RatFun::new(Poly::one(), &Poly::var(u()) - &Poly::var(v())).unwrap();
        let s = laurent_expand(&r, ExpansionRegion::AtInfinity(u()), -3, 0).unwrap();
        for (p, expect) in geometric_oracle(&Poly::var(v()), 3) {
            assert_eq!(s.coeff(p).unwrap(), expect, "power {}", p);
        }
        assert_eq!(s.coeff(0).unwrap(), Poly::zero());
    }

    #[test]
    fn expand_other_region_matches_geometric_oracle() {
        // 1/(u - v), |v| > |u|: series in v at infinity with coefficients in u:
        // -v^-1 - u v^-2 - u^2 v^-3
        let r = RatFun::new(Poly::one(), &Poly::var(u()) - &Poly::var(v())).unwrap();
        let s = laurent_expand(&r, ExpansionRegion::AtInfinity(v()), -3, 0).unwrap();
        for (p, g) in geometric_oracle(&Poly::var(u()), 3) {
            assert_eq!(s.coeff(p).unwrap(), -&g, "power {}", p);
        }
    }

    #[test]
    fn expand_constant_any_region() {
        let r = RatFun::one();
        for reg in [ExpansionRegion::AtInfinity(u()), ExpansionRegion::AtZero(u())] {
            let s = laurent_expand(&r, reg, -2, 2).unwrap();
            assert_eq!(s.coeff(0).unwrap(), Poly::one());
            assert_eq!(s.coeff(1).unwrap(), Poly::zero());
            assert_eq!(s.coeff(-1).unwrap(), Poly::zero());
        }
    }

    #[test]
    fn expansion_difference_is_delta() {
        // The two one-sided expansions of 1/(u-v) differ by the formal delta:
        // coefficient 1 on every u^n v^m with n+m = -1 in the window, 0 else.
        let r = RatFun::new(Poly::one(), &Poly::var(u()) - &Poly::var(v())).unwrap();
        let in_u = laurent_expand(&r, ExpansionRegion::AtInfinity(u()), -4, 3).unwrap();
        let in_v = laurent_expand(&r, ExpansionRegion::AtInfinity(v()), -4, 3).unwrap();
        for n in -4..=3i64 {
            for m in -4..=3i64 {
                // bigrade (u^n, v^m) from each expansion: the u-expansion has
                // polynomial v-coefficients, the v-expansion polynomial
                // u-coefficients, so the missing gradings are exact zeros.
                let a = if m >= 0 {
                    bicoeff(&in_u, n, v(), m as u32).unwrap()
                } else {
                    Poly::zero()
                };
                let b = if n >= 0 {
                    bicoeff(&in_v, m, u(), n as u32).unwrap()
                } else {
                    Poly::zero()
                };
                let diff = &a - &b;
                let expect = if n + m == -1 { Poly::one() } else { Poly::zero() };
                assert_eq!(diff, expect, "n={} m={}", n, m);
            }
        }
    }

    #[test]
    fn shift_binomial_oracle() {
        // u^-1 shifted by gamma: u^-1 - gamma u^-2 + gamma^2 u^-3 - ...
        let g = Poly::var(sym("gamma"));
        let s = Laurent::<Poly>::monomial(u(), -1, Poly::one()).clip(-3, i64::MAX);
        let shifted = s.shift(&g).unwrap();
        assert_eq!(shifted.coeff(-1).unwrap(), Poly::one());
        assert_eq!(shifted.coeff(-2).unwrap(), -&g);
        assert_eq!(shifted.coeff(-3).unwrap(), g.pow(2));
    }

    #[test]
    fn shift_by_zero_is_identity() {
        let s = Laurent::<Poly>::from_terms(
            u(),
            [(2, Poly::one()), (-1, Poly::int(5))],
        );
        let shifted = s.shift(&Poly::zero()).unwrap();
        assert_eq!(shifted, s);
    }

    #[test]
    fn shift_finite_binomial() {
        // u^2 shifted by gamma: u^2 + 2 gamma u + gamma^2 (exact polynomial)
        let g = Poly::var(sym("gamma"));
        let s = Laurent::<Poly>::monomial(u(), 2, Poly::one());
        let shifted = s.shift(&g).unwrap();
        assert_eq!(shifted.coeff(2).unwrap(), Poly::one());
        assert_eq!(shifted.coeff(1).unwrap(), g.scale(&int(2)));
        assert_eq!(shifted.coeff(0).unwrap(), g.pow(2));
        assert_eq!(shifted.coeff(-5).unwrap(), Poly::zero());
    }

    #[test]
    fn shift_composition_property() {
        // Shifting by g1 then g2 equals shifting by g1 + g2 on the doubly
        // narrowed window.
        let g1 = Poly::var(sym("gamma"));
        let g2 = Poly::var(sym_hbar());
        let s = Laurent::<Poly>::from_terms(u(), [(-1, Poly::one()), (-2, Poly::int(3))])
            .clip(-6, i64::MAX);
        let a = s.shift(&g1).unwrap().shift(&g2).unwrap();
        let b = s.shift(&(&g1 + &g2)).unwrap();
        for p in -6..=0 {
            assert_eq!(a.coeff(p), b.coeff(p), "power {}", p);
        }
    }

    #[test]
    fn exp_taylor_oracle() {
        // exp(a u^-1): 1 + a u^-1 + a^2/2 u^-2
        let a = Poly::var(sym("a"));
        let s = Laurent::<Poly>::monomial(u(), -1, a.clone()).clip(-2, i64::MAX);
        let e = s.exp().unwrap();
        assert_eq!(e.coeff(0).unwrap(), Poly::one());
        assert_eq!(e.coeff(-1).unwrap(), a.clone());
        assert_eq!(e.coeff(-2).unwrap(), a.pow(2).scale(&rat(1, 2)));
    }

    #[test]
    fn exp_zero_is_one() {
        let s = Laurent::<Poly>::zero(u());
        assert_eq!(s.exp().unwrap(), Laurent::one(u()));
    }

    #[test]
    fn exp_inverse_property() {
        let s = Laurent::<Poly>::from_terms(
            u(),
            [(-1, Poly::int(2)), (-2, Poly::var(sym_hbar()))],
        )
        .clip(-5, i64::MAX);
        let prod = s.exp().unwrap().mul(&s.neg().exp().unwrap());
        for p in -5..=0 {
            let expect = if p == 0 { Poly::one() } else { Poly::zero() };
            assert_eq!(prod.coeff(p).unwrap(), expect, "power {}", p);
        }
    }

    #[test]
    fn exp_rejects_constant_term() {
        let s = Laurent::<Poly>::monomial(u(), 0, Poly::one());
        assert!(matches!(s.exp(), Err(Error::NonzeroConstantTerm)));
    }

    #[test]
    fn exp_additive_when_commuting() {
        let a = Laurent::<Poly>::monomial(u(), -1, Poly::int(3)).clip(-4, i64::MAX);
        let b = Laurent::<Poly>::monomial(u(), -2, Poly::int(-1)).clip(-4, i64::MAX);
        let lhs = a.exp().unwrap().mul(&b.exp().unwrap());
        let rhs = a.add(&b).exp().unwrap();
        for p in -4..=0 {
            assert_eq!(lhs.coeff(p), rhs.coeff(p), "power {}", p);
        }
    }

    #[test]
    fn window_narrowing_under_mul() {
        // (known [-2, inf)) * (known [-3, inf)) with support tops 0 and -1:
        let a = Laurent::<Poly>::from_terms(u(), [(0, Poly::one()), (-1, Poly::int(1))])
            .clip(-2, i64::MAX);
        let b = Laurent::<Poly>::from_terms(u(), [(-1, Poly::one())]).clip(-3, i64::MAX);
        let p = a.mul(&b);
        // reliable floor: max(kla + shb, klb + sha) = max(-2 + -1, -3 + 0) = -3
        assert_eq!(p.known_lo(), -3);
        assert!(p.coeff(-4).is_none());
        assert_eq!(p.coeff(-1).unwrap(), Poly::one());
    }

    #[test]
    fn region_error_for_nonunit_leading() {
        // 1/((x - v) u + 1) cannot be expanded at infinity in u with
        // polynomial coefficients.
        let den = &(&Poly::var(sym("x")) - &Poly::var(v())) * &Poly::var(u());
        let r = RatFun::new(Poly::one(), &den + &Poly::one()).unwrap();
        assert!(matches!(
            laurent_expand(&r, ExpansionRegion::AtInfinity(u()), -2, 0),
            Err(Error::RegionIncompatible(_))
        ));
    }

    #[test]
    fn at_zero_expansion() {
        // 1/(1 - u) at zero: 1 + u + u^2 + ...
        let r = RatFun::new(Poly::one(), &Poly::one() - &Poly::var(u())).unwrap();
        let s = laurent_expand(&r, ExpansionRegion::AtZero(u()), 0, 4).unwrap();
        for p in 0..=4 {
            assert_eq!(s.coeff(p).unwrap(), Poly::one());
        }
    }
}
