//! Normal-ordered exponential operators on the truncated module.
//!
//! A vertex operator is stored in the canonical factor order
//! `creation-exponential x charge-shift x weight-factor x annihilation-exponential`,
//! applied right to left, which matches the printed form of the level-one
//! currents once the (weight-preserving) annihilation part is commuted past
//! the diagonal factors. Every coefficient is a Laurent series in one
//! spectral variable carrying its own reliability window, so composing
//! operators propagates windows without extra bookkeeping.

use std::collections::BTreeMap;

use super::{Cutoffs, FockState, FockVector};
use crate::error::Result;
use crate::laurent::{Coeff, Laurent};
use crate::poly::Poly;
use num::traits::One;

use crate::scalar::{int, rat, sym_hbar, BigRat, Sym};

/// Diagonal factor raised to the incoming weight.
#[derive(Clone, Debug)]
pub enum WeightFactor<C: Coeff> {
    None,
    /// `var^(k*m)` on incoming weight `m`.
    VarPower(i64),
    /// `base^m` for a series base with unit edge coefficient.
    Series(Laurent<C>),
}

/// Declarative normal-ordered exponential operator.
#[derive(Clone, Debug)]
pub struct VertexOp<C: Coeff> {
    pub name: String,
    pub var: Sym,
    /// Entry `n-1` multiplies `a_{-n}/n` in the creation exponent.
    pub cre: Vec<Laurent<C>>,
    /// Entry `n-1` multiplies `a_{n}/n` in the annihilation exponent.
    pub ann: Vec<Laurent<C>>,
    /// Weight shift (in units of the weight, i.e. twice the charge shift).
    pub charge: i64,
    pub weight: WeightFactor<C>,
    pub prefactor: Laurent<C>,
}

/// Result of applying a vertex operator to one basis state: a Laurent-series
/// valued vector, with truncation events flagged.
#[derive(Clone, Debug)]
pub struct SeriesVec<C: Coeff> {
    pub var: Sym,
    pub terms: BTreeMap<FockState, Laurent<C>>,
    /// Some creation path exceeded the energy ceiling.
    pub creation_truncated: bool,
    /// The shifted weight left the configured window.
    pub weight_escaped: bool,
}

impl<C: Coeff> SeriesVec<C> {
    pub fn new(var: Sym) -> Self {
        SeriesVec {
            var,
            terms: BTreeMap::new(),
            creation_truncated: false,
            weight_escaped: false,
        }
    }

    pub fn add_series(&mut self, s: FockState, l: Laurent<C>) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(s) {
            Entry::Vacant(e) => {
                e.insert(l);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() = e.get().add(&l);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        SeriesVec {
            var: self.var,
            terms: self
                .terms
                .iter()
                .map(|(s, l)| (s.clone(), l.scale(c)))
                .collect(),
            creation_truncated: self.creation_truncated,
            weight_escaped: self.weight_escaped,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.creation_truncated |= other.creation_truncated;
        out.weight_escaped |= other.weight_escaped;
        for (s, l) in &other.terms {
            out.add_series(s.clone(), l.neg());
        }
        out
    }

    /// Coefficient of `var^p` across all states; error when any contributing
    /// series does not cover `p`.
    pub fn coeff(&self, p: i64) -> Result<FockVector<C>> {
        let mut out = FockVector::zero();
        for (s, l) in &self.terms {
            out.add_term(s.clone(), l.coeff_checked(p)?);
        }
        Ok(out)
    }
}

/// Extracts one series coefficient as a vector (the requested power must lie
/// in the reliable window of every contributing series).
pub fn mode_coefficient<C: Coeff>(sv: &SeriesVec<C>, p: i64) -> Result<FockVector<C>> {
    sv.coeff(p)
}

impl<C: Coeff> VertexOp<C> {
    fn weight_series(&self, m: i64, depth: i64) -> Result<Laurent<C>> {
        match &self.weight {
            WeightFactor::None => Ok(Laurent::one(self.var)),
            WeightFactor::VarPower(k) => Ok(Laurent::monomial(self.var, k * m, C::one())),
            WeightFactor::Series(base) => {
                if m == 0 {
                    return Ok(Laurent::one(self.var));
                }
                let b = if m > 0 {
                    base.clone()
                } else {
                    base.inv_at_top(depth)?
                };
                let mut acc = b.clone();
                for _ in 1..m.unsigned_abs() {
                    acc = acc.mul(&b);
                }
                Ok(acc)
            }
        }
    }

    /// Applies the operator to a basis state, keeping series coefficients on
    /// the requested window. Creation overflow and weight escapes are
    /// flagged on the result, never silently dropped.
    pub fn apply(&self, state: &FockState, cut: &Cutoffs, want_lo: i64, want_hi: i64) -> Result<SeriesVec<C>> {
        let mut out = SeriesVec::new(self.var);
        let m_out = state.m + self.charge;
        if !cut.weight_in_window(m_out) {
            out.weight_escaped = true;
            return Ok(out);
        }
        if !self.cre.is_empty() {
            // Creation coefficients are generically nonzero at every mode, so
            // paths above the ceiling always exist.
            out.creation_truncated = true;
        }
        let weight = self.weight_series(state.m, want_lo - 1)?;
        let base = self.prefactor.mul(&weight);

        // Annihilation choices: for a part size n with multiplicity r, taking
        // t of them contributes binom(r, t) * ann[n-1]^t.
        let counts = state.part_counts();
        let mut ann_choices: Vec<(FockState, Laurent<C>)> =
            vec![(state.with_weight(m_out), base)];
        for (n, r) in counts {
            let mut next = Vec::new();
            for (st, ser) in &ann_choices {
                next.push((st.clone(), ser.clone()));
                if (n as usize) <= self.ann.len() {
                    let coeff = &self.ann[n as usize - 1];
                    let mut pw = ser.clone();
                    let mut cur = st.clone();
                    for t in 1..=r {
                        pw = pw.mul(coeff);
                        cur = cur.with_part_removed(n).expect("part present");
                        let b = C::from_rat(&crate::scalar::binom_u(r as u64, t as u64));
                        next.push((cur.clone(), pw.scale(&b)));
                    }
                }
            }
            ann_choices = next;
        }

        // Creation partitions on top of each annihilation remainder.
        for (st, ser) in ann_choices {
            let room = cut.e_max - st.energy();
            for mu in super::partitions_up_to(room) {
                let mut factor = ser.clone();
                let mut target = st.clone();
                let mut ok = true;
                let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
                for &n in &mu {
                    *counts.entry(n).or_insert(0) += 1;
                }
                for (&n, &q) in &counts {
                    if n as usize > self.cre.len() {
                        ok = false;
                        break;
                    }
                    let c = &self.cre[n as usize - 1];
                    // (c/n)^q / q! worth of a_{-n}^q
                    let mut scale = BigRat::one();
                    for i in 1..=q as i64 {
                        scale = scale * rat(1, n as i64) * rat(1, i);
                    }
                    let s = C::from_rat(&scale);
                    for _ in 0..q {
                        factor = factor.mul(c);
                        target = target.with_part_added(n);
                    }
                    factor = factor.scale(&s);
                }
                if !ok {
                    continue;
                }
                out.add_series(target, factor.clip(want_lo, want_hi));
            }
        }
        Ok(out)
    }

    /// Maps the coefficient ring (e.g. exact to numeric).
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D + Copy) -> VertexOp<D> {
        VertexOp {
            name: self.name.clone(),
            var: self.var,
            cre: self.cre.iter().map(|l| l.map(f)).collect(),
            ann: self.ann.iter().map(|l| l.map(f)).collect(),
            charge: self.charge,
            weight: match &self.weight {
                WeightFactor::None => WeightFactor::None,
                WeightFactor::VarPower(k) => WeightFactor::VarPower(*k),
                WeightFactor::Series(b) => WeightFactor::Series(b.map(f)),
            },
            prefactor: self.prefactor.map(f),
        }
    }
}

/// Applies `a` after an already-applied series vector: `a * (b |s>)`.
/// Window narrowing is inherited from the Laurent products.
pub fn compose<C: Coeff>(
    a: &VertexOp<C>,
    b: &SeriesVec<C>,
    cut: &Cutoffs,
    want_lo: i64,
    want_hi: i64,
    inner_lo: i64,
    inner_hi: i64,
) -> Result<SeriesVec<C>> {
    let mut out = SeriesVec::new(a.var);
    out.creation_truncated = b.creation_truncated;
    out.weight_escaped = b.weight_escaped;
    for (s2, lb) in &b.terms {
        let asv = a.apply(s2, cut, inner_lo, inner_hi)?;
        out.creation_truncated |= asv.creation_truncated;
        out.weight_escaped |= asv.weight_escaped;
        for (s1, la) in &asv.terms {
            out.add_series(s1.clone(), la.mul(lb).clip(want_lo, want_hi));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Exact constructors for the level-one currents and their boson factors.
// ---------------------------------------------------------------------------

fn hbar_poly() -> Poly {
    Poly::var(sym_hbar())
}

/// (u + s*hbar)^n as a series in u (exact polynomial).
fn shifted_power(var: Sym, s: i64, n: u32) -> Laurent<Poly> {
    let base = &Poly::var(var) + &hbar_poly().scale(&int(s));
    crate::laurent::poly_to_series(&base.pow(n), var)
}

/// (u + s*hbar)^(-n) expanded at infinity, reliable down to `depth`.
fn shifted_inverse_power(var: Sym, s: i64, n: u32, depth: i64) -> Laurent<Poly> {
    let base = &Poly::var(var) + &hbar_poly().scale(&int(s));
    let inv = crate::laurent::poly_to_series(&base, var)
        .inv_at_top(depth)
        .expect("linear polynomial has unit leading coefficient");
    let mut acc = Laurent::one(var);
    for _ in 0..n {
        acc = acc.mul(&inv);
    }
    acc
}

/// Safe series depth for the configured cutoffs: covers every extraction in
/// the default window after weight-factor and annihilation products.
pub fn series_depth(cut: &Cutoffs) -> i64 {
    cut.u_lo
        - cut.e_max as i64
        - 2 * (cut.m_max.abs().max(cut.m_min.abs()))
        - 4
}

/// The weight +2 current: creation coefficients (u-hbar)^n + u^n,
/// annihilation -u^(-n), charge factor, then the plain weight power.
pub fn op_e(var: Sym, cut: &Cutoffs) -> VertexOp<Poly> {
    let cre = (1..=cut.e_max)
        .map(|n| shifted_power(var, -1, n).add(&shifted_power(var, 0, n)))
        .collect();
    let ann = (1..=cut.e_max)
        .map(|n| Laurent::monomial(var, -(n as i64), Poly::int(-1)))
        .collect();
    VertexOp {
        name: "e".into(),
        var,
        cre,
        ann,
        charge: 2,
        weight: WeightFactor::VarPower(1),
        prefactor: Laurent::one(var),
    }
}

/// The weight -2 current.
pub fn op_f(var: Sym, cut: &Cutoffs) -> VertexOp<Poly> {
    let cre = (1..=cut.e_max)
        .map(|n| shifted_power(var, 1, n).add(&shifted_power(var, 0, n)).neg())
        .collect();
    let ann = (1..=cut.e_max)
        .map(|n| Laurent::monomial(var, -(n as i64), Poly::one()))
        .collect();
    VertexOp {
        name: "f".into(),
        var,
        cre,
        ann,
        charge: -2,
        weight: WeightFactor::VarPower(-1),
        prefactor: Laurent::one(var),
    }
}

/// The annihilation-side Cartan current: coefficients (u-hbar)^(-n) - u^(-n)
/// and the diagonal weight factor (u/(u-hbar))^m.
pub fn op_h_plus(var: Sym, cut: &Cutoffs) -> VertexOp<Poly> {
    let depth = series_depth(cut);
    let ann = (1..=cut.e_max)
        .map(|n| {
            shifted_inverse_power(var, -1, n, depth)
                .sub(&shifted_inverse_power(var, 0, n, depth))
        })
        .collect();
    // u/(u - hbar) = (1 - hbar/u)^(-1) as an expansion at infinity.
    let base = shifted_inverse_power(var, -1, 1, depth).mul_monomial(1, &Poly::one());
    VertexOp {
        name: "h+".into(),
        var,
        cre: Vec::new(),
        ann,
        charge: 0,
        weight: WeightFactor::Series(base),
        prefactor: Laurent::one(var),
    }
}

/// The creation-side Cartan current: coefficients (u-hbar)^n - (u+hbar)^n.
pub fn op_h_minus(var: Sym, cut: &Cutoffs) -> VertexOp<Poly> {
    let cre = (1..=cut.e_max)
        .map(|n| shifted_power(var, -1, n).sub(&shifted_power(var, 1, n)))
        .collect();
    VertexOp {
        name: "h-".into(),
        var,
        cre,
        ann: Vec::new(),
        charge: 0,
        weight: WeightFactor::None,
        prefactor: Laurent::one(var),
    }
}

/// Creation-side boson factor at argument `u + s*hbar`, optionally inverted:
/// exponential of the creation modes plus half a charge unit.
pub fn op_phi_minus_factor(var: Sym, s: i64, inverse: bool, cut: &Cutoffs) -> VertexOp<Poly> {
    let sign = if inverse { -1 } else { 1 };
    let cre = (1..=cut.e_max)
        .map(|n| {
            let p = shifted_power(var, s, n);
            if inverse {
                p.neg()
            } else {
                p
            }
        })
        .collect();
    VertexOp {
        name: format!("phi-({}{})", var, s),
        var,
        cre,
        ann: Vec::new(),
        charge: sign,
        weight: WeightFactor::None,
        prefactor: Laurent::one(var),
    }
}

/// Annihilation-side boson factor at argument `u + s*hbar`, optionally
/// inverted: exponential of the annihilation modes and the weight power
/// (u + s*hbar)^(-m) (or its inverse).
pub fn op_phi_plus_factor(var: Sym, s: i64, inverse: bool, cut: &Cutoffs) -> VertexOp<Poly> {
    let depth = series_depth(cut);
    let ann = (1..=cut.e_max)
        .map(|n| {
            let p = shifted_inverse_power(var, s, n, depth);
            if inverse {
                p.neg()
            } else {
                p
            }
        })
        .collect();
    let base = if inverse {
        // weight factor (u + s*hbar)^(+m)
        shifted_power(var, s, 1)
    } else {
        shifted_inverse_power(var, s, 1, depth)
    };
    VertexOp {
        name: format!("phi+({}{}{})", var, s, if inverse { ")^-1" } else { "" }),
        var,
        cre: Vec::new(),
        ann,
        charge: 0,
        weight: WeightFactor::Series(base),
        prefactor: Laurent::one(var),
    }
}
