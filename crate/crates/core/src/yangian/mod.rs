//! Mode operators of the level-one currents and exact relation checks.
//!
//! Modes are indexed the family-natural way: for the raising and lowering
//! currents the index `k` labels the coefficient of `u^(-k-1)`; the
//! annihilation-side Cartan current is stored by the coefficient of `u^(-M)`
//! with `M >= 0`, the creation-side one by the coefficient of `v^P` with
//! `P >= 0`. The translation to the textbook `h_k` modes is a one-line
//! dictionary, implemented and tested once.

pub mod dcov;
pub mod ef_delta;
pub mod relations;

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::fock::{enumerate_basis, vertex, Cutoffs, SparseOp};
use crate::poly::Poly;
use crate::scalar::{sym_hbar, Sym};

pub use relations::{catalog, verify_exchange, Exchange};

/// Generator family of the level-one representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    E,
    F,
    /// Annihilation-side Cartan current (series in inverse powers).
    Hp,
    /// Creation-side Cartan current (series in direct powers).
    Hm,
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::E => "e",
            Family::F => "f",
            Family::Hp => "h+",
            Family::Hm => "h-",
        }
    }

    pub fn charge(&self) -> i64 {
        match self {
            Family::E => 2,
            Family::F => -2,
            Family::Hp | Family::Hm => 0,
        }
    }

    /// Whether the family's vertex operator creates unbounded energy (so an
    /// application can silently push weight above the ceiling).
    pub fn can_overflow(&self) -> bool {
        !matches!(self, Family::Hp)
    }

    /// Power of the spectral variable carrying the given mode index.
    pub fn power_of(&self, idx: i64) -> i64 {
        match self {
            Family::E | Family::F => -idx - 1,
            Family::Hp => -idx,
            Family::Hm => idx,
        }
    }

    /// Mode index picked up after multiplying the generating function by
    /// `var^by`.
    pub fn shift_index(&self, idx: i64, by: i64) -> i64 {
        match self {
            Family::E | Family::F | Family::Hp => idx + by,
            Family::Hm => idx - by,
        }
    }

    /// Inadmissible indices denote modes that are exactly zero.
    pub fn admissible(&self, idx: i64) -> bool {
        match self {
            Family::E | Family::F => true,
            Family::Hp | Family::Hm => idx >= 0,
        }
    }

    /// Upper bound on the energy this mode can pull down from above the
    /// ceiling, acting on a state of weight `m`. Zero means the mode cannot
    /// reach escaped intermediates at all.
    pub fn max_drop(&self, idx: i64, m: i64) -> i64 {
        match self {
            Family::E => (m + idx + 1).max(0),
            Family::F => (idx + 1 - m).max(0),
            Family::Hp => (idx - 1).max(0),
            Family::Hm => 0,
        }
    }

    pub fn vertex_op(&self, var: Sym, cut: &Cutoffs) -> vertex::VertexOp<Poly> {
        match self {
            Family::E => vertex::op_e(var, cut),
            Family::F => vertex::op_f(var, cut),
            Family::Hp => vertex::op_h_plus(var, cut),
            Family::Hm => vertex::op_h_minus(var, cut),
        }
    }
}

/// The mode operators of one family over a contiguous index range.
#[derive(Clone, Debug)]
pub struct ModeSet {
    pub family: Family,
    pub var: Sym,
    pub modes: BTreeMap<i64, SparseOp<Poly>>,
}

impl ModeSet {
    /// The sparse operator for an index; inadmissible indices are the zero
    /// operator, indices outside the built range are an error.
    pub fn mode(&self, idx: i64) -> Result<SparseOp<Poly>> {
        if !self.family.admissible(idx) {
            return Ok(SparseOp::zero_like(
                format!("{}_{}", self.family.label(), idx),
                self.family.charge(),
            ));
        }
        self.modes.get(&idx).cloned().ok_or(Error::ModeOutsideFamily {
            family: self.family.label().into(),
            mode: idx,
        })
    }
}

/// Builds every mode of a family over the index range by one series
/// application per basis state.
pub fn build_modes(
    family: Family,
    var: Sym,
    cut: &Cutoffs,
    indices: RangeInclusive<i64>,
) -> Result<ModeSet> {
    let lo_idx = *indices.start();
    let hi_idx = *indices.end();
    let mut powers: Vec<i64> = Vec::new();
    for idx in lo_idx..=hi_idx {
        if family.admissible(idx) {
            powers.push(family.power_of(idx));
        }
    }
    let (p_lo, p_hi) = match (powers.iter().min(), powers.iter().max()) {
        (Some(a), Some(b)) => (*a, *b),
        _ => (0, 0),
    };
    let op = family.vertex_op(var, cut);
    let mut modes: BTreeMap<i64, SparseOp<Poly>> = BTreeMap::new();
    for idx in lo_idx..=hi_idx {
        if family.admissible(idx) {
            modes.insert(
                idx,
                SparseOp::new(format!("{}_{}", family.label(), idx), family.charge()),
            );
        }
    }
    for state in enumerate_basis(cut, None) {
        let sv = op.apply(&state, cut, p_lo, p_hi)?;
        if sv.weight_escaped {
            continue;
        }
        for idx in lo_idx..=hi_idx {
            if !family.admissible(idx) {
                continue;
            }
            let col = sv.coeff(family.power_of(idx))?;
            if !col.is_zero() {
                modes
                    .get_mut(&idx)
                    .unwrap()
                    .map
                    .insert(state.clone(), col);
            }
        }
    }
    Ok(ModeSet { family, var, modes })
}

/// Outcome of one exact relation check.
#[derive(Clone, Debug)]
pub struct Residual {
    pub id: String,
    /// Number of (input, mode-pair) targets with a nonempty trusted region.
    pub comparisons: u64,
    /// Output entries skipped because a contributing path may have escaped
    /// the ceiling.
    pub flagged: u64,
    /// Human-readable descriptions of nonzero trusted entries.
    pub failures: Vec<String>,
    /// Largest numeric deviation (numeric checks only).
    pub max_numeric: Option<f64>,
}

impl Residual {
    pub fn new(id: impl Into<String>) -> Self {
        Residual {
            id: id.into(),
            comparisons: 0,
            flagged: 0,
            failures: Vec::new(),
            max_numeric: None,
        }
    }

    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.comparisons > 0
    }

    /// Pairs the residual with an empty detail payload for report assembly.
    pub fn into_rec(self) -> (Residual, Option<serde_json::Value>) {
        (self, None)
    }

    pub fn merge(&mut self, other: Residual) {
        self.comparisons += other.comparisons;
        self.flagged += other.flagged;
        self.failures.extend(other.failures);
        self.max_numeric = match (self.max_numeric, other.max_numeric) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
    }
}

/// Dictionary between stored series modes and the textbook generator modes:
/// the annihilation-side series is `1 + hbar * sum h_k u^(-k-1)` and the
/// creation-side one is `1 - hbar * sum_{k<0} h_k u^(-k-1)`.
pub fn h_mode_from_series(
    hp: &ModeSet,
    hm: &ModeSet,
    k: i64,
    cut: &Cutoffs,
) -> Result<SparseOp<Poly>> {
    let hbar = Poly::var(sym_hbar());
    if k >= 0 {
        let m = hp.mode(k + 1)?;
        divide_entries(&m, &hbar)
    } else {
        let m = hm.mode(-k - 1)?;
        let mut sub = m;
        if k == -1 {
            // The constant series term sits in the same coefficient.
            let basis = enumerate_basis(cut, None);
            let id = SparseOp::identity("id", &basis);
            sub = sub.sub(&id);
        }
        let d = divide_entries(&sub, &hbar)?;
        Ok(d.scale(&Poly::int(-1)))
    }
}

fn divide_entries(op: &SparseOp<Poly>, d: &Poly) -> Result<SparseOp<Poly>> {
    let mut out = SparseOp::new(op.name.clone(), op.charge);
    for (s, col) in &op.map {
        let mut v = crate::fock::FockVector::zero();
        for (t, c) in col.iter() {
            v.add_term(t.clone(), c.div_exact(d)?);
        }
        if !v.is_zero() {
            out.map.insert(s.clone(), v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockState;
    use crate::fock::FockVector;
    use crate::scalar::{int, sym};

    fn cut() -> Cutoffs {
        Cutoffs::new(3, 4, -6, 4, 0)
    }

    #[test]
    fn h0_is_identity() {
        let ms = build_modes(Family::Hp, sym("u"), &cut(), 0..=2).unwrap();
        let h0 = ms.mode(0).unwrap();
        for s in enumerate_basis(&cut(), None) {
            assert_eq!(h0.column(&s), FockVector::basis(s.clone()), "H_0 on {}", s);
        }
    }

    #[test]
    fn e_minus_two_on_vacuum() {
        // Coefficient of u^1 on the vacuum: 2 a_{-1} |m=2> plus energy >= 2.
        let ms = build_modes(Family::E, sym("u"), &cut(), -3..=1).unwrap();
        let em2 = ms.mode(-2).unwrap();
        let col = em2.column(&FockState::vacuum(0));
        assert_eq!(
            col.coeff(&FockState::new(2, vec![1])),
            Poly::int(2)
        );
        assert_eq!(col.coeff(&FockState::vacuum(2)), Poly::zero());
    }

    #[test]
    fn modes_are_weight_graded_and_sector_blocked() {
        for fam in [Family::E, Family::F, Family::Hp, Family::Hm] {
            let ms = build_modes(fam, sym("u"), &cut(), 0..=1).unwrap();
            for (idx, op) in &ms.modes {
                for (s, col) in &op.map {
                    for (t, _) in col.iter() {
                        assert_eq!(t.m, s.m + fam.charge(), "{:?}_{}", fam, idx);
                        assert_eq!(
                            t.sector(),
                            ((s.m + fam.charge()).rem_euclid(2)) as u8
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn h_minus_mode_matches_vertex_route() {
        // The creation-side coefficient of v^1 reproduced through the raw
        // series application.
        let c = cut();
        let v = sym("v");
        let ms = build_modes(Family::Hm, v, &c, 0..=2).unwrap();
        let op = vertex::op_h_minus(v, &c);
        for s in enumerate_basis(&c, None) {
            let sv = op.apply(&s, &c, 0, 2).unwrap();
            let direct = sv.coeff(1).unwrap();
            assert_eq!(ms.mode(1).unwrap().column(&s), direct);
        }
    }

    #[test]
    fn hp_mode_one_reads_weight() {
        // The u^(-1) coefficient of the annihilation-side current is
        // hbar * m on every state: first-order weight dressing.
        let c = cut();
        let ms = build_modes(Family::Hp, sym("u"), &c, 0..=1).unwrap();
        let h1 = ms.mode(1).unwrap();
        for s in enumerate_basis(&c, None) {
            let col = h1.column(&s);
            let expect = FockVector::basis(s.clone())
                .scale(&Poly::var(sym_hbar()).scale(&int(s.m)));
            assert_eq!(col, expect, "on {}", s);
        }
    }

    #[test]
    fn mode_dictionary_round_trip() {
        let c = cut();
        let hp = build_modes(Family::Hp, sym("u"), &c, 0..=3).unwrap();
        let hm = build_modes(Family::Hm, sym("u"), &c, 0..=3).unwrap();
        // h_0 through the dictionary equals the weight reader: the series
        // coefficient at u^-1 is hbar * m.
        let h0 = h_mode_from_series(&hp, &hm, 0, &c).unwrap();
        for s in enumerate_basis(&c, None) {
            assert_eq!(
                h0.column(&s),
                FockVector::basis(s.clone()).scale(&Poly::int(s.m)),
            );
        }
        // Negative side: h_{-1} = -(coefficient of v^0 minus identity)/hbar.
        let hm1 = h_mode_from_series(&hp, &hm, -1, &c).unwrap();
        let col = hm1.column(&FockState::vacuum(0));
        // From the creation exponent: -(1/hbar) * (-2 hbar a_{-1}) = 2 a_{-1}.
        assert_eq!(col.coeff(&FockState::new(0, vec![1])), Poly::int(2));
    }
}
