//! Truncated level-one free-boson modules.
//!
//! Basis states are a charge weight together with a boson partition: weight
//! `m` is the eigenvalue of the zero-mode number operator (twice the charge,
//! so sector parity is `m mod 2`) and a partition part `k` with multiplicity
//! `r` stands for `k`-th creation mode applied `r` times to the charge
//! vacuum. Energy is the partition weight; everything above the configured
//! energy ceiling is truncated, and truncation is always flagged, never
//! silent.

pub mod heisenberg;
pub mod shift;
pub mod vertex;

use std::collections::BTreeMap;
use std::fmt;

use crate::laurent::Coeff;

pub use heisenberg::{heisenberg_act, Generator};
pub use vertex::{mode_coefficient, SeriesVec, VertexOp, WeightFactor};

/// A weight-and-partition basis state.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct FockState {
    /// Eigenvalue of the zero-mode number operator (twice the charge).
    pub m: i64,
    /// Boson occupation, parts sorted descending.
    pub parts: Vec<u32>,
}

impl FockState {
    pub fn vacuum(m: i64) -> FockState {
        FockState { m, parts: Vec::new() }
    }

    pub fn new(m: i64, mut parts: Vec<u32>) -> FockState {
        assert!(parts.iter().all(|&p| p >= 1), "partition parts must be >= 1");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        FockState { m, parts }
    }

    pub fn energy(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Sector index: 0 for even weight, 1 for odd.
    pub fn sector(&self) -> u8 {
        (self.m.rem_euclid(2)) as u8
    }

    /// Multiplicity of a part size.
    pub fn multiplicity(&self, n: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == n).count() as u32
    }

    pub fn with_part_added(&self, n: u32) -> FockState {
        let mut parts = self.parts.clone();
        let pos = parts.iter().position(|&p| p < n).unwrap_or(parts.len());
        parts.insert(pos, n);
        FockState { m: self.m, parts }
    }

    pub fn with_part_removed(&self, n: u32) -> Option<FockState> {
        let pos = self.parts.iter().position(|&p| p == n)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(FockState { m: self.m, parts })
    }

    pub fn with_weight(&self, m: i64) -> FockState {
        FockState {
            m,
            parts: self.parts.clone(),
        }
    }

    /// Distinct part sizes with multiplicities.
    pub fn part_counts(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.iter_mut().find(|(q, _)| *q == p) {
                Some((_, c)) => *c += 1,
                None => out.push((p, 1)),
            }
        }
        out
    }
}

impl PartialOrd for FockState {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FockState {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Enumeration order: energy, then weight, then lexicographic partition.
        (self.energy(), self.m, &self.parts).cmp(&(other.energy(), other.m, &other.parts))
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|m={};", self.m)?;
        if self.parts.is_empty() {
            write!(f, "vac>")
        } else {
            let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
            write!(f, "{}>", parts.join(","))
        }
    }
}

/// Truncation parameters shared by the exact and numeric tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cutoffs {
    /// Maximum retained boson energy.
    pub e_max: u32,
    /// Inclusive weight window.
    pub m_min: i64,
    pub m_max: i64,
    /// Default extraction window in the spectral variable.
    pub u_lo: i64,
    pub u_hi: i64,
    /// Energy margin for trusted comparisons in the numeric track.
    pub margin: u32,
}

impl Cutoffs {
    pub fn new(e_max: u32, m_bound: i64, u_lo: i64, u_hi: i64, margin: u32) -> Cutoffs {
        Cutoffs {
            e_max,
            m_min: -m_bound,
            m_max: m_bound,
            u_lo,
            u_hi,
            margin,
        }
    }

    pub fn weight_in_window(&self, m: i64) -> bool {
        self.m_min <= m && m <= self.m_max
    }
}

/// All partitions of `n`, parts descending, in lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All partitions of weight at most `n` (including the empty one).
pub fn partitions_up_to(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for e in 0..=n {
        out.extend(partitions(e));
    }
    out
}

/// Enumerates the truncated basis in the documented order
/// (energy, weight, partition), optionally restricted to one sector.
pub fn enumerate_basis(cut: &Cutoffs, sector: Option<u8>) -> Vec<FockState> {
    let mut out = Vec::new();
    for e in 0..=cut.e_max {
        for parts in partitions(e) {
            for m in cut.m_min..=cut.m_max {
                if let Some(s) = sector {
                    if m.rem_euclid(2) as u8 != s {
                        continue;
                    }
                }
                out.push(FockState { m, parts: parts.clone() });
            }
        }
    }
    out.sort();
    out
}

/// A finite linear combination of basis states.
#[derive(Clone, PartialEq, Debug)]
pub struct FockVector<C: Coeff> {
    terms: BTreeMap<FockState, C>,
}

impl<C: Coeff> FockVector<C> {
    pub fn zero() -> Self {
        FockVector {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(state: FockState) -> Self {
        let mut v = FockVector::zero();
        v.add_term(state, C::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: &FockState) -> C {
        self.terms.get(s).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockState, &C)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, s: FockState, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(s) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return FockVector::zero();
        }
        let mut out = FockVector::zero();
        for (s, v) in &self.terms {
            out.add_term(s.clone(), v.mul(c));
        }
        out
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> FockVector<D> {
        let mut out = FockVector::zero();
        for (s, v) in &self.terms {
            out.add_term(s.clone(), f(v));
        }
        out
    }
}

/// A sparse linear map on the truncated module.
#[derive(Clone, Debug)]
pub struct SparseOp<C: Coeff> {
    pub name: String,
    /// Weight shift of the map (every column respects it).
    pub charge: i64,
    pub map: BTreeMap<FockState, FockVector<C>>,
}

impl<C: Coeff> SparseOp<C> {
    pub fn new(name: impl Into<String>, charge: i64) -> Self {
        SparseOp {
            name: name.into(),
            charge,
            map: BTreeMap::new(),
        }
    }

    pub fn identity(name: impl Into<String>, basis: &[FockState]) -> Self {
        let mut op = SparseOp::new(name, 0);
        for s in basis {
            op.map.insert(s.clone(), FockVector::basis(s.clone()));
        }
        op
    }

    pub fn zero_like(name: impl Into<String>, charge: i64) -> Self {
        SparseOp::new(name, charge)
    }

    pub fn column(&self, s: &FockState) -> FockVector<C> {
        self.map.get(s).cloned().unwrap_or_else(FockVector::zero)
    }

    pub fn apply(&self, v: &FockVector<C>) -> FockVector<C> {
        let mut out = FockVector::zero();
        for (s, c) in v.iter() {
            if let Some(col) = self.map.get(s) {
                for (t, w) in col.iter() {
                    out.add_term(t.clone(), w.mul(c));
                }
            }
        }
        out
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = SparseOp::new(
            format!("{}*{}", self.name, other.name),
            self.charge + other.charge,
        );
        for (s, col) in &other.map {
            let v = self.apply(col);
            if !v.is_zero() {
                out.map.insert(s.clone(), v);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.charge, other.charge, "weight-shift mismatch in sum");
        let mut out = self.clone();
        for (s, col) in &other.map {
            let merged = out.column(s).add(col);
            if merged.is_zero() {
                out.map.remove(s);
            } else {
                out.map.insert(s.clone(), merged);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_map(|c| c.neg()))
    }

    pub fn scale(&self, c: &C) -> Self {
        self.scale_map(|v| v.mul(c))
    }

    fn scale_map(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = SparseOp::new(self.name.clone(), self.charge);
        for (s, col) in &self.map {
            let v = col.map(|c| f(c));
            if !v.is_zero() {
                out.map.insert(s.clone(), v);
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SparseOp<D> {
        let mut out = SparseOp::new(self.name.clone(), self.charge);
        for (s, col) in &self.map {
            let v = col.map(&f);
            if !v.is_zero() {
                out.map.insert(s.clone(), v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(0).len(), 1);
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(6).len(), 11);
    }

    #[test]
    fn basis_order_deterministic() {
        let cut = Cutoffs::new(2, 2, -3, 3, 0);
        let b = enumerate_basis(&cut, Some(0));
        // energy 0 first, weights ascending
        assert_eq!(b[0], FockState::vacuum(-2));
        assert_eq!(b[1], FockState::vacuum(0));
        assert_eq!(b[2], FockState::vacuum(2));
        assert!(b.iter().all(|s| s.sector() == 0 && s.energy() <= 2));
        let sorted = {
            let mut c = b.clone();
            c.sort();
            c
        };
        assert_eq!(b, sorted);
    }

    #[test]
    fn state_part_ops() {
        let s = FockState::new(1, vec![1, 3, 1]);
        assert_eq!(s.parts, vec![3, 1, 1]);
        assert_eq!(s.energy(), 5);
        assert_eq!(s.sector(), 1);
        assert_eq!(s.multiplicity(1), 2);
        let t = s.with_part_added(2);
        assert_eq!(t.parts, vec![3, 2, 1, 1]);
        assert_eq!(s.with_part_removed(3).unwrap().parts, vec![1, 1]);
        assert!(s.with_part_removed(4).is_none());
    }

    #[test]
    fn vector_cancellation() {
        let mut v: FockVector<Poly> = FockVector::basis(FockState::vacuum(0));
        v.add_term(FockState::vacuum(0), Poly::int(-1));
        assert!(v.is_zero());
    }
}
