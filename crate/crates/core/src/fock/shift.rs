//! The spectral-shift automorphism on the truncated module.
//!
//! The shift operator fixes the charge vacua up to the charge-dressing
//! exponential and conjugates boson modes by the documented binomial mixing.
//! Entries are exact polynomials in the formal shift variable, truncated at a
//! configured total degree; since the shift degree equals the created energy,
//! truncation in the shift degree and in energy go hand in hand.

use std::collections::BTreeMap;

use num::traits::One;

use super::{Cutoffs, FockVector, SparseOp};
use crate::poly::Poly;
use crate::scalar::{binom_u, int, rat, BigRat, Sym};

/// Truncates every monomial with degree in `s` above `max`.
pub fn truncate_var_degree(p: &Poly, s: Sym, max: u32) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        if m.degree_in(s) <= max {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

/// Builds the shift operator with formal parameter `gamma` (negated when
/// `negate` is set), keeping shift degrees up to `gmax`.
pub fn t_gamma(gamma: Sym, negate: bool, cut: &Cutoffs, gmax: u32) -> SparseOp<Poly> {
    let mut op = SparseOp::new(if negate { "T(-gamma)" } else { "T(gamma)" }, 0);
    let g = if negate {
        Poly::var(gamma).scale(&int(-1))
    } else {
        Poly::var(gamma)
    };
    let mut gpow = vec![Poly::one()];
    for k in 1..=gmax.max(cut.e_max) {
        gpow.push(&gpow[k as usize - 1] * &g);
    }

    for state in super::enumerate_basis(cut, None) {
        let mut vec: FockVector<Poly> = FockVector::zero();
        // Charge dressing: exp(m * sum_k a_{-k} gamma^k / k) on the charge
        // vacuum; the shift degree of a created partition equals its energy.
        let room = cut.e_max - state.energy();
        for mu in super::partitions_up_to(room.min(gmax)) {
            let mut coeff = BigRat::one();
            let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
            for &n in &mu {
                *counts.entry(n).or_insert(0) += 1;
            }
            let mut target = state.clone();
            for (&k, &q) in &counts {
                for i in 1..=q as i64 {
                    coeff = coeff * rat(state.m, k as i64) * rat(1, i);
                }
                for _ in 0..q {
                    target = target.with_part_added(k);
                }
            }
            let gdeg: u32 = mu.iter().sum();
            vec.add_term(target, gpow[gdeg as usize].scale(&coeff));
        }
        // Conjugated creation modes for the existing partition parts:
        // a_{-n} -> sum_k binom(n+k-1, k) gamma^k a_{-(n+k)}.
        // The original parts are already in `vec`'s states; replace each part
        // n by its mixed versions. Applied one part at a time.
        for &n in &state.parts {
            let mut next: FockVector<Poly> = FockVector::zero();
            for (s, c) in vec.iter() {
                // Remove one original part n and re-add its mixture.
                let base = s.with_part_removed(n).expect("original part present");
                for k in 0..=gmax {
                    let part = n + k;
                    if base.energy() + part > cut.e_max {
                        break;
                    }
                    let b = binom_u((n + k - 1) as u64, k as u64);
                    let term = &gpow[k as usize].scale(&b) * c;
                    let term = truncate_var_degree(&term, gamma, gmax);
                    next.add_term(base.with_part_added(part), term);
                }
            }
            vec = next;
        }
        let mut clean: FockVector<Poly> = FockVector::zero();
        for (s, c) in vec.iter() {
            let t = truncate_var_degree(c, gamma, gmax);
            clean.add_term(s.clone(), t);
        }
        if !clean.is_zero() {
            op.map.insert(state, clean);
        }
    }
    op
}

/// The documented conjugation targets of the shift automorphism, as sparse
/// operators restricted to the truncated module.
pub mod conjugation {
    use super::*;
    use crate::fock::heisenberg::{heisenberg_act, Generator};

    fn generator_op(gen: Generator, cut: &Cutoffs, charge: i64) -> SparseOp<Poly> {
        let mut op = SparseOp::new(format!("{:?}", gen), charge);
        for s in crate::fock::enumerate_basis(cut, None) {
            let (v, _) = heisenberg_act(gen, &FockVector::basis(s.clone()), cut);
            if !v.is_zero() {
                op.map.insert(s, v);
            }
        }
        op
    }

    pub fn boson(n: i64, cut: &Cutoffs) -> SparseOp<Poly> {
        generator_op(Generator::A(n), cut, 0)
    }

    pub fn weight_reader(cut: &Cutoffs) -> SparseOp<Poly> {
        generator_op(Generator::P, cut, 0)
    }

    pub fn charge2(cut: &Cutoffs) -> SparseOp<Poly> {
        generator_op(Generator::ChargeShift(2), cut, 2)
    }

    /// Expected conjugate of a creation mode: binomial tail of deeper modes.
    pub fn expected_a_minus(n: u32, gamma: Sym, cut: &Cutoffs, gmax: u32) -> SparseOp<Poly> {
        let mut acc = SparseOp::new(format!("conj a_-{}", n), 0);
        for k in 0..=gmax {
            let b = binom_u((n + k - 1) as u64, k as u64);
            let coeff = Poly::var_pow(gamma, k).scale(&b);
            let op = boson(-((n + k) as i64), cut).scale(&coeff);
            acc = if k == 0 { op } else { acc.add(&op) };
        }
        acc
    }

    /// Expected conjugate of an annihilation mode: the finite binomial mix
    /// ending in the weight reader.
    pub fn expected_a_plus(n: u32, gamma: Sym, cut: &Cutoffs) -> SparseOp<Poly> {
        let mut acc = SparseOp::new(format!("conj a_{}", n), 0);
        let mut first = true;
        for k in 0..n {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let b = binom_u(n as u64, k as u64) * int(sign);
            let coeff = Poly::var_pow(gamma, k).scale(&b);
            let op = boson((n - k) as i64, cut).scale(&coeff);
            acc = if first { op } else { acc.add(&op) };
            first = false;
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let p_term = weight_reader(cut).scale(&Poly::var_pow(gamma, n).scale(&int(sign)));
        acc.add(&p_term)
    }

    /// Expected conjugate of the full charge raiser: the raiser dressed by
    /// the creation exponential with doubled coefficients.
    pub fn expected_charge2(gamma: Sym, cut: &Cutoffs, gmax: u32) -> SparseOp<Poly> {
        let e2 = charge2(cut);
        // exp(2 sum a_{-k} gamma^k / k) applied after the raiser.
        let mut dress = SparseOp::new("dress", 0);
        for s in crate::fock::enumerate_basis(cut, None) {
            let mut vec = FockVector::zero();
            let room = cut.e_max - s.energy();
            for mu in crate::fock::partitions_up_to(room.min(gmax)) {
                let mut coeff = BigRat::one();
                let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
                for &n in &mu {
                    *counts.entry(n).or_insert(0) += 1;
                }
                let mut target = s.clone();
                for (&k, &q) in &counts {
                    for i in 1..=q as i64 {
                        coeff = coeff * rat(2, k as i64) * rat(1, i);
                    }
                    for _ in 0..q {
                        target = target.with_part_added(k);
                    }
                }
                let gdeg: u32 = mu.iter().sum();
                vec.add_term(target, Poly::var_pow(gamma, gdeg).scale(&coeff));
            }
            dress.map.insert(s, vec);
        }
        dress.compose(&e2)
    }
}
