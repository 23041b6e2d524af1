//! Action of the Heisenberg generators on the truncated module.

use super::{Cutoffs, FockVector};
use crate::laurent::Coeff;
use crate::scalar::int;

/// A single Heisenberg-algebra generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Boson mode: positive index annihilates, negative creates.
    A(i64),
    /// The zero-mode number operator (weight reader).
    P,
    /// Charge shift by `k` half-units: weight moves by `k`.
    ChargeShift(i64),
}

/// Applies one generator. The boolean is true when part of the result was
/// truncated away (energy above the ceiling or weight outside the window).
pub fn heisenberg_act<C: Coeff>(
    gen: Generator,
    v: &FockVector<C>,
    cut: &Cutoffs,
) -> (FockVector<C>, bool) {
    let mut out = FockVector::zero();
    let mut truncated = false;
    for (s, c) in v.iter() {
        match gen {
            Generator::A(n) if n < 0 => {
                let part = (-n) as u32;
                if s.energy() + part > cut.e_max {
                    truncated = true;
                } else {
                    out.add_term(s.with_part_added(part), c.clone());
                }
            }
            Generator::A(n) => {
                assert!(n > 0, "mode index zero is the charge operator");
                let part = n as u32;
                let r = s.multiplicity(part);
                if r > 0 {
                    // Derivation: factor n per removed part, r choices.
                    let factor = C::from_rat(&int(n * r as i64));
                    out.add_term(s.with_part_removed(part).unwrap(), c.mul(&factor));
                }
            }
            Generator::P => {
                out.add_term(s.clone(), c.mul(&C::from_rat(&int(s.m))));
            }
            Generator::ChargeShift(k) => {
                let m = s.m + k;
                if cut.weight_in_window(m) {
                    out.add_term(s.with_weight(m), c.clone());
                } else {
                    truncated = true;
                }
            }
        }
    }
    (out, truncated)
}
