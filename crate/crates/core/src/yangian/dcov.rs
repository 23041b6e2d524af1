//! Covariance of the mode operators under the spectral-shift automorphism.
//!
//! Conjugating a mode by the shift operator must equal the binomial mode
//! mixing induced by translating the spectral variable in the generating
//! function. Both sides are compared coefficientwise in the formal shift
//! parameter up to a configured degree.

use rayon::prelude::*;

use super::{build_modes, Family, ModeSet, Residual};
use crate::error::{Error, Result};
use crate::fock::shift::{t_gamma, truncate_var_degree};
use crate::fock::{enumerate_basis, Cutoffs, SparseOp};
use crate::poly::Poly;
use crate::scalar::{binom_rat, sym, Sym};

/// Mode mixing of `family` index `i` under `var -> var + gamma`, truncated at
/// shift degree `gmax`.
fn mixed_mode(
    family: Family,
    modes: &ModeSet,
    i: i64,
    gamma: Sym,
    gmax: u32,
) -> Result<SparseOp<Poly>> {
    let mut acc = SparseOp::zero_like(format!("mix {}_{}", family.label(), i), family.charge());
    for j in 0..=gmax {
        // Coefficient of the shifted power in the translated function.
        let (src, b) = match family {
            // sum_{l <= k} binom(-l-1, k-l) gamma^(k-l) e_l at k = i, l = i-j
            Family::E | Family::F => (i - j as i64, binom_rat(-(i - j as i64) - 1, j)),
            // positive-power side mixes upward
            Family::Hm => (i + j as i64, binom_rat(i + j as i64, j)),
            // inverse-power side mixes downward
            Family::Hp => (i - j as i64, binom_rat(-(i - j as i64), j)),
        };
        if b == crate::scalar::int(0) {
            continue;
        }
        if !family.admissible(src) {
            continue;
        }
        let coeff = Poly::var_pow(gamma, j).scale(&b);
        let term = modes.mode(src)?.scale(&coeff);
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Verifies shift covariance for all four families on the given mode window.
pub fn verify_d_covariance(cut: &Cutoffs, k_lo: i64, k_hi: i64, h_depth: i64, gmax: u32) -> Result<Residual> {
    let gamma = sym("gamma");
    let t = t_gamma(gamma, false, cut, gmax);
    let tinv = t_gamma(gamma, true, cut, gmax);
    let mut total = Residual::new("d-cov");

    for family in [Family::E, Family::F, Family::Hp, Family::Hm] {
        let u = sym("u");
        let (t_lo, t_hi, b_lo, b_hi) = match family {
            Family::E | Family::F => (k_lo, k_hi, k_lo - gmax as i64, k_hi),
            Family::Hp => (0, h_depth, 0, h_depth),
            Family::Hm => (0, h_depth, 0, h_depth + gmax as i64),
        };
        let modes = build_modes(family, u, cut, b_lo..=b_hi)?;
        let states = enumerate_basis(cut, None);
        let per_mode: Vec<Residual> = (t_lo..=t_hi)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&i| -> Result<Residual> {
                let mut res = Residual::new("d-cov");
                if !family.admissible(i) {
                    return Ok(res);
                }
                let lhs = t.compose(&modes.mode(i)?).compose(&tinv);
                let rhs = mixed_mode(family, &modes, i, gamma, gmax)?;
                let diff = lhs.sub(&rhs);
                for s in &states {
                    if !cut.weight_in_window(s.m + family.charge()) {
                        res.flagged += 1;
                        continue;
                    }
                    let drop = family.max_drop(i, s.m);
                    let col = diff.column(s);
                    let safe_input = s.energy() as i64 + gmax as i64 <= cut.e_max as i64;
                    res.comparisons += 1;
                    for (t_state, c) in col.iter() {
                        let safe_output =
                            t_state.energy() as i64 + drop <= cut.e_max as i64;
                        if safe_input || safe_output {
                            let c = truncate_var_degree(c, gamma, gmax);
                            if !c.is_zero() {
                                res.failures.push(format!(
                                    "d-cov {}_{} on {} -> {}: {}",
                                    family.label(),
                                    i,
                                    s,
                                    t_state,
                                    c
                                ));
                            }
                        } else {
                            res.flagged += 1;
                        }
                    }
                }
                Ok(res)
            })
            .collect::<Result<Vec<_>>>()?;
        for r in per_mode {
            total.merge(r);
        }
    }
    if total.comparisons == 0 {
        return Err(Error::NoTrustedEntries("d-cov".into()));
    }
    Ok(total)
}
