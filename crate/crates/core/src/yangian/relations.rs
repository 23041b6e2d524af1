//! Exchange relations of the centrally extended double at level one, in
//! cleared-denominator polynomial form with the central charge substituted.

use rayon::prelude::*;

use super::{build_modes, Family, ModeSet, Residual};
use crate::error::{Error, Result};
use crate::fock::{enumerate_basis, Cutoffs, FockVector};
use crate::poly::Poly;
use crate::scalar::{sym, sym_hbar, Sym};

/// One exchange relation `lhs_mult * A(u) B(v) = rhs_mult * B(v) A(u)`.
#[derive(Clone, Debug)]
pub struct Exchange {
    pub id: &'static str,
    pub fam_u: Family,
    pub fam_v: Family,
    pub lhs_mult: Poly,
    pub rhs_mult: Poly,
}

fn u() -> Sym {
    sym("u")
}

fn v() -> Sym {
    sym("v")
}

fn w_poly() -> Poly {
    &Poly::var(u()) - &Poly::var(v())
}

fn hb() -> Poly {
    Poly::var(sym_hbar())
}

/// The cleared exchange relations at central charge one.
pub fn catalog() -> Vec<Exchange> {
    let w = w_poly();
    let h = hb();
    let minus = &w - &h;
    let plus = &w + &h;
    let minus2 = &w - &h.scale(&crate::scalar::int(2));
    vec![
        Exchange {
            id: "ee",
            fam_u: Family::E,
            fam_v: Family::E,
            lhs_mult: minus.clone(),
            rhs_mult: plus.clone(),
        },
        Exchange {
            id: "ff",
            fam_u: Family::F,
            fam_v: Family::F,
            lhs_mult: plus.clone(),
            rhs_mult: minus.clone(),
        },
        Exchange {
            id: "h+e",
            fam_u: Family::Hp,
            fam_v: Family::E,
            lhs_mult: minus.clone(),
            rhs_mult: plus.clone(),
        },
        Exchange {
            id: "h-e",
            fam_u: Family::Hm,
            fam_v: Family::E,
            lhs_mult: minus.clone(),
            rhs_mult: plus.clone(),
        },
        // The annihilation-side Cartan exchange with the lowering current
        // carries the central shift; at charge one the ratio degenerates.
        Exchange {
            id: "h+f",
            fam_u: Family::Hp,
            fam_v: Family::F,
            lhs_mult: w.clone(),
            rhs_mult: minus2.clone(),
        },
        Exchange {
            id: "h-f",
            fam_u: Family::Hm,
            fam_v: Family::F,
            lhs_mult: plus.clone(),
            rhs_mult: minus.clone(),
        },
        Exchange {
            id: "h+h-",
            fam_u: Family::Hp,
            fam_v: Family::Hm,
            lhs_mult: &minus * &w,
            rhs_mult: &plus * &minus2,
        },
        Exchange {
            id: "h+h+",
            fam_u: Family::Hp,
            fam_v: Family::Hp,
            lhs_mult: Poly::one(),
            rhs_mult: Poly::one(),
        },
        Exchange {
            id: "h-h-",
            fam_u: Family::Hm,
            fam_v: Family::Hm,
            lhs_mult: Poly::one(),
            rhs_mult: Poly::one(),
        },
    ]
}

pub fn find_exchange(id: &str) -> Option<Exchange> {
    catalog().into_iter().find(|e| e.id == id)
}

/// Splits a multiplier into monomial contributions `(u^a, v^b, hbar-part)`.
fn decompose_uv(p: &Poly) -> Vec<(i64, i64, Poly)> {
    let mut out: Vec<(i64, i64, Poly)> = Vec::new();
    for (m, c) in p.terms() {
        let a = m.degree_in(u()) as i64;
        let b = m.degree_in(v()) as i64;
        let rest = Poly::monomial(m.without(u()).without(v()), c.clone());
        match out.iter_mut().find(|(x, y, _)| *x == a && *y == b) {
            Some((_, _, acc)) => *acc = &*acc + &rest,
            None => out.push((a, b, rest)),
        }
    }
    out
}

/// Default mode window for the second slot of a relation: the full built
/// depth for the Cartan series, the configured window for the currents.
pub fn target_indices(fam: Family, k_lo: i64, k_hi: i64, h_depth: i64) -> (i64, i64) {
    match fam {
        Family::E | Family::F => (k_lo, k_hi),
        Family::Hp | Family::Hm => (0, h_depth),
    }
}

/// Verifies one cleared exchange relation on every basis state and every
/// target mode pair. Every trusted coefficient must vanish identically in
/// the deformation parameter.
pub fn verify_exchange(
    ex: &Exchange,
    cut: &Cutoffs,
    k_lo: i64,
    k_hi: i64,
    h_depth: i64,
) -> Result<Residual> {
    let lhs_terms = decompose_uv(&ex.lhs_mult);
    let rhs_terms = decompose_uv(&ex.rhs_mult);
    let du = ex
        .lhs_mult
        .degree_in(u())
        .max(ex.rhs_mult.degree_in(u())) as i64;
    let dv = ex
        .lhs_mult
        .degree_in(v())
        .max(ex.rhs_mult.degree_in(v())) as i64;

    let (tu_lo, tu_hi) = target_indices(ex.fam_u, k_lo, k_hi, h_depth - du);
    let (tv_lo, tv_hi) = target_indices(ex.fam_v, k_lo, k_hi, h_depth - dv);

    // Built ranges cover every shifted index touched by the multipliers.
    let build_u = match ex.fam_u {
        Family::Hm => (tu_lo - du).max(0)..=tu_hi,
        _ => tu_lo..=(tu_hi + du),
    };
    let build_v = match ex.fam_v {
        Family::Hm => (tv_lo - dv).max(0)..=tv_hi,
        _ => tv_lo..=(tv_hi + dv),
    };
    let modes_u = build_modes(ex.fam_u, u(), cut, build_u)?;
    let modes_v = build_modes(ex.fam_v, v(), cut, build_v)?;

    let states = enumerate_basis(cut, None);
    let results: Vec<Residual> = states
        .par_iter()
        .map(|s| {
            verify_exchange_on_state(
                ex, cut, s, &modes_u, &modes_v, &lhs_terms, &rhs_terms, tu_lo, tu_hi, tv_lo,
                tv_hi,
            )
        })
        .collect::<Result<Vec<_>>>()?;

    let mut total = Residual::new(ex.id);
    for r in results {
        total.merge(r);
    }
    if total.comparisons == 0 {
        return Err(Error::NoTrustedEntries(ex.id.into()));
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn verify_exchange_on_state(
    ex: &Exchange,
    cut: &Cutoffs,
    s: &crate::fock::FockState,
    modes_u: &ModeSet,
    modes_v: &ModeSet,
    lhs_terms: &[(i64, i64, Poly)],
    rhs_terms: &[(i64, i64, Poly)],
    tu_lo: i64,
    tu_hi: i64,
    tv_lo: i64,
    tv_hi: i64,
) -> Result<Residual> {
    let mut res = Residual::new(ex.id);
    let m_after_v = s.m + ex.fam_v.charge();
    let m_after_u = s.m + ex.fam_u.charge();
    let weights_ok = cut.weight_in_window(m_after_v)
        && cut.weight_in_window(m_after_u)
        && cut.weight_in_window(s.m + ex.fam_u.charge() + ex.fam_v.charge());
    if !weights_ok {
        res.flagged += 1;
        return Ok(res);
    }

    // Cache of compositions for both orders.
    use std::collections::BTreeMap;
    let mut ab: BTreeMap<(i64, i64), FockVector<Poly>> = BTreeMap::new();
    let mut ba: BTreeMap<(i64, i64), FockVector<Poly>> = BTreeMap::new();
    let mut ab_of = |i: i64, j: i64| -> Result<FockVector<Poly>> {
        if let Some(vv) = ab.get(&(i, j)) {
            return Ok(vv.clone());
        }
        let col = if ex.fam_v.admissible(j) {
            modes_v.mode(j)?.column(s)
        } else {
            FockVector::zero()
        };
        let out = if ex.fam_u.admissible(i) {
            modes_u.mode(i)?.apply(&col)
        } else {
            FockVector::zero()
        };
        ab.insert((i, j), out.clone());
        Ok(out)
    };
    let mut ba_of = |i: i64, j: i64| -> Result<FockVector<Poly>> {
        if let Some(vv) = ba.get(&(i, j)) {
            return Ok(vv.clone());
        }
        let col = if ex.fam_u.admissible(i) {
            modes_u.mode(i)?.column(s)
        } else {
            FockVector::zero()
        };
        let out = if ex.fam_v.admissible(j) {
            modes_v.mode(j)?.apply(&col)
        } else {
            FockVector::zero()
        };
        ba.insert((i, j), out.clone());
        Ok(out)
    };

    for i in tu_lo..=tu_hi {
        for j in tv_lo..=tv_hi {
            let mut lhs = FockVector::zero();
            let mut drop_ab: i64 = 0;
            for (a, b, c) in lhs_terms {
                let iu = ex.fam_u.shift_index(i, *a);
                let jv = ex.fam_v.shift_index(j, *b);
                let term = ab_of(iu, jv)?;
                lhs = lhs.add(&term.map(|x| x * c));
                if ex.fam_v.can_overflow() {
                    drop_ab = drop_ab.max(ex.fam_u.max_drop(iu, m_after_v));
                }
            }
            let mut rhs = FockVector::zero();
            let mut drop_ba: i64 = 0;
            for (a, b, c) in rhs_terms {
                let iu = ex.fam_u.shift_index(i, *a);
                let jv = ex.fam_v.shift_index(j, *b);
                let term = ba_of(iu, jv)?;
                rhs = rhs.add(&term.map(|x| x * c));
                if ex.fam_u.can_overflow() {
                    drop_ba = drop_ba.max(ex.fam_v.max_drop(jv, m_after_u));
                }
            }
            let resid = lhs.sub(&rhs);
            let ceiling = cut.e_max as i64 - drop_ab.max(drop_ba);
            if ceiling >= 0 {
                res.comparisons += 1;
            }
            for (t, c) in resid.iter() {
                if (t.energy() as i64) <= ceiling {
                    if !c.is_zero() {
                        res.failures.push(format!(
                            "{}: modes ({}, {}) on {} -> {}: {}",
                            ex.id, i, j, s, t, c
                        ));
                    }
                } else {
                    res.flagged += 1;
                }
            }
        }
    }
    Ok(res)
}
