//! Defining mode relations of the double, checked as exact matrix
//! identities. The checker is generic over the mode provider so the same
//! relation list serves the evaluation module and coproduct images.

use super::{eval_generator, EvalGen, EvalScalar, Mat};
use crate::error::{Error, Result};
use crate::ratfun::RatFun;
use crate::scalar::{int, sym, sym_hbar};
use crate::yangian::Residual;

/// Checks the full defining relation list for the given mode provider over
/// the symmetric mode window. `hbar` is the deformation scalar, `two` the
/// scalar 2 in the entry ring.
pub fn check_defining_relations<T: EvalScalar>(
    label: &str,
    modes: impl Fn(EvalGen, i64) -> Mat<T>,
    hbar: &T,
    k_lo: i64,
    k_hi: i64,
) -> Residual {
    let mut res = Residual::new(label);
    let two = T::from_rat(&int(2));
    let mut expect_zero = |what: String, m: Mat<T>| {
        res.comparisons += 1;
        if !m.is_zero() {
            res.failures.push(format!("{}: {}", label, what));
        }
    };
    let e = |k| modes(EvalGen::E, k);
    let f = |k| modes(EvalGen::F, k);
    let h = |k| modes(EvalGen::H, k);

    for k in k_lo..=k_hi {
        for l in k_lo..=k_hi {
            // Cartan modes commute.
            expect_zero(format!("[h_{}, h_{}]", k, l), h(k).commutator(&h(l)));
            // Raising against lowering closes on the Cartan tower.
            expect_zero(
                format!("[e_{}, f_{}] - h_{}", k, l, k + l),
                e(k).commutator(&f(l)).sub(&h(k + l)),
            );
            if k + 1 <= k_hi && l + 1 <= k_hi {
                // Degree-mixing relations with the symmetrized right side.
                expect_zero(
                    format!("he mixing ({}, {})", k, l),
                    h(k + 1)
                        .commutator(&e(l))
                        .sub(&h(k).commutator(&e(l + 1)))
                        .sub(&h(k).anticommutator(&e(l)).scale(hbar)),
                );
                expect_zero(
                    format!("hf mixing ({}, {})", k, l),
                    h(k + 1)
                        .commutator(&f(l))
                        .sub(&h(k).commutator(&f(l + 1)))
                        .add(&h(k).anticommutator(&f(l)).scale(hbar)),
                );
                expect_zero(
                    format!("ee mixing ({}, {})", k, l),
                    e(k + 1)
                        .commutator(&e(l))
                        .sub(&e(k).commutator(&e(l + 1)))
                        .sub(&e(k).anticommutator(&e(l)).scale(hbar)),
                );
                expect_zero(
                    format!("ff mixing ({}, {})", k, l),
                    f(k + 1)
                        .commutator(&f(l))
                        .sub(&f(k).commutator(&f(l + 1)))
                        .add(&f(k).anticommutator(&f(l)).scale(hbar)),
                );
            }
        }
        // Weight relations against the zero Cartan mode.
        expect_zero(
            format!("[h_0, e_{}] - 2 e_{}", k, k),
            h(0).commutator(&e(k)).sub(&e(k).scale(&two)),
        );
        expect_zero(
            format!("[h_0, f_{}] + 2 f_{}", k, k),
            h(0).commutator(&f(k)).add(&f(k).scale(&two)),
        );
    }
    res
}

/// The defining relations on the evaluation module with a symbolic spectral
/// parameter.
pub fn verify_defining_modes_eval(k_lo: i64, k_hi: i64) -> Result<Residual> {
    let x = RatFun::var(sym("x"));
    let hbar = RatFun::var(sym_hbar());
    let res = check_defining_relations(
        "eval-modes",
        |g, k| eval_generator(g, k, &x),
        &hbar,
        k_lo,
        k_hi,
    );
    if res.comparisons == 0 {
        return Err(Error::NoTrustedEntries("eval-modes".into()));
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_window_passes() {
        let r = verify_defining_modes_eval(-3, 3).unwrap();
        assert!(r.pass(), "first failure: {:?}", r.failures.first());
    }

    #[test]
    fn ef_closes_on_cartan() {
        // [e_k, f_l] lands exactly on the Cartan mode of degree k + l.
        let x = RatFun::var(sym("x"));
        let e = eval_generator(EvalGen::E, 2, &x);
        let f = eval_generator(EvalGen::F, -3, &x);
        let h = eval_generator(EvalGen::H, -1, &x);
        assert!(e.commutator(&f).sub(&h).is_zero());
    }

    #[test]
    fn anticommutator_of_cartan_and_raising_vanishes() {
        let x = RatFun::var(sym("x"));
        let h = eval_generator(EvalGen::H, 1, &x);
        let e = eval_generator(EvalGen::E, 2, &x);
        assert!(h.anticommutator(&e).is_zero());
    }
}
