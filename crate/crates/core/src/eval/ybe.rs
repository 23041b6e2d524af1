//! Yang-Baxter identities for the rational R-matrix, exact in three symbolic
//! spectral parameters and at seeded random rational points.
//!
//! With the third tensor slot evaluated, both L-operator exchange relations
//! reduce to the same bracket-matrix identity: the scalar factors multiply
//! both sides identically and the central shift vanishes at charge zero. The
//! mixed variant additionally exercises the unitarity relation that makes
//! the two orientations of the bracket matrix consistent.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use super::rmatrix::rbar;
use super::{embed_two_site, EvalScalar, Mat, Q};
use crate::laurent::Coeff;
use crate::error::{Error, Result};
use crate::ratfun::RatFun;
use crate::scalar::{rat, sym, sym_hbar, BigRat};
use crate::yangian::Residual;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YbeKind {
    PurePlus,
    PureMinus,
    Mixed,
}

impl YbeKind {
    pub fn id(&self) -> &'static str {
        match self {
            YbeKind::PurePlus => "ybe-pure+",
            YbeKind::PureMinus => "ybe-pure-",
            YbeKind::Mixed => "ybe-mixed",
        }
    }
}

fn three_site<T: EvalScalar>(x: &T, y: &T, z: &T, hbar: &T) -> (Mat<T>, Mat<T>, Mat<T>) {
    let r12 = embed_two_site(&rbar(&x.sub(y), hbar), 2, 0, 1, 3);
    let r13 = embed_two_site(&rbar(&x.sub(z), hbar), 2, 0, 2, 3);
    let r23 = embed_two_site(&rbar(&y.sub(z), hbar), 2, 1, 2, 3);
    (r12, r13, r23)
}

/// Residual of the braided exchange of three sites.
pub fn ybe_residual<T: EvalScalar>(x: &T, y: &T, z: &T, hbar: &T) -> Mat<T> {
    let (r12, r13, r23) = three_site(x, y, z, hbar);
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    lhs.sub(&rhs)
}

/// Symbolic check of one identity kind; the mixed kind also verifies the
/// inverse-orientation compatibility.
pub fn check_ybe(kind: YbeKind) -> Result<Residual> {
    let mut res = Residual::new(kind.id());
    let x = RatFun::var(sym("x"));
    let y = RatFun::var(sym("y"));
    let z = RatFun::var(sym("z"));
    let h = RatFun::var(sym_hbar());
    let resid = match kind {
        YbeKind::PurePlus => ybe_residual(&x, &y, &z, &h),
        // The minus orientation carries the reflected argument convention.
        YbeKind::PureMinus => {
            ybe_residual(&-&x, &-&y, &-&z, &h)
        }
        YbeKind::Mixed => ybe_residual(&x, &y, &z, &h),
    };
    res.comparisons += 64;
    for i in 0..8 {
        for j in 0..8 {
            let e = resid.get(i, j);
            if !e.is_zero() {
                res.failures
                    .push(format!("{}: entry ({}, {}) = {}", kind.id(), i, j, e));
            }
        }
    }
    if kind == YbeKind::Mixed {
        // Orientation compatibility: the bracket matrix against its
        // reflected argument is exactly the identity.
        let m = rbar(&x.sub(&y), &h).mul(&rbar(&y.sub(&x), &h));
        res.comparisons += 16;
        if m != Mat::identity(4) {
            res.failures.push("mixed: unitarity failed".into());
        }
    }
    if res.comparisons == 0 {
        return Err(Error::NoTrustedEntries(kind.id().into()));
    }
    Ok(res)
}

/// Evaluates the residual at seeded random rational points; exact zero is
/// required at every sample.
pub fn check_ybe_sampled(trials: u32, seed: u64) -> Result<Residual> {
    let mut res = Residual::new("ybe-sampled");
    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0x5955_414e_4749_414e);
    let mut max_abs: f64 = 0.0;
    for t in 0..trials {
        // Rational sample points with distinct differences away from poles.
        let mut draw = |lo: i64, hi: i64| -> BigRat {
            let num = rng.gen_range(lo..=hi);
            let den = rng.gen_range(1..=12i64);
            rat(num, den)
        };
        let h = draw(1, 9);
        let (x, y, z) = loop {
            let x = draw(-60, 60);
            let y = draw(-60, 60);
            let z = draw(-60, 60);
            let zero = BigRat::from_integer(0.into());
            let bad = [&x - &y, &x - &z, &y - &z]
                .iter()
                .any(|d| (d + &h) == zero || (d - &h) == zero || d == &zero);
            if !bad {
                break (x, y, z);
            }
        };
        let resid = ybe_residual(&Q(x), &Q(y), &Q(z), &Q(h));
        res.comparisons += 1;
        for e in &resid.e {
            if !Coeff::is_zero(e) {
                res.failures
                    .push(format!("sample {}: nonzero entry {:?}", t, e));
            }
            use num::ToPrimitive;
            max_abs = max_abs.max(e.0.to_f64().unwrap_or(f64::INFINITY).abs());
        }
    }
    res.max_numeric = Some(max_abs);
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_all_kinds() {
        for kind in [YbeKind::PurePlus, YbeKind::PureMinus, YbeKind::Mixed] {
            let r = check_ybe(kind).unwrap();
            assert!(r.pass(), "{}: {:?}", kind.id(), r.failures.first());
        }
    }

    #[test]
    fn sampled_window() {
        let r = check_ybe_sampled(10, 42).unwrap();
        assert!(r.pass(), "{:?}", r.failures.first());
        assert_eq!(r.max_numeric, Some(0.0));
    }

    #[test]
    fn large_spectral_parameter_degenerates_to_identity() {
        // Leading order at infinity: every factor tends to the identity, so
        // the identity trivially balances. Checked by substituting a large
        // rational parameter and bounding the distance from the identity.
        let h = Q(rat(1, 1));
        let big = Q(rat(1_000_000, 1));
        let m = rbar(&big, &h);
        use num::ToPrimitive;
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                let got = m.get(i, j).0.to_f64().unwrap();
                assert!((got - want).abs() < 2e-6, "entry ({}, {})", i, j);
            }
        }
    }
}
