//! The rational 4x4 R-matrix and its Gamma-function scalar factors.
//!
//! Index order of the tensor basis is fixed as (++, +-, -+, --) for
//! bit-exact report reproducibility.

use num::complex::Complex64;

use super::{EvalScalar, Mat};
use crate::error::{Error, Result};
use crate::gammafn::{ln_gamma, pole_distance};

/// The bracket matrix: corners one, middle block mixing `u/(u+hbar)` and
/// `hbar/(u+hbar)`.
pub fn rbar<T: EvalScalar>(u: &T, hbar: &T) -> Mat<T> {
    let den = u.add(hbar);
    let a = u.div(&den);
    let b = hbar.div(&den);
    let mut m = Mat::zeros(4);
    m.set(0, 0, T::one());
    m.set(3, 3, T::one());
    m.set(1, 1, a.clone());
    m.set(2, 2, a);
    m.set(1, 2, b.clone());
    m.set(2, 1, b);
    m
}

/// Numeric bracket matrix with a pole guard at `u = -hbar`.
pub fn rbar_numeric(u: Complex64, hbar: Complex64, eps: f64) -> Result<Mat<Complex64>> {
    if (u + hbar).norm() < eps {
        return Err(Error::PoleProximity {
            what: "rational R-matrix".into(),
            eps,
        });
    }
    Ok(rbar(&u, &hbar))
}

/// Sign of the scalar factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoSign {
    Plus,
    Minus,
}

/// The Gamma-function scalar factor, evaluated through the principal-branch
/// log-Gamma for stability. The two signs are related by flipping both the
/// argument sign inside the Gammas and the overall exponent.
pub fn rho(sign: RhoSign, u: Complex64, hbar: Complex64, eps: f64) -> Result<Complex64> {
    let s = match sign {
        RhoSign::Plus => -1.0,
        RhoSign::Minus => 1.0,
    };
    let z = Complex64::new(s, 0.0) * u / (hbar * 2.0);
    for arg in [z, z + 1.0, z + 0.5] {
        if pole_distance(arg) < eps {
            return Err(Error::PoleProximity {
                what: "rho scalar factor".into(),
                eps,
            });
        }
    }
    let ln = ln_gamma(z) + ln_gamma(z + 1.0) - ln_gamma(z + 0.5) * 2.0;
    let inner = ln.exp();
    Ok(match sign {
        RhoSign::Plus => inner,
        RhoSign::Minus => 1.0 / inner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::ratfun::RatFun;
    use crate::scalar::{int, rat, sym, sym_hbar};
    use std::f64::consts::PI;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn symbolic_row_sums_and_permutation_limit() {
        let u = RatFun::var(sym("u"));
        let h = RatFun::var(sym_hbar());
        let m = rbar(&u, &h);
        // middle-block row sums are exactly one
        let row1 = m.get(1, 1) + m.get(1, 2);
        assert!(row1.is_one());
        // u = 0 gives the permutation matrix
        let m0 = m.map(|e| e.subst(sym("u"), &int(0)).unwrap());
        assert!(m0.get(1, 1).is_zero());
        assert!(m0.get(1, 2).is_one());
        assert!(m0.get(0, 0).is_one());
        // u = hbar halves the middle block
        let mh = m.map(|e| {
            e.subst_poly(sym("u"), &Poly::var(sym_hbar())).unwrap()
        });
        assert_eq!(mh.get(1, 1).as_constant(), Some(rat(1, 2)));
        assert_eq!(mh.get(2, 1).as_constant(), Some(rat(1, 2)));
    }

    #[test]
    fn unitarity() {
        // rbar(u) * rbar(-u) is exactly the identity.
        let u = RatFun::var(sym("u"));
        let h = RatFun::var(sym_hbar());
        let m = rbar(&u, &h);
        let mneg = rbar(&-&u, &h);
        assert_eq!(m.mul(&mneg), Mat::identity(4));
    }

    #[test]
    fn numeric_pole_guard() {
        assert!(matches!(
            rbar_numeric(re(-1.0), re(1.0), 1e-8),
            Err(Error::PoleProximity { .. })
        ));
    }

    #[test]
    fn rho_minus_anchor() {
        // At u = hbar: Gamma(1/2) Gamma(3/2) / Gamma(1)^2 = pi/2, inverted.
        let v = rho(RhoSign::Minus, re(1.0), re(1.0), 1e-10).unwrap();
        assert!((v - re(2.0 / PI)).norm() < 1e-12, "got {}", v);
    }

    #[test]
    fn rho_sign_flip() {
        // The two signs are reciprocal under argument reflection.
        let u = re(0.37);
        let h = re(1.0);
        let p = rho(RhoSign::Plus, u, h, 1e-10).unwrap();
        let m = rho(RhoSign::Minus, -u, h, 1e-10).unwrap();
        assert!((p * m - re(1.0)).norm() < 1e-12);
    }

    #[test]
    fn rho_minus_large_argument_asymptotics() {
        // Stirling: the factor tends to one like O(1/u).
        let h = re(1.0);
        let v1 = rho(RhoSign::Minus, re(50.0), h, 1e-10).unwrap();
        let v2 = rho(RhoSign::Minus, re(200.0), h, 1e-10).unwrap();
        assert!((v1 - re(1.0)).norm() < 0.01);
        assert!((v2 - re(1.0)).norm() < (v1 - re(1.0)).norm());
        // Slope roughly 1/u: quadrupling u divides the distance by about 4.
        let ratio = (v1 - re(1.0)).norm() / (v2 - re(1.0)).norm();
        assert!(ratio > 2.0 && ratio < 8.0, "ratio {}", ratio);
    }
}
