//! Complex log-Gamma via the Lanczos approximation, with a pole guard.
//!
//! Principal branch: real and positive for real arguments in the principal
//! domain. Arguments in the left half plane go through the reflection
//! formula, which keeps the approximation accurate everywhere away from the
//! poles at 0, -1, -2, ...

use num::complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos g = 7, n = 9 coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Distance from `z` to the nearest non-positive integer.
pub fn pole_distance(z: Complex64) -> f64 {
    if z.re > 0.5 {
        return f64::INFINITY;
    }
    let k = z.re.round().min(0.0);
    (z - Complex64::new(k, 0.0)).norm()
}

/// ln Gamma(z), principal branch.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Reflection: ln Gamma(z) = ln(pi / sin(pi z)) - ln Gamma(1 - z).
        let pi_z = Complex64::new(PI, 0.0) * z;
        return (Complex64::new(PI, 0.0) / pi_z.sin()).ln() - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let zm1 = z - Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += Complex64::new(*c, 0.0) / (zm1 + Complex64::new(i as f64, 0.0));
    }
    let t = zm1 + Complex64::new(LANCZOS_G + 0.5, 0.0);
    let half_log_two_pi = 0.5 * (2.0 * PI).ln();
    Complex64::new(half_log_two_pi, 0.0) + (zm1 + Complex64::new(0.5, 0.0)) * t.ln() - t + acc.ln()
}

/// Gamma(z) with a configurable pole guard.
pub fn gamma_guarded(z: Complex64, eps: f64) -> Result<Complex64> {
    if pole_distance(z) < eps {
        return Err(Error::PoleProximity {
            what: "Gamma".into(),
            eps,
        });
    }
    Ok(ln_gamma(z).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn integer_values() {
        for (z, expect) in [(1.0, 1.0), (2.0, 1.0), (3.0, 2.0), (6.0, 120.0)] {
            let g = gamma_guarded(re(z), 1e-12).unwrap();
            assert!((g - re(expect)).norm() < 1e-10, "Gamma({}) = {}", z, g);
        }
    }

    #[test]
    fn half_integer_values() {
        let sqrt_pi = PI.sqrt();
        let g_half = gamma_guarded(re(0.5), 1e-12).unwrap();
        assert!((g_half - re(sqrt_pi)).norm() < 1e-12);
        // Gamma(3/2) = sqrt(pi)/2
        let g_3half = gamma_guarded(re(1.5), 1e-12).unwrap();
        assert!((g_3half - re(sqrt_pi / 2.0)).norm() < 1e-12);
    }

    #[test]
    fn reflection_negative_arguments() {
        // Gamma(-0.5) = -2 sqrt(pi)
        let g = gamma_guarded(re(-0.5), 1e-12).unwrap();
        assert!((g - re(-2.0 * PI.sqrt())).norm() < 1e-10);
        // Gamma(-1.5) = 4 sqrt(pi) / 3
        let g2 = gamma_guarded(re(-1.5), 1e-12).unwrap();
        assert!((g2 - re(4.0 * PI.sqrt() / 3.0)).norm() < 1e-10);
    }

    #[test]
    fn recurrence_complex() {
        let z = Complex64::new(0.3, 1.7);
        let g1 = ln_gamma(z + re(1.0)).exp();
        let g0 = ln_gamma(z).exp();
        assert!((g1 - z * g0).norm() < 1e-10 * g1.norm().max(1.0));
    }

    #[test]
    fn pole_guard() {
        assert!(matches!(
            gamma_guarded(re(-2.0 + 1e-12), 1e-8),
            Err(Error::PoleProximity { .. })
        ));
        assert!(gamma_guarded(re(-2.5), 1e-8).is_ok());
    }
}
