//! Convergence-controlled verification of the intertwiner exchange
//! equations.
//!
//! Each side of an equation is brought to a single normal-ordered operator
//! by the resummed composition, then both sides are compared entry by entry
//! on the truncated module. The annihilation-product truncation leaves an
//! order-one-over-N mismatch in the creation-side and raising-current
//! equations (the annihilation-side equation closes identically at every
//! truncation), so residuals are recorded as sequences in the product depth
//! together with a fitted decay rate and a Richardson-extrapolated limit.

use num::complex::Complex64;
use serde::Serialize;

use super::{build_phi_minus, compose, op_e_numeric, op_h_minus_numeric, op_h_plus_numeric};
use crate::error::{Error, Result};
use crate::fock::{enumerate_basis, Cutoffs};

fn c64(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PhiEquation {
    HPlus,
    HMinus,
    ECurrent,
}

impl PhiEquation {
    pub fn id(&self) -> &'static str {
        match self {
            PhiEquation::HPlus => "phi-eq-h+",
            PhiEquation::HMinus => "phi-eq-h-",
            PhiEquation::ECurrent => "phi-eq-e",
        }
    }
}

/// Residual trace of one equation at one sample point.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub equation: String,
    pub z: f64,
    pub u: f64,
    pub hbar: f64,
    /// (product depth, energy ceiling, max relative residual)
    pub rows: Vec<(u32, u32, f64)>,
    /// Fitted log-log decay exponent of the residual in the product depth
    /// (meaningful only when the residual is above floating noise).
    pub decay: f64,
    /// Richardson extrapolation of the residual sequence to infinite depth.
    pub extrapolated: f64,
    /// Contractions evaluated by analytic continuation of the kernel.
    pub continued_contractions: u32,
}

impl ConvergenceReport {
    pub fn final_residual(&self) -> f64 {
        self.rows.last().map(|r| r.2).unwrap_or(f64::NAN)
    }

    /// Residuals decrease monotonically within floating noise.
    pub fn monotone(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].2 <= w[0].2 * (1.0 + 1e-9) + 1e-10)
    }
}

/// Maximum relative deviation of two sparse numeric operators on entries
/// inside the energy margin.
fn relative_residual(
    a: &crate::fock::SparseOp<Complex64>,
    b: &crate::fock::SparseOp<Complex64>,
    cut: &Cutoffs,
) -> f64 {
    let mut max = 0.0f64;
    let floor = 1e-30;
    for s in enumerate_basis(cut, None) {
        if s.energy() + cut.margin > cut.e_max {
            continue;
        }
        let ca = a.column(&s);
        let cb = b.column(&s);
        let diff = ca.sub(&cb);
        for (t, v) in diff.iter() {
            if t.energy() + cut.margin > cut.e_max {
                continue;
            }
            let scale = ca.coeff(t).norm().max(cb.coeff(t).norm()).max(floor);
            max = max.max(v.norm() / scale);
        }
    }
    max
}

/// Verifies one exchange equation at one sample point over a ladder of
/// product depths.
pub fn verify_phi_equation(
    eq: PhiEquation,
    z: f64,
    u: f64,
    hbar: f64,
    cut: &Cutoffs,
    depths: &[u32],
    eps: f64,
) -> Result<ConvergenceReport> {
    for d in [u - z, u - z - hbar, u - z - 2.0 * hbar] {
        if d.abs() < eps {
            return Err(Error::PoleProximity {
                what: "equation structure ratio".into(),
                eps,
            });
        }
    }
    let mut rows = Vec::new();
    let mut continued = 0;
    for &n in depths {
        let phi = build_phi_minus(z, hbar, n, eps)?;
        let (lhs, rhs) = match eq {
            PhiEquation::HPlus => {
                let h = op_h_plus_numeric(u, hbar);
                let ratio = c64((u - z - 2.0 * hbar) / (u - z - hbar));
                let l = compose(&phi, &h, eps)?;
                let mut r = compose(&h, &phi, eps)?;
                r.scalar *= ratio;
                (l, r)
            }
            PhiEquation::HMinus => {
                let h = op_h_minus_numeric(u, hbar);
                let ratio = c64((u - z - hbar) / (u - z));
                let l = compose(&phi, &h, eps)?;
                let mut r = compose(&h, &phi, eps)?;
                r.scalar *= ratio;
                (l, r)
            }
            PhiEquation::ECurrent => {
                let e = op_e_numeric(u, hbar);
                let l = compose(&phi, &e, eps)?;
                let r = compose(&e, &phi, eps)?;
                (l, r)
            }
        };
        continued = continued
            .max(lhs.continued_contractions)
            .max(rhs.continued_contractions);
        let res = relative_residual(&lhs.to_sparse(cut), &rhs.to_sparse(cut), cut);
        rows.push((n, cut.e_max, res));
    }
    let decay = fitted_decay(&rows);
    let extrapolated = richardson(&rows);
    Ok(ConvergenceReport {
        equation: eq.id().into(),
        z,
        u,
        hbar,
        rows,
        decay,
        extrapolated,
        continued_contractions: continued,
    })
}

fn fitted_decay(rows: &[(u32, u32, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|(_, _, e)| *e > 1e-13)
        .map(|(n, _, e)| ((*n as f64).ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Iterated Richardson extrapolation of the residual sequence in the
/// reciprocal depth, clamped at zero from below.
fn richardson(rows: &[(u32, u32, f64)]) -> f64 {
    let mut hs: Vec<f64> = rows.iter().map(|(n, _, _)| 1.0 / (*n as f64 + 1.0)).collect();
    let mut vs: Vec<f64> = rows.iter().map(|(_, _, e)| *e).collect();
    let m = vs.len();
    for level in 1..m {
        for i in (level..m).rev() {
            let denom = hs[i - level] - hs[i];
            vs[i] = (vs[i] * hs[i - level] - vs[i - 1] * hs[i]) / denom;
        }
    }
    // keep everything after the last level
    let _ = &mut hs;
    vs.last().copied().unwrap_or(f64::NAN).abs()
}

/// Closed-form prediction of the creation-side equation mismatch at finite
/// product depth: the telescoped contraction against the structure ratio.
pub fn predicted_h_minus_residual(z: f64, u: f64, hbar: f64, n: u32) -> f64 {
    let w = z - u;
    (hbar / (w + hbar - 2.0 * (n as f64 + 1.0) * hbar)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cut() -> Cutoffs {
        Cutoffs::new(6, 6, -8, 6, 2)
    }

    #[test]
    fn h_plus_equation_is_exact_at_any_depth() {
        // The annihilation-side equation closes identically: the ratio, the
        // contraction scalar and the weight-factor crossing cancel exactly.
        let r =
            verify_phi_equation(PhiEquation::HPlus, 0.3, 5.0, 1.0, &cut(), &[5, 20], 1e-9)
                .unwrap();
        for (_, _, e) in &r.rows {
            assert!(*e < 1e-12, "residual {}", e);
        }
    }

    #[test]
    fn h_minus_residual_matches_telescoped_prediction() {
        let z = 0.3;
        let u = 5.0;
        let depths = [25u32, 50, 100, 200];
        let r = verify_phi_equation(PhiEquation::HMinus, z, u, 1.0, &cut(), &depths, 1e-9)
            .unwrap();
        for ((n, _, got), want) in r
            .rows
            .iter()
            .zip(depths.iter().map(|&n| predicted_h_minus_residual(z, u, 1.0, n)))
        {
            assert!(
                (got - want).abs() / want < 0.05,
                "depth {}: got {} want {}",
                n,
                got,
                want
            );
        }
        assert!(r.monotone());
        // O(1/N) decay.
        assert!((r.decay + 1.0).abs() < 0.2, "decay {}", r.decay);
        // Richardson pushes well below the raw tail.
        assert!(r.extrapolated < r.final_residual() / 50.0);
    }

    #[test]
    fn e_current_residual_decays_like_reciprocal_depth() {
        let r = verify_phi_equation(
            PhiEquation::ECurrent,
            0.3,
            4.0,
            1.0,
            &cut(),
            &[25, 50, 100, 200],
            1e-9,
        )
        .unwrap();
        assert!(r.monotone());
        assert!((r.decay + 1.0).abs() < 0.3, "decay {}", r.decay);
    }

    #[test]
    fn vacuum_row_closed_form() {
        // The creation-side equation on the vacuum row is the scalar
        // telescoped product against the structure ratio.
        let z = 0.3;
        let u = 5.0;
        let hbar = 1.0;
        let n = 50u32;
        let c = cut();
        let phi = build_phi_minus(z, hbar, n, 1e-9).unwrap();
        let h = op_h_minus_numeric(u, hbar);
        let lhs = compose(&phi, &h, 1e-9).unwrap();
        let col = lhs.to_sparse(&c).column(&crate::fock::FockState::vacuum(0));
        let got = col.coeff(&crate::fock::FockState::vacuum(1));
        let w = z - u;
        let nn = n as f64 + 1.0;
        let want = ((w + hbar) / w) * ((w - 2.0 * nn * hbar) / (w + hbar - 2.0 * nn * hbar));
        assert!(
            (got - c64(want)).norm() < 1e-12,
            "got {} want {}",
            got,
            want
        );
    }
}
