//! The regularized type-one intertwiner component and the numeric
//! normal-ordered operator calculus it is verified with.
//!
//! Every operator here is a normal-ordered exponential with numeric
//! coefficients built from geometric families: the exponent coefficient of a
//! boson mode is a signed sum of powers of complex base points. Composition
//! is done by resummed normal ordering: crossing an annihilation exponential
//! past a creation exponential produces the closed-form contraction scalar
//! built from logarithms of base-point ratios, which stays meaningful (by
//! analytic continuation of the pairing kernel) where the energy-expanded
//! product would diverge. Matrix elements on the truncated module are then
//! finite sums.

pub mod verify;

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{enumerate_basis, Cutoffs, FockState, FockVector, SparseOp};
use crate::gammafn::{gamma_guarded, pole_distance};
use crate::scalar::binom_u;

pub use verify::{verify_phi_equation, ConvergenceReport, PhiEquation};

fn c64(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// One geometric family in an exponent: `sign * base^(+-n)`.
#[derive(Clone, Copy, Debug)]
pub struct ExpTerm {
    pub sign: f64,
    pub base: Complex64,
}

/// A normal-ordered exponential operator with numeric coefficients.
#[derive(Clone, Debug)]
pub struct NoVertexOp {
    pub name: String,
    pub scalar: Complex64,
    /// Coefficient of `a_{-n}/n` is `sum sign * base^n`.
    pub cre: Vec<ExpTerm>,
    /// Coefficient of `a_{n}/n` is `sum sign * base^(-n)`.
    pub ann: Vec<ExpTerm>,
    /// Weight shift.
    pub charge: i64,
    /// Diagonal factor `weight_base^m` on incoming weight `m`.
    pub weight_base: Complex64,
    /// Contractions evaluated outside the geometric region of the pairing
    /// kernel (defined by analytic continuation).
    pub continued_contractions: u32,
}

impl NoVertexOp {
    fn cre_coeff(&self, n: u32) -> Complex64 {
        self.cre
            .iter()
            .map(|t| c64(t.sign) * t.base.powi(n as i32))
            .sum()
    }

    fn ann_coeff(&self, n: u32) -> Complex64 {
        self.ann
            .iter()
            .map(|t| c64(t.sign) * t.base.powi(-(n as i32)))
            .sum()
    }

    /// Applies the operator to one basis state on the truncated module.
    pub fn apply(&self, state: &FockState, cut: &Cutoffs) -> FockVector<Complex64> {
        let mut out = FockVector::zero();
        let m_out = state.m + self.charge;
        if !cut.weight_in_window(m_out) {
            return out;
        }
        let base = self.scalar * self.weight_base.powi(state.m as i32);

        // Annihilation subsets.
        let counts = state.part_counts();
        let mut choices: Vec<(FockState, Complex64)> = vec![(state.with_weight(m_out), base)];
        for (n, r) in counts {
            let dn = self.ann_coeff(n);
            let mut next = Vec::new();
            for (st, coeff) in &choices {
                next.push((st.clone(), *coeff));
                if dn.norm() > 0.0 {
                    let mut cur = st.clone();
                    let mut pw = *coeff;
                    for t in 1..=r {
                        cur = cur.with_part_removed(n).expect("part present");
                        pw *= dn;
                        use num::ToPrimitive;
                        let b = binom_u(r as u64, t as u64).to_f64().unwrap();
                        next.push((cur.clone(), pw * c64(b)));
                    }
                }
            }
            choices = next;
        }

        // Creation partitions.
        for (st, coeff) in choices {
            let room = cut.e_max - st.energy();
            for mu in crate::fock::partitions_up_to(room) {
                let mut val = coeff;
                let mut target = st.clone();
                let mut counts: std::collections::BTreeMap<u32, u32> = Default::default();
                for &n in &mu {
                    *counts.entry(n).or_insert(0) += 1;
                }
                for (&n, &q) in &counts {
                    let cn = self.cre_coeff(n);
                    let mut fact = 1.0;
                    for i in 1..=q as f64 as u32 {
                        fact *= (n as f64) * i as f64;
                    }
                    val *= cn.powi(q as i32) / c64(fact);
                    for _ in 0..q {
                        target = target.with_part_added(n);
                    }
                }
                out.add_term(target, val);
            }
        }
        out
    }

    /// Materializes the sparse matrix on the truncated basis.
    pub fn to_sparse(&self, cut: &Cutoffs) -> SparseOp<Complex64> {
        let mut op = SparseOp::new(self.name.clone(), self.charge);
        for s in enumerate_basis(cut, None) {
            let col = self.apply(&s, cut);
            if !col.is_zero() {
                op.map.insert(s, col);
            }
        }
        op
    }
}

/// Resummed normal-ordered composition `a * b` (apply `b` first). The
/// contraction of `a`'s annihilation exponent against `b`'s creation
/// exponent is the closed-form kernel; base-point collisions are poles.
pub fn compose(a: &NoVertexOp, b: &NoVertexOp, eps: f64) -> Result<NoVertexOp> {
    let mut tau = Complex64::new(0.0, 0.0);
    let mut continued = a.continued_contractions + b.continued_contractions;
    for d in &a.ann {
        for c in &b.cre {
            let ratio = c.base / d.base;
            if (c64(1.0) - ratio).norm() < eps {
                return Err(Error::PoleProximity {
                    what: format!("contraction of {} against {}", a.name, b.name),
                    eps,
                });
            }
            if ratio.norm() >= 1.0 {
                continued += 1;
            }
            // sum_n (c/d)^n / n = -ln(1 - c/d)
            tau += c64(-d.sign * c.sign) * (c64(1.0) - ratio).ln();
        }
    }
    let scalar = a.scalar * b.scalar * tau.exp() * a.weight_base.powi(b.charge as i32);
    let mut cre = b.cre.clone();
    cre.extend_from_slice(&a.cre);
    let mut ann = b.ann.clone();
    ann.extend_from_slice(&a.ann);
    Ok(NoVertexOp {
        name: format!("{}*{}", a.name, b.name),
        scalar,
        cre,
        ann,
        charge: a.charge + b.charge,
        weight_base: a.weight_base * b.weight_base,
        continued_contractions: continued,
    })
}

/// The weight +2 current at a numeric spectral point.
pub fn op_e_numeric(u: f64, hbar: f64) -> NoVertexOp {
    NoVertexOp {
        name: format!("e({})", u),
        scalar: c64(1.0),
        cre: vec![
            ExpTerm { sign: 1.0, base: c64(u - hbar) },
            ExpTerm { sign: 1.0, base: c64(u) },
        ],
        ann: vec![ExpTerm { sign: -1.0, base: c64(u) }],
        charge: 2,
        weight_base: c64(u),
        continued_contractions: 0,
    }
}

/// The annihilation-side Cartan current at a numeric spectral point.
pub fn op_h_plus_numeric(u: f64, hbar: f64) -> NoVertexOp {
    NoVertexOp {
        name: format!("h+({})", u),
        scalar: c64(1.0),
        cre: vec![],
        ann: vec![
            ExpTerm { sign: 1.0, base: c64(u - hbar) },
            ExpTerm { sign: -1.0, base: c64(u) },
        ],
        charge: 0,
        weight_base: c64(u / (u - hbar)),
        continued_contractions: 0,
    }
}

/// The creation-side Cartan current at a numeric spectral point.
pub fn op_h_minus_numeric(u: f64, hbar: f64) -> NoVertexOp {
    NoVertexOp {
        name: format!("h-({})", u),
        scalar: c64(1.0),
        cre: vec![
            ExpTerm { sign: 1.0, base: c64(u - hbar) },
            ExpTerm { sign: -1.0, base: c64(u + hbar) },
        ],
        ann: vec![],
        charge: 0,
        weight_base: c64(1.0),
        continued_contractions: 0,
    }
}

/// Builds the regularized intertwiner component: creation exponential at the
/// shifted point, half charge shift, Gamma-ratio weight scalars, and the
/// truncated annihilation product over the even lattice.
pub fn build_phi_minus(z: f64, hbar: f64, n_cut: u32, eps: f64) -> Result<NoVertexOp> {
    if hbar == 0.0 {
        return Err(Error::Config("deformation parameter must be nonzero".into()));
    }
    let mut ann = Vec::with_capacity(2 * (n_cut as usize + 1));
    for k in 0..=n_cut as i64 {
        let b1 = z - 2.0 * k as f64 * hbar;
        let b2 = z - hbar - 2.0 * k as f64 * hbar;
        if b1.abs() < eps || b2.abs() < eps {
            return Err(Error::PoleProximity {
                what: "intertwiner lattice point".into(),
                eps,
            });
        }
        ann.push(ExpTerm { sign: -1.0, base: c64(b1) });
        ann.push(ExpTerm { sign: 1.0, base: c64(b2) });
    }
    let half = c64(0.5) - c64(z / (2.0 * hbar));
    let full = -c64(z / (2.0 * hbar));
    if pole_distance(half) < eps {
        return Err(Error::PoleProximity {
            what: "Gamma ratio numerator".into(),
            eps,
        });
    }
    let gnum = gamma_guarded(half, eps)?;
    let gden = gamma_guarded(full, eps)?;
    let omega = c64(2.0 * hbar).sqrt() * gnum / gden;
    Ok(NoVertexOp {
        name: format!("Phi-({})", z),
        scalar: c64(1.0),
        cre: vec![ExpTerm { sign: 1.0, base: c64(z + hbar) }],
        ann,
        charge: 1,
        weight_base: omega,
        continued_contractions: 0,
    })
}

/// The derived component: the commutator of the intertwiner with the zeroth
/// lowering mode, evaluated on the truncated module.
pub fn build_phi_plus(
    phi: &NoVertexOp,
    f0: &SparseOp<Complex64>,
    cut: &Cutoffs,
) -> SparseOp<Complex64> {
    let phi_sp = phi.to_sparse(cut);
    let mut out = phi_sp.compose(f0).sub(&f0.compose(&phi_sp));
    out.name = "Phi+".into();
    out
}
