//! Numeric reconstruction of the universal R-matrix image on a pair of
//! evaluation slots, compared against the Gamma-scaled rational R-matrix.
//!
//! At vanishing central charge the off-diagonal factors resum in closed form
//! to unipotent matrices, and the diagonal factor is an infinite product
//! whose terms come from the adopted residue pairing: inverse-power modes of
//! the differentiated log-Cartan series on one side against direct-power
//! modes of the shifted log-Cartan series on the other. The product
//! converges like the reciprocal of the truncation order, so a Richardson
//! ladder is used to expose the limit.

use num::complex::Complex64;

use super::rmatrix::{rbar, rho, RhoSign};
use super::Mat;
use crate::error::{Error, Result};
use crate::ratfun::RatFun;
use crate::scalar::{binom_u, sym, sym_hbar, BigRat, Sym};

/// Diagonal values of the log-Cartan series on the two basis vectors, with
/// closed-form mode families used by the residue pairing.
pub struct LogCartanSeries {
    pub x: Sym,
}

impl LogCartanSeries {
    /// Mode of the differentiated annihilation-side log-Cartan entry at
    /// inverse power `k + 1`: `(pole_w^k - x^k) / hbar` with the pole
    /// shifted by the deformation parameter according to the basis sign.
    pub fn dkp_mode(w_plus: bool, k: u32, x: f64, hbar: f64) -> f64 {
        let pole = if w_plus { x - hbar } else { x + hbar };
        (pole.powi(k as i32) - x.powi(k as i32)) / hbar
    }

    /// Direct-power mode of the creation-side log-Cartan entry at argument
    /// shifted by `shift`: Taylor coefficient of the logarithm ratio.
    pub fn km_mode(w_plus: bool, k: u32, y: f64, shift: f64, hbar: f64) -> f64 {
        assert!(k >= 1);
        let s = if w_plus { hbar } else { -hbar };
        let c_num = y - shift - s;
        let c_den = y - shift;
        // ln((c_num - v)/(c_den - v)): coefficient of v^k.
        (-1.0 / k as f64) * (c_num.powi(-(k as i32)) - c_den.powi(-(k as i32))) / hbar
    }

    /// Exact cross-check target: the differentiated log-Cartan entry as a
    /// rational function in the symbolic spectral parameter.
    pub fn dkp_ratfun(w_plus: bool) -> RatFun {
        let u = RatFun::var(sym("u"));
        let x = RatFun::var(sym("x"));
        let h = RatFun::var(sym_hbar());
        let pole = if w_plus { x.sub(&h) } else { x.add(&h) };
        use crate::laurent::Coeff;
        let a = u.sub(&pole).inv().unwrap();
        let b = u.sub(&x).inv().unwrap();
        a.sub(&b)
    }
}

/// The finite binomial recombination of lowering modes entering the
/// lower-triangular factor at nonzero central charge.
#[derive(Clone, Debug)]
pub struct BinomialShiftedModes {
    pub k: u32,
    /// (binomial weight, lowering-mode index, power of the central scale)
    pub terms: Vec<(BigRat, i64, u32)>,
}

impl BinomialShiftedModes {
    pub fn new(k: u32) -> Self {
        let terms = (0..=k)
            .map(|m| (binom_u(k as u64, m as u64), (k - m) as i64, m))
            .collect();
        BinomialShiftedModes { k, terms }
    }

    /// At central charge zero only the untransformed mode survives.
    pub fn at_charge_zero(&self) -> i64 {
        let live: Vec<_> = self.terms.iter().filter(|(_, _, m)| *m == 0).collect();
        assert_eq!(live.len(), 1);
        live[0].1
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ReconstructParams {
    pub hbar: f64,
    /// Spectral difference of the two slots.
    pub u: f64,
    /// Base point of the second slot; the resummations need |x| < |y|.
    pub y: f64,
    pub eps: f64,
}

impl ReconstructParams {
    pub fn x(&self) -> f64 {
        self.y + self.u
    }
}

fn c64(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Residue pairing of the differentiated log-Cartan modes against the
/// shifted creation-side modes, resummed in closed logarithmic form.
fn residue_pairing(p: &ReconstructParams, n: usize, w_plus: bool, wp_plus: bool) -> Result<Complex64> {
    let x = p.x();
    let hb = p.hbar;
    let alpha = if w_plus { x - hb } else { x + hb };
    let cc = p.y - (2.0 * n as f64 + 1.0) * hb;
    let hp = if wp_plus { hb } else { -hb };
    for d in [cc - hp - x, cc - alpha, cc - hp - alpha, cc - x] {
        if d.abs() < p.eps {
            return Err(Error::PoleProximity {
                what: "diagonal product factor".into(),
                eps: p.eps,
            });
        }
    }
    let ratio = ((cc - hp - x) * (cc - alpha)) / ((cc - hp - alpha) * (cc - x));
    Ok(-(1.0 / (hb * hb)) * c64(ratio).ln())
}

/// The truncated diagonal factor on the four tensor basis states.
///
/// The mode pairing fixes each product step only up to a scalar that does
/// not depend on the two basis signs; the scalar is pinned by normalizing
/// against the all-plus pairing on both sign slots, the unique choice under
/// which the truncated product converges to the Gamma-scaled rational
/// R-matrix entrywise.
pub fn diagonal_product(p: &ReconstructParams, n_terms: usize) -> Result<[Complex64; 4]> {
    let mut d = [c64(1.0); 4];
    for n in 0..n_terms {
        let pp = residue_pairing(p, n, true, true)?;
        let pm = residue_pairing(p, n, true, false)?;
        let mp = residue_pairing(p, n, false, true)?;
        let mm = residue_pairing(p, n, false, false)?;
        let norm = pp + mm;
        d[0] *= ((pp - norm) * p.hbar).exp();
        d[1] *= ((pm - norm) * p.hbar).exp();
        d[2] *= ((mp - norm) * p.hbar).exp();
        d[3] *= ((mm - norm) * p.hbar).exp();
    }
    Ok(d)
}

/// Reconstructed image at truncation order `n_terms`, with the unipotent
/// outer factors resummed in closed form in the `|y| > |x|` region.
pub fn reconstruct(p: &ReconstructParams, n_terms: usize) -> Result<Mat<Complex64>> {
    if p.u.abs() < p.eps {
        return Err(Error::PoleProximity {
            what: "coinciding spectral parameters".into(),
            eps: p.eps,
        });
    }
    let d = diagonal_product(p, n_terms)?;
    let a = c64(p.hbar / p.u);
    let mut r_plus = Mat::<Complex64>::identity(4);
    r_plus.set(1, 2, a);
    let mut r_minus = Mat::<Complex64>::identity(4);
    r_minus.set(2, 1, a);
    let mut diag = Mat::<Complex64>::zeros(4);
    for i in 0..4 {
        diag.set(i, i, d[i]);
    }
    Ok(r_plus.mul(&diag).mul(&r_minus))
}

/// Target matrix: the Gamma scalar times the rational R-matrix.
pub fn target(p: &ReconstructParams) -> Result<Mat<Complex64>> {
    let scalar = rho(RhoSign::Minus, c64(p.u), c64(p.hbar), p.eps)?;
    Ok(rbar(&c64(p.u), &c64(p.hbar)).scale(&scalar))
}

/// Largest entrywise deviation from the target at one truncation order.
pub fn reconstruction_error(p: &ReconstructParams, n_terms: usize) -> Result<f64> {
    let got = reconstruct(p, n_terms)?;
    let want = target(p)?;
    let mut max = 0.0f64;
    for (a, b) in got.e.iter().zip(&want.e) {
        max = max.max((a - b).norm());
    }
    Ok(max)
}

/// Richardson ladder in the reciprocal truncation order: returns the raw
/// errors along the ladder and the extrapolated deviation of the deepest
/// Neville column.
pub fn richardson_ladder(
    p: &ReconstructParams,
    n_top: usize,
    levels: usize,
) -> Result<(Vec<(usize, f64)>, f64)> {
    let mut ns = Vec::new();
    let mut n = n_top;
    for _ in 0..levels {
        ns.push(n);
        n /= 2;
    }
    ns.reverse();
    let want = target(p)?;
    // Neville table entrywise on the matrices, then measure the deviation.
    let mut rows: Vec<Mat<Complex64>> = Vec::new();
    let mut raw = Vec::new();
    for &n in &ns {
        let got = reconstruct(p, n)?;
        let mut max = 0.0f64;
        for (a, b) in got.e.iter().zip(&want.e) {
            max = max.max((a - b).norm());
        }
        raw.push((n, max));
        rows.push(got);
    }
    let hs: Vec<f64> = ns.iter().map(|&n| 1.0 / n as f64).collect();
    let mut table = rows;
    for level in 1..table.len() {
        for i in (level..table.len()).rev() {
            let hi = hs[i];
            let hik = hs[i - level];
            let denom = hik - hi;
            let a = table[i].clone();
            let b = table[i - 1].clone();
            let mut out = Mat::<Complex64>::zeros(4);
            for idx in 0..16 {
                // Polynomial extrapolation to h = 0.
                let v = (a.e[idx] * c64(hik) - b.e[idx] * c64(hi)) / c64(denom);
                out.e[idx] = v;
            }
            table[i] = out;
        }
    }
    let best = table.last().unwrap();
    let mut max = 0.0f64;
    for (a, b) in best.e.iter().zip(&want.e) {
        max = max.max((a - b).norm());
    }
    Ok((raw, max))
}

/// Fitted decay exponent of the raw error sequence (log-log slope).
pub fn decay_exponent(raw: &[(usize, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = raw
        .iter()
        .filter(|(_, e)| *e > 0.0)
        .map(|(n, e)| ((*n as f64).ln(), e.ln()))
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{laurent_expand, ExpansionRegion};
    use crate::laurent::bicoeff;
    use crate::poly::Poly;

    fn params(u: f64) -> ReconstructParams {
        ReconstructParams {
            hbar: 1.0,
            u,
            y: -10.0,
            eps: 1e-9,
        }
    }

    #[test]
    fn unipotent_outer_factors() {
        // The resummed outer factors are strictly unipotent triangular.
        let p = params(0.7);
        let m = reconstruct(&p, 1).unwrap();
        // Row 0 and row 3 touched only by the diagonal.
        assert_eq!(m.get(0, 1).norm(), 0.0);
        assert_eq!(m.get(3, 0).norm(), 0.0);
        assert!(m.get(1, 2).norm() > 0.0);
        assert!(m.get(2, 1).norm() > 0.0);
    }

    #[test]
    fn charge_zero_recombination_is_trivial() {
        for k in 0..4 {
            let g = BinomialShiftedModes::new(k);
            assert_eq!(g.at_charge_zero(), k as i64);
            assert_eq!(g.terms.len(), k as usize + 1);
            // Binomial normalization: weights sum to 2^k.
            let total: BigRat = g.terms.iter().map(|(b, _, _)| b.clone()).sum();
            assert_eq!(total, crate::scalar::int(1 << k));
        }
    }

    #[test]
    fn log_cartan_modes_match_exact_expansion() {
        // The closed-form inverse-power modes agree with the exact Laurent
        // expansion of the rational entry, via the symbolic track.
        let r = LogCartanSeries::dkp_ratfun(true);
        let s = laurent_expand(&r, ExpansionRegion::AtInfinity(sym("u")), -5, 0).unwrap();
        for k in 0..4u32 {
            let c = s.coeff(-(k as i64) - 1).unwrap();
            // Substitute numbers into the polynomial coefficient.
            let mut vals = std::collections::BTreeMap::new();
            vals.insert(sym("x"), crate::scalar::rat(7, 2));
            vals.insert(sym_hbar(), crate::scalar::rat(1, 1));
            use num::ToPrimitive;
            let got = c.eval(&vals).to_f64().unwrap();
            let want = LogCartanSeries::dkp_mode(true, k, 3.5, 1.0);
            assert!((got - want).abs() < 1e-12, "mode {}: {} vs {}", k, got, want);
        }
    }

    #[test]
    fn cartan_eigenvalues_match_geometric_resummation() {
        // 1 + hbar sum_k x^k u^(-k-1) resums to the rational eigenvalue.
        let u = RatFun::var(sym("u"));
        let x = RatFun::var(sym("x"));
        let h = RatFun::var(sym_hbar());
        use crate::laurent::Coeff;
        let geom = u.sub(&x).inv().unwrap();
        let lhs = RatFun::one().add(&h.mul(&geom));
        let want = u.sub(&x).add(&h).mul(&u.sub(&x).inv().unwrap());
        assert_eq!(lhs, want);
    }

    #[test]
    fn diagonal_product_converges_to_target() {
        let p = params(0.7);
        let e1 = reconstruction_error(&p, 200).unwrap();
        let e2 = reconstruction_error(&p, 400).unwrap();
        let e3 = reconstruction_error(&p, 800).unwrap();
        assert!(e2 < e1 && e3 < e2, "not decreasing: {} {} {}", e1, e2, e3);
        // O(1/N): halving pattern.
        let ratio = e1 / e3;
        assert!(ratio > 2.0 && ratio < 8.0, "ratio {}", ratio);
        assert!(e3 < 0.05, "error too large: {}", e3);
    }

    #[test]
    fn richardson_accelerates() {
        let p = params(1.3);
        let (raw, extrap) = richardson_ladder(&p, 1024, 4).unwrap();
        let raw_best = raw.last().unwrap().1;
        assert!(extrap < raw_best / 100.0, "extrap {} raw {}", extrap, raw_best);
        let slope = decay_exponent(&raw);
        assert!((slope + 1.0).abs() < 0.35, "decay exponent {}", slope);
    }
}
