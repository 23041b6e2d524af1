//! Runners for every cataloged check id.

use std::collections::BTreeMap;

use num::complex::Complex64;

use super::{record_from_residual, Backend, CheckRecord, SuiteConfig};
use crate::error::{Error, Result};
use crate::eval;
use crate::fock::heisenberg::{heisenberg_act, Generator};
use crate::fock::shift::{conjugation, t_gamma, truncate_var_degree};
use crate::fock::{enumerate_basis, vertex, Cutoffs, FockVector};
use crate::intertwiner;
use crate::poly::Poly;
use crate::scalar::sym;
use crate::yangian::{self, Residual};

fn c64(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn base_params(config: &SuiteConfig) -> BTreeMap<String, String> {
    let c = &config.cutoffs;
    BTreeMap::from([
        ("e_max".into(), c.e_max.to_string()),
        ("m_bound".into(), c.m_bound.to_string()),
        ("modes".into(), format!("[{}, {}]", c.k_lo, c.k_hi)),
        ("u_window".into(), format!("[{}, {}]", c.u_lo, c.u_hi)),
    ])
}

fn skipped(id: &str, why: &str) -> CheckRecord {
    CheckRecord {
        id: id.into(),
        params: BTreeMap::from([("reason".into(), why.into())]),
        status: "skipped".into(),
        max_residual: "0".into(),
        trusted_entries: 0,
        truncation_events: 0,
        failures: vec![],
        details: None,
    }
}

pub fn run_check(id: &str, config: &SuiteConfig) -> Result<CheckRecord> {
    let info = super::catalog()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.into()))?;
    if info.backend == Backend::Numeric && config.backend == Backend::Exact {
        return Ok(skipped(id, "numeric check under the exact backend"));
    }
    if info.backend == Backend::Exact && config.backend == Backend::Numeric {
        return Ok(skipped(id, "exact check under the numeric backend"));
    }
    let cut = config.cutoffs.cutoffs();
    let cc = &config.cutoffs;
    let residual: (Residual, Option<serde_json::Value>) = match id {
        "heis" => verify_heisenberg(&cut).into_rec(),
        "phi-consistency" => verify_phi_consistency(&cut).into_rec(),
        "ee" | "ff" | "h+e" | "h-e" | "h+f" | "h-f" | "h+h-" | "h+h+" | "h-h-" => {
            let ex = yangian::relations::find_exchange(id)
                .ok_or_else(|| Error::UnknownCheck(id.into()))?;
            yangian::relations::verify_exchange(&ex, &cut, cc.k_lo, cc.k_hi, cc.h_depth)?
                .into_rec()
        }
        "ef-delta" => yangian::ef_delta::verify_ef_delta(&cut, cc.k_lo, cc.k_hi)?.into_rec(),
        "d-cov" => yangian::dcov::verify_d_covariance(
            &cut,
            cc.k_lo,
            cc.k_hi,
            cc.h_depth,
            cc.gamma_degree,
        )?
        .into_rec(),
        "shift-aut" => verify_shift_automorphism(&cut, cc.gamma_degree).into_rec(),
        "eval-modes" => eval::relations::verify_defining_modes_eval(cc.k_lo - 1, cc.k_hi + 1)?.into_rec(),
        "ybe-pure+" => eval::ybe::check_ybe(eval::ybe::YbeKind::PurePlus)?.into_rec(),
        "ybe-pure-" => eval::ybe::check_ybe(eval::ybe::YbeKind::PureMinus)?.into_rec(),
        "ybe-mixed" => eval::ybe::check_ybe(eval::ybe::YbeKind::Mixed)?.into_rec(),
        "ybe-sampled" => eval::ybe::check_ybe_sampled(config.trials, config.seed)?.into_rec(),
        "coproduct-hom" => eval::coproduct::verify_coproduct_hom(cc.k_lo, cc.k_hi)?.into_rec(),
        "coproduct-intertwine" => {
            eval::coproduct::verify_coproduct_intertwine(cc.k_lo, cc.k_hi)?.into_rec()
        }
        "pairing" => eval::pairing::pairing_spotcheck()?.into_rec(),
        "rho-anchor" => verify_rho_anchor(&config.numeric()).into_rec(),
        "ur-reconstruct" => verify_ur_reconstruct(&config.numeric())?.into_rec(),
        "phi-eq-h+" => verify_phi_eq(intertwiner::PhiEquation::HPlus, config, &cut)?,
        "phi-eq-h-" => verify_phi_eq(intertwiner::PhiEquation::HMinus, config, &cut)?,
        "phi-eq-e" => verify_phi_eq(intertwiner::PhiEquation::ECurrent, config, &cut)?,
        other => return Err(Error::UnknownCheck(other.into())),
    };
    let mut params = base_params(config);
    if info.backend == Backend::Numeric {
        let n = config.numeric();
        params.insert("hbar".into(), n.hbar.to_string());
        params.insert("tolerance".into(), format!("{:e}", n.tolerance));
    }
    let mut record = record_from_residual(&residual.0, params);
    record.details = residual.1;
    Ok(record)
}

/// Boson brackets and charge bookkeeping as operator identities on all
/// sufficiently low states.
pub fn verify_heisenberg(cut: &Cutoffs) -> Residual {
    let mut res = Residual::new("heis");
    let basis = enumerate_basis(cut, None);
    let modes: Vec<i64> = (1..=cut.e_max.min(3) as i64)
        .flat_map(|n| [n, -n])
        .collect();
    for s in &basis {
        let v: FockVector<Poly> = FockVector::basis(s.clone());
        for &n in &modes {
            for &m in &modes {
                let budget = n.unsigned_abs() + m.unsigned_abs();
                if s.energy() as u64 + budget > cut.e_max as u64 {
                    res.flagged += 1;
                    continue;
                }
                let (nm, _) = heisenberg_act(Generator::A(m), &v, cut);
                let (nm, _) = heisenberg_act(Generator::A(n), &nm, cut);
                let (mn, _) = heisenberg_act(Generator::A(n), &v, cut);
                let (mn, _) = heisenberg_act(Generator::A(m), &mn, cut);
                let mut want = FockVector::zero();
                if n + m == 0 {
                    want.add_term(s.clone(), Poly::int(n));
                }
                let diff = nm.sub(&mn).sub(&want);
                res.comparisons += 1;
                if !diff.is_zero() {
                    res.failures
                        .push(format!("[a_{}, a_{}] on {}", n, m, s));
                }
            }
            // weight reader commutes with every nonzero mode
            if s.energy() as u64 + n.unsigned_abs() <= cut.e_max as u64 {
                let (pa, _) = heisenberg_act(Generator::A(n), &v, cut);
                let (pa, _) = heisenberg_act(Generator::P, &pa, cut);
                let (ap, _) = heisenberg_act(Generator::P, &v, cut);
                let (ap, _) = heisenberg_act(Generator::A(n), &ap, cut);
                res.comparisons += 1;
                if !pa.sub(&ap).is_zero() {
                    res.failures.push(format!("[p, a_{}] on {}", n, s));
                }
            }
        }
        // [p, charge raiser] = 2 * raiser
        if cut.weight_in_window(s.m + 2) {
            let (e2, _) = heisenberg_act(Generator::ChargeShift(2), &v, cut);
            let (pe, _) = heisenberg_act(Generator::P, &e2, cut);
            let (p, _) = heisenberg_act(Generator::P, &v, cut);
            let (ep, _) = heisenberg_act(Generator::ChargeShift(2), &p, cut);
            let diff = pe.sub(&ep).sub(&e2.scale(&Poly::int(2)));
            res.comparisons += 1;
            if !diff.is_zero() {
                res.failures.push(format!("[p, e^alpha] on {}", s));
            }
        }
    }
    res
}

/// The compact boson-factor presentation reproduces the direct
/// normal-ordered currents, state by state on the shared window.
pub fn verify_phi_consistency(cut: &Cutoffs) -> Residual {
    let mut res = Residual::new("phi-consistency");
    let u = sym("u");
    let wide_lo = cut.u_lo - 2 * cut.e_max as i64 - 2;
    let wide_hi = cut.u_hi + 2 * cut.e_max as i64 + 2;
    // (direct op, factor chain applied right to left)
    let cases: Vec<(vertex::VertexOp<Poly>, Vec<vertex::VertexOp<Poly>>)> = vec![
        (
            vertex::op_e(u, cut),
            vec![
                vertex::op_phi_plus_factor(u, 0, true, cut),
                vertex::op_phi_minus_factor(u, 0, false, cut),
                vertex::op_phi_minus_factor(u, -1, false, cut),
            ],
        ),
        (
            vertex::op_f(u, cut),
            vec![
                vertex::op_phi_plus_factor(u, 0, false, cut),
                vertex::op_phi_minus_factor(u, 0, true, cut),
                vertex::op_phi_minus_factor(u, 1, true, cut),
            ],
        ),
        (
            vertex::op_h_plus(u, cut),
            vec![
                vertex::op_phi_plus_factor(u, 0, true, cut),
                vertex::op_phi_plus_factor(u, -1, false, cut),
            ],
        ),
        (
            vertex::op_h_minus(u, cut),
            vec![
                vertex::op_phi_minus_factor(u, 1, true, cut),
                vertex::op_phi_minus_factor(u, -1, false, cut),
            ],
        ),
    ];
    for (direct, chain) in cases {
        for s in enumerate_basis(cut, None) {
            let Ok(lhs) = direct.apply(&s, cut, cut.u_lo, cut.u_hi) else {
                res.flagged += 1;
                continue;
            };
            if lhs.weight_escaped {
                res.flagged += 1;
                continue;
            }
            let mut sv = match chain[0].apply(&s, cut, wide_lo, wide_hi) {
                Ok(v) => v,
                Err(_) => {
                    res.flagged += 1;
                    continue;
                }
            };
            let mut failed = false;
            for op in &chain[1..] {
                match vertex::compose(op, &sv, cut, wide_lo, wide_hi, wide_lo, wide_hi) {
                    Ok(next) => sv = next,
                    Err(_) => {
                        failed = true;
                        break;
                    }
                }
            }
            if failed || sv.weight_escaped {
                res.flagged += 1;
                continue;
            }
            res.comparisons += 1;
            for (st, l) in &lhs.terms {
                let r = sv.terms.get(st);
                for p in cut.u_lo..=cut.u_hi {
                    let (Some(a), Some(b)) = (
                        l.coeff(p),
                        r.map(|rr| rr.coeff(p)).unwrap_or(Some(Poly::zero())),
                    ) else {
                        res.flagged += 1;
                        continue;
                    };
                    if a != b {
                        res.failures.push(format!(
                            "{} on {}: state {} power {}: {} vs {}",
                            direct.name, s, st, p, a, b
                        ));
                    }
                }
            }
        }
    }
    res
}

/// Conjugation formulas of the shift automorphism and preservation of the
/// boson brackets.
pub fn verify_shift_automorphism(cut: &Cutoffs, gmax: u32) -> Residual {
    let mut res = Residual::new("shift-aut");
    let g = sym("gamma");
    let t = t_gamma(g, false, cut, gmax);
    let tinv = t_gamma(g, true, cut, gmax);
    let basis = enumerate_basis(cut, None);

    let mut compare = |label: String,
                       lhs: &crate::fock::SparseOp<Poly>,
                       rhs: &crate::fock::SparseOp<Poly>,
                       middle_drop: u32| {
        let mut any = false;
        for s in &basis {
            let diff = lhs.column(s).sub(&rhs.column(s));
            let safe_input = s.energy() + gmax <= cut.e_max;
            for (tgt, c) in diff.iter() {
                let safe_output = tgt.energy() + middle_drop <= cut.e_max;
                if safe_input || safe_output {
                    let c = truncate_var_degree(c, g, gmax);
                    if !c.is_zero() {
                        res.failures
                            .push(format!("{} on {} -> {}: {}", label, s, tgt, c));
                    }
                    any = true;
                } else {
                    res.flagged += 1;
                }
            }
            if safe_input {
                any = true;
            }
        }
        if any {
            res.comparisons += 1;
        }
    };

    for n in 1..=cut.e_max.min(3) {
        let lhs = t
            .compose(&conjugation::boson(-(n as i64), cut))
            .compose(&tinv);
        let rhs = conjugation::expected_a_minus(n, g, cut, gmax);
        compare(format!("conj a_-{}", n), &lhs, &rhs, 0);
        let lhs = t
            .compose(&conjugation::boson(n as i64, cut))
            .compose(&tinv);
        let rhs = conjugation::expected_a_plus(n, g, cut);
        compare(format!("conj a_{}", n), &lhs, &rhs, n);
    }
    let lhs = t.compose(&conjugation::weight_reader(cut)).compose(&tinv);
    compare("conj p".into(), &lhs, &conjugation::weight_reader(cut), 0);
    let lhs = t.compose(&conjugation::charge2(cut)).compose(&tinv);
    let rhs = conjugation::expected_charge2(g, cut, gmax);
    compare("conj charge".into(), &lhs, &rhs, 0);

    // Brackets preserved by conjugation.
    let conj = |n: i64| t.compose(&conjugation::boson(n, cut)).compose(&tinv);
    for n in [-2i64, -1, 1, 2] {
        for m in [-2i64, -1, 1, 2] {
            let br = conj(n).commutator(&conj(m));
            let expect = if n + m == 0 { n } else { 0 };
            let mut checked = false;
            for s in &basis {
                let budget = gmax as u64 + n.unsigned_abs() + m.unsigned_abs();
                if s.energy() as u64 + budget > cut.e_max as u64 {
                    res.flagged += 1;
                    continue;
                }
                let mut want = FockVector::zero();
                if expect != 0 {
                    want.add_term(s.clone(), Poly::int(expect));
                }
                let diff = br.column(s).sub(&want);
                for (tgt, c) in diff.iter() {
                    let c = truncate_var_degree(c, g, gmax);
                    if !c.is_zero() {
                        res.failures.push(format!(
                            "bracket [{}, {}] on {} -> {}: {}",
                            n, m, s, tgt, c
                        ));
                    }
                }
                checked = true;
            }
            if checked {
                res.comparisons += 1;
            }
        }
    }
    res
}

/// Gamma scalar anchors: the closed value at the deformation point, the
/// sign-flip reciprocity, and the large-argument asymptotics.
pub fn verify_rho_anchor(n: &super::NumericConfig) -> Residual {
    use eval::rmatrix::{rho, RhoSign};
    let mut res = Residual::new("rho-anchor");
    let mut max: f64 = 0.0;
    let hb = c64(n.hbar);
    match rho(RhoSign::Minus, hb, hb, n.pole_eps) {
        Ok(v) => {
            let err = (v - c64(2.0 / std::f64::consts::PI)).norm();
            max = max.max(err);
            res.comparisons += 1;
            if err > 1e-12 {
                res.failures
                    .push(format!("anchor value off by {:e}", err));
            }
        }
        Err(e) => res.failures.push(format!("anchor: {}", e)),
    }
    let u = c64(0.37 * n.hbar);
    if let (Ok(p), Ok(m)) = (
        rho(RhoSign::Plus, u, hb, n.pole_eps),
        rho(RhoSign::Minus, -u, hb, n.pole_eps),
    ) {
        let err = (p * m - c64(1.0)).norm();
        max = max.max(err);
        res.comparisons += 1;
        if err > 1e-12 {
            res.failures.push(format!("sign flip off by {:e}", err));
        }
    }
    if let (Ok(v1), Ok(v2)) = (
        rho(RhoSign::Minus, c64(50.0 * n.hbar), hb, n.pole_eps),
        rho(RhoSign::Minus, c64(200.0 * n.hbar), hb, n.pole_eps),
    ) {
        res.comparisons += 1;
        if (v2 - c64(1.0)).norm() >= (v1 - c64(1.0)).norm() {
            res.failures.push("asymptotics not improving".into());
        }
    }
    res.max_numeric = Some(max);
    res
}

/// Universal R-matrix reconstruction against the Gamma-scaled rational
/// R-matrix: raw error, Richardson-extrapolated error, and decay fit.
pub fn verify_ur_reconstruct(n: &super::NumericConfig) -> Result<Residual> {
    use eval::reconstruct::*;
    let mut res = Residual::new("ur-reconstruct");
    let mut max: f64 = 0.0;
    for &u in &n.u_diffs {
        let p = ReconstructParams {
            hbar: n.hbar,
            u: u * n.hbar,
            y: n.y_base,
            eps: n.pole_eps,
        };
        let raw = reconstruction_error(&p, n.n_product)?;
        let (ladder, extrap) = richardson_ladder(&p, n.n_product, 4)?;
        let slope = decay_exponent(&ladder);
        res.comparisons += 3;
        max = max.max(raw);
        if raw > 1e-3 {
            res.failures
                .push(format!("raw error {:e} at depth {} (u = {})", raw, n.n_product, u));
        }
        if extrap > 1e-8 {
            res.failures
                .push(format!("extrapolated error {:e} (u = {})", extrap, u));
        }
        if (slope + 1.0).abs() > 0.35 {
            res.failures
                .push(format!("decay exponent {} not reciprocal (u = {})", slope, u));
        }
    }
    res.max_numeric = Some(max);
    Ok(res)
}

/// One intertwiner exchange equation across all samples: the residual at the
/// deepest product cutoff is held to the configured tolerance and the
/// sequence must decrease monotonically.
pub fn verify_phi_eq(
    eq: intertwiner::PhiEquation,
    config: &SuiteConfig,
    cut: &Cutoffs,
) -> Result<(Residual, Option<serde_json::Value>)> {
    let n = config.numeric();
    let mut res = Residual::new(eq.id());
    let mut max: f64 = 0.0;
    let mut tables = Vec::new();
    for &u in &n.u_samples {
        let rep = intertwiner::verify_phi_equation(
            eq,
            n.z,
            u,
            n.hbar,
            cut,
            &n.intertwiner_depths,
            n.pole_eps,
        )?;
        tables.push(serde_json::to_value(&rep).expect("report serializes"));
        res.comparisons += 1;
        let fin = rep.final_residual();
        max = max.max(fin);
        if fin > n.tolerance {
            res.failures.push(format!(
                "residual {:e} above tolerance {:e} at u = {} (depth {}); \
                 sequence {:?}, extrapolated {:e}",
                fin,
                n.tolerance,
                u,
                rep.rows.last().map(|r| r.0).unwrap_or(0),
                rep.rows.iter().map(|r| r.2).collect::<Vec<_>>(),
                rep.extrapolated
            ));
        }
        if !rep.monotone() {
            res.failures
                .push(format!("residuals not monotone at u = {}", u));
        }
    }
    res.max_numeric = Some(max);
    Ok((res, Some(serde_json::Value::Array(tables))))
}
