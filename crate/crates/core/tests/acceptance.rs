//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Exact criteria demand identically vanishing trusted residuals at the
//! stated cutoffs; numeric criteria pin tolerances and convergence behavior.
//! Criterion 8 is asserted exactly as stated; see the failure message for
//! the measured truncation law of the regularized product when it trips.

use ydouble::eval;
use ydouble::fock::Cutoffs;
use ydouble::intertwiner;
use ydouble::suite::{self, Backend, CutoffsConfig, NumericConfig, SuiteConfig};
use ydouble::yangian;

fn acceptance_cutoffs() -> Cutoffs {
    // Energy ceiling 4, weight window |m| <= 4, spectral window of width 8.
    Cutoffs::new(4, 4, -5, 2, 0)
}

fn banner(criterion: u32, pass: bool, detail: &str) {
    println!(
        "criterion {:>2}: {} - {}",
        criterion,
        if pass { "PASS" } else { "FAIL" },
        detail
    );
}

#[test]
fn criterion_01_defining_relations_exact() {
    let cut = acceptance_cutoffs();
    let mut all = true;
    let mut details = Vec::new();
    for id in ["ee", "ff", "h+e", "h-e", "h+f", "h-f", "h+h-"] {
        let ex = yangian::relations::find_exchange(id).unwrap();
        let r = yangian::relations::verify_exchange(&ex, &cut, -3, 3, 8).unwrap();
        let ok = r.pass();
        all &= ok;
        details.push(format!(
            "{}: {} trusted targets, {} flagged entries{}",
            id,
            r.comparisons,
            r.flagged,
            if ok { "".into() } else { format!(", FIRST FAILURE {:?}", r.failures.first()) }
        ));
    }
    let r = yangian::ef_delta::verify_ef_delta(&cut, -3, 3).unwrap();
    all &= r.pass();
    details.push(format!(
        "ef-delta: {} trusted targets, {} flagged",
        r.comparisons, r.flagged
    ));
    banner(1, all, &details.join("; "));
    assert!(all, "{}", details.join("\n"));
}

#[test]
fn criterion_02_delta_commutator_exact() {
    let cut = acceptance_cutoffs();
    let r = yangian::ef_delta::verify_ef_delta(&cut, -3, 3).unwrap();
    banner(
        2,
        r.pass(),
        &format!(
            "all mode pairs in [-3,3]^2, {} trusted targets, residual identically zero: {}",
            r.comparisons,
            r.pass()
        ),
    );
    assert!(r.pass(), "first failure: {:?}", r.failures.first());
}

#[test]
fn criterion_03_shift_covariance_exact() {
    let cut = acceptance_cutoffs();
    let r = yangian::dcov::verify_d_covariance(&cut, -3, 3, 8, 3).unwrap();
    banner(
        3,
        r.pass(),
        &format!(
            "coefficientwise to shift degree 3, {} trusted mode columns",
            r.comparisons
        ),
    );
    assert!(r.pass(), "first failure: {:?}", r.failures.first());
}

#[test]
fn criterion_04_evaluation_module_relations_exact() {
    let r = eval::relations::verify_defining_modes_eval(-4, 4).unwrap();
    banner(
        4,
        r.pass(),
        &format!("symbolic 2x2 identities, {} relation instances", r.comparisons),
    );
    assert!(r.pass(), "first failure: {:?}", r.failures.first());
}

#[test]
fn criterion_05_yang_baxter_exact() {
    let mut all = true;
    let mut notes = Vec::new();
    for kind in [
        eval::ybe::YbeKind::PurePlus,
        eval::ybe::YbeKind::PureMinus,
        eval::ybe::YbeKind::Mixed,
    ] {
        let r = eval::ybe::check_ybe(kind).unwrap();
        all &= r.pass();
        notes.push(format!("{} symbolic", kind.id()));
    }
    let sampled = eval::ybe::check_ybe_sampled(100, 20_260_811).unwrap();
    all &= sampled.pass() && sampled.max_numeric == Some(0.0);
    notes.push(format!(
        "100 seeded rational samples, max residual {:?}",
        sampled.max_numeric
    ));
    banner(5, all, &notes.join("; "));
    assert!(all);
}

#[test]
fn criterion_06_coproduct_exact() {
    let hom = eval::coproduct::verify_coproduct_hom(-3, 3).unwrap();
    let twine = eval::coproduct::verify_coproduct_intertwine(-3, 3).unwrap();
    let ok = hom.pass() && twine.pass();
    banner(
        6,
        ok,
        &format!(
            "algebra map on {} instances; R-matrix intertwining on {} modes",
            hom.comparisons, twine.comparisons
        ),
    );
    assert!(ok, "{:?} {:?}", hom.failures.first(), twine.failures.first());
}

#[test]
fn criterion_07_universal_r_reconstruction_numeric() {
    use eval::reconstruct::*;
    use eval::rmatrix::{rho, RhoSign};
    use num::complex::Complex64;
    let mut all = true;
    let mut notes = Vec::new();
    // Sanity anchor.
    let anchor = rho(
        RhoSign::Minus,
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, 0.0),
        1e-10,
    )
    .unwrap();
    let anchor_err = (anchor - Complex64::new(2.0 / std::f64::consts::PI, 0.0)).norm();
    all &= anchor_err <= 1e-12;
    notes.push(format!("scalar anchor error {:.2e}", anchor_err));
    for u in [0.7, 1.3, 2.6] {
        let p = ReconstructParams {
            hbar: 1.0,
            u,
            y: -10.0,
            eps: 1e-9,
        };
        let raw = reconstruction_error(&p, 10_000).unwrap();
        let (ladder, extrap) = richardson_ladder(&p, 10_000, 4).unwrap();
        let slope = decay_exponent(&ladder);
        let ok = raw <= 1e-3 && extrap <= 1e-8 && (slope + 1.0).abs() < 0.35;
        all &= ok;
        notes.push(format!(
            "u={}: raw {:.2e}, extrapolated {:.2e}, decay {:.2}",
            u, raw, extrap, slope
        ));
    }
    banner(7, all, &notes.join("; "));
    assert!(all, "{}", notes.join("\n"));
}

#[test]
fn criterion_08_intertwiner_numeric() {
    // Stated gate: all three exchange-equation residuals at or below 1e-6
    // (relative) at z = 0.3, u in {4, 6, 10}, energy ceiling 10, product
    // depth 200, with the residual sequence decreasing monotonically over
    // {25, 50, 100, 200}.
    let cut = Cutoffs::new(10, 6, -12, 10, 2);
    let depths = [25u32, 50, 100, 200];
    let mut all = true;
    let mut notes = Vec::new();
    for eq in [
        intertwiner::PhiEquation::HPlus,
        intertwiner::PhiEquation::HMinus,
        intertwiner::PhiEquation::ECurrent,
    ] {
        for u in [4.0, 6.0, 10.0] {
            let rep =
                intertwiner::verify_phi_equation(eq, 0.3, u, 1.0, &cut, &depths, 1e-9).unwrap();
            let fin = rep.final_residual();
            let ok = fin <= 1e-6 && rep.monotone();
            all &= ok;
            notes.push(format!(
                "{} u={}: residuals {:?} (monotone {}), extrapolated {:.2e}, decay {:.2}",
                eq.id(),
                u,
                rep.rows.iter().map(|r| format!("{:.2e}", r.2)).collect::<Vec<_>>(),
                rep.monotone(),
                rep.extrapolated,
                rep.decay
            ));
        }
    }
    banner(8, all, &notes.join("; "));
    assert!(
        all,
        "the creation-side and raising-current equations close only in the \
         infinite-product limit: the truncated regularization leaves a residual \
         decaying like the reciprocal depth (measured below), so the 1e-6 gate \
         is unreachable at depth 200 even though every sequence decreases \
         monotonically and the extrapolated limits sit at the tolerance.\n{}",
        notes.join("\n")
    );
}

#[test]
fn criterion_08_extrapolated_diagnostic() {
    // Companion diagnostic: the same equations, judged in the infinite-depth
    // limit through a deeper Richardson ladder, meet the tolerance for every
    // equation; and the annihilation-side equation meets it raw.
    let cut = Cutoffs::new(10, 6, -12, 10, 2);
    let depths = [25u32, 50, 100, 200, 400, 800];
    let mut all = true;
    let mut notes = Vec::new();
    for eq in [
        intertwiner::PhiEquation::HPlus,
        intertwiner::PhiEquation::HMinus,
        intertwiner::PhiEquation::ECurrent,
    ] {
        for u in [4.0, 6.0, 10.0] {
            let rep =
                intertwiner::verify_phi_equation(eq, 0.3, u, 1.0, &cut, &depths, 1e-9).unwrap();
            let ok = rep.monotone()
                && rep.extrapolated <= 1e-6
                && (eq != intertwiner::PhiEquation::HPlus || rep.final_residual() <= 1e-6);
            all &= ok;
            notes.push(format!(
                "{} u={}: extrapolated {:.2e}, monotone {}, final {:.2e}",
                eq.id(),
                u,
                rep.extrapolated,
                rep.monotone(),
                rep.final_residual()
            ));
        }
    }
    println!("criterion  8*: extrapolated-limit diagnostic - {}", notes.join("; "));
    assert!(all, "{}", notes.join("\n"));
}

#[test]
fn criterion_09_pairing_exact() {
    let r = eval::pairing::pairing_spotcheck().unwrap();
    banner(
        9,
        r.pass(),
        &format!(
            "table regeneration and axiom instances, {} comparisons",
            r.comparisons
        ),
    );
    assert!(r.pass(), "first failure: {:?}", r.failures.first());
}

#[test]
fn criterion_10_shift_automorphism_exact() {
    let cut = acceptance_cutoffs();
    let r = ydouble::suite::checks::verify_shift_automorphism(&cut, 3);
    banner(
        10,
        r.pass(),
        &format!(
            "conjugation formulas and brackets, {} comparisons, {} flagged",
            r.comparisons, r.flagged
        ),
    );
    assert!(r.pass(), "first failure: {:?}", r.failures.first());
}

#[test]
fn criterion_11_report_determinism() {
    let config = SuiteConfig {
        backend: Backend::Exact,
        cutoffs: CutoffsConfig {
            e_max: 3,
            m_bound: 3,
            u_lo: -4,
            u_hi: 2,
            margin: 0,
            k_lo: -2,
            k_hi: 2,
            h_depth: 5,
            gamma_degree: 2,
        },
        numeric: Some(NumericConfig::default()),
        checks: vec![
            "heis".into(),
            "ee".into(),
            "ef-delta".into(),
            "ybe-sampled".into(),
            "pairing".into(),
        ],
        jobs: Some(4),
        seed: 31_337,
        trials: 25,
    };
    let a = suite::run_suite(&config).unwrap().to_json();
    let b = suite::run_suite(&config).unwrap().to_json();
    let identical = a == b;
    banner(
        11,
        identical,
        &format!("two runs, {} report bytes, byte-identical: {}", a.len(), identical),
    );
    assert!(identical);
    assert!(a.contains("\"schema\": 1"));
}
