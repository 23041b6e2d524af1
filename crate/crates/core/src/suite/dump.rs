//! Inspection dumps: basis enumerations, matrices, series coefficients and
//! the pairing table, in canonical JSON or flat CSV.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::eval::pairing::PairingTable;
use crate::eval::rmatrix::rbar;
use crate::fock::{enumerate_basis, Cutoffs, FockState};
use crate::ratfun::RatFun;
use crate::scalar::{rat_string, sym, sym_hbar};
use crate::yangian::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DumpFormat {
    Json,
    Csv,
}

fn state_label(s: &FockState) -> String {
    format!("{}", s)
}

fn poly_string(p: &crate::poly::Poly) -> String {
    format!("{}", p)
}

/// Resolves a dump selector. Supported selectors:
/// `basis`, `matrix:rbar`, `series:<family>` for a current applied to the
/// charge vacuum, and `pairing-table`.
pub fn dump(kind: &str, cut: &Cutoffs, window: (i64, i64), format: DumpFormat) -> Result<String> {
    let value = match kind {
        "basis" => {
            let states: Vec<Value> = enumerate_basis(cut, None)
                .iter()
                .map(|s| {
                    json!({
                        "m": s.m,
                        "parts": s.parts,
                        "energy": s.energy(),
                        "sector": s.sector(),
                        "label": state_label(s),
                    })
                })
                .collect();
            json!({ "kind": "basis", "e_max": cut.e_max, "states": states })
        }
        "matrix:rbar" => {
            let u = RatFun::var(sym("u"));
            let h = RatFun::var(sym_hbar());
            let m = rbar(&u, &h);
            let rows: Vec<Vec<String>> = (0..4)
                .map(|i| (0..4).map(|j| format!("{}", m.get(i, j))).collect())
                .collect();
            json!({
                "kind": "matrix",
                "name": "rbar",
                "basis_order": ["++", "+-", "-+", "--"],
                "rows": rows,
            })
        }
        "series:e" | "series:f" | "series:h+" | "series:h-" => {
            let family = match kind {
                "series:e" => Family::E,
                "series:f" => Family::F,
                "series:h+" => Family::Hp,
                _ => Family::Hm,
            };
            let op = family.vertex_op(sym("u"), cut);
            let sv = op.apply(&FockState::vacuum(0), cut, window.0, window.1)?;
            let mut table: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
            for (s, l) in &sv.terms {
                let mut row = BTreeMap::new();
                for p in window.0..=window.1 {
                    if let Some(c) = l.coeff(p) {
                        if !crate::laurent::Coeff::is_zero(&c) {
                            row.insert(format!("u^{}", p), poly_string(&c));
                        }
                    }
                }
                if !row.is_empty() {
                    table.insert(state_label(s), row);
                }
            }
            json!({
                "kind": "series",
                "family": family.label(),
                "input": "|m=0;vac>",
                "window": [window.0, window.1],
                "coefficients": table,
            })
        }
        "pairing-table" => {
            let mut ef = BTreeMap::new();
            let mut hh = BTreeMap::new();
            for k in 0..=3i64 {
                for l in -4..0i64 {
                    let v = PairingTable::ef(k, l);
                    if !v.is_zero() {
                        ef.insert(format!("({}, {})", k, l), format!("{}", v));
                    }
                    let w = PairingTable::hh(k, l);
                    if !w.is_zero() {
                        hh.insert(format!("({}, {})", k, l), format!("{}", w));
                    }
                }
            }
            json!({
                "kind": "pairing-table",
                "ef": ef,
                "fe": "same kernel as ef",
                "hh": hh,
                "cd": format!("{}", PairingTable::cd()),
                "rational_format": rat_string(&crate::scalar::rat(1, 2)),
            })
        }
        other => return Err(Error::Selector(other.into())),
    };
    match format {
        DumpFormat::Json => Ok(serde_json::to_string_pretty(&value).expect("dump serializes")),
        DumpFormat::Csv => Ok(value_to_csv(&value)),
    }
}

/// Flat CSV rendering of a dump value: one `path,value` row per leaf.
fn value_to_csv(v: &Value) -> String {
    let mut rows = vec![("path".to_string(), "value".to_string())];
    fn walk(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, val) in map {
                    let p = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{}.{}", prefix, k)
                    };
                    walk(&p, val, rows);
                }
            }
            Value::Array(items) => {
                for (i, val) in items.iter().enumerate() {
                    walk(&format!("{}[{}]", prefix, i), val, rows);
                }
            }
            other => rows.push((prefix.to_string(), other.to_string())),
        }
    }
    walk("", v, &mut rows);
    rows.into_iter()
        .map(|(a, b)| format!("{},{}", a, b.replace(',', ";")))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cut() -> Cutoffs {
        Cutoffs::new(2, 2, -3, 3, 0)
    }

    #[test]
    fn basis_dump_is_ordered() {
        let out = dump("basis", &cut(), (-3, 3), DumpFormat::Json).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        let states = v["states"].as_array().unwrap();
        assert!(!states.is_empty());
        let energies: Vec<u64> = states
            .iter()
            .map(|s| s["energy"].as_u64().unwrap())
            .collect();
        let mut sorted = energies.clone();
        sorted.sort();
        assert_eq!(energies, sorted);
    }

    #[test]
    fn rbar_dump_has_rational_strings() {
        let out = dump("matrix:rbar", &cut(), (0, 0), DumpFormat::Json).unwrap();
        assert!(out.contains("(u)/(hbar + u)") || out.contains("u/(hbar + u)"));
    }

    #[test]
    fn series_dump_vacuum() {
        let out = dump("series:e", &cut(), (-2, 2), DumpFormat::Json).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["family"], "e");
        assert!(v["coefficients"]["|m=2;vac>"]["u^0"].as_str().unwrap() == "1");
    }

    #[test]
    fn unknown_selector_is_error() {
        assert!(matches!(
            dump("nope", &cut(), (0, 0), DumpFormat::Json),
            Err(Error::Selector(_))
        ));
    }

    #[test]
    fn csv_has_header() {
        let out = dump("pairing-table", &cut(), (0, 0), DumpFormat::Csv).unwrap();
        assert!(out.starts_with("path,value"));
    }
}
