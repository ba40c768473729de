//! Command implementations behind the `ainfp` binary. Every command returns
//! a JSON document; the binary decides where it goes.

use std::path::Path;

use serde_json::{json, Value};

use crate::ainfty::{check_morphism, check_stasheff, transfer, TransferOptions};
use crate::complex::{parse_lower_distance, parse_point_cloud, FilteredSimplicialComplex};
use crate::dga::{DgaJson, FilteredDgAlgebra};
use crate::distance::{an_bottleneck, DistanceOptions, Exactness};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fixtures;
use crate::interval::ExtValue;
use crate::io::field_to_json;
use crate::persistence::{check_duality, homology_barcode, verify_exact_couple, ClauseReport, Persistence};
use crate::svg::barcode_svg;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: Field,
    pub n: usize,
    pub max_dim: usize,
    pub cap: Option<ExtValue>,
    pub seed: u64,
    pub classical: bool,
    pub exact_only: bool,
    pub distance: DistanceOptions,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: Field::Fp(2),
            n: 3,
            max_dim: 2,
            cap: None,
            seed: 0,
            classical: false,
            exact_only: false,
            distance: DistanceOptions::default(),
        }
    }
}

pub enum Input {
    Points(Vec<Vec<f64>>),
    Distances(Vec<Vec<ExtValue>>),
    Complex(FilteredSimplicialComplex),
    Algebra(FilteredDgAlgebra),
}

/// Reads an input by extension: `.csv` point cloud, `.json` complex or dg
/// algebra, anything else a lower-triangular distance matrix. The name
/// `fixture:NAME` selects a built-in algebra. Identities of a dg algebra are
/// only checked when `checked` is set.
pub fn load(path: &str, cfg: &RunConfig, checked: bool) -> Result<Input> {
    if let Some(name) = path.strip_prefix("fixture:") {
        let alg = fixtures::by_name(name, cfg.field)
            .ok_or_else(|| Error::Input(format!("unknown fixture `{name}`; known: {}", fixtures::NAMES.join(", "))))?;
        if checked {
            alg.validate()?;
        }
        return Ok(Input::Algebra(alg));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    if text.trim().is_empty() {
        return Ok(Input::Complex(FilteredSimplicialComplex::new()));
    }
    let ext = Path::new(path).extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase();
    match ext.as_str() {
        "csv" => Ok(Input::Points(parse_point_cloud(&text)?)),
        "json" => {
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            if v.get("simplices").is_some() {
                Ok(Input::Complex(FilteredSimplicialComplex::from_json_str(&text)?))
            } else if v.get("basis").is_some() {
                let raw: DgaJson = serde_json::from_value(v).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
                Ok(Input::Algebra(if checked { raw.build()? } else { raw.build_unchecked()? }))
            } else {
                Err(Error::Input(format!("{path}: expected a \"simplices\" or \"basis\" field")))
            }
        }
        _ => Ok(Input::Distances(parse_lower_distance(&text)?)),
    }
}

fn complex_of(input: Input, cfg: &RunConfig) -> Result<FilteredSimplicialComplex> {
    match input {
        Input::Points(p) => FilteredSimplicialComplex::rips(&FilteredSimplicialComplex::distances(&p)?, cfg.max_dim, cfg.cap.as_ref()),
        Input::Distances(d) => FilteredSimplicialComplex::rips(&d, cfg.max_dim, cfg.cap.as_ref()),
        Input::Complex(c) => Ok(c),
        Input::Algebra(_) => Err(Error::Input("expected a point cloud, distance matrix or complex".into())),
    }
}

fn algebra_of(input: Input, cfg: &RunConfig) -> Result<FilteredDgAlgebra> {
    match input {
        Input::Algebra(a) => Ok(a),
        other => Ok(complex_of(other, cfg)?.cochain_algebra(cfg.field)),
    }
}

fn header(field: Field, cfg: &RunConfig) -> serde_json::Map<String, Value> {
    let (name, p) = field_to_json(field);
    let mut m = serde_json::Map::new();
    m.insert("field".into(), json!(name));
    if let Some(p) = p {
        m.insert("p".into(), json!(p));
    }
    m.insert("seed".into(), json!(cfg.seed));
    m
}

pub fn cmd_rips(path: &str, cfg: &RunConfig) -> Result<Value> {
    let c = complex_of(load(path, cfg, true)?, cfg)?;
    Ok(serde_json::to_value(c.to_json())?)
}

/// Barcode JSON and its SVG plot. `bars` is the persistent cohomology of the
/// decreasing filtration; the absolute cohomology and homology barcodes of
/// the underlying complex are listed alongside.
pub fn cmd_barcode(path: &str, cfg: &RunConfig) -> Result<(Value, String)> {
    let alg = algebra_of(load(path, cfg, true)?, cfg)?;
    let pers = Persistence::new(&alg);
    let bars = pers.barcode();
    let mut out = header(alg.field, cfg);
    out.insert("bars".into(), serde_json::to_value(bars.to_entries())?);
    out.insert("absolute".into(), serde_json::to_value(pers.absolute_barcode().to_entries())?);
    out.insert("homology".into(), serde_json::to_value(homology_barcode(&alg).to_entries())?);
    Ok((Value::Object(out), barcode_svg(&bars)))
}

pub fn cmd_transfer(path: &str, cfg: &RunConfig) -> Result<Value> {
    let alg = algebra_of(load(path, cfg, true)?, cfg)?;
    let tr = transfer(&alg, &TransferOptions { n: cfg.n, seed: cfg.seed, unitary: false })?;
    let mut out = header(alg.field, cfg);
    out.insert("structure".into(), tr.structure.to_json());
    Ok(Value::Object(out))
}

/// The report, and whether `--exact-only` was violated.
pub fn cmd_distance(a: &str, b: &str, cfg: &RunConfig) -> Result<(Value, bool)> {
    let x = algebra_of(load(a, cfg, true)?, cfg)?;
    let y = algebra_of(load(b, cfg, true)?, cfg)?;
    if x.field != y.field {
        return Err(Error::FieldMismatch(x.field.to_string(), y.field.to_string()));
    }
    let n = if cfg.classical { 1 } else { cfg.n };
    let opts = TransferOptions { n, seed: cfg.seed, unitary: false };
    let sx = transfer(&x, &opts)?.structure;
    let sy = transfer(&y, &opts)?.structure;
    let report = an_bottleneck(&sx, &sy, n, &cfg.distance)?;
    let mut out = header(x.field, cfg);
    if let Value::Object(r) = report.to_json() {
        out.extend(r);
    }
    let certified = matches!(report.exactness, Exactness::Exact | Exactness::ExhaustiveFamily);
    Ok((Value::Object(out), cfg.exact_only && !certified))
}

fn check(name: &str, r: std::result::Result<(), String>) -> ClauseReport {
    match r {
        Ok(()) => ClauseReport {
            clause: name.into(),
            status: "pass".into(),
            witness: None,
        },
        Err(w) => ClauseReport {
            clause: name.into(),
            status: "fail".into(),
            witness: Some(w),
        },
    }
}

/// Runs every property check on the input; returns the report and whether
/// all checks passed.
pub fn cmd_verify(path: &str, cfg: &RunConfig) -> Result<(Value, bool)> {
    let alg = algebra_of(load(path, cfg, false)?, cfg)?;
    let mut checks = vec![check("dg algebra identities", alg.validate().map_err(|e| e.to_string()))];
    if checks[0].passed() {
        checks.extend(check_duality(&alg));
        checks.push(check("exact couple", verify_exact_couple(&alg)));
        let pers = Persistence::new(&alg);
        let mut mu = Ok(());
        for n in pers.degrees() {
            let beta = pers.beta_table(n);
            let m = pers.multiplicities(n);
            if !m.is_nonnegative() {
                mu = Err(format!("negative multiplicity in degree {n}"));
            } else if m.to_beta(beta.len) != beta {
                mu = Err(format!("β not reconstructed in degree {n}"));
            } else if m.to_barcode(n, &pers.scale) != pers.barcode().restrict(n) {
                mu = Err(format!("multiplicities differ from the barcode in degree {n}"));
            }
            if mu.is_err() {
                break;
            }
        }
        checks.push(check("multiplicities", mu));
        match transfer(&alg, &TransferOptions { n: cfg.n, seed: cfg.seed, unitary: false }) {
            Ok(tr) => {
                for k in 1..=cfg.n {
                    checks.push(check(&format!("SI({k})"), check_stasheff(&tr.structure, k).map_err(|v| v.to_string())));
                    checks.push(check(
                        &format!("MI({k})"),
                        check_morphism(&tr.morphism, &tr.structure, &tr.rees, k).map_err(|v| v.to_string()),
                    ));
                }
            }
            Err(e) => checks.push(check("transfer", Err(e.to_string()))),
        }
    }
    let passed = checks.iter().all(ClauseReport::passed);
    let mut out = header(alg.field, cfg);
    out.insert("N".into(), json!(cfg.n));
    out.insert("checks".into(), serde_json::to_value(&checks)?);
    out.insert("passed".into(), json!(passed));
    Ok((Value::Object(out), passed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_inputs() {
        let cfg = RunConfig::default();
        let (v, ok) = cmd_verify("fixture:heisenberg", &cfg).unwrap();
        assert!(ok, "{v}");
        let (v, ok) = cmd_verify("fixture:heisenberg-mutated", &cfg).unwrap();
        assert!(!ok);
        assert_eq!(v["checks"][0]["status"], "fail");
        assert!(v["checks"][0]["witness"].as_str().unwrap().contains("Leibniz"));
        assert!(load("fixture:nope", &cfg, true).is_err());
    }

    #[test]
    fn torus_against_wedge_report() {
        let cfg = RunConfig { n: 2, ..Default::default() };
        let (v, violated) = cmd_distance("fixture:torus", "fixture:wedge", &cfg).unwrap();
        assert_eq!(v["value"], "inf");
        assert_eq!(v["lower_bound"], 0);
        assert!(!violated);
    }
}
