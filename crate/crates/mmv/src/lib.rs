//! Subcommand bodies.  Each returns a JSON document and whether every check it
//! ran passed; `main` turns a failed check into a nonzero exit.

use std::io::Read;

use exact_kernel::{residue_on_slice, Chart, OneForm, SliceId, Slot};
use lie_connection::{build_connection, pair_classes};
use periods::{compute_periods, PeriodConfig};
use second_kind::{canonical_basis, eliminate_bad_terms, ClassId, SecondKindCocycle};
use serde::Serialize;
use serde_json::{json, Value};

pub const PRECISION_ENV: &str = "MMV_PRECISION";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    SecondKind(#[from] second_kind::SecondKindError),
    #[error(transparent)]
    Lie(#[from] lie_connection::LieError),
    #[error(transparent)]
    Periods(#[from] periods::PeriodsError),
    #[error(transparent)]
    Cech(#[from] cech::CechError),
    #[error("reading input: {0}")]
    Input(String),
}

/// Outcome of a subcommand.
#[derive(Debug, Serialize)]
pub struct Outcome {
    pub ok: bool,
    pub output: Value,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub precision: u32,
    pub qorder: usize,
    pub basepoint: f64,
    pub tolerance: f64,
}

impl Config {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.precision < 20 {
            return Err(CliError::Config(format!("precision {} < 20", self.precision)));
        }
        if self.qorder < 40 {
            return Err(CliError::Config(format!("qorder {} < 40", self.qorder)));
        }
        if self.basepoint.is_nan() || self.basepoint <= 1.0 {
            return Err(CliError::Config(format!("basepoint {} must exceed 1", self.basepoint)));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(CliError::Config(format!("tolerance {} must be positive", self.tolerance)));
        }
        Ok(())
    }
}

/// Weights 2n given on the command line → half-weights n.
pub fn halves(weights: &[u32]) -> Result<Vec<u32>, CliError> {
    weights
        .iter()
        .map(|&w| {
            if w < 2 || w % 2 == 1 {
                Err(CliError::Config(format!("weight {w} is not a positive even integer")))
            } else {
                Ok(w / 2)
            }
        })
        .collect()
}

fn verification(c: &SecondKindCocycle) -> (bool, Value) {
    let closed = cech::is_closed1(&c.cochain);
    (closed, json!({ "DClosed": closed }))
}

fn cocycle_json(c: &SecondKindCocycle) -> (bool, Value) {
    let (ok, v) = verification(c);
    let mut out = serde_json::to_value(c.to_json()).expect("serializable");
    out["verification"] = v;
    (ok, out)
}

/// ω̃_{j,k}, or the whole canonical basis of a weight.
pub fn cmd_cocycle(j: Option<u32>, k: Option<u32>, weights: &[u32]) -> Result<Outcome, CliError> {
    match (j, k) {
        (Some(j), Some(k)) => {
            let (ok, output) = cocycle_json(&eliminate_bad_terms(j, k)?);
            Ok(Outcome { ok, output })
        }
        (None, None) => {
            let mut ok = true;
            let mut all = Vec::new();
            for n in halves(weights)? {
                for c in canonical_basis(n)? {
                    let (good, v) = cocycle_json(&c);
                    ok &= good;
                    all.push(v);
                }
            }
            Ok(Outcome { ok, output: Value::Array(all) })
        }
        _ => Err(CliError::Config("--j and --k go together".into())),
    }
}

/// Re-verify a cocycle document (as printed by `cocycle`, or a bare cochain).
pub fn cmd_verify(input: &str) -> Result<Outcome, CliError> {
    let doc: Value = serde_json::from_str(input).map_err(|e| CliError::Input(e.to_string()))?;
    let docs = match doc {
        Value::Array(v) => v,
        d => vec![d],
    };
    let mut ok = true;
    let mut out = Vec::new();
    for d in docs {
        let cochain = d.get("cochain").cloned().unwrap_or(d);
        let text = cochain.to_string();
        let (n, c) = cech::json::from_str(&text)?;
        let closed = match &c {
            cech::CechCochain::Deg1(c) => cech::is_closed1(c),
            cech::CechCochain::Deg2(c) => cech::is_closed2(c),
            cech::CechCochain::Deg0(_) => {
                return Err(CliError::Input("expected a degree-1 or degree-2 cochain".into()))
            }
        };
        ok &= closed;
        out.push(json!({ "n": n, "DClosed": closed }));
    }
    let output = if out.len() == 1 { out.pop().unwrap() } else { Value::Array(out) };
    Ok(Outcome { ok, output })
}

pub fn read_stdin() -> Result<String, CliError> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(s)
}

/// Truncated universal connection; integrability and the gauge identity must hold.
pub fn cmd_connection(weights: &[u32], degree: usize) -> Result<Outcome, CliError> {
    if degree == 0 {
        return Err(CliError::Config("--degree must be at least 1".into()));
    }
    let conn = build_connection(&halves(weights)?, degree)?;
    let report = conn.to_json();
    let ok = report.integrable.holds() && report.gauge.holds() && report.group_like;
    Ok(Outcome { ok, output: serde_json::to_value(report).expect("serializable") })
}

/// T²ⁿ coefficient of a holomorphic class on `chart`, S²ⁿ coefficient of the other.
fn top(c: &SecondKindCocycle, chart: Chart, s: u32) -> OneForm {
    let sec = if chart == Chart::U0 { &c.cochain.w0 } else { &c.cochain.w1 };
    sec.iter().find(|(slot, _)| **slot == Slot::new(c.n, s)).map(|(_, f)| f.clone()).unwrap_or_default()
}

/// {ω̃_f, ω̃_{j,k}}, its trivialization ξ̃ and the slice residues.
pub fn cmd_pair(weights: &[u32], j: Option<u32>, k: Option<u32>) -> Result<Outcome, CliError> {
    let (j, k) = (j.unwrap_or(1), k.unwrap_or(1));
    let b = eliminate_bad_terms(j, k)?;
    let n = b.n;
    if let Some(&w) = weights.first() {
        if halves(&[w])?[0] != n {
            return Err(CliError::Config(format!("ω̃_({j},{k}) has weight {}, not {w}", 2 * n + 2)));
        }
    }
    let basis = canonical_basis(n)?;
    let a = basis
        .iter()
        .find(|c| matches!(&c.id, ClassId::Holomorphic { name, .. } if name.starts_with('Δ')))
        .or_else(|| basis.first())
        .cloned()
        .ok_or_else(|| CliError::Config(format!("no holomorphic class in weight {}", 2 * n + 2)))?;
    let pr = pair_classes(&a, &b)?;
    let ok = pr.verify();
    let residue =
        |chart, slice| residue_on_slice(&top(&a, chart, 0), &top(&b, chart, 2 * n), slice).map(|r| r.to_string()).ok();
    let output = json!({
        "first": a.id.to_string(),
        "second": b.id.to_string(),
        "bracket": cech::json::to_json(0, &cech::CechCochain::Deg2(pr.bracket.clone())),
        "xi": cech::json::to_json(0, &cech::CechCochain::Deg1(pr.xi.clone())),
        "residues": { "v_eq_1": residue(Chart::U0, SliceId::VEq1), "u_eq_1": residue(Chart::U1, SliceId::UEq1) },
        "verification": { "DxiPlusBracketZero": ok },
    });
    Ok(Outcome { ok, output })
}

/// Periods and quasi-periods of Δ at the configured precision.
pub fn cmd_periods(cfg: &Config) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let pc = PeriodConfig {
        precision: cfg.precision,
        qorder: cfg.qorder,
        basepoint: cfg.basepoint,
        tolerance: cfg.tolerance,
    };
    let r = compute_periods(&pc)?;
    let relations = r.relation_defects.iter().all(|d| d.to_f64() < cfg.tolerance);
    let mut output = serde_json::to_value(r.to_json(cfg.precision as usize)).expect("serializable");
    output["verification"] = json!({ "residualBelowTolerance": true, "relationsBelowTolerance": relations });
    Ok(Outcome { ok: relations, output })
}
