//! JSON form of symmetric-power cochains:
//! `{ n, degree, omega0: [terms], omega1: [terms], l: [terms] }`, each term
//! `{ s, t, basis, monomials: [{a, b, num, den}] }`.  num/den are decimal strings
//! so big rationals survive the round trip.  For degree 0 the two function
//! components sit in omega0/omega1; for degree 2 omega0/omega1 hold the 2-forms
//! and l holds the intersection 1-form.

use std::str::FromStr;

use exact_kernel::{Basis, Chart, Coeff, Laurent, OneForm, Section, Slot, TwoForm, Q};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::{CechCochain, CechError, Cochain0, Cochain1, Cochain2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub a: i32,
    pub b: i32,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub s: u32,
    pub t: u32,
    pub basis: String,
    pub monomials: Vec<MonomialJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub n: u32,
    pub degree: u8,
    pub omega0: Vec<TermJson>,
    pub omega1: Vec<TermJson>,
    pub l: Vec<TermJson>,
}

pub fn laurent_json(x: &Laurent) -> Vec<MonomialJson> {
    x.terms()
        .map(|(&(a, b), c)| MonomialJson { a, b, num: c.numer().to_string(), den: c.denom().to_string() })
        .collect()
}

/// Terms in (s, basis, a, b) order.
pub fn section_json<K: Coeff>(sec: &Section<Slot, K>) -> Vec<TermJson> {
    let mut out = Vec::new();
    for (slot, k) in sec.iter() {
        for (b, x) in k.parts() {
            if !x.is_zero() {
                out.push(TermJson { s: slot.s, t: slot.t(), basis: b.name().into(), monomials: laurent_json(x) });
            }
        }
    }
    out
}

pub fn to_json(n: u32, c: &CechCochain<Slot>) -> CochainJson {
    let (degree, omega0, omega1, l) = match c {
        CechCochain::Deg0(x) => (0, section_json(&x.f0), section_json(&x.f1), vec![]),
        CechCochain::Deg1(x) => (1, section_json(&x.w0), section_json(&x.w1), section_json(&x.l)),
        CechCochain::Deg2(x) => (2, section_json(&x.b0), section_json(&x.b1), section_json(&x.m)),
    };
    CochainJson { n, degree, omega0, omega1, l }
}

pub fn to_string(n: u32, c: &CechCochain<Slot>) -> String {
    serde_json::to_string_pretty(&to_json(n, c)).expect("serializable")
}

fn bad(msg: impl Into<String>) -> CechError {
    CechError::Json(msg.into())
}

fn parse_laurent(ms: &[MonomialJson]) -> Result<Laurent, CechError> {
    let mut out = Laurent::zero();
    for m in ms {
        let num = BigInt::from_str(&m.num).map_err(|e| bad(format!("num {}: {e}", m.num)))?;
        let den = BigInt::from_str(&m.den).map_err(|e| bad(format!("den {}: {e}", m.den)))?;
        if den == BigInt::from(0) {
            return Err(bad("zero denominator"));
        }
        out.add_term(m.a, m.b, Q::new(num, den));
    }
    Ok(out)
}

fn parse_section<K: Coeff>(n: u32, chart: Chart, terms: &[TermJson]) -> Result<Section<Slot, K>, CechError> {
    let mut out = Section::zero(chart);
    for t in terms {
        if t.s + t.t != 2 * n {
            return Err(bad(format!("term S^{}T^{} does not have degree {}", t.s, t.t, 2 * n)));
        }
        let basis = Basis::from_name(&t.basis).ok_or_else(|| bad(format!("unknown basis {}", t.basis)))?;
        let mut k = K::default();
        let mut placed = false;
        for (b, slot) in k.parts_mut() {
            if b == basis {
                *slot = parse_laurent(&t.monomials)?;
                placed = true;
            }
        }
        if !placed {
            return Err(bad(format!("basis {} does not fit this component", t.basis)));
        }
        out.add(Slot::new(n, t.s), &k)?;
    }
    Ok(out)
}

pub fn from_json(j: &CochainJson) -> Result<CechCochain<Slot>, CechError> {
    let n = j.n;
    Ok(match j.degree {
        0 => {
            if !j.l.is_empty() {
                return Err(bad("degree-0 cochain with an intersection component"));
            }
            CechCochain::Deg0(Cochain0::new(
                parse_section::<Laurent>(n, Chart::U0, &j.omega0)?,
                parse_section::<Laurent>(n, Chart::U1, &j.omega1)?,
            )?)
        }
        1 => CechCochain::Deg1(Cochain1::new(
            parse_section::<OneForm>(n, Chart::U0, &j.omega0)?,
            parse_section::<OneForm>(n, Chart::U1, &j.omega1)?,
            parse_section::<Laurent>(n, Chart::U01, &j.l)?,
        )?),
        2 => CechCochain::Deg2(Cochain2::new(
            parse_section::<TwoForm>(n, Chart::U0, &j.omega0)?,
            parse_section::<TwoForm>(n, Chart::U1, &j.omega1)?,
            parse_section::<OneForm>(n, Chart::U01, &j.l)?,
        )?),
        d => return Err(bad(format!("degree {d}"))),
    })
}

pub fn from_str(s: &str) -> Result<(u32, CechCochain<Slot>), CechError> {
    let j: CochainJson = serde_json::from_str(s).map_err(|e| bad(e.to_string()))?;
    Ok((j.n, from_json(&j)?))
}
