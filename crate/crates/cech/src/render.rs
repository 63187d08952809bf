//! Human-readable rendering in the usual display style, e.g.
//! `(9*u^-2)·α/Δ·S^10T^0`.

use exact_kernel::{Basis, Coeff, Section, Slot};

use crate::Cochain1;

fn basis_symbol(b: Basis) -> &'static str {
    match b {
        Basis::Fun => "",
        Basis::AlphaOverDelta => "·α/Δ",
        Basis::DlogDelta => "·dΔ/Δ",
        Basis::Vol => "·du∧dv/Δ",
    }
}

pub fn section<K: Coeff>(s: &Section<Slot, K>) -> String {
    let mut parts = Vec::new();
    for (slot, k) in s.iter() {
        for (b, x) in k.parts() {
            if !x.is_zero() {
                parts.push(format!("({x}){}·{slot}", basis_symbol(b)));
            }
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn cochain1(c: &Cochain1<Slot>) -> String {
    format!("({}, {}; {})", section(&c.w0), section(&c.w1), section(&c.l))
}
