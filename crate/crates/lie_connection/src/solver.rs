//! Exact antidifferentiation in the Čech–de Rham complex.
//!
//! `solve_sym_batch` finds, for closed degree-2 cochains B with values in SᵈH,
//! degree-1 cochains X with D X = −B.  Unknowns are monomials of the right
//! weight inside a box |a|, |b| ≤ bound, which is doubled until the system is
//! consistent.  Columns are ordered (slot, component ξ⁰ < ξ¹ < f, α/Δ < dΔ/Δ,
//! |a|+|b|, a, b); free columns are set to zero, so the reported solution is the
//! one supported on the earliest columns.
//!
//! `solve_lie` does the same for word-valued cochains by splitting each class
//! sequence into irreducibles, solving all copies of the same SᵈH together, and
//! Lie-projecting the answer.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use cech::{closed_defect, d1, Cochain1, Cochain2};
use exact_kernel::linsolve::{Echelon, SparseRow};
use exact_kernel::{par, Basis, Chart, Coeff, Laurent, OneForm, Section, Slot, TwoForm, Q};
use num_traits::{One, Zero};

use crate::cg::CgData;
use crate::words::{dynkin_project, is_lie, Generator, Word};
use crate::LieError;

const BOUNDS: [i32; 4] = [8, 16, 32, 64];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Comp {
    Xi0,
    Xi1,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Unknown {
    s: u32,
    comp: Comp,
    basis: Basis,
    mono: (i32, i32),
}

/// Output coordinate: component (0 = b0, 1 = b1, 2 = m), slot, basis, monomial.
type RowKey = (u8, u32, Basis, (i32, i32));

fn monomials(weight: i64, bound: i32, chart: Chart) -> Vec<(i32, i32)> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        let rest = weight - 4 * a as i64;
        if rest % 6 != 0 {
            continue;
        }
        let b = (rest / 6) as i32;
        if b.abs() <= bound && chart.admits(a, b) {
            out.push((a, b));
        }
    }
    out.sort_by_key(|&(a, b)| (a.abs() + b.abs(), a, b));
    out
}

fn unknowns(n: u32, bound: i32) -> Vec<Unknown> {
    let mut out = Vec::new();
    for s in 0..=2 * n {
        let w = 2 * n as i64 - 2 * s as i64;
        for (comp, chart) in [(Comp::Xi0, Chart::U0), (Comp::Xi1, Chart::U1)] {
            for basis in [Basis::AlphaOverDelta, Basis::DlogDelta] {
                for mono in monomials(w + basis.offset(), bound, chart) {
                    out.push(Unknown { s, comp, basis, mono });
                }
            }
        }
        for mono in monomials(w, bound, Chart::U01) {
            out.push(Unknown { s, comp: Comp::F, basis: Basis::Fun, mono });
        }
    }
    out
}

fn unit_cochain(n: u32, x: &Unknown) -> Cochain1<Slot> {
    let slot = Slot::new(n, x.s);
    let f = Laurent::monomial(Q::one(), x.mono.0, x.mono.1);
    let form = match x.basis {
        Basis::AlphaOverDelta => OneForm::alpha(f.clone()),
        _ => OneForm::dlog(f.clone()),
    };
    let mut c = Cochain1::zero();
    match x.comp {
        Comp::Xi0 => c.w0.add_scaled_term(slot, &form, &Q::one()),
        Comp::Xi1 => c.w1.add_scaled_term(slot, &form, &Q::one()),
        Comp::F => c.l.add_scaled_term(slot, &f, &Q::one()),
    }
    c
}

fn scatter<K: Coeff>(sec: &Section<Slot, K>, tag: u8, out: &mut BTreeMap<RowKey, Q>) {
    for (slot, k) in sec.iter() {
        for (basis, x) in k.parts() {
            for (&m, c) in x.terms() {
                out.insert((tag, slot.s, basis, m), c.clone());
            }
        }
    }
}

fn coordinates(c: &Cochain2<Slot>) -> BTreeMap<RowKey, Q> {
    let mut out = BTreeMap::new();
    scatter(&c.b0, 0, &mut out);
    scatter(&c.b1, 1, &mut out);
    scatter(&c.m, 2, &mut out);
    out
}

fn assemble(n: u32, cols: &[Unknown], sol: &SparseRow) -> Cochain1<Slot> {
    let mut out = Cochain1::zero();
    for (&k, c) in sol {
        out.add_scaled(&unit_cochain(n, &cols[k]), c);
    }
    out
}

/// One window attempt: Ok(None) if the box is too small.
fn try_window(n: u32, bound: i32, targets: &[Cochain2<Slot>]) -> Option<Vec<Cochain1<Slot>>> {
    let cols = unknowns(n, bound);
    let mut rows: BTreeMap<RowKey, SparseRow> = BTreeMap::new();
    for (k, x) in cols.iter().enumerate() {
        for (key, c) in coordinates(&d1(&unit_cochain(n, x))) {
            rows.entry(key).or_default().insert(k, c);
        }
    }
    let rhs: Vec<BTreeMap<RowKey, Q>> = targets.iter().map(coordinates).collect();
    for t in &rhs {
        if t.keys().any(|k| !rows.contains_key(k)) {
            return None;
        }
    }
    let mut e = Echelon::new(cols.len(), targets.len());
    for (key, row) in rows {
        let b = rhs.iter().map(|t| t.get(&key).map(|c| -c).unwrap_or_else(Q::zero)).collect();
        e.push(row, b).ok()?;
    }
    Some(e.solution().iter().map(|sol| assemble(n, &cols, sol)).collect())
}

/// X_i with D X_i = −B_i for SⁿH-valued (n = half-weight) closed cochains B_i.
pub fn solve_sym_batch(n: u32, targets: &[Cochain2<Slot>]) -> Result<Vec<Cochain1<Slot>>, LieError> {
    if targets.is_empty() {
        return Ok(vec![]);
    }
    for t in targets {
        if !closed_defect(t).is_zero() {
            return Err(LieError::NotClosed);
        }
    }
    let need = targets.iter().map(Cochain2::max_abs_exponent).max().unwrap_or(0);
    for bound in BOUNDS.into_iter().filter(|&b| b >= need) {
        if let Some(sols) = try_window(n, bound, targets) {
            return Ok(sols);
        }
    }
    Err(LieError::NoSolution { n, bound: *BOUNDS.last().unwrap() })
}

pub type CgCache = Mutex<HashMap<Vec<u32>, Arc<CgData>>>;

fn cg_for(cache: &CgCache, dims: &[u32]) -> Arc<CgData> {
    if let Some(c) = cache.lock().unwrap().get(dims) {
        return c.clone();
    }
    let c = Arc::new(CgData::new(dims));
    cache.lock().unwrap().insert(dims.to_vec(), c.clone());
    c
}

type Sigma = Vec<(u16, u16)>;

fn split<K: Coeff>(sec: &Section<Word, K>, sigma: &Sigma, cg: &CgData, into: &mut [Section<Slot, K>]) {
    for (w, k) in sec.iter().filter(|(w, _)| &w.sigma() == sigma) {
        let digits: Vec<u32> = w.0.iter().map(|g| g.m as u32).collect();
        let idx = cg.index(&digits);
        for (ci, c) in &cg.proj[idx] {
            let s = cg.slot_of(*ci, idx);
            into[*ci].add_scaled_term(Slot::new(cg.copies[*ci].d / 2, s), k, c);
        }
    }
}

fn embed<K: Coeff>(sec: &Section<Slot, K>, sigma: &Sigma, cg: &CgData, copy: usize, out: &mut Section<Word, K>) {
    for (slot, k) in sec.iter() {
        for (idx, c) in &cg.copies[copy].embed[slot.s as usize] {
            let digits = cg.digits(*idx);
            let w =
                Word(sigma.iter().zip(digits).map(|(&(class, n), m)| Generator { class, n, m: m as u16 }).collect());
            out.add_scaled_term(w, k, c);
        }
    }
}

/// Lie-valued X with D X = −B, for B homogeneous of word length `degree`,
/// Lie-valued and closed.
pub fn solve_lie(target: &Cochain2<Word>, degree: usize, cache: &CgCache) -> Result<Cochain1<Word>, LieError> {
    if !(is_lie(&target.b0) && is_lie(&target.b1) && is_lie(&target.m)) {
        return Err(LieError::NotLie(degree));
    }
    if !closed_defect(target).is_zero() {
        return Err(LieError::NotClosed);
    }
    let mut sigmas: Vec<Sigma> =
        target.b0.labels().chain(target.b1.labels()).chain(target.m.labels()).map(Word::sigma).collect();
    sigmas.sort();
    sigmas.dedup();

    // pieces[(σ, copy)] grouped by the highest weight
    let mut by_d: BTreeMap<u32, Vec<(usize, usize, Cochain2<Slot>)>> = BTreeMap::new();
    let cgs: Vec<Arc<CgData>> = sigmas
        .iter()
        .map(|sigma| {
            let dims: Vec<u32> = sigma.iter().map(|&(_, n)| 2 * n as u32).collect();
            cg_for(cache, &dims)
        })
        .collect();
    for (si, sigma) in sigmas.iter().enumerate() {
        let cg = &cgs[si];
        let nc = cg.copies.len();
        let mut b0 = vec![Section::<Slot, TwoForm>::zero(Chart::U0); nc];
        let mut b1 = vec![Section::<Slot, TwoForm>::zero(Chart::U1); nc];
        let mut m = vec![Section::<Slot, OneForm>::zero(Chart::U01); nc];
        split(&target.b0, sigma, cg, &mut b0);
        split(&target.b1, sigma, cg, &mut b1);
        split(&target.m, sigma, cg, &mut m);
        for (ci, ((b0, b1), m)) in b0.into_iter().zip(b1).zip(m).enumerate() {
            let piece = Cochain2 { b0, b1, m };
            if !piece.is_zero() {
                by_d.entry(cg.copies[ci].d).or_default().push((si, ci, piece));
            }
        }
    }

    let groups: Vec<_> = by_d.into_iter().collect();
    let solved = par::map(&groups, |(d, pieces)| {
        let targets: Vec<Cochain2<Slot>> = pieces.iter().map(|p| p.2.clone()).collect();
        solve_sym_batch(d / 2, &targets)
    });

    let mut x: Cochain1<Word> = Cochain1::zero();
    for ((_, pieces), sols) in groups.iter().zip(solved) {
        for ((si, ci, _), sol) in pieces.iter().zip(sols?) {
            let (sigma, cg) = (&sigmas[*si], &cgs[*si]);
            embed(&sol.w0, sigma, cg, *ci, &mut x.w0);
            embed(&sol.w1, sigma, cg, *ci, &mut x.w1);
            embed(&sol.l, sigma, cg, *ci, &mut x.l);
        }
    }
    let x = Cochain1 { w0: dynkin_project(&x.w0), w1: dynkin_project(&x.w1), l: dynkin_project(&x.l) };
    let mut check = d1(&x);
    check.add_scaled(target, &Q::one());
    if !check.is_zero() {
        return Err(LieError::Verification(degree));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_kernel::{q, SymSection};

    #[test]
    fn exact_targets_are_solved() {
        // B = −D(X₀) for a random-ish X₀; the solver must return some X with DX = −B
        let slot = Slot::new(1, 1);
        let x0 = Cochain1 {
            w0: SymSection::single(Chart::U0, slot, OneForm::alpha(Laurent::monomial(q(3), -1, 1))).unwrap(),
            w1: SymSection::zero(Chart::U1),
            l: SymSection::single(Chart::U01, slot, Laurent::monomial(q(2), 3, -2)).unwrap(),
        };
        let b = d1(&x0).scale(&q(-1));
        let x = solve_sym_batch(1, std::slice::from_ref(&b)).unwrap().pop().unwrap();
        let mut r = d1(&x);
        r.add_scaled(&b, &q(1));
        assert!(r.is_zero());
    }
}
