//! Modular forms of the second kind: holomorphic forms as global cocycles, the
//! obstruction classes [u⁻ᵖv⁻ᵠ]SˢTᵗ, and the bad-term elimination producing one
//! cocycle ω̃_{j,k} per pair 4j + 6k = 2n.

use std::fmt;

use cech::{is_closed1, Cochain1};
use exact_kernel::{nabla_fun, nabla_one, par, q, Chart, KernelError, Laurent, OneForm, Section, Slot, SymSection, Q};
use serde::Serialize;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SecondKindError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Cech(#[from] cech::CechError),
    #[error("4j + 6k = {0} is not 2n for a positive pair")]
    BadPair(i64),
    #[error("weight {0} is odd or below 4")]
    BadWeight(i64),
    #[error("elimination needs t = 0 at order {0}: algorithm-order bug")]
    ZeroT(u32),
    #[error("∇l has a dΔ/Δ component at {0}: weight bookkeeping bug")]
    DlogInNabla(Slot),
    #[error("split of ∇l is not ∇-closed on chart {0:?}; the tie-break must be revisited")]
    SplitNotClosed(Chart),
    #[error("cocycle is not D-closed")]
    NotClosed,
    #[error("holomorphic input must be a weight-{expected} polynomial, got {got}")]
    NotHolomorphic { expected: i64, got: String },
}

/// [1/(uᵖvᵠ)]SˢTᵗ
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BadIndex {
    pub p: u32,
    pub q: u32,
    pub s: u32,
    pub t: u32,
}

/// All obstruction indices for S²ⁿH, lexicographic in (p, q).
pub fn enumerate_obstructions(n: u32) -> Vec<BadIndex> {
    let mut out = Vec::new();
    for p in 1.. {
        if 4 * p + 6 > 2 * n {
            break;
        }
        for qq in 1.. {
            if 4 * p + 6 * qq > 2 * n {
                break;
            }
            out.push(BadIndex { p, q: qq, s: n + 2 * p + 3 * qq, t: n - 2 * p - 3 * qq });
        }
    }
    out
}

/// Positive (j, k) with 4j + 6k = 2n, ordered by j.
pub fn jk_pairs(n: u32) -> Vec<(u32, u32)> {
    (1..=n / 2)
        .filter_map(|j| {
            let rest = 2 * n as i64 - 4 * j as i64;
            (rest >= 6 && rest % 6 == 0).then_some((j, (rest / 6) as u32))
        })
        .collect()
}

fn check_weight(weight: i64) -> Result<(), SecondKindError> {
    if weight < 4 || weight % 2 != 0 {
        return Err(SecondKindError::BadWeight(weight));
    }
    Ok(())
}

/// dim M_k at level one.
pub fn modular_dimension(weight: i64) -> Result<usize, SecondKindError> {
    check_weight(weight)?;
    Ok((weight / 12 + if weight % 12 == 2 { 0 } else { 1 }) as usize)
}

/// dim S_k at level one, cross-checked against the (j, k) count.
pub fn cusp_dimension(weight: i64) -> Result<usize, SecondKindError> {
    let d = modular_dimension(weight)? - 1;
    let n = (weight - 2) / 2;
    assert_eq!(d, jk_pairs(n as u32).len(), "dimension formula disagrees with the (j,k) count at weight {weight}");
    Ok(d)
}

/// Isobaric monomials uᵃvᵇ of the given weight, a descending.
pub fn isobaric_monomials(weight: i64) -> Vec<(i32, i32)> {
    let mut out = Vec::new();
    let mut a = weight / 4;
    while a >= 0 {
        let rest = weight - 4 * a;
        if rest % 6 == 0 {
            out.push((a as i32, (rest / 6) as i32));
        }
        a -= 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassId {
    /// h(u, v)·α/Δ·T²ⁿ; `name` is the rendered polynomial.
    Holomorphic { n: u32, name: String },
    /// ω̃_{j,k}
    SecondKind { j: u32, k: u32 },
}

impl ClassId {
    pub fn n(&self) -> u32 {
        match self {
            ClassId::Holomorphic { n, .. } => *n,
            ClassId::SecondKind { j, k } => 2 * j + 3 * k,
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::Holomorphic { name, .. } => write!(f, "f[{name}]"),
            ClassId::SecondKind { j, k } => write!(f, "({j},{k})"),
        }
    }
}

/// One step of the elimination: at `order` r a bad term coefficient·m (α/Δ) was
/// cancelled by adding `added`·m·S^{r−1}T^{2n−r+1} to l.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrailEntry {
    pub order: u32,
    pub a: i32,
    pub b: i32,
    pub coefficient: String,
    pub added: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SecondKindCocycle {
    pub id: ClassId,
    pub n: u32,
    pub cochain: Cochain1<Slot>,
    pub trail: Vec<TrailEntry>,
}

fn is_bad(a: i32, b: i32) -> bool {
    a < 0 && b < 0
}

type BadTerms = (u32, Vec<((i32, i32), Q)>);

/// Bad terms of ∇l at the highest order carrying any, as (order, monomials).
fn top_bad(nl: &SymSection<OneForm>) -> Result<Option<BadTerms>, SecondKindError> {
    for (slot, form) in nl.iter().rev() {
        if !form.dlog.is_zero() {
            return Err(SecondKindError::DlogInNabla(*slot));
        }
        let bad: Vec<_> =
            form.alpha.terms().filter(|((a, b), _)| is_bad(*a, *b)).map(|(m, c)| (*m, c.clone())).collect();
        if !bad.is_empty() {
            return Ok(Some((slot.s, bad)));
        }
    }
    Ok(None)
}

/// Build ω̃_{j,k}: start from l = u⁻ʲv⁻ᵏS²ⁿ, cancel bad terms of ∇l from the top
/// order down, then split ∇l = ω¹ − ω⁰ by chart.
pub fn eliminate_bad_terms(j: u32, k: u32) -> Result<SecondKindCocycle, SecondKindError> {
    if j == 0 || k == 0 {
        return Err(SecondKindError::BadPair(4 * j as i64 + 6 * k as i64));
    }
    let n = 2 * j + 3 * k;
    let mut l = SymSection::single(Chart::U01, Slot::new(n, 2 * n), Laurent::monomial(q(1), -(j as i32), -(k as i32)))?;
    let mut trail = Vec::new();
    let mut nl = nabla_fun(&l);
    while let Some((r, bad)) = top_bad(&nl)? {
        let t = 2 * n + 1 - r;
        if t == 0 || r == 0 {
            return Err(SecondKindError::ZeroT(r));
        }
        let target = Slot::new(n, r - 1);
        let mut add = Laurent::zero();
        for ((a, b), c) in bad {
            let x = -(q(2) * &c) / q(3 * t as i64);
            add.add_term(a, b, x.clone());
            trail.push(TrailEntry { order: r, a, b, coefficient: c.to_string(), added: x.to_string() });
        }
        let step = SymSection::single(Chart::U01, target, add)?;
        l.add_section(&step, &q(1));
        nl = nabla_fun(&l);
    }

    let mut w0 = SymSection::zero(Chart::U0);
    let mut w1 = SymSection::zero(Chart::U1);
    for (slot, form) in nl.iter() {
        let (mut on0, mut on1) = (Laurent::zero(), Laurent::zero());
        for ((a, b), c) in form.alpha.terms() {
            if *a < 0 {
                on0.add_term(*a, *b, -c.clone());
            } else {
                on1.add_term(*a, *b, c.clone());
            }
        }
        w0.add(*slot, &OneForm::alpha(on0))?;
        w1.add(*slot, &OneForm::alpha(on1))?;
    }
    if !nabla_one(&w0).is_zero() {
        return Err(SecondKindError::SplitNotClosed(Chart::U0));
    }
    if !nabla_one(&w1).is_zero() {
        return Err(SecondKindError::SplitNotClosed(Chart::U1));
    }
    let cochain = Cochain1::new(w0, w1, l)?;
    if !is_closed1(&cochain) {
        return Err(SecondKindError::NotClosed);
    }
    Ok(SecondKindCocycle { id: ClassId::SecondKind { j, k }, n, cochain, trail })
}

fn holomorphic_name(h: &Laurent) -> String {
    h.to_string().replace(' ', "")
}

/// h·α/Δ·T²ⁿ on both charts, l = 0.
pub fn holomorphic_cocycle(h: &Laurent, n: u32) -> Result<SecondKindCocycle, SecondKindError> {
    holomorphic_named(h, n, holomorphic_name(h))
}

fn holomorphic_named(h: &Laurent, n: u32, name: String) -> Result<SecondKindCocycle, SecondKindError> {
    let w = 2 * n as i64 + 2;
    if !h.is_polynomial() || !h.is_homogeneous(w) {
        return Err(SecondKindError::NotHolomorphic { expected: w, got: h.to_string() });
    }
    let top = Slot::new(n, 0);
    let form = OneForm::alpha(h.clone());
    let cochain = Cochain1::new(
        SymSection::single(Chart::U0, top, form.clone())?,
        SymSection::single(Chart::U1, top, form)?,
        Section::zero(Chart::U01),
    )?;
    if !is_closed1(&cochain) {
        return Err(SecondKindError::NotClosed);
    }
    Ok(SecondKindCocycle { id: ClassId::Holomorphic { n, name }, n, cochain, trail: vec![] })
}

/// Holomorphic part of the basis: Δ·uᵃvᵇ spanning cusp forms (a descending),
/// then one Eisenstein monomial (largest power of u).
pub fn holomorphic_basis(n: u32) -> Vec<(String, Laurent)> {
    let w = 2 * n as i64 + 2;
    let mut out = Vec::new();
    if w >= 12 {
        for (a, b) in isobaric_monomials(w - 12) {
            let name = if (a, b) == (0, 0) {
                "Δ".to_string()
            } else {
                format!("Δ*{}", holomorphic_name(&Laurent::monomial(q(1), a, b)))
            };
            out.push((name, &Laurent::delta() * &Laurent::monomial(q(1), a, b)));
        }
    }
    if let Some(&(a, b)) = isobaric_monomials(w).first() {
        let m = Laurent::monomial(q(1), a, b);
        out.push((holomorphic_name(&m), m));
    }
    out
}

/// dim M_{2n+2} holomorphic classes followed by ω̃_{j,k} for every pair.
pub fn canonical_basis(n: u32) -> Result<Vec<SecondKindCocycle>, SecondKindError> {
    let mut out = Vec::new();
    for (name, h) in holomorphic_basis(n) {
        out.push(holomorphic_named(&h, n, name)?);
    }
    for c in par::map(&jk_pairs(n), |&(j, k)| eliminate_bad_terms(j, k)) {
        out.push(c?);
    }
    Ok(out)
}

impl SecondKindCocycle {
    /// Lowest S-order appearing in l (None for holomorphic classes).
    pub fn last_l_order(&self) -> Option<u32> {
        self.cochain.l.labels().map(|s| s.s).min()
    }

    /// Leading (top-order) term of l.
    pub fn leading_l(&self) -> Option<(Slot, Laurent)> {
        self.cochain.l.iter().next_back().map(|(s, x)| (*s, x.clone()))
    }

    pub fn pretty(&self) -> String {
        format!("ω̃{} = {}", self.id, cech::render::cochain1(&self.cochain))
    }

    pub fn to_json(&self) -> CocycleJson {
        let (j, k) = match self.id {
            ClassId::SecondKind { j, k } => (Some(j), Some(k)),
            _ => (None, None),
        };
        CocycleJson {
            class: self.id.to_string(),
            j,
            k,
            n: self.n,
            cochain: cech::json::to_json(self.n, &cech::CechCochain::Deg1(self.cochain.clone())),
            trail: self.trail.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleJson {
    pub class: String,
    pub j: Option<u32>,
    pub k: Option<u32>,
    pub n: u32,
    pub cochain: cech::json::CochainJson,
    pub trail: Vec<TrailEntry>,
}
