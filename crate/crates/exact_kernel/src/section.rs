//! Sections of twisted functions / 1-forms / 2-forms on a chart, and ∇₀.
//!
//! A section is a finite sum Σ_l K_l ⊗ l over *frame elements* l.  For sections
//! of S²ⁿH the frame elements are the monomials SˢTᵗ; the Lie-algebra code
//! reuses the same machinery with words in generators as frame elements.  The
//! only thing ∇₀ needs from a frame is its connection matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::forms::{d_fun, wedge_scalars, Basis, OneForm, TwoForm};
use crate::{q, qr, Chart, KernelError, Laurent, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Function,
    OneForm,
    TwoForm,
}

/// Coefficient types: a Laurent function, a 1-form or a 2-form.
pub trait Coeff: Clone + Default + PartialEq + fmt::Debug + Send + Sync + 'static {
    const KIND: Kind;
    fn is_zero(&self) -> bool;
    fn add_scaled(&mut self, other: &Self, c: &Q);
    fn mul_fun(&self, f: &Laurent) -> Self;
    fn parts(&self) -> Vec<(Basis, &Laurent)>;
    fn parts_mut(&mut self) -> Vec<(Basis, &mut Laurent)>;
    fn bases() -> &'static [Basis];

    fn admits(&self, chart: Chart) -> bool {
        self.parts().iter().all(|(_, x)| x.admits(chart))
    }

    fn check_chart(&self, chart: Chart) -> Result<(), KernelError> {
        self.parts().iter().try_for_each(|(_, x)| x.check_chart(chart))
    }

    /// Homogeneous of form weight `w` (see crate docs for the offsets).
    fn is_homogeneous(&self, w: i64) -> bool {
        self.parts().iter().all(|(b, x)| x.is_homogeneous(w + b.offset()))
    }

    fn max_abs_exponent(&self) -> i32 {
        self.parts().iter().map(|(_, x)| x.max_abs_exponent()).max().unwrap_or(0)
    }
}

impl Coeff for Laurent {
    const KIND: Kind = Kind::Function;
    fn is_zero(&self) -> bool {
        Laurent::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, c: &Q) {
        Laurent::add_scaled(self, other, c)
    }
    fn mul_fun(&self, f: &Laurent) -> Self {
        self * f
    }
    fn parts(&self) -> Vec<(Basis, &Laurent)> {
        vec![(Basis::Fun, self)]
    }
    fn parts_mut(&mut self) -> Vec<(Basis, &mut Laurent)> {
        vec![(Basis::Fun, self)]
    }
    fn bases() -> &'static [Basis] {
        &[Basis::Fun]
    }
}

impl Coeff for OneForm {
    const KIND: Kind = Kind::OneForm;
    fn is_zero(&self) -> bool {
        OneForm::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, c: &Q) {
        OneForm::add_scaled(self, other, c)
    }
    fn mul_fun(&self, f: &Laurent) -> Self {
        OneForm::mul_fun(self, f)
    }
    fn parts(&self) -> Vec<(Basis, &Laurent)> {
        vec![(Basis::AlphaOverDelta, &self.alpha), (Basis::DlogDelta, &self.dlog)]
    }
    fn parts_mut(&mut self) -> Vec<(Basis, &mut Laurent)> {
        vec![(Basis::AlphaOverDelta, &mut self.alpha), (Basis::DlogDelta, &mut self.dlog)]
    }
    fn bases() -> &'static [Basis] {
        &[Basis::AlphaOverDelta, Basis::DlogDelta]
    }
}

impl Coeff for TwoForm {
    const KIND: Kind = Kind::TwoForm;
    fn is_zero(&self) -> bool {
        TwoForm::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, c: &Q) {
        TwoForm::add_scaled(self, other, c)
    }
    fn mul_fun(&self, f: &Laurent) -> Self {
        TwoForm::mul_fun(self, f)
    }
    fn parts(&self) -> Vec<(Basis, &Laurent)> {
        vec![(Basis::Vol, &self.vol)]
    }
    fn parts_mut(&mut self) -> Vec<(Basis, &mut Laurent)> {
        vec![(Basis::Vol, &mut self.vol)]
    }
    fn bases() -> &'static [Basis] {
        &[Basis::Vol]
    }
}

/// Products of coefficients.  Functions are even, so no signs appear.
pub trait CoeffMul<R: Coeff>: Coeff {
    type Out: Coeff;
    fn cmul(&self, r: &R) -> Self::Out;
}

impl CoeffMul<Laurent> for Laurent {
    type Out = Laurent;
    fn cmul(&self, r: &Laurent) -> Laurent {
        self * r
    }
}

impl CoeffMul<OneForm> for Laurent {
    type Out = OneForm;
    fn cmul(&self, r: &OneForm) -> OneForm {
        r.mul_fun(self)
    }
}

impl CoeffMul<Laurent> for OneForm {
    type Out = OneForm;
    fn cmul(&self, r: &Laurent) -> OneForm {
        self.mul_fun(r)
    }
}

impl CoeffMul<OneForm> for OneForm {
    type Out = TwoForm;
    fn cmul(&self, r: &OneForm) -> TwoForm {
        wedge_scalars(self, r)
    }
}

impl CoeffMul<TwoForm> for Laurent {
    type Out = TwoForm;
    fn cmul(&self, r: &TwoForm) -> TwoForm {
        r.mul_fun(self)
    }
}

impl CoeffMul<Laurent> for TwoForm {
    type Out = TwoForm;
    fn cmul(&self, r: &Laurent) -> TwoForm {
        self.mul_fun(r)
    }
}

/// A frame element of a flat bundle: its Gₘ-weight and ∇₀ of it.
pub trait Frame: Clone + Ord + fmt::Debug + Send + Sync + 'static {
    fn gm_weight(&self) -> i64;
    /// ∇₀(self) = Σ θ ⊗ l'
    fn connection(&self) -> Vec<(OneForm, Self)>;
}

/// The monomial SˢTᵗ of S²ⁿH, t = 2n − s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub n: u32,
    pub s: u32,
}

impl Slot {
    pub fn new(n: u32, s: u32) -> Self {
        assert!(s <= 2 * n, "S^{s} does not fit in S^{}H", 2 * n);
        Self { n, s }
    }

    pub fn t(&self) -> u32 {
        2 * self.n - self.s
    }

    /// The trivial frame (n = 0) used for scalar cochains.
    pub fn unit() -> Self {
        Self { n: 0, s: 0 }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S^{}T^{}", self.s, self.t())
    }
}

/// ∇₀(SˢTᵗ) from the dual-derivation formula:
/// each T contributes −1/12 dΔ/Δ·T + 3/2 α/Δ·S, each S contributes
/// −u/8 α/Δ·T + 1/12 dΔ/Δ·S.
pub fn slot_connection(n: u32, s: u32) -> Vec<(OneForm, u32)> {
    let t = 2 * n - s;
    let mut out = Vec::with_capacity(3);
    let diag = qr(s as i64 - t as i64, 12);
    if !diag.is_zero() {
        out.push((OneForm::dlog(Laurent::constant(diag)), s));
    }
    if t > 0 {
        out.push((OneForm::alpha(Laurent::constant(qr(3 * t as i64, 2))), s + 1));
    }
    if s > 0 {
        out.push((OneForm::alpha(Laurent::monomial(qr(-(s as i64), 8), 1, 0)), s - 1));
    }
    out
}

impl Frame for Slot {
    fn gm_weight(&self) -> i64 {
        self.s as i64 - self.t() as i64
    }

    fn connection(&self) -> Vec<(OneForm, Self)> {
        slot_connection(self.n, self.s).into_iter().map(|(th, s)| (th, Slot { n: self.n, s })).collect()
    }
}

/// Σ_l K_l ⊗ l on one chart.  Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct Section<L: Frame, K: Coeff> {
    chart: Chart,
    coeffs: BTreeMap<L, K>,
}

pub type SymSection<K> = Section<Slot, K>;

impl<L: Frame, K: Coeff> fmt::Debug for Section<L, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.chart)?;
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

impl<L: Frame, K: Coeff> Section<L, K> {
    pub fn zero(chart: Chart) -> Self {
        Self { chart, coeffs: BTreeMap::new() }
    }

    /// Fails fast on chart violations.
    pub fn from_terms<I: IntoIterator<Item = (L, K)>>(chart: Chart, it: I) -> Result<Self, KernelError> {
        let mut out = Self::zero(chart);
        for (l, k) in it {
            out.add(l, &k)?;
        }
        Ok(out)
    }

    pub fn single(chart: Chart, l: L, k: K) -> Result<Self, KernelError> {
        Self::from_terms(chart, [(l, k)])
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn get(&self, l: &L) -> Option<&K> {
        self.coeffs.get(l)
    }

    pub fn coeff(&self, l: &L) -> K {
        self.coeffs.get(l).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> std::collections::btree_map::Iter<'_, L, K> {
        self.coeffs.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> + '_ {
        self.coeffs.keys()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// self += k ⊗ l, checking chart membership.
    pub fn add(&mut self, l: L, k: &K) -> Result<(), KernelError> {
        k.check_chart(self.chart)?;
        self.add_scaled_term(l, k, &q(1));
        Ok(())
    }

    /// self += c·k ⊗ l.  Chart membership is only debug-asserted: use where the
    /// coefficient already lives on this chart.
    pub fn add_scaled_term(&mut self, l: L, k: &K, c: &Q) {
        if c.is_zero() || k.is_zero() {
            return;
        }
        debug_assert!(k.admits(self.chart), "chart violation in {k:?} on {:?}", self.chart);
        let entry = self.coeffs.entry(l);
        use std::collections::btree_map::Entry;
        match entry {
            Entry::Vacant(e) => {
                let mut x = K::default();
                x.add_scaled(k, c);
                e.insert(x);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_scaled(k, c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// self += c·other.  `other` must live on a chart that restricts to ours.
    pub fn add_section(&mut self, other: &Self, c: &Q) {
        assert!(
            other.chart.restricts_to(self.chart),
            "cannot add a section on {:?} to one on {:?}",
            other.chart,
            self.chart
        );
        for (l, k) in &other.coeffs {
            self.add_scaled_term(l.clone(), k, c);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.restrict_unchecked_wider(other.chart);
        out.add_section(other, &q(1));
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.restrict_unchecked_wider(other.chart);
        out.add_section(other, &q(-1));
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.chart);
        out.add_section(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&q(-1))
    }

    /// Restriction to `chart`: always fine towards U01, otherwise checked.
    pub fn restrict(&self, chart: Chart) -> Result<Self, KernelError> {
        if !self.chart.restricts_to(chart) {
            for k in self.coeffs.values() {
                k.check_chart(chart)?;
            }
        }
        Ok(Self { chart, coeffs: self.coeffs.clone() })
    }

    /// The common chart of self and something on `other`, with self restricted to it.
    fn restrict_unchecked_wider(&self, other: Chart) -> Self {
        let chart = if self.chart == other { other } else { Chart::U01 };
        Self { chart, coeffs: self.coeffs.clone() }
    }

    /// Multiply every coefficient by a function (chart-checked).
    pub fn mul_fun(&self, f: &Laurent) -> Result<Self, KernelError> {
        f.check_chart(self.chart)?;
        let mut out = Self::zero(self.chart);
        for (l, k) in &self.coeffs {
            out.add_scaled_term(l.clone(), &k.mul_fun(f), &q(1));
        }
        Ok(out)
    }

    /// Check chart membership and Gₘ-invariance: the coefficient of l has form
    /// weight −gm_weight(l).
    pub fn validate(&self) -> Result<(), KernelError> {
        for (l, k) in &self.coeffs {
            k.check_chart(self.chart)?;
            let w = -l.gm_weight();
            if !k.is_homogeneous(w) {
                return Err(KernelError::Weight { label: format!("{l:?}"), expected: w });
            }
        }
        Ok(())
    }

    pub fn max_abs_exponent(&self) -> i32 {
        self.coeffs.values().map(|k| k.max_abs_exponent()).max().unwrap_or(0)
    }

    /// Relabel through a linear map on frames.
    pub fn map_frames<L2: Frame>(&self, f: impl Fn(&L) -> Vec<(Q, L2)>) -> Section<L2, K> {
        let mut out = Section::zero(self.chart);
        for (l, k) in &self.coeffs {
            for (c, l2) in f(l) {
                out.add_scaled_term(l2, k, &c);
            }
        }
        out
    }

    /// Keep only frames satisfying `pred`.
    pub fn filter(&self, pred: impl Fn(&L) -> bool) -> Self {
        Self {
            chart: self.chart,
            coeffs: self.coeffs.iter().filter(|(l, _)| pred(l)).map(|(l, k)| (l.clone(), k.clone())).collect(),
        }
    }

    pub fn into_map(self) -> BTreeMap<L, K> {
        self.coeffs
    }
}

/// Σ_{l1,l2} (K1_{l1} · K2_{l2}) ⊗ rule(l1, l2) on `chart`; both factors must
/// restrict to `chart`.
pub fn product<L1, L2, L3, K1, K2>(
    a: &Section<L1, K1>,
    b: &Section<L2, K2>,
    chart: Chart,
    rule: impl Fn(&L1, &L2) -> Vec<(Q, L3)>,
) -> Section<L3, K1::Out>
where
    L1: Frame,
    L2: Frame,
    L3: Frame,
    K1: CoeffMul<K2>,
    K2: Coeff,
{
    assert!(a.chart().restricts_to(chart) && b.chart().restricts_to(chart));
    let mut out = Section::zero(chart);
    for (l1, k1) in a.iter() {
        for (l2, k2) in b.iter() {
            let terms = rule(l1, l2);
            if terms.is_empty() {
                continue;
            }
            let k = k1.cmul(k2);
            for (c, l3) in terms {
                out.add_scaled_term(l3, &k, &c);
            }
        }
    }
    out
}

/// ∇₀ on twisted functions: Σ df_l ⊗ l + f_l ∇₀l.
pub fn nabla_fun<L: Frame>(sec: &Section<L, Laurent>) -> Section<L, OneForm> {
    let mut out = Section::zero(sec.chart());
    let one = q(1);
    for (l, f) in sec.iter() {
        out.add_scaled_term(l.clone(), &d_fun(f), &one);
        for (th, l2) in l.connection() {
            out.add_scaled_term(l2, &th.mul_fun(f), &one);
        }
    }
    out
}

/// ∇₀ on twisted 1-forms: ∇₀(η ⊗ l) = dη ⊗ l − η ∧ ∇₀l.
pub fn nabla_one<L: Frame>(sec: &Section<L, OneForm>) -> Section<L, TwoForm> {
    let mut out = Section::zero(sec.chart());
    let one = q(1);
    let minus = q(-1);
    for (l, eta) in sec.iter() {
        out.add_scaled_term(l.clone(), &eta.d(), &one);
        for (th, l2) in l.connection() {
            out.add_scaled_term(l2, &wedge_scalars(eta, &th), &minus);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(c: Q, a: i32, b: i32) -> Laurent {
        Laurent::monomial(c, a, b)
    }

    fn alpha(c: Q, a: i32, b: i32) -> OneForm {
        OneForm::alpha(mono(c, a, b))
    }

    #[test]
    fn example_one_one() {
        // ∇₀(1/(uv) S¹⁰) = −(9/u² + u/(2v²)) α/Δ S¹⁰ − 5/(4v) α/Δ S⁹T
        let l = SymSection::single(Chart::U01, Slot::new(5, 10), mono(q(1), -1, -1)).unwrap();
        let got = nabla_fun(&l);
        let want = SymSection::from_terms(
            Chart::U01,
            [
                (Slot::new(5, 10), OneForm::alpha(Laurent::from_terms([((-2, 0), q(-9)), ((1, -2), qr(-1, 2))]))),
                (Slot::new(5, 9), alpha(qr(-5, 4), 0, -1)),
            ],
        )
        .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn example_two_one() {
        let l = SymSection::single(Chart::U01, Slot::new(7, 14), mono(q(1), -2, -1)).unwrap();
        let want = SymSection::from_terms(
            Chart::U01,
            [
                (Slot::new(7, 14), OneForm::alpha(Laurent::from_terms([((-3, 0), q(-18)), ((0, -2), qr(-1, 2))]))),
                (Slot::new(7, 13), alpha(qr(-7, 4), -1, -1)),
            ],
        )
        .unwrap();
        assert_eq!(nabla_fun(&l), want);

        let l = SymSection::single(Chart::U01, Slot::new(7, 12), mono(q(1), -1, -1)).unwrap();
        let want = SymSection::from_terms(
            Chart::U01,
            [
                (Slot::new(7, 13), alpha(q(3), -1, -1)),
                (Slot::new(7, 12), OneForm::alpha(Laurent::from_terms([((-2, 0), q(-9)), ((1, -2), qr(-1, 2))]))),
                (Slot::new(7, 11), alpha(qr(-3, 2), 0, -1)),
            ],
        )
        .unwrap();
        assert_eq!(nabla_fun(&l), want);
    }

    #[test]
    fn trivial_frame_is_flat() {
        let c = SymSection::single(Chart::U0, Slot::unit(), Laurent::constant(q(5))).unwrap();
        assert!(nabla_fun(&c).is_zero());
        let a = SymSection::single(Chart::U0, Slot::unit(), alpha(q(1), 0, 0)).unwrap();
        assert_eq!(nabla_one(&a).coeff(&Slot::unit()).vol, Laurent::constant(q(-1)));
    }

    #[test]
    fn closed_chart_forms_of_first_cusp_class() {
        let w0 = SymSection::single(Chart::U0, Slot::new(5, 10), alpha(q(9), -2, 0)).unwrap();
        assert!(nabla_one(&w0).is_zero());
        let w1 = SymSection::from_terms(
            Chart::U1,
            [(Slot::new(5, 10), alpha(qr(-1, 2), 1, -2)), (Slot::new(5, 9), alpha(qr(-5, 4), 0, -1))],
        )
        .unwrap();
        assert!(nabla_one(&w1).is_zero());
    }

    #[test]
    fn chart_checked_on_construction() {
        assert!(SymSection::single(Chart::U1, Slot::new(5, 10), alpha(q(9), -2, 0)).is_err());
    }

    #[test]
    fn weight_validation() {
        let ok = SymSection::single(Chart::U01, Slot::new(5, 10), mono(q(1), -1, -1)).unwrap();
        assert!(ok.validate().is_ok());
        let bad = SymSection::single(Chart::U01, Slot::new(5, 9), mono(q(1), -1, -1)).unwrap();
        assert!(bad.validate().is_err());
    }
}
