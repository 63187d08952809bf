//! The Čech–de Rham double complex of the cover {U0, U1} with coefficients in a
//! flat bundle (S²ⁿH, or the Lie-algebra bundles built on top of it).
//!
//! Degree-1 cochains are triples (ω⁰, ω¹; l): 1-forms on U0, U1 and a function
//! on U01.  D(f0, f1) = (∇f0, ∇f1; f1 − f0) and
//! D(ω⁰, ω¹; l) = (∇ω⁰, ∇ω¹; ω¹ − ω⁰ − ∇l).

pub mod json;
pub mod pairing;
pub mod render;

use exact_kernel::{
    nabla_fun, nabla_one, product, q, Chart, Coeff, CoeffMul, Frame, KernelError, Laurent, OneForm, Section, Slot,
    TwoForm, Q,
};

pub use pairing::{pairing_brute_force, pairing_contract, pairing_rule};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CechError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("component {0} lives on the wrong chart")]
    WrongChart(&'static str),
    #[error("total differential of a degree-2 cochain: the complex stops at degree 2")]
    DegreeTwo,
    #[error("mismatched half-weights {0} and {1}")]
    HalfWeight(u32, u32),
    #[error("malformed cochain JSON: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cochain0<L: Frame> {
    pub f0: Section<L, Laurent>,
    pub f1: Section<L, Laurent>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cochain1<L: Frame> {
    pub w0: Section<L, OneForm>,
    pub w1: Section<L, OneForm>,
    pub l: Section<L, Laurent>,
}

/// No (2,1)-slot: the cover has only two opens.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain2<L: Frame> {
    pub b0: Section<L, TwoForm>,
    pub b1: Section<L, TwoForm>,
    pub m: Section<L, OneForm>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CechCochain<L: Frame> {
    Deg0(Cochain0<L>),
    Deg1(Cochain1<L>),
    Deg2(Cochain2<L>),
}

fn check_chart<L: Frame, K: Coeff>(s: &Section<L, K>, chart: Chart, name: &'static str) -> Result<(), CechError> {
    if s.chart() != chart {
        return Err(CechError::WrongChart(name));
    }
    s.validate()?;
    Ok(())
}

impl<L: Frame> Cochain0<L> {
    pub fn new(f0: Section<L, Laurent>, f1: Section<L, Laurent>) -> Result<Self, CechError> {
        check_chart(&f0, Chart::U0, "f0")?;
        check_chart(&f1, Chart::U1, "f1")?;
        Ok(Self { f0, f1 })
    }

    pub fn zero() -> Self {
        Self { f0: Section::zero(Chart::U0), f1: Section::zero(Chart::U1) }
    }

    pub fn is_zero(&self) -> bool {
        self.f0.is_zero() && self.f1.is_zero()
    }
}

impl<L: Frame> Cochain1<L> {
    /// Checks charts and Gₘ-invariance of every component.
    pub fn new(w0: Section<L, OneForm>, w1: Section<L, OneForm>, l: Section<L, Laurent>) -> Result<Self, CechError> {
        check_chart(&w0, Chart::U0, "omega0")?;
        check_chart(&w1, Chart::U1, "omega1")?;
        check_chart(&l, Chart::U01, "l")?;
        Ok(Self { w0, w1, l })
    }

    pub fn zero() -> Self {
        Self { w0: Section::zero(Chart::U0), w1: Section::zero(Chart::U1), l: Section::zero(Chart::U01) }
    }

    pub fn is_zero(&self) -> bool {
        self.w0.is_zero() && self.w1.is_zero() && self.l.is_zero()
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        self.w0.add_section(&other.w0, c);
        self.w1.add_section(&other.w1, c);
        self.l.add_section(&other.l, c);
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self { w0: self.w0.scale(c), w1: self.w1.scale(c), l: self.l.scale(c) }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &q(1));
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &q(-1));
        out
    }

    pub fn validate(&self) -> Result<(), CechError> {
        check_chart(&self.w0, Chart::U0, "omega0")?;
        check_chart(&self.w1, Chart::U1, "omega1")?;
        check_chart(&self.l, Chart::U01, "l")
    }

    pub fn map_frames<L2: Frame>(&self, f: impl Fn(&L) -> Vec<(Q, L2)>) -> Cochain1<L2> {
        Cochain1 { w0: self.w0.map_frames(&f), w1: self.w1.map_frames(&f), l: self.l.map_frames(&f) }
    }

    pub fn max_abs_exponent(&self) -> i32 {
        self.w0.max_abs_exponent().max(self.w1.max_abs_exponent()).max(self.l.max_abs_exponent())
    }
}

impl<L: Frame> Cochain2<L> {
    pub fn new(b0: Section<L, TwoForm>, b1: Section<L, TwoForm>, m: Section<L, OneForm>) -> Result<Self, CechError> {
        check_chart(&b0, Chart::U0, "b0")?;
        check_chart(&b1, Chart::U1, "b1")?;
        check_chart(&m, Chart::U01, "m")?;
        Ok(Self { b0, b1, m })
    }

    pub fn zero() -> Self {
        Self { b0: Section::zero(Chart::U0), b1: Section::zero(Chart::U1), m: Section::zero(Chart::U01) }
    }

    pub fn is_zero(&self) -> bool {
        self.b0.is_zero() && self.b1.is_zero() && self.m.is_zero()
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        self.b0.add_section(&other.b0, c);
        self.b1.add_section(&other.b1, c);
        self.m.add_section(&other.m, c);
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self { b0: self.b0.scale(c), b1: self.b1.scale(c), m: self.m.scale(c) }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &q(1));
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&q(-1))
    }

    pub fn validate(&self) -> Result<(), CechError> {
        check_chart(&self.b0, Chart::U0, "b0")?;
        check_chart(&self.b1, Chart::U1, "b1")?;
        check_chart(&self.m, Chart::U01, "m")
    }

    pub fn map_frames<L2: Frame>(&self, f: impl Fn(&L) -> Vec<(Q, L2)>) -> Cochain2<L2> {
        Cochain2 { b0: self.b0.map_frames(&f), b1: self.b1.map_frames(&f), m: self.m.map_frames(&f) }
    }

    pub fn filter(&self, pred: impl Fn(&L) -> bool) -> Self {
        Self { b0: self.b0.filter(&pred), b1: self.b1.filter(&pred), m: self.m.filter(&pred) }
    }

    pub fn max_abs_exponent(&self) -> i32 {
        self.b0.max_abs_exponent().max(self.b1.max_abs_exponent()).max(self.m.max_abs_exponent())
    }
}

/// Restriction to U01 of (U1 component) − (U0 component).
pub fn cech_delta<L: Frame, K: Coeff>(on0: &Section<L, K>, on1: &Section<L, K>) -> Section<L, K> {
    let mut out = on1.restrict(Chart::U01).expect("restriction to U01 is total");
    out.add_section(on0, &q(-1));
    out
}

pub fn d0<L: Frame>(c: &Cochain0<L>) -> Cochain1<L> {
    Cochain1 { w0: nabla_fun(&c.f0), w1: nabla_fun(&c.f1), l: cech_delta(&c.f0, &c.f1) }
}

pub fn d1<L: Frame>(c: &Cochain1<L>) -> Cochain2<L> {
    let mut m = cech_delta(&c.w0, &c.w1);
    m.add_section(&nabla_fun(&c.l), &q(-1));
    Cochain2 { b0: nabla_one(&c.w0), b1: nabla_one(&c.w1), m }
}

pub fn total_d<L: Frame>(c: &CechCochain<L>) -> Result<CechCochain<L>, CechError> {
    match c {
        CechCochain::Deg0(x) => Ok(CechCochain::Deg1(d0(x))),
        CechCochain::Deg1(x) => Ok(CechCochain::Deg2(d1(x))),
        CechCochain::Deg2(_) => Err(CechError::DegreeTwo),
    }
}

/// A degree-2 cochain is closed iff b1 − b0 − ∇m = 0 on U01 (3-forms vanish).
pub fn closed_defect<L: Frame>(c: &Cochain2<L>) -> Section<L, TwoForm> {
    let mut out = cech_delta(&c.b0, &c.b1);
    out.add_section(&nabla_one(&c.m), &q(-1));
    out
}

pub fn is_closed1<L: Frame>(c: &Cochain1<L>) -> bool {
    d1(c).is_zero()
}

pub fn is_closed2<L: Frame>(c: &Cochain2<L>) -> bool {
    closed_defect(c).is_zero()
}

/// (ω⁰∧ω′⁰, ω¹∧ω′¹; l·ω′¹ − ω⁰·l′) with frames combined by `rule`.
pub fn wedge<L1, L2, L3>(
    a: &Cochain1<L1>,
    b: &Cochain1<L2>,
    rule: impl Fn(&L1, &L2) -> Vec<(Q, L3)> + Copy,
) -> Cochain2<L3>
where
    L1: Frame,
    L2: Frame,
    L3: Frame,
{
    let b0 = product(&a.w0, &b.w0, Chart::U0, rule);
    let b1 = product(&a.w1, &b.w1, Chart::U1, rule);
    let mut m = product(&a.l, &b.w1, Chart::U01, rule);
    m.add_section(&product(&a.w0, &b.l, Chart::U01, rule), &q(-1));
    Cochain2 { b0, b1, m }
}

/// Generic product of sections used by callers that need other slot pairings.
pub fn section_product<L1, L2, L3, K1, K2>(
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
    product(a, b, chart, rule)
}

/// Half-weight of a symmetric-power section (None if empty or mixed).
pub fn half_weight<K: Coeff>(s: &Section<Slot, K>) -> Option<u32> {
    let mut it = s.labels().map(|x| x.n);
    let n = it.next()?;
    it.all(|m| m == n).then_some(n)
}
