//! Logarithmic forms in the basis of α/Δ, dΔ/Δ (degree 1) and du∧dv/Δ (degree 2).
//!
//! The identities behind every formula here:
//!
//! ```text
//! α = 2u dv − 3v du            dα  = 5 du∧dv
//! dΔ = 3u² du − 54v dv         α∧dΔ = −6Δ du∧dv
//! d(α/Δ) = (5Δ − 6Δ)/Δ² du∧dv = −du∧dv/Δ
//! ```

use std::ops::{Add, Neg, Sub};

use crate::{q, qr, Laurent, Q};

/// Tag for the basis element a Laurent coefficient multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    Fun,
    AlphaOverDelta,
    DlogDelta,
    Vol,
}

impl Basis {
    /// weight(coefficient) − form weight
    pub fn offset(self) -> i64 {
        match self {
            Basis::Fun | Basis::DlogDelta => 0,
            Basis::AlphaOverDelta | Basis::Vol => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::Fun => "fun",
            Basis::AlphaOverDelta => "alphaOverDelta",
            Basis::DlogDelta => "dlogDelta",
            Basis::Vol => "vol",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "fun" => Basis::Fun,
            "alphaOverDelta" => Basis::AlphaOverDelta,
            "dlogDelta" => Basis::DlogDelta,
            "vol" => Basis::Vol,
            _ => return None,
        })
    }
}

/// alpha·α/Δ + dlog·dΔ/Δ
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OneForm {
    pub alpha: Laurent,
    pub dlog: Laurent,
}

/// vol·du∧dv/Δ
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TwoForm {
    pub vol: Laurent,
}

impl OneForm {
    pub fn new(alpha: Laurent, dlog: Laurent) -> Self {
        Self { alpha, dlog }
    }

    pub fn alpha(c: Laurent) -> Self {
        Self::new(c, Laurent::zero())
    }

    pub fn dlog(c: Laurent) -> Self {
        Self::new(Laurent::zero(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.dlog.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.alpha.scale(c), self.dlog.scale(c))
    }

    pub fn mul_fun(&self, f: &Laurent) -> Self {
        Self::new(&self.alpha * f, &self.dlog * f)
    }

    pub fn add_scaled(&mut self, other: &OneForm, c: &Q) {
        self.alpha.add_scaled(&other.alpha, c);
        self.dlog.add_scaled(&other.dlog, c);
    }

    /// Exterior derivative.
    pub fn d(&self) -> TwoForm {
        let a = &self.alpha;
        let g = &self.dlog;
        // d(a α/Δ) = (2u a_u + 3v a_v − a) du∧dv/Δ
        let mut vol = a.d_u().mul_monomial(&q(2), 1, 0);
        vol += &a.d_v().mul_monomial(&q(3), 0, 1);
        vol -= a;
        // d(g dΔ/Δ) = (−54v g_u − 3u² g_v) du∧dv/Δ
        vol += &g.d_u().mul_monomial(&q(-54), 0, 1);
        vol += &g.d_v().mul_monomial(&q(-3), 2, 0);
        TwoForm { vol }
    }

    pub fn wedge(&self, other: &OneForm) -> TwoForm {
        wedge_scalars(self, other)
    }
}

impl TwoForm {
    pub fn new(vol: Laurent) -> Self {
        Self { vol }
    }

    pub fn is_zero(&self) -> bool {
        self.vol.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.vol.scale(c))
    }

    pub fn mul_fun(&self, f: &Laurent) -> Self {
        Self::new(&self.vol * f)
    }

    pub fn add_scaled(&mut self, other: &TwoForm, c: &Q) {
        self.vol.add_scaled(&other.vol, c);
    }
}

/// df in the logarithmic basis.
pub fn d_fun(f: &Laurent) -> OneForm {
    duv_to_basis(&f.d_u(), &f.d_v())
}

/// (x_α α/Δ + x_d dΔ/Δ) ∧ (y_α α/Δ + y_d dΔ/Δ) = −6(x_α y_d − x_d y_α) du∧dv/Δ
pub fn wedge_scalars(x: &OneForm, y: &OneForm) -> TwoForm {
    let mut vol = &x.alpha * &y.dlog;
    vol -= &(&x.dlog * &y.alpha);
    TwoForm::new(vol.scale(&q(-6)))
}

/// cu du + cv dv rewritten as cAlpha α/Δ + cDLog dΔ/Δ.
///
/// The matrix [[−3v, 2u], [3u², −54v]] (α, dΔ in terms of du, dv) has determinant
/// −6Δ, so its inverse has a single 1/Δ which the basis absorbs:
/// cAlpha = 9v·cu + (u²/2)·cv, cDLog = (u/3)·cu + (v/2)·cv.
pub fn duv_to_basis(cu: &Laurent, cv: &Laurent) -> OneForm {
    let mut alpha = cu.mul_monomial(&q(9), 0, 1);
    alpha += &cv.mul_monomial(&qr(1, 2), 2, 0);
    let mut dlog = cu.mul_monomial(&qr(1, 3), 1, 0);
    dlog += &cv.mul_monomial(&qr(1, 2), 0, 1);
    OneForm::new(alpha, dlog)
}

/// Δ·(the du, dv coefficients) of a 1-form, which are polynomial:
/// returns (Δ·cu, Δ·cv) = (−3v·cAlpha + 3u²·cDLog, 2u·cAlpha − 54v·cDLog).
pub fn expand_to_duv(x: &OneForm) -> (Laurent, Laurent) {
    let mut cu = x.alpha.mul_monomial(&q(-3), 0, 1);
    cu += &x.dlog.mul_monomial(&q(3), 2, 0);
    let mut cv = x.alpha.mul_monomial(&q(2), 1, 0);
    cv += &x.dlog.mul_monomial(&q(-54), 0, 1);
    (cu, cv)
}

impl Add for &OneForm {
    type Output = OneForm;
    fn add(self, rhs: &OneForm) -> OneForm {
        OneForm::new(&self.alpha + &rhs.alpha, &self.dlog + &rhs.dlog)
    }
}

impl Sub for &OneForm {
    type Output = OneForm;
    fn sub(self, rhs: &OneForm) -> OneForm {
        OneForm::new(&self.alpha - &rhs.alpha, &self.dlog - &rhs.dlog)
    }
}

impl Neg for &OneForm {
    type Output = OneForm;
    fn neg(self) -> OneForm {
        OneForm::new(-&self.alpha, -&self.dlog)
    }
}

impl Add for &TwoForm {
    type Output = TwoForm;
    fn add(self, rhs: &TwoForm) -> TwoForm {
        TwoForm::new(&self.vol + &rhs.vol)
    }
}

impl Sub for &TwoForm {
    type Output = TwoForm;
    fn sub(self, rhs: &TwoForm) -> TwoForm {
        TwoForm::new(&self.vol - &rhs.vol)
    }
}

impl Neg for &TwoForm {
    type Output = TwoForm;
    fn neg(self) -> TwoForm {
        TwoForm::new(-&self.vol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(c: Q, a: i32, b: i32) -> Laurent {
        Laurent::monomial(c, a, b)
    }

    #[test]
    fn du_over_u() {
        let x = duv_to_basis(&mono(q(1), -1, 0), &Laurent::zero());
        assert_eq!(x.dlog, Laurent::constant(qr(1, 3)));
        assert_eq!(x.alpha, mono(q(9), -1, 1));
    }

    #[test]
    fn dv_over_v() {
        let x = duv_to_basis(&Laurent::zero(), &mono(q(1), 0, -1));
        assert_eq!(x.dlog, Laurent::constant(qr(1, 2)));
        assert_eq!(x.alpha, mono(qr(1, 2), 2, -1));
    }

    #[test]
    fn alpha_itself() {
        let x = duv_to_basis(&mono(q(-3), 0, 1), &mono(q(2), 1, 0));
        assert_eq!(x.alpha, Laurent::delta());
        assert!(x.dlog.is_zero());
        assert!(duv_to_basis(&Laurent::zero(), &Laurent::zero()).is_zero());
    }

    #[test]
    fn wedge_basis() {
        let a = OneForm::alpha(Laurent::one());
        let g = OneForm::dlog(Laurent::one());
        assert!(a.wedge(&a).is_zero());
        assert!(g.wedge(&g).is_zero());
        assert_eq!(a.wedge(&g).vol, Laurent::constant(q(-6)));
        assert_eq!(g.wedge(&a).vol, Laurent::constant(q(6)));
    }

    #[test]
    fn d_alpha_over_delta() {
        assert_eq!(OneForm::alpha(Laurent::one()).d().vol, Laurent::constant(q(-1)));
        assert!(OneForm::dlog(Laurent::one()).d().is_zero());
    }
}
