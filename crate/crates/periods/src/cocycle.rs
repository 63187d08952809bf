//! Group cocycles of SL₂(Z) from pulled-back Čech cocycles.
//!
//! c(γ) = ∫_{γ⁻¹τ₀}^{τ₀} ψ*ω⁽ᶜʰᵃʳᵗ⁾ written in the X, Y basis.  With the right
//! action P|γ(X, Y) = P(aX + bY, cX + dY) these satisfy
//! c(γ₁γ₂) = c(γ₁)|γ₂ + c(γ₂).

use exact_kernel::{par, Chart, OneForm, Section, Slot};
use rug::ops::Pow;
use rug::{Complex, Float};
use second_kind::SecondKindCocycle;

use crate::numeric::{cplx, gauss_legendre, mag, Modular, PointValues};
use crate::poly::{self, Mat2, S, T};
use crate::PeriodsError;

/// Straight segments in the upper half-plane plus the chart whose 1-form is
/// integrated along them.
#[derive(Clone, Debug)]
pub struct HPath {
    pub points: Vec<Complex>,
    pub chart: Chart,
}

impl HPath {
    pub fn new(points: Vec<Complex>, chart: Chart) -> Result<Self, PeriodsError> {
        assert!(points.len() >= 2);
        if chart == Chart::U01 {
            return Err(PeriodsError::Chart("paths are integrated on U0 or U1".into()));
        }
        for p in &points {
            if !p.imag().is_sign_positive() || p.imag().is_zero() {
                return Err(PeriodsError::NotInUpperHalfPlane(p.to_string_radix(10, Some(12))));
            }
        }
        Ok(Self { points, chart })
    }
}

/// Coefficient of dτ in ψ*(c_α α/Δ + c_d dΔ/Δ):
/// c_α(g₂, g₃)·(2/3)(2πi) + c_d(g₂, g₃)·(2πi)(−24G₂).
pub fn pullback_scalar(form: &OneForm, at: &PointValues, two_pi_i: &Complex) -> Complex {
    let prec = two_pi_i.prec().0;
    let mut out = Complex::new(prec);
    if !form.alpha.is_zero() {
        out += at.eval(&form.alpha) * two_pi_i * Float::with_val(prec, 2) / 3u32;
    }
    if !form.dlog.is_zero() {
        out += at.eval(&form.dlog) * two_pi_i * at.e2.clone() * (-24i32);
    }
    out
}

/// Pulled-back S²ⁿH-valued form, as a dτ-coefficient polynomial in X, Y.
pub fn integrand(sec: &Section<Slot, OneForm>, deg: u32, at: &PointValues, two_pi_i: &Complex) -> Vec<Complex> {
    let prec = two_pi_i.prec().0;
    let mut out = vec![Complex::new(prec); deg as usize + 1];
    for (slot, form) in sec.iter() {
        let c = pullback_scalar(form, at, two_pi_i);
        let p = poly::frame_monomial(slot.s, slot.t(), &at.tau, &at.e2, two_pi_i);
        for (o, x) in out.iter_mut().zip(p) {
            *o += x * &c;
        }
    }
    out
}

/// Quadrature settings: `nodes`-point Gauss–Legendre panels bisected until two
/// successive estimates agree to `tol` (absolute).
#[derive(Clone, Debug)]
pub struct Quadrature {
    pub rule: Vec<(Float, Float)>,
    pub tol: Float,
    pub max_depth: u32,
}

impl Quadrature {
    pub fn new(modular: &Modular, digits: u32) -> Self {
        let tol = Float::with_val(modular.prec, 10).pow(1 - digits as i32 / 2);
        Self { rule: gauss_legendre(24, modular.prec), tol, max_depth: 24 }
    }
}

struct Job<'a> {
    sec: &'a Section<Slot, OneForm>,
    deg: u32,
    chart: Chart,
    modular: &'a Modular,
    quad: &'a Quadrature,
}

impl Job<'_> {
    fn eval(&self, tau: &Complex) -> Result<Vec<Complex>, PeriodsError> {
        let at = self.modular.at(tau)?;
        // chart purity: the chart's coefficient functions have poles where g₂ (U0) or g₃ (U1) vanish
        let guard = match self.chart {
            Chart::U0 => mag(&at.g2),
            _ => mag(&at.g3),
        };
        if guard < 1e-12 {
            return Err(PeriodsError::Chart(format!(
                "pole of the {:?} form near τ = {}",
                self.chart,
                tau.to_string_radix(10, Some(10))
            )));
        }
        Ok(integrand(self.sec, self.deg, &at, self.modular.two_pi_i()))
    }

    fn panel(&self, a: &Complex, b: &Complex) -> Result<Vec<Complex>, PeriodsError> {
        let prec = self.modular.prec;
        let half = (b.clone() - a) / 2u32;
        let mid = (b.clone() + a) / 2u32;
        let mut out = vec![Complex::new(prec); self.deg as usize + 1];
        for (x, w) in &self.quad.rule {
            let tau = mid.clone() + half.clone() * x;
            let f = self.eval(&tau)?;
            for (o, v) in out.iter_mut().zip(f) {
                *o += v * w;
            }
        }
        Ok(out.into_iter().map(|v| v * &half).collect())
    }

    fn adaptive(
        &self,
        a: &Complex,
        b: &Complex,
        whole: Vec<Complex>,
        depth: u32,
    ) -> Result<Vec<Complex>, PeriodsError> {
        let mid = (a.clone() + b) / 2u32;
        let left = self.panel(a, &mid)?;
        let right = self.panel(&mid, b)?;
        let both = poly::add(&left, &right);
        if poly::max_abs(&poly::sub(&both, &whole)) <= self.quad.tol {
            return Ok(both);
        }
        if depth >= self.quad.max_depth {
            return Err(PeriodsError::Quadrature(depth));
        }
        let l = self.adaptive(a, &mid, left, depth + 1)?;
        let r = self.adaptive(&mid, b, right, depth + 1)?;
        Ok(poly::add(&l, &r))
    }

    fn segment(&self, a: &Complex, b: &Complex) -> Result<Vec<Complex>, PeriodsError> {
        let whole = self.panel(a, b)?;
        self.adaptive(a, b, whole, 0)
    }
}

/// ∫ along `path` of the chart component of `c`.
pub fn integrate_path(
    c: &SecondKindCocycle,
    path: &HPath,
    modular: &Modular,
    quad: &Quadrature,
) -> Result<Vec<Complex>, PeriodsError> {
    let sec = match path.chart {
        Chart::U0 => &c.cochain.w0,
        _ => &c.cochain.w1,
    };
    let job = Job { sec, deg: 2 * c.n, chart: path.chart, modular, quad };
    let mut out = vec![Complex::new(modular.prec); 2 * c.n as usize + 1];
    for w in path.points.windows(2) {
        out = poly::add(&out, &job.segment(&w[0], &w[1])?);
    }
    Ok(out)
}

/// The generator a cocycle value is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    S,
    T,
}

impl Generator {
    pub fn matrix(self) -> Mat2 {
        match self {
            Generator::S => S,
            Generator::T => T,
        }
    }
}

/// Default chart-U0 path from γ⁻¹τ₀ to τ₀ for τ₀ = t·i: the imaginary axis
/// from i/t for S, the horizontal segment from τ₀ − 1 for T.
pub fn default_path(gamma: Generator, t: f64, prec: u32) -> Result<HPath, PeriodsError> {
    let tau0 = cplx(prec, 0.0, t);
    let start = match gamma {
        Generator::S => Complex::with_val(prec, (0, Float::with_val(prec, 1) / t)),
        Generator::T => cplx(prec, -1.0, t),
    };
    HPath::new(vec![start, tau0], Chart::U0)
}

pub fn integrate_cocycle_value(
    c: &SecondKindCocycle,
    gamma: Generator,
    basepoint: f64,
    modular: &Modular,
    quad: &Quadrature,
) -> Result<Vec<Complex>, PeriodsError> {
    integrate_path(c, &default_path(gamma, basepoint, modular.prec)?, modular, quad)
}

/// Values of a cocycle on the generators S, T.
#[derive(Clone, Debug)]
pub struct GroupCocycle {
    pub on_s: Vec<Complex>,
    pub on_t: Vec<Complex>,
}

impl GroupCocycle {
    pub fn compute(
        c: &SecondKindCocycle,
        basepoint: f64,
        modular: &Modular,
        quad: &Quadrature,
    ) -> Result<Self, PeriodsError> {
        let mut vals =
            par::map(&[Generator::S, Generator::T], |&g| integrate_cocycle_value(c, g, basepoint, modular, quad));
        let on_t = vals.pop().unwrap()?;
        let on_s = vals.pop().unwrap()?;
        Ok(Self { on_s, on_t })
    }

    pub fn zero(deg: u32, prec: u32) -> Self {
        Self { on_s: vec![Complex::new(prec); deg as usize + 1], on_t: vec![Complex::new(prec); deg as usize + 1] }
    }

    /// c(ST) = c(S)|T + c(T)
    pub fn on_st(&self) -> Vec<Complex> {
        poly::add(&poly::act(&self.on_s, T), &self.on_t)
    }
}

/// max defect of c(S)|(1 + S) = 0 and c(ST)|(1 + ST + (ST)²) = 0, the
/// consequences of S² = (ST)³ = −1 acting trivially on even degree.
pub fn cocycle_relation_check(c: &GroupCocycle) -> Float {
    let s_rel = poly::add(&c.on_s, &poly::act(&c.on_s, S));
    let st = c.on_st();
    let u = poly::mat_mul(S, T);
    let once = poly::act(&st, u);
    let twice = poly::act(&once, u);
    let u_rel = poly::add(&poly::add(&st, &once), &twice);
    let a = poly::max_abs(&s_rel);
    let b = poly::max_abs(&u_rel);
    if a > b {
        a
    } else {
        b
    }
}

/// |c(ST) from the cocycle law − ∫ along (ST)⁻¹τ₀ → τ₀ − 1 → τ₀| for τ₀ = t·i.
pub fn composite_path_defect(
    c: &SecondKindCocycle,
    values: &GroupCocycle,
    basepoint: f64,
    modular: &Modular,
    quad: &Quadrature,
) -> Result<Float, PeriodsError> {
    let prec = modular.prec;
    // (ST)⁻¹τ₀ = −1/τ₀ − 1
    let start = Complex::with_val(prec, (-1, Float::with_val(prec, 1) / basepoint));
    let path = HPath::new(vec![start, cplx(prec, -1.0, basepoint), cplx(prec, 0.0, basepoint)], Chart::U0)?;
    let direct = integrate_path(c, &path, modular, quad)?;
    Ok(poly::max_abs(&poly::sub(&direct, &values.on_st())))
}
