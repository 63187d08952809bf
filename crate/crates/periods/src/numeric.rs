//! Multiprecision plumbing: exact rationals → MPFR, q-expansions evaluated on
//! the upper half-plane, Gauss–Legendre rules.

use exact_kernel::{Laurent, Q};
use qseries::{eisenstein, g2g3, QSeries};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Integer};

use crate::PeriodsError;

/// Working precision in bits for `digits` decimal digits (plus guard bits).
pub fn prec_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 48
}

pub fn q_to_float(x: &Q, prec: u32) -> Float {
    let n: Integer = x.numer().to_string().parse().expect("integer");
    let d: Integer = x.denom().to_string().parse().expect("integer");
    Float::with_val(prec, n) / Float::with_val(prec, d)
}

pub fn cplx(prec: u32, re: f64, im: f64) -> Complex {
    Complex::with_val(prec, (re, im))
}

pub fn two_pi_i(prec: u32) -> Complex {
    let pi = Float::with_val(prec, Constant::Pi);
    Complex::with_val(prec, (Float::new(prec), pi * 2u32))
}

pub fn mag(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// Float image of a truncated q-series.
fn series_floats(s: &QSeries, prec: u32) -> Vec<Float> {
    s.coeffs().iter().map(|c| q_to_float(c, prec)).collect()
}

fn horner(coeffs: &[Float], q: &Complex) -> Complex {
    let prec = q.prec().0;
    let mut acc = Complex::new(prec);
    for c in coeffs.iter().rev() {
        acc *= q;
        acc += c;
    }
    acc
}

/// Values of g₂, g₃, G₂ on the upper half-plane from q-expansions of order M.
#[derive(Clone, Debug)]
pub struct Modular {
    pub prec: u32,
    pub order: usize,
    g2: Vec<Float>,
    g3: Vec<Float>,
    e2: Vec<Float>,
    two_pi_i: Complex,
    /// required bound on |q|^{M+1}(M+1)⁶ — the relative tail size
    tail_tol: Float,
}

#[derive(Clone, Debug)]
pub struct PointValues {
    pub tau: Complex,
    pub g2: Complex,
    pub g3: Complex,
    /// G₂ = −1/24 + Σσ₁(n)qⁿ
    pub e2: Complex,
}

impl Modular {
    pub fn new(digits: u32, order: usize) -> Self {
        let prec = prec_bits(digits);
        let (g2, g3) = g2g3(order);
        let e2 = eisenstein(2, order).expect("even weight");
        Self {
            prec,
            order,
            g2: series_floats(&g2, prec),
            g3: series_floats(&g3, prec),
            e2: series_floats(&e2, prec),
            two_pi_i: two_pi_i(prec),
            tail_tol: Float::with_val(prec, 10).pow(-(digits as i32) / 2 - 2),
        }
    }

    pub fn two_pi_i(&self) -> &Complex {
        &self.two_pi_i
    }

    pub fn at(&self, tau: &Complex) -> Result<PointValues, PeriodsError> {
        if tau.imag().is_sign_negative() || tau.imag().is_zero() {
            return Err(PeriodsError::NotInUpperHalfPlane(tau.to_string_radix(10, Some(12))));
        }
        let q = (self.two_pi_i.clone() * tau).exp();
        let aq = mag(&q);
        let m1 = (self.order + 1) as u32;
        let tail = aq.clone().pow(m1) * Float::with_val(self.prec, m1).pow(6u32);
        if tail > self.tail_tol {
            return Err(PeriodsError::SeriesOrder { order: self.order, abs_q: aq.to_f64() });
        }
        Ok(PointValues {
            tau: tau.clone(),
            g2: horner(&self.g2, &q),
            g3: horner(&self.g3, &q),
            e2: horner(&self.e2, &q),
        })
    }
}

impl PointValues {
    pub fn delta(&self) -> Complex {
        let a = self.g2.clone().pow(3u32);
        let b = self.g3.clone().pow(2u32) * 27u32;
        a - b
    }

    /// Σ c_ab g₂ᵃ g₃ᵇ
    pub fn eval(&self, f: &Laurent) -> Complex {
        let prec = self.g2.prec().0;
        let mut out = Complex::new(prec);
        for (&(a, b), c) in f.terms() {
            let t = self.g2.clone().pow(a) * self.g3.clone().pow(b) * q_to_float(c, prec);
            out += t;
        }
        out
    }
}

/// n-point Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize, prec: u32) -> Vec<(Float, Float)> {
    let eps = Float::with_val(prec, 2).pow(-(prec as i32) + 8);
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let guess = ((i as f64 - 0.25) / (n as f64 + 0.5) * std::f64::consts::PI).cos();
        let mut x = Float::with_val(prec, guess);
        for _ in 0..200 {
            let (p, d) = legendre(n, &x);
            let dx = p / &d;
            x -= &dx;
            if dx.abs() < eps {
                break;
            }
        }
        let (_, d) = legendre(n, &x);
        let one = Float::with_val(prec, 1);
        let w = Float::with_val(prec, 2) / ((one - x.clone() * &x) * d.clone() * &d);
        out.push((x, w));
    }
    out
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for k in 2..=n {
        let k = k as u32;
        let p2 = (x.clone() * &p1 * (2 * k - 1) - p0.clone() * (k - 1)) / k;
        p0 = p1;
        p1 = p2;
    }
    // P_n' = n(x P_n − P_{n−1})/(x² − 1)
    let one = Float::with_val(prec, 1);
    let d = (x.clone() * &p1 - &p0) * n as u32 / (x.clone() * x - one);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let prec = prec_bits(40);
        let rule = gauss_legendre(10, prec);
        // ∫ x¹⁸ = 2/19 exactly for a 10-point rule
        let mut s = Float::new(prec);
        for (x, w) in &rule {
            s += x.clone().pow(18u32) * w;
        }
        let err = (s - Float::with_val(prec, 2) / 19u32).abs();
        assert!(err < 1e-38, "{err}");
    }

    #[test]
    fn g2_at_i() {
        // g₃(i) = 0
        let m = Modular::new(30, 60);
        let v = m.at(&cplx(m.prec, 0.0, 1.0)).unwrap();
        assert!(mag(&v.g3) < 1e-25);
        assert!(mag(&v.g2) > 0.05);
    }

    #[test]
    fn q_too_large() {
        let m = Modular::new(50, 20);
        assert!(m.at(&cplx(m.prec, 0.0, 0.3)).is_err());
        assert!(m.at(&cplx(m.prec, 0.0, -1.0)).is_err());
    }
}
