//! Decomposition C = a·P⁺ + b·P⁻ + λ·c_E + (γ − 1)v over γ ∈ {S, T} for weight
//! 12 (2n = 10): 22 complex equations, 14 unknowns, solved by least squares
//! (modified Gram–Schmidt, reorthogonalized).

use rug::ops::Pow;
use rug::{Complex, Float};
use serde::Serialize;

use crate::cocycle::GroupCocycle;
use crate::numeric::{mag, two_pi_i};
use crate::poly::{self, S, T};
use crate::PeriodsError;

/// P⁺_S = (36/691)(Y¹⁰ − X¹⁰) + X²Y²(X² − Y²)³, by X-power.
pub fn p_plus(prec: u32) -> Vec<Complex> {
    let mut p = vec![Complex::new(prec); 11];
    let c = Float::with_val(prec, 36) / 691u32;
    p[0] += &c;
    p[10] -= &c;
    for (i, k) in [(8, 1), (6, -3), (4, 3), (2, -1)] {
        p[i] += k;
    }
    p
}

/// P⁻_S = 4X⁹Y − 25X⁷Y³ + 42X⁵Y⁵ − 25X³Y⁷ + 4XY⁹
pub fn p_minus(prec: u32) -> Vec<Complex> {
    let mut p = vec![Complex::new(prec); 11];
    for (i, k) in [(9, 4), (7, -25), (5, 42), (3, -25), (1, 4)] {
        p[i] += k;
    }
    p
}

#[derive(Clone, Debug)]
pub struct Projection {
    pub a: Complex,
    pub b: Complex,
    pub lambda: Complex,
    pub coboundary: Vec<Complex>,
    pub residual: Float,
}

fn dot(x: &[Complex], y: &[Complex]) -> Complex {
    // xᴴy
    let prec = x[0].prec().0;
    let mut acc = Complex::new(prec);
    for (a, b) in x.iter().zip(y) {
        acc += a.clone().conj() * b;
    }
    acc
}

fn norm(x: &[Complex]) -> Float {
    let d = dot(x, x);
    d.real().clone().sqrt()
}

/// min ‖Ax − b‖ for A given by columns; returns (x, residual norm).
pub fn least_squares(cols: &[Vec<Complex>], rhs: &[Complex]) -> Result<(Vec<Complex>, Float), PeriodsError> {
    let n = cols.len();
    let prec = rhs[0].prec().0;
    let mut q: Vec<Vec<Complex>> = Vec::with_capacity(n);
    let mut r = vec![vec![Complex::new(prec); n]; n];
    for (j, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        for _pass in 0..2 {
            for (i, qi) in q.iter().enumerate() {
                let c = dot(qi, &v);
                for (vk, qk) in v.iter_mut().zip(qi) {
                    *vk -= qk.clone() * &c;
                }
                r[i][j] += c;
            }
        }
        let nv = norm(&v);
        if nv.is_zero() || nv < norm(col) * Float::with_val(prec, 2).pow(-(prec as i32) / 2) {
            return Err(PeriodsError::RankDeficient(j));
        }
        r[j][j] = Complex::with_val(prec, &nv);
        q.push(v.into_iter().map(|x| x / &nv).collect());
    }
    let qtb: Vec<Complex> = q.iter().map(|qi| dot(qi, rhs)).collect();
    let mut x = vec![Complex::new(prec); n];
    for j in (0..n).rev() {
        let mut s = qtb[j].clone();
        for k in j + 1..n {
            s -= r[j][k].clone() * &x[k];
        }
        x[j] = s / &r[j][j];
    }
    let mut res: Vec<Complex> = rhs.to_vec();
    for (c, xj) in cols.iter().zip(&x) {
        for (rk, ck) in res.iter_mut().zip(c) {
            *rk -= ck.clone() * xj;
        }
    }
    Ok((x, norm(&res)))
}

/// Project `c` onto P⁺, P⁻ (cuspidal: zero on T), the Eisenstein cocycle and
/// coboundaries.
pub fn project(c: &GroupCocycle, eis: &GroupCocycle) -> Result<Projection, PeriodsError> {
    let prec = c.on_s[0].prec().0;
    let zero = vec![Complex::new(prec); 11];
    let stack = |s: &[Complex], t: &[Complex]| -> Vec<Complex> { s.iter().chain(t).cloned().collect() };
    let mut cols = vec![stack(&p_plus(prec), &zero), stack(&p_minus(prec), &zero), stack(&eis.on_s, &eis.on_t)];
    for j in 0..11 {
        let mut e = zero.clone();
        e[j] = Complex::with_val(prec, 1);
        cols.push(stack(&poly::sub(&poly::act(&e, S), &e), &poly::sub(&poly::act(&e, T), &e)));
    }
    let rhs = stack(&c.on_s, &c.on_t);
    let (x, residual) = least_squares(&cols, &rhs)?;
    Ok(Projection { a: x[0].clone(), b: x[1].clone(), lambda: x[2].clone(), coboundary: x[3..].to_vec(), residual })
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexJson {
    pub re: String,
    pub im: String,
}

pub fn complex_json(z: &Complex, digits: usize) -> ComplexJson {
    ComplexJson { re: z.real().to_string_radix(10, Some(digits)), im: z.imag().to_string_radix(10, Some(digits)) }
}

/// Periods (Δ-cocycle) and quasi-periods ((1,1)-cocycle) of Δ.
#[derive(Clone, Debug)]
pub struct PeriodReport {
    pub omega_plus: Complex,
    pub omega_minus: Complex,
    pub eta_plus: Complex,
    pub eta_minus: Complex,
    /// λ of the (1,1)-cocycle
    pub eisenstein_coefficient: Complex,
    /// λ of the Δ-cocycle (expected ≈ 0)
    pub delta_eisenstein: Complex,
    /// v of the (1,1)-cocycle
    pub coboundary: Vec<Complex>,
    pub residual_norm: Float,
    pub determinant: Complex,
    pub target_determinant: Complex,
    pub relation_defects: [Float; 3],
}

impl PeriodReport {
    /// ω± from the Δ projection, η± from the (1,1) projection: the P⁻
    /// coefficient is i·ω⁻ (resp. i·η⁻).
    pub fn assemble(delta: &Projection, eleven: &Projection, relation_defects: [Float; 3]) -> Self {
        let prec = delta.a.prec().0;
        let i = Complex::with_val(prec, (0, 1));
        let omega_minus = delta.b.clone() / &i;
        let eta_minus = eleven.b.clone() / &i;
        // det [[η⁺, ω⁺], [iη⁻, iω⁻]]
        let determinant = eleven.a.clone() * &i * &omega_minus - delta.a.clone() * &i * &eta_minus;
        let tpi = two_pi_i(prec);
        let target_determinant = -Complex::with_val(prec, tpi.pow(11u32));
        let residual_norm =
            if delta.residual > eleven.residual { delta.residual.clone() } else { eleven.residual.clone() };
        Self {
            omega_plus: delta.a.clone(),
            omega_minus,
            eta_plus: eleven.a.clone(),
            eta_minus,
            eisenstein_coefficient: eleven.lambda.clone(),
            delta_eisenstein: delta.lambda.clone(),
            coboundary: eleven.coboundary.clone(),
            residual_norm,
            determinant,
            target_determinant,
            relation_defects,
        }
    }

    pub fn determinant_relative_error(&self) -> Float {
        mag(&(self.determinant.clone() - &self.target_determinant)) / mag(&self.target_determinant)
    }

    pub fn to_json(&self, digits: usize) -> PeriodReportJson {
        let f = |x: &Float| x.to_string_radix(10, Some(12));
        PeriodReportJson {
            omega_plus: complex_json(&self.omega_plus, digits),
            omega_minus: complex_json(&self.omega_minus, digits),
            eta_plus: complex_json(&self.eta_plus, digits),
            eta_minus: complex_json(&self.eta_minus, digits),
            eisenstein_coefficient: complex_json(&self.eisenstein_coefficient, digits),
            delta_eisenstein_coefficient: complex_json(&self.delta_eisenstein, digits),
            coboundary: self.coboundary.iter().map(|z| complex_json(z, digits)).collect(),
            residual_norm: f(&self.residual_norm),
            determinant: complex_json(&self.determinant, digits),
            target_determinant: complex_json(&self.target_determinant, digits),
            determinant_relative_error: f(&self.determinant_relative_error()),
            relation_defects: self.relation_defects.iter().map(f).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PeriodReportJson {
    pub omega_plus: ComplexJson,
    pub omega_minus: ComplexJson,
    pub eta_plus: ComplexJson,
    pub eta_minus: ComplexJson,
    pub eisenstein_coefficient: ComplexJson,
    pub delta_eisenstein_coefficient: ComplexJson,
    pub coboundary: Vec<ComplexJson>,
    pub residual_norm: String,
    pub determinant: ComplexJson,
    pub target_determinant: ComplexJson,
    pub determinant_relative_error: String,
    /// Δ, (1,1), G₁₂ cocycles
    pub relation_defects: Vec<String>,
}
