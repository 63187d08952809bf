//! Exact truncated q-expansions: Eisenstein series in Zagier's normalization
//! G_k = −B_k/(2k) + Σ σ_{k−1}(n)qⁿ, g₂ = 20G₄, g₃ = (7/3)G₆, Δ = g₂³ − 27g₃²,
//! and recovery of isobaric polynomials in g₂, g₃ from q-expansions.

use std::ops::{Add, Mul, Sub};

use exact_kernel::linsolve::{Echelon, SparseRow};
use exact_kernel::{q, qr, Laurent, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum QSeriesError {
    #[error("Eisenstein series need even k ≥ 2, got {0}")]
    OddWeight(u32),
    #[error("g2³ − 27g3² disagrees with q∏(1−qⁿ)²⁴ at q^{0}")]
    EtaMismatch(usize),
    #[error("no isobaric polynomial of weight {0} reproduces the expansion")]
    Inconsistent(i64),
    #[error("truncation order {order} too small to pin a weight-{weight} polynomial")]
    Underdetermined { weight: i64, order: usize },
}

/// a₀ + a₁q + … + a_M q^M
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Q>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Q::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Q::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<Q>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Q {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let m = self.order().min(rhs.order());
        QSeries { coeffs: (0..=m).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let m = self.order().min(rhs.order());
        QSeries { coeffs: (0..=m).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

/// Truncated at the smaller order.
impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let m = self.order().min(rhs.order());
        let mut coeffs = vec![Q::zero(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(m + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(m + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs }
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// B_k with B₁ = −1/2, from Σ_{j<m+1} C(m+1, j) B_j = 0.
pub fn bernoulli(k: u32) -> Q {
    let mut b: Vec<Q> = vec![Q::one()];
    for m in 1..=k as u64 {
        let mut s = Q::zero();
        for (j, bj) in b.iter().enumerate() {
            s += Q::from_integer(binomial(m + 1, j as u64)) * bj;
        }
        b.push(-s / Q::from_integer(BigInt::from(m + 1)));
    }
    b.pop().unwrap()
}

/// σ_r(n) for n = 0..=order (σ_r(0) := 0).
fn sigma(r: u32, order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    for d in 1..=order {
        let p = BigInt::from(d).pow(r);
        for m in (d..=order).step_by(d) {
            out[m] += &p;
        }
    }
    out
}

pub fn eisenstein(k: u32, order: usize) -> Result<QSeries, QSeriesError> {
    if k < 2 || k % 2 == 1 {
        return Err(QSeriesError::OddWeight(k));
    }
    let mut coeffs: Vec<Q> = sigma(k - 1, order).into_iter().map(Q::from_integer).collect();
    coeffs[0] = -bernoulli(k) / q(2 * k as i64);
    Ok(QSeries { coeffs })
}

pub fn g2g3(order: usize) -> (QSeries, QSeries) {
    let g4 = eisenstein(4, order).expect("even");
    let g6 = eisenstein(6, order).expect("even");
    (g4.scale(&q(20)), g6.scale(&qr(7, 3)))
}

/// q ∏_{n≥1} (1 − qⁿ)²⁴, via Euler's pentagonal series for ∏(1 − qⁿ).
pub fn eta_product(order: usize) -> QSeries {
    let mut euler = QSeries::zero(order);
    for k in 0i64.. {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = (kk * (3 * kk - 1) / 2) as usize;
            if e <= order {
                euler.coeffs[e] += if kk.is_odd() { q(-1) } else { q(1) };
                any = true;
            }
        }
        if !any {
            break;
        }
    }
    let p24 = euler.pow(24);
    let mut coeffs = vec![Q::zero(); order + 1];
    coeffs[1..=order].clone_from_slice(&p24.coeffs[..order]);
    QSeries { coeffs }
}

/// g₂³ − 27g₃², checked coefficientwise against the eta product.
pub fn discriminant_q(order: usize) -> Result<QSeries, QSeriesError> {
    let (g2, g3) = g2g3(order);
    let d = &g2.pow(3) - &g3.pow(2).scale(&q(27));
    let eta = eta_product(order);
    if let Some(i) = (0..=order).find(|&i| d.coeffs[i] != eta.coeffs[i]) {
        return Err(QSeriesError::EtaMismatch(i));
    }
    Ok(d)
}

/// Substitute u = g₂, v = g₃ into a polynomial.
pub fn evaluate(poly: &Laurent, order: usize) -> QSeries {
    assert!(poly.is_polynomial(), "only polynomials in g2, g3 have q-expansions");
    let (g2, g3) = g2g3(order);
    let mut out = QSeries::zero(order);
    for (&(a, b), c) in poly.terms() {
        let t = &g2.pow(a as u32) * &g3.pow(b as u32);
        out = &out + &t.scale(c);
    }
    out
}

/// The isobaric polynomial Σ c_ab uᵃvᵇ (4a + 6b = weight) whose q-expansion
/// agrees with `f` through its full order.
pub fn poly_from_qexpansion(f: &QSeries, weight: i64) -> Result<Laurent, QSeriesError> {
    let monos = isobaric(weight);
    let order = f.order();
    let (g2, g3) = g2g3(order);
    let columns: Vec<QSeries> = monos.iter().map(|&(a, b)| &g2.pow(a as u32) * &g3.pow(b as u32)).collect();
    let mut e = Echelon::new(monos.len(), 1);
    for i in 0..=order {
        let row: SparseRow = columns.iter().enumerate().map(|(c, s)| (c, s.coeffs[i].clone())).collect();
        e.push(row, vec![f.coeffs[i].clone()]).map_err(|_| QSeriesError::Inconsistent(weight))?;
    }
    if e.rank() < monos.len() {
        return Err(QSeriesError::Underdetermined { weight, order });
    }
    let sol = e.solution().pop().unwrap();
    Ok(Laurent::from_terms(sol.into_iter().map(|(c, x)| (monos[c], x))))
}

fn isobaric(weight: i64) -> Vec<(i32, i32)> {
    let mut out = Vec::new();
    for a in (0..=weight / 4).rev() {
        let rest = weight - 4 * a;
        if rest >= 0 && rest % 6 == 0 {
            out.push((a as i32, (rest / 6) as i32));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(2), qr(1, 6));
        assert_eq!(bernoulli(4), qr(-1, 30));
        assert_eq!(bernoulli(6), qr(1, 42));
        assert_eq!(bernoulli(12), qr(-691, 2730));
        assert_eq!(bernoulli(3), Q::zero());
    }

    #[test]
    fn constant_terms() {
        assert_eq!(eisenstein(4, 3).unwrap().coeff(0), &qr(1, 240));
        assert_eq!(eisenstein(6, 3).unwrap().coeff(0), &qr(-1, 504));
        assert_eq!(eisenstein(2, 3).unwrap().coeff(0), &qr(-1, 24));
        assert!(eisenstein(5, 3).is_err());
        let (g2, g3) = g2g3(3);
        assert_eq!(g2.coeff(0), &qr(1, 12));
        assert_eq!(g3.coeff(0), &qr(-1, 216));
        assert_eq!(g2.coeff(1), &q(20));
    }
}
