//! Homogeneous polynomials of degree 2n in X, Y stored by the power of X
//! (coefficient i multiplies XⁱY²ⁿ⁻ⁱ), the frame change SˢTᵗ → X, Y and the
//! right action P|γ(X, Y) = P(aX + bY, cX + dY).

use rug::{Complex, Float};

/// Row-major 2×2 integer matrix (a, b, c, d).
pub type Mat2 = (i64, i64, i64, i64);

pub const S: Mat2 = (0, -1, 1, 0);
pub const T: Mat2 = (1, 1, 0, 1);

pub fn mat_mul(x: Mat2, y: Mat2) -> Mat2 {
    (x.0 * y.0 + x.1 * y.2, x.0 * y.1 + x.1 * y.3, x.2 * y.0 + x.3 * y.2, x.2 * y.1 + x.3 * y.3)
}

/// Product of two polynomials given by their X-power coefficient lists.
pub fn mul(a: &[Complex], b: &[Complex]) -> Vec<Complex> {
    let prec = a[0].prec().0;
    let mut out = vec![Complex::new(prec); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x.clone() * y;
        }
    }
    out
}

pub fn pow(a: &[Complex], e: u32) -> Vec<Complex> {
    let prec = a[0].prec().0;
    let mut out = vec![Complex::with_val(prec, 1)];
    for _ in 0..e {
        out = mul(&out, a);
    }
    out
}

/// Integer matrix of P ↦ P|γ on degree-`deg` polynomials: column i is the image
/// of XⁱY^{deg−i}.
#[allow(clippy::needless_range_loop)] // i is a column index
pub fn action_matrix(g: Mat2, deg: u32) -> Vec<Vec<i128>> {
    let (a, b, c, d) = g;
    let lin = |x: i64, y: i64| vec![y as i128, x as i128]; // xX + yY
    let ipow = |p: &[i128], e: u32| {
        let mut out = vec![1i128];
        for _ in 0..e {
            let mut next = vec![0i128; out.len() + 1];
            for (i, u) in out.iter().enumerate() {
                for (j, v) in p.iter().enumerate() {
                    next[i + j] += u * v;
                }
            }
            out = next;
        }
        out
    };
    let n = deg as usize + 1;
    let mut m = vec![vec![0i128; n]; n];
    for i in 0..n {
        let px = ipow(&lin(a, b), i as u32);
        let py = ipow(&lin(c, d), deg - i as u32);
        for (k, x) in px.iter().enumerate() {
            for (l, y) in py.iter().enumerate() {
                m[k + l][i] += x * y;
            }
        }
    }
    m
}

/// P|γ
pub fn act(p: &[Complex], g: Mat2) -> Vec<Complex> {
    let deg = p.len() as u32 - 1;
    let m = action_matrix(g, deg);
    let prec = p[0].prec().0;
    (0..p.len())
        .map(|r| {
            let mut acc = Complex::new(prec);
            for (i, x) in p.iter().enumerate() {
                if m[r][i] != 0 {
                    acc += x.clone() * Float::with_val(prec, m[r][i]);
                }
            }
            acc
        })
        .collect()
}

pub fn add(a: &[Complex], b: &[Complex]) -> Vec<Complex> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y).collect()
}

pub fn sub(a: &[Complex], b: &[Complex]) -> Vec<Complex> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y).collect()
}

/// max_i |p_i|
pub fn max_abs(p: &[Complex]) -> Float {
    let prec = p.first().map(|x| x.prec().0).unwrap_or(64);
    p.iter().map(crate::numeric::mag).fold(Float::new(prec), |m, x| if x > m { x } else { m })
}

/// SˢTᵗ for S = Y − 2G₂T, T = 2πi(τY − X), given G₂(τ) and τ.
pub fn frame_monomial(s: u32, t: u32, tau: &Complex, e2: &Complex, two_pi_i: &Complex) -> Vec<Complex> {
    let prec = tau.prec().0;
    // [Y-coefficient, X-coefficient]
    let tt = vec![two_pi_i.clone() * tau, -two_pi_i.clone()];
    let k = e2.clone() * 2u32;
    let ss = vec![Complex::with_val(prec, 1) - k.clone() * &tt[0], -(k * &tt[1])];
    mul(&pow(&ss, s), &pow(&tt, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{cplx, prec_bits, two_pi_i};

    #[test]
    fn action_is_a_right_action() {
        // (P|g)|h = P|(gh)
        for (g, h) in [(S, T), (T, S), (mat_mul(S, T), S)] {
            let lhs = {
                let a = action_matrix(g, 4);
                let b = action_matrix(h, 4);
                (0..5)
                    .map(|r| (0..5).map(|c| (0..5).map(|k| b[r][k] * a[k][c]).sum::<i128>()).collect())
                    .collect::<Vec<Vec<i128>>>()
            };
            assert_eq!(lhs, action_matrix(mat_mul(g, h), 4));
        }
    }

    #[test]
    fn frame_specializations() {
        let prec = prec_bits(30);
        let tau = cplx(prec, 0.25, 1.5);
        let zero = cplx(prec, 0.0, 0.0);
        let tpi = two_pi_i(prec);
        // S with G₂ = 0 is Y
        let s = frame_monomial(1, 0, &tau, &zero, &tpi);
        assert_eq!(s[0], cplx(prec, 1.0, 0.0));
        assert!(s[1].is_zero());
        // T² = (2πi)²(τY − X)²: coefficient of X² is (2πi)²
        let t2 = frame_monomial(0, 2, &tau, &zero, &tpi);
        let want = tpi.clone() * &tpi;
        assert!(crate::numeric::mag(&(t2[2].clone() - &want)) < 1e-25);
    }
}
