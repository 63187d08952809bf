//! Local cup-product data at the elliptic points: restrict scalar 1-forms to a
//! slice through [ρ] (v = 1) or [i] (u = 1) and take Res_{x=0} F·η with dF = ω.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::forms::expand_to_duv;
use crate::{q, KernelError, OneForm, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SliceId {
    /// v = 1, coordinate u (through [ρ], where u = 0).
    VEq1,
    /// u = 1, coordinate v (through [i], where v = 0).
    UEq1,
}

/// Univariate Laurent polynomial Σ c_e xᵉ.
type Uni = BTreeMap<i32, Q>;

fn add_term(p: &mut Uni, e: i32, c: Q) {
    if c.is_zero() {
        return;
    }
    let x = p.entry(e).or_insert_with(Q::zero);
    *x += c;
    if x.is_zero() {
        p.remove(&e);
    }
}

fn mul(a: &Uni, b: &Uni) -> Uni {
    let mut out = Uni::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            add_term(&mut out, ea + eb, ca * cb);
        }
    }
    out
}

/// (numerator, Δ restricted) with form = numerator/Δ|·dx.
fn restrict(x: &OneForm, slice: SliceId) -> (Uni, Uni) {
    let (cu, cv) = expand_to_duv(x);
    match slice {
        // Δ|_{v=1} = u³ − 27, dv = 0
        SliceId::VEq1 => (cu.to_univariate(true), Uni::from([(0, q(-27)), (3, q(1))])),
        // Δ|_{u=1} = 1 − 27v², du = 0
        SliceId::UEq1 => (cv.to_univariate(false), Uni::from([(0, q(1)), (2, q(-27))])),
    }
}

/// Exact division of a polynomial by `d`; None if the remainder is nonzero.
fn divide_exact(p: &Uni, d: &Uni) -> Option<Uni> {
    let (&dd, lead) = d.iter().next_back()?;
    let mut rem = p.clone();
    let mut quo = Uni::new();
    while let Some((&e, c)) = rem.iter().next_back() {
        if e < dd {
            break;
        }
        let f = c / lead;
        for (de, dc) in d {
            add_term(&mut rem, e - dd + de, -(&f * dc));
        }
        add_term(&mut quo, e - dd, f);
    }
    rem.is_empty().then_some(quo)
}

/// Power series 1/d up to and including xᴺ (d(0) ≠ 0).
fn inverse_series(d: &Uni, order: i32) -> Uni {
    let d0 = d.get(&0).expect("slice point is not on Δ = 0").clone();
    let mut out = Uni::new();
    for k in 0..=order {
        if k == 0 {
            out.insert(0, q(1) / &d0);
            continue;
        }
        let mut s = Q::zero();
        for (e, c) in d.range(1..=k) {
            if let Some(x) = out.get(&(k - e)) {
                s -= c * x;
            }
        }
        add_term(&mut out, k, s / &d0);
    }
    out
}

/// Res_{x=0} F·η|slice where F is the Laurent-polynomial primitive of ω|slice
/// with zero constant term.
pub fn residue_on_slice(omega: &OneForm, eta: &OneForm, slice: SliceId) -> Result<Q, KernelError> {
    let (pw, d) = restrict(omega, slice);
    // ω| = x^{-k} P₀ / D; it has a rational primitive iff D | P₀ and no x⁻¹ term.
    let shift = pw.keys().next().copied().unwrap_or(0).min(0);
    let p0: Uni = pw.iter().map(|(e, c)| (e - shift, c.clone())).collect();
    let Some(quo) = divide_exact(&p0, &d) else {
        return Err(KernelError::PrimitiveResidue(format!("{slice:?}: poles along Δ = 0")));
    };
    let w: Uni = quo.into_iter().map(|(e, c)| (e + shift, c)).collect();
    if let Some(c) = w.get(&-1) {
        return Err(KernelError::PrimitiveResidue(format!("{slice:?}: {c}")));
    }
    let f: Uni = w.iter().map(|(e, c)| (e + 1, c / q(*e as i64 + 1))).collect();

    let (pe, d) = restrict(eta, slice);
    let fp = mul(&f, &pe);
    // need the x⁻¹ coefficient of fp · (1/D); 1/D is a power series
    let lowest = fp.keys().next().copied().unwrap_or(0);
    if lowest > -1 {
        return Ok(Q::zero());
    }
    let inv = inverse_series(&d, -1 - lowest);
    let mut res = Q::zero();
    for (e, c) in &fp {
        if let Some(x) = inv.get(&(-1 - e)) {
            res += c * x;
        }
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{qr, Laurent};

    #[test]
    fn rho_and_i() {
        let alpha = OneForm::alpha(Laurent::delta());
        let eta0 = OneForm::alpha(Laurent::monomial(q(9), -2, 0));
        assert_eq!(residue_on_slice(&alpha, &eta0, SliceId::VEq1).unwrap(), q(-3));
        let eta1 = OneForm::alpha(Laurent::monomial(qr(-1, 2), 1, -2));
        assert_eq!(residue_on_slice(&alpha, &eta1, SliceId::UEq1).unwrap(), q(-2));
    }

    #[test]
    fn alpha_against_itself() {
        let alpha = OneForm::alpha(Laurent::delta());
        for s in [SliceId::VEq1, SliceId::UEq1] {
            assert!(residue_on_slice(&alpha, &alpha, s).unwrap().is_zero());
        }
    }

    #[test]
    fn primitive_with_residue_rejected() {
        // du/u on v = 1 has a residue at 0
        let w = crate::duv_to_basis(&Laurent::monomial(q(1), -1, 0), &Laurent::zero());
        assert!(residue_on_slice(&w, &w, SliceId::VEq1).is_err());
        // α/Δ has poles along Δ = 0 on the slice
        let a = OneForm::alpha(Laurent::one());
        assert!(residue_on_slice(&a, &a, SliceId::VEq1).is_err());
    }
}
