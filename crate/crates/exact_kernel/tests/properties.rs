use exact_kernel::forms::d_fun;
use exact_kernel::{
    duv_to_basis, expand_to_duv, nabla_fun, nabla_one, q, qr, Chart, Coeff, Laurent, OneForm, Slot, SymSection,
};
use proptest::prelude::*;

/// Random Gm-invariant function section of S^{2n}H on U01 with exponents in [-5, 5].
fn sym_section(n: u32) -> impl Strategy<Value = SymSection<Laurent>> {
    prop::collection::vec((0..=2 * n, -5i32..=5, -20i64..=20, 1i64..=6), 0..8).prop_map(move |raw| {
        let mut terms = Vec::new();
        for (s, a, num, den) in raw {
            let w = 2 * n as i64 - 2 * s as i64;
            let rest = w - 4 * a as i64;
            if rest % 6 != 0 {
                continue;
            }
            let b = (rest / 6) as i32;
            if b.abs() > 5 {
                continue;
            }
            terms.push((Slot::new(n, s), Laurent::monomial(qr(num, den), a, b)));
        }
        SymSection::from_terms(Chart::U01, terms).unwrap()
    })
}

fn laurent(max_terms: usize) -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-5i32..=5, -5i32..=5, -9i64..=9), 0..max_terms)
        .prop_map(|t| Laurent::from_terms(t.into_iter().map(|(a, b, c)| ((a, b), q(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn flatness(n in 0u32..=10, sec in (0u32..=10).prop_flat_map(sym_section)) {
        let _ = n;
        let once = nabla_fun(&sec);
        prop_assert!(nabla_one(&once).is_zero());
    }

    #[test]
    fn weight_homogeneity_preserved(sec in (0u32..=10).prop_flat_map(sym_section)) {
        prop_assert!(sec.validate().is_ok());
        let once = nabla_fun(&sec);
        prop_assert!(once.validate().is_ok());
        prop_assert!(nabla_one(&once).validate().is_ok());
    }

    #[test]
    fn one_form_weight_preserved(sec in (0u32..=10).prop_flat_map(sym_section), a in -3i32..=3) {
        // multiply by a weight-0 unit to get a homogeneous 1-form section
        let unit = Laurent::monomial(q(1), 3 * a, -2 * a);
        let once = nabla_fun(&sec.mul_fun(&unit).unwrap());
        prop_assert!(nabla_one(&once).validate().is_ok());
    }

    #[test]
    fn duv_round_trip(cu in laurent(6), cv in laurent(6)) {
        // Δ·(cu, cv) must come back from the basis representation
        let x = duv_to_basis(&cu, &cv);
        let (du, dv) = expand_to_duv(&x);
        prop_assert_eq!(du, &cu * &Laurent::delta());
        prop_assert_eq!(dv, &cv * &Laurent::delta());
    }

    #[test]
    fn leibniz(sec in (0u32..=10).prop_flat_map(sym_section), f in laurent(4)) {
        let lhs = nabla_fun(&sec.mul_fun(&f).unwrap());
        let df = d_fun(&f);
        let mut rhs = nabla_fun(&sec).mul_fun(&f).unwrap();
        for (slot, g) in sec.iter() {
            let term = SymSection::single(Chart::U01, *slot, df.mul_fun(g)).unwrap();
            rhs.add_section(&term, &q(1));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_antisymmetric(a in laurent(4), b in laurent(4), c in laurent(4), d in laurent(4)) {
        let x = OneForm::new(a, b);
        let y = OneForm::new(c, d);
        prop_assert_eq!(x.wedge(&y), -&y.wedge(&x));
        prop_assert!(x.wedge(&x).is_zero());
    }
}

#[test]
fn d_alpha_over_delta_oracle() {
    // α/Δ has du, dv coefficients (−3v/Δ, 2u/Δ); d of it is
    // (∂_u(2u/Δ) − ∂_v(−3v/Δ)) du∧dv = (5Δ − 6u³ + 162v²)/Δ² du∧dv = −Δ/Δ² du∧dv.
    let delta = Laurent::delta();
    let numer = &(&delta.scale(&q(5)) - &Laurent::monomial(q(6), 3, 0)) + &Laurent::monomial(q(162), 0, 2);
    assert_eq!(numer, -&delta);
    assert_eq!(OneForm::alpha(Laurent::one()).d().vol, Laurent::constant(q(-1)));
}

#[test]
fn wedge_oracle() {
    // α∧dΔ = (2u dv − 3v du)∧(3u² du − 54v dv) = (2u·3u²·(−1) − (−3v)(−54v)) du∧dv... in the
    // orientation du∧dv: coefficient = (−3v)(−54v) − (2u)(3u²) = 162v² − 6u³ = −6Δ.
    let det = &Laurent::monomial(q(162), 0, 2) - &Laurent::monomial(q(6), 3, 0);
    assert_eq!(det, Laurent::delta().scale(&q(-6)));
    let a = OneForm::alpha(Laurent::one());
    let g = OneForm::dlog(Laurent::one());
    assert_eq!(a.wedge(&g).vol, Laurent::constant(q(-6)));
}

#[test]
fn max_exponent_helper() {
    let x = OneForm::alpha(Laurent::monomial(q(1), -7, 2));
    assert_eq!(x.max_abs_exponent(), 7);
}
