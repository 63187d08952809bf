use std::collections::BTreeSet;

use exact_kernel::{nabla_one, q, qr, Chart, Laurent, OneForm, Slot, SymSection};
use second_kind::{
    canonical_basis, cusp_dimension, eliminate_bad_terms, holomorphic_cocycle, jk_pairs, modular_dimension, ClassId,
};

fn mono(c: exact_kernel::Q, a: i32, b: i32) -> Laurent {
    Laurent::monomial(c, a, b)
}

fn alpha(terms: &[((i32, i32), exact_kernel::Q)]) -> OneForm {
    OneForm::alpha(Laurent::from_terms(terms.iter().cloned()))
}

#[test]
fn first_cusp_class() {
    let c = eliminate_bad_terms(1, 1).unwrap();
    let s10 = Slot::new(5, 10);
    assert_eq!(c.cochain.l, SymSection::single(Chart::U01, s10, mono(q(1), -1, -1)).unwrap());
    assert_eq!(c.cochain.w0, SymSection::single(Chart::U0, s10, alpha(&[((-2, 0), q(9))])).unwrap());
    let w1 = SymSection::from_terms(
        Chart::U1,
        [(s10, alpha(&[((1, -2), qr(-1, 2))])), (Slot::new(5, 9), alpha(&[((0, -1), qr(-5, 4))]))],
    )
    .unwrap();
    assert_eq!(c.cochain.w1, w1);
    assert!(c.trail.is_empty());
}

#[test]
fn second_cusp_class_in_weight_sixteen() {
    let c = eliminate_bad_terms(2, 1).unwrap();
    let (s14, s12, s11) = (Slot::new(7, 14), Slot::new(7, 12), Slot::new(7, 11));
    let l = SymSection::from_terms(Chart::U01, [(s14, mono(q(1), -2, -1)), (s12, mono(qr(7, 12), -1, -1))]).unwrap();
    assert_eq!(c.cochain.l, l);
    let w0 =
        SymSection::from_terms(Chart::U0, [(s14, alpha(&[((-3, 0), q(18))])), (s12, alpha(&[((-2, 0), qr(21, 4))]))])
            .unwrap();
    assert_eq!(c.cochain.w0, w0);
    let w1 = SymSection::from_terms(
        Chart::U1,
        [
            (s14, alpha(&[((0, -2), qr(-1, 2))])),
            (s12, alpha(&[((1, -2), qr(-7, 24))])),
            (s11, alpha(&[((0, -1), qr(-7, 8))])),
        ],
    )
    .unwrap();
    assert_eq!(c.cochain.w1, w1);
    assert_eq!(c.trail.len(), 1);
    assert_eq!(c.trail[0].added, "7/12");
}

#[test]
fn three_one() {
    let c = eliminate_bad_terms(3, 1).unwrap();
    assert_eq!(c.n, 9);
    assert_eq!(c.leading_l(), Some((Slot::new(9, 18), mono(q(1), -3, -1))));
    assert!(cech::is_closed1(&c.cochain));
}

#[test]
fn all_pairs_up_to_twenty() {
    for n in 1..=20 {
        for (j, k) in jk_pairs(n) {
            let c = eliminate_bad_terms(j, k).unwrap();
            assert!(cech::is_closed1(&c.cochain), "({j},{k})");
            assert!(nabla_one(&c.cochain.w0).is_zero() && nabla_one(&c.cochain.w1).is_zero());
            assert_eq!(c.leading_l(), Some((Slot::new(n, 2 * n), mono(q(1), -(j as i32), -(k as i32)))));
            // a bad form at order n+6 is cancelled by an l-term of order n+5, the last one
            if c.trail.iter().any(|t| t.order == n + 6) {
                assert_eq!(c.last_l_order(), Some(n + 5), "({j},{k})");
            }
            assert!(c.last_l_order().unwrap() >= n + 5, "({j},{k}) went below order n+5");
        }
    }
}

#[test]
fn dimension_identity() {
    for w in (12..=60).step_by(2) {
        let n = (w - 2) / 2;
        assert_eq!(jk_pairs(n as u32).len(), cusp_dimension(w).unwrap(), "weight {w}");
    }
}

#[test]
fn holomorphic_examples() {
    let d = holomorphic_cocycle(&Laurent::delta(), 5).unwrap();
    assert_eq!(d.cochain.w0.coeff(&Slot::new(5, 0)), OneForm::alpha(Laurent::delta()));
    let u = holomorphic_cocycle(&Laurent::u(), 1).unwrap();
    assert!(cech::is_closed1(&u.cochain));
    assert!(holomorphic_cocycle(&Laurent::zero(), 5).unwrap().cochain.is_zero());
    assert!(holomorphic_cocycle(&mono(q(1), -1, 3), 6).is_err());
    assert!(holomorphic_cocycle(&Laurent::u(), 2).is_err());
}

#[test]
fn canonical_basis_counts() {
    let b5 = canonical_basis(5).unwrap();
    assert_eq!(b5.len(), 3);
    assert_eq!(b5[0].id, ClassId::Holomorphic { n: 5, name: "Δ".into() });
    assert_eq!(b5[1].id, ClassId::Holomorphic { n: 5, name: "u^3".into() });
    assert_eq!(b5[2].id, ClassId::SecondKind { j: 1, k: 1 });
    assert_eq!(canonical_basis(1).unwrap().len(), 1);
    let b7 = canonical_basis(7).unwrap();
    assert_eq!(b7.len(), 3);
    assert!(b7.iter().any(|c| c.id == ClassId::SecondKind { j: 2, k: 1 }));
}

#[test]
fn canonical_basis_closed_and_independent() {
    for n in 1..=20 {
        let basis = canonical_basis(n).unwrap();
        let w = 2 * n as i64 + 2;
        assert_eq!(basis.len(), modular_dimension(w).unwrap() + cusp_dimension(w).unwrap());
        let mut leads = BTreeSet::new();
        for c in &basis {
            assert!(cech::is_closed1(&c.cochain));
            let key = match c.leading_l() {
                Some((s, x)) => format!("l:{s}:{x}"),
                None => format!("h:{}", c.cochain.w0.coeff(&Slot::new(n, 0)).alpha),
            };
            assert!(leads.insert(key), "repeated leading term in n = {n}");
        }
    }
}

#[test]
fn json_carries_trail() {
    let c = eliminate_bad_terms(2, 1).unwrap();
    let v = serde_json::to_value(c.to_json()).unwrap();
    assert_eq!(v["j"], 2);
    assert_eq!(v["trail"][0]["order"], 13);
    assert_eq!(v["cochain"]["l"][1]["monomials"][0]["num"], "1");
    assert!(c.pretty().starts_with("ω̃(2,1) = "));
}
