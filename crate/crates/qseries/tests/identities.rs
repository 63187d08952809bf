use std::time::Instant;

use exact_kernel::{q, qr, Laurent, Q};
use qseries::{discriminant_q, eisenstein, eta_product, evaluate, poly_from_qexpansion, QSeries, QSeriesError};

#[test]
fn discriminant_through_order_200() {
    let t = Instant::now();
    let d = discriminant_q(200).unwrap();
    assert!(t.elapsed().as_secs_f64() < 10.0);
    assert_eq!(d.coeff(0), &q(0));
    assert_eq!(d.coeff(1), &q(1));
    assert_eq!(d.coeff(2), &q(-24));
    assert_eq!(d.coeff(3), &q(252));
    assert_eq!(d.coeff(5), &q(4830));
    assert_eq!(d, eta_product(200));
}

#[test]
fn ramanujan_tau_spot_values() {
    // independent oracle values of τ(n)
    let d = eta_product(12);
    let tau = [0i64, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944];
    for (i, t) in tau.iter().enumerate() {
        assert_eq!(d.coeff(i), &q(*t));
    }
}

#[test]
fn discriminant_polynomial() {
    let d = discriminant_q(30).unwrap();
    assert_eq!(poly_from_qexpansion(&d, 12).unwrap(), Laurent::delta());
    let (g2, _) = qseries::g2g3(10);
    assert_eq!(poly_from_qexpansion(&g2, 4).unwrap(), Laurent::u());
}

#[test]
fn g12_polynomial() {
    let g12 = eisenstein(12, 30).unwrap();
    let p = poly_from_qexpansion(&g12, 12).unwrap();
    assert_eq!(p, Laurent::from_terms([((3, 0), qr(756, 65)), ((0, 2), qr(16200, 91))]));
    // re-expand and compare 30 coefficients
    assert_eq!(evaluate(&p, 30), g12);
}

#[test]
fn round_trip_all_weights_to_sixty() {
    for w in (4..=60).step_by(2) {
        let mut p = Laurent::zero();
        let mut c = 1i64;
        for a in (0..=w / 4).rev() {
            let rest = w - 4 * a;
            if rest % 6 == 0 {
                p.add_term(a as i32, (rest / 6) as i32, qr(c, 7 - c % 5));
                c += 3;
            }
        }
        let f = evaluate(&p, 12);
        assert_eq!(poly_from_qexpansion(&f, w).unwrap(), p, "weight {w}");
    }
}

#[test]
fn non_modular_input_rejected() {
    let g2 = eisenstein(2, 20).unwrap();
    let mut shifted: Vec<Q> = g2.coeffs().to_vec();
    shifted[0] = q(1);
    assert!(matches!(poly_from_qexpansion(&QSeries::from_coeffs(shifted), 4), Err(QSeriesError::Inconsistent(4))));
    let d = discriminant_q(0).unwrap();
    assert!(matches!(poly_from_qexpansion(&d, 12), Err(QSeriesError::Underdetermined { .. })));
}
