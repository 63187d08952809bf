use exact_kernel::{Chart, Laurent, OneForm};
use periods::numeric::{cplx, mag, Modular};
use periods::{integrate_path, pullback_scalar, weight12_classes, HPath, Quadrature};
use rug::ops::Pow;
use rug::{Complex, Float};

const P: u32 = 40;

/// q ∏(1 − qⁿ)²⁴ straight from the product.
fn delta_product(tau: &Complex, two_pi_i: &Complex) -> Complex {
    let q = (two_pi_i.clone() * tau).exp();
    let mut acc = q.clone();
    let mut qn = q.clone();
    for _ in 0..200 {
        let one_minus = Complex::with_val(q.prec(), 1) - &qn;
        acc *= Complex::with_val(q.prec(), one_minus.pow(24u32));
        qn *= &q;
    }
    acc
}

fn rel(a: &Complex, b: &Complex) -> f64 {
    (mag(&(a.clone() - b)) / mag(b)).to_f64()
}

fn derivative(m: &Modular, tau: &Complex, f: impl Fn(&periods::numeric::PointValues) -> Complex) -> Complex {
    // central difference, h = 1e-18 ⇒ error ~ 1e-36
    let h = Complex::with_val(m.prec, (Float::with_val(m.prec, 10).pow(-18i32), 0));
    let hi = m.at(&(tau.clone() + &h)).unwrap();
    let lo = m.at(&(tau.clone() - &h)).unwrap();
    (f(&hi) - f(&lo)) / (h * 2u32)
}

#[test]
fn discriminant_matches_eta_product() {
    let m = Modular::new(P, 80);
    for (x, y) in [(0.0, 2.0), (0.3, 1.1), (-0.5, 0.9)] {
        let tau = cplx(m.prec, x, y);
        let v = m.at(&tau).unwrap();
        let err = rel(&v.delta(), &delta_product(&tau, m.two_pi_i()));
        assert!(err < 1e-30, "τ = ({x}, {y}): {err}");
    }
}

#[test]
fn alpha_over_delta_pulls_back_to_constant() {
    let m = Modular::new(P, 80);
    let tau = cplx(m.prec, 0.1, 1.3);
    let at = m.at(&tau).unwrap();
    let got = pullback_scalar(&OneForm::alpha(Laurent::one()), &at, m.two_pi_i());
    // (2g₂g₃' − 3g₃g₂')/Δ by finite differences
    let dg2 = derivative(&m, &tau, |p| p.g2.clone());
    let dg3 = derivative(&m, &tau, |p| p.g3.clone());
    let num = at.g2.clone() * &dg3 * 2u32 - at.g3.clone() * &dg2 * 3u32;
    let fd = num / at.delta();
    assert!(rel(&got, &fd) < 1e-30);
    let exact = m.two_pi_i().clone() * 2u32 / 3u32;
    assert!(rel(&got, &exact) < 1e-30);
}

#[test]
fn dlog_delta_is_log_derivative() {
    let m = Modular::new(P, 80);
    let tau = cplx(m.prec, -0.2, 1.7);
    let at = m.at(&tau).unwrap();
    let got = pullback_scalar(&OneForm::dlog(Laurent::one()), &at, m.two_pi_i());
    let tpi = m.two_pi_i().clone();
    let fd = derivative(&m, &tau, |p| delta_product(&p.tau, &tpi)) / delta_product(&tau, &tpi);
    assert!(rel(&got, &fd) < 1e-30, "{}", rel(&got, &fd));
}

#[test]
fn zero_form_integrates_to_zero() {
    let m = Modular::new(P, 80);
    let quad = Quadrature::new(&m, P);
    let [delta, ..] = weight12_classes().unwrap();
    let mut zero = delta.clone();
    zero.cochain.w0 = zero.cochain.w0.scale(&exact_kernel::q(0));
    let path = HPath::new(vec![cplx(m.prec, 0.0, 0.5), cplx(m.prec, 0.0, 2.0)], Chart::U0).unwrap();
    let out = integrate_path(&zero, &path, &m, &quad).unwrap();
    assert!(out.iter().all(|z| z.is_zero()));
}

#[test]
fn splitting_a_path_changes_nothing() {
    let m = Modular::new(P, 80);
    let quad = Quadrature::new(&m, P);
    let [delta, eleven, _] = weight12_classes().unwrap();
    let (a, mid, b) = (cplx(m.prec, 0.0, 0.5), cplx(m.prec, 0.0, 1.0), cplx(m.prec, 0.0, 2.0));
    for c in [&delta, &eleven] {
        let one = integrate_path(c, &HPath::new(vec![a.clone(), b.clone()], Chart::U0).unwrap(), &m, &quad).unwrap();
        let two =
            integrate_path(c, &HPath::new(vec![a.clone(), mid.clone(), b.clone()], Chart::U0).unwrap(), &m, &quad)
                .unwrap();
        let scale = periods::poly::max_abs(&one);
        let d = periods::poly::max_abs(&periods::poly::sub(&one, &two)) / scale;
        assert!(d < 1e-15, "{d}");
    }
}

#[test]
fn paths_are_chart_checked() {
    let m = Modular::new(P, 80);
    assert!(HPath::new(vec![cplx(m.prec, 0.0, 1.0), cplx(m.prec, 0.0, 2.0)], Chart::U01).is_err());
    assert!(HPath::new(vec![cplx(m.prec, 0.0, -1.0), cplx(m.prec, 0.0, 2.0)], Chart::U0).is_err());
}
