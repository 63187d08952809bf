use std::time::Instant;

use periods::numeric::mag;
use periods::numeric::Modular;
use periods::{
    cocycle_relation_check, composite_path_defect, compute_periods, weight12_classes, GroupCocycle, PeriodConfig,
    PeriodReport, Quadrature,
};
use rug::{Complex, Float};

fn rel_to(z: &Complex, expect: &str) -> f64 {
    let prec = z.prec().0;
    let e = Float::with_val(prec, Float::parse(expect).unwrap());
    let im = mag(&Complex::with_val(prec, z.imag()));
    // values are real; the imaginary part counts as error
    ((Float::with_val(prec, z.real() - &e).abs() + im) / e.abs()).to_f64()
}

fn report(basepoint: f64) -> PeriodReport {
    let t = Instant::now();
    let r = compute_periods(&PeriodConfig { basepoint, ..Default::default() }).unwrap();
    eprintln!("τ₀ = {basepoint}i: {:?}", t.elapsed());
    r
}

#[test]
fn periods_quasi_periods_and_determinant() {
    let t = Instant::now();
    let r = report(2.0);
    assert!(t.elapsed().as_secs() < 120);
    assert!(rel_to(&r.omega_plus, "-45944515.206396796502") < 1e-10);
    assert!(rel_to(&r.omega_minus, "-3723343.5862069345779") < 1e-10);
    assert!(rel_to(&r.eta_plus, "-80.895549086122696192") < 1e-6);
    assert!(rel_to(&r.eta_minus, "6.5585174555519361006") < 1e-6);
    assert!(r.residual_norm < 1e-10);
    assert!(r.determinant_relative_error() < 1e-6, "{}", r.determinant_relative_error());
    // Δ is cuspidal: no Eisenstein component
    assert!(mag(&r.delta_eisenstein) < 1e-20);
    assert!(r.relation_defects.iter().all(|d| *d < 1e-10), "{:?}", r.relation_defects);
    let json = serde_json::to_value(r.to_json(20)).unwrap();
    let re = json["omegaPlus"]["re"].as_str().unwrap();
    assert!(re.starts_with("-45944515.2063967965"), "{re}");
}

#[test]
fn basepoint_independence() {
    // agreement to 10^{-(P/2 - 5)} relative
    let tol = 1e-20;
    let rs: Vec<PeriodReport> = [1.5, 2.0, 3.0].into_iter().map(report).collect();
    for r in &rs[1..] {
        for (a, b) in [
            (&r.omega_plus, &rs[0].omega_plus),
            (&r.omega_minus, &rs[0].omega_minus),
            (&r.eta_plus, &rs[0].eta_plus),
            (&r.eta_minus, &rs[0].eta_minus),
        ] {
            let d = (mag(&(a.clone() - b)) / mag(b)).to_f64();
            assert!(d < tol, "{d}");
        }
    }
}

#[test]
fn cocycle_law_along_a_composite_path() {
    let m = Modular::new(50, 80);
    let quad = Quadrature::new(&m, 50);
    let [delta, _, eis] = weight12_classes().unwrap();
    for c in [&delta, &eis] {
        let g = GroupCocycle::compute(c, 2.0, &m, &quad).unwrap();
        assert!(cocycle_relation_check(&g) < 1e-10);
        let d = composite_path_defect(c, &g, 2.0, &m, &quad).unwrap();
        assert!(d < 1e-10, "{d}");
    }
}

#[test]
fn small_series_order_is_refused() {
    let cfg = PeriodConfig { qorder: 10, ..Default::default() };
    assert!(matches!(compute_periods(&cfg), Err(periods::PeriodsError::SeriesOrder { .. })));
}
