use std::time::Instant;

use cech::{is_closed2, Cochain2};
use exact_kernel::{q, Chart, Laurent, OneForm, Section, Slot};
use lie_connection::series::{bracket_square, obstruction};
use lie_connection::words::is_lie;
use lie_connection::{build_connection, pair_classes};
use second_kind::canonical_basis;

fn report(n: usize) -> lie_connection::LieConnection {
    let t = Instant::now();
    let c = build_connection(&[5], n).unwrap();
    eprintln!("N = {n}: {:?}", t.elapsed());
    c
}

#[test]
fn depth_one_is_the_classes() {
    let c = report(1);
    assert_eq!(c.registry.classes.len(), 3);
    assert!(c.check_integrability().holds());
    assert!(c.check_gauge().holds());
}

#[test]
fn depth_two_integrable() {
    let c = report(2);
    assert!(c.check_integrability().holds());
    assert!(c.check_gauge().holds());
    assert!(c.check_group_like());
    // at degree 2 the obstruction is the graded commutator of Ω₁
    let one = c.degree(1);
    let mut omega1 = one.clone();
    omega1.l = c.omega.l.filter(|w| w.len() == 1);
    let b = bracket_square(&omega1, 2).filter(|w| w.len() == 2);
    assert_eq!(obstruction(&c, 2), b);
    assert!(c.bracket_defect().by_degree[1]);
}

#[test]
fn depth_three_integrable() {
    let c = report(3);
    assert_eq!(c.check_integrability().by_degree, vec![true; 3]);
    assert_eq!(c.check_gauge().by_degree, vec![true; 3]);
    assert!(c.check_group_like());
    let t = obstruction(&c, 3);
    assert!(is_closed2(&t));
    assert!(is_lie(&t.m));
    eprintln!("literal bracket defect by degree: {:?}", c.bracket_defect().by_degree);
    let json = serde_json::to_value(c.to_json()).unwrap();
    assert_eq!(json["degrees"].as_array().unwrap().len(), 3);
}

#[test]
fn delta_against_eleven() {
    let basis = canonical_basis(5).unwrap();
    let r = pair_classes(&basis[0], &basis[2]).unwrap();
    // m = −α/(uv) = −(u²/v − 27v/u)·α/Δ
    let m = Laurent::from_terms([((2, -1), q(-1)), ((-1, 1), q(27))]);
    let want = Cochain2 {
        b0: Section::zero(Chart::U0),
        b1: Section::zero(Chart::U1),
        m: Section::single(Chart::U01, Slot::unit(), OneForm::alpha(m)).unwrap(),
    };
    assert_eq!(r.bracket, want);
    assert!(r.verify());
    let xi0 = Section::single(Chart::U0, Slot::unit(), OneForm::alpha(Laurent::monomial(q(27), -1, 1))).unwrap();
    let xi1 = Section::single(Chart::U1, Slot::unit(), OneForm::alpha(Laurent::monomial(q(1), 2, -1))).unwrap();
    assert_eq!(r.xi.w0, xi0);
    assert_eq!(r.xi.w1, xi1);
    assert!(r.xi.l.is_zero());
}

#[test]
fn mixed_weights_depth_two() {
    let t = Instant::now();
    let c = build_connection(&[5, 7], 2).unwrap();
    eprintln!("{{5,7}}, N = 2: {:?}", t.elapsed());
    assert_eq!(c.registry.classes.len(), 3 + 3);
    assert!(c.check_integrability().holds());
    assert!(c.check_gauge().holds());
    assert!(c.check_group_like());
}
