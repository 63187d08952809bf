use std::collections::BTreeMap;

use exact_kernel::Q;
use lie_connection::words::{dynkin, is_lyndon};
use lie_connection::{Generator, LieTree, Word};
use num_traits::Zero;
use proptest::prelude::*;

type Poly = BTreeMap<Word, Q>;

fn letter(m: u16) -> Generator {
    Generator { class: 0, n: 2, m }
}

fn poly(t: &LieTree) -> Poly {
    t.expand().into_iter().map(|(c, w)| (w, c)).collect()
}

fn bracket(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            *out.entry(wa.concat(wb)).or_insert_with(Q::zero) += ca * cb;
            *out.entry(wb.concat(wa)).or_insert_with(Q::zero) -= ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (w, c) in b {
        *out.entry(w.clone()).or_insert_with(Q::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn leaf(m: u16) -> Poly {
    poly(&LieTree::Leaf(letter(m)))
}

proptest! {
    #[test]
    fn antisymmetry(a in 0u16..5, b in 0u16..5) {
        let x = bracket(&leaf(a), &leaf(b));
        let y = bracket(&leaf(b), &leaf(a));
        prop_assert!(add(&x, &y).is_empty());
    }

    #[test]
    fn jacobi(a in 0u16..5, b in 0u16..5, c in 0u16..5) {
        let (x, y, z) = (leaf(a), leaf(b), leaf(c));
        let j = add(&add(&bracket(&x, &bracket(&y, &z)), &bracket(&y, &bracket(&z, &x))), &bracket(&z, &bracket(&x, &y)));
        prop_assert!(j.is_empty());
    }

    #[test]
    fn lyndon_brackets_are_dynkin_eigenvectors(ms in proptest::collection::vec(0u16..3, 1..5)) {
        let w: Vec<Generator> = ms.into_iter().map(letter).collect();
        prop_assume!(is_lyndon(&w));
        let t = LieTree::standard(&w);
        let p = poly(&t);
        // leading word of the standard bracketing is the word itself
        prop_assert_eq!(p.keys().next().unwrap(), &Word(w.clone()));
        let mut th = Poly::new();
        for (x, c) in &p {
            for (d, y) in dynkin(x) {
                *th.entry(y).or_insert_with(Q::zero) += c * &d;
            }
        }
        th.retain(|_, c| !c.is_zero());
        let k = Q::from_integer((w.len() as i64).into());
        let want: Poly = p.iter().map(|(x, c)| (x.clone(), c * &k)).collect();
        prop_assert_eq!(th, want);
    }
}
