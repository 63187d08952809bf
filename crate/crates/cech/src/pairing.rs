//! The Sp(H)-invariant pairing on S²ⁿH induced from ⟨S, T⟩ = −1, normalized as a
//! symmetrized product so that ⟨T²ⁿ, S²ⁿ⟩ = 1.

use exact_kernel::{Slot, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::CechError;

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// ⟨SᵃTᵇ, SᵇTᵃ⟩ = (−1)ᵃ a! b! / (2n)!, zero on all other pairs.
pub fn pairing_contract(x: Slot, y: Slot) -> Result<Q, CechError> {
    if x.n != y.n {
        return Err(CechError::HalfWeight(x.n, y.n));
    }
    if x.s + y.s != 2 * x.n {
        return Ok(Q::zero());
    }
    let (a, b) = (x.s, x.t());
    let v = Q::new(factorial(a) * factorial(b), factorial(2 * x.n));
    Ok(if a % 2 == 1 { -v } else { v })
}

/// Coefficient rule for `wedge`: pair the two slots into the trivial frame.
pub fn pairing_rule(x: &Slot, y: &Slot) -> Vec<(Q, Slot)> {
    match pairing_contract(*x, *y) {
        Ok(c) if !c.is_zero() => vec![(c, Slot::unit())],
        Ok(_) => vec![],
        Err(e) => panic!("{e}"),
    }
}

/// (1/(2n)!) Σ_σ Π ⟨x_i, y_σ(i)⟩ over letter sequences; only sensible for tiny n.
pub fn pairing_brute_force(x: Slot, y: Slot) -> Q {
    // letters: true = S, false = T
    let word = |s: Slot| -> Vec<bool> { (0..2 * s.n).map(|i| i < s.s).collect() };
    let xs = word(x);
    let ys = word(y);
    let base = |p: bool, q: bool| -> i64 {
        match (p, q) {
            (true, false) => -1,
            (false, true) => 1,
            _ => 0,
        }
    };
    let mut perm: Vec<usize> = (0..ys.len()).collect();
    let mut total = BigInt::zero();
    loop {
        let prod: i64 = xs.iter().zip(&perm).map(|(&p, &j)| base(p, ys[j])).product();
        total += prod;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Q::new(total, factorial(2 * x.n))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
