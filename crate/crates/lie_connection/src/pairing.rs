//! The bracket of two classes of the same weight: pair the coefficient slots
//! with the Sp(H)-invariant form, then trivialize the resulting scalar
//! degree-2 cochain.

use cech::{d1, pairing_rule, wedge, Cochain1, Cochain2};
use exact_kernel::Slot;
use second_kind::SecondKindCocycle;

use crate::solver::solve_sym_batch;
use crate::LieError;

#[derive(Clone, Debug)]
pub struct PairResult {
    /// {ω̃_a, ω̃_b}
    pub bracket: Cochain2<Slot>,
    /// ξ̃ with Dξ̃ + {ω̃_a, ω̃_b} = 0
    pub xi: Cochain1<Slot>,
}

impl PairResult {
    pub fn verify(&self) -> bool {
        let mut r = d1(&self.xi);
        r.add_scaled(&self.bracket, &exact_kernel::q(1));
        r.is_zero()
    }
}

pub fn pair_classes(a: &SecondKindCocycle, b: &SecondKindCocycle) -> Result<PairResult, LieError> {
    if a.n != b.n {
        return Err(LieError::Cech(cech::CechError::HalfWeight(a.n, b.n)));
    }
    let bracket = wedge(&a.cochain, &b.cochain, pairing_rule);
    let xi = solve_sym_batch(0, std::slice::from_ref(&bracket))?.pop().expect("one target");
    let out = PairResult { bracket, xi };
    if !out.verify() {
        return Err(LieError::Verification(0));
    }
    Ok(out)
}
