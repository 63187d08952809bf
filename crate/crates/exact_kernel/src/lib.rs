//! Exact arithmetic on the weighted ring Q[u, v, u⁻¹, v⁻¹] (deg u = 4, deg v = 6),
//! logarithmic forms in the basis {α/Δ, dΔ/Δ}, {du∧dv/Δ}, and the Gauss–Manin
//! connection ∇₀ acting on sections twisted by symmetric powers of H = ⟨S, T⟩.
//!
//! Conventions used throughout:
//!
//! * α = 2u dv − 3v du, Δ = u³ − 27v², dΔ = 3u² du − 54v dv.
//! * A "form weight" `w` means: functions have weight `w`, the α/Δ coefficient of a
//!   1-form has weight `w + 2`, its dΔ/Δ coefficient weight `w`, and the coefficient
//!   of du∧dv/Δ weight `w + 2`.  Exterior derivative and wedge are additive in it.
//! * d(α/Δ) = −du∧dv/Δ and α∧dΔ = −6Δ du∧dv (derived, see `forms`).

pub mod forms;
pub mod laurent;
pub mod linsolve;
pub mod par;
pub mod residue;
pub mod section;

pub use forms::{duv_to_basis, expand_to_duv, Basis, OneForm, TwoForm};
pub use laurent::{Chart, Laurent};
pub use residue::{residue_on_slice, SliceId};
pub use section::{
    nabla_fun, nabla_one, product, slot_connection, Coeff, CoeffMul, Frame, Kind, Section, Slot, SymSection,
};

/// The ground field.
pub type Q = num_rational::BigRational;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("monomial u^{a} v^{b} is not regular on chart {chart:?}")]
    Chart { chart: Chart, a: i32, b: i32 },
    #[error("coefficient of {label} is not homogeneous of weight {expected}")]
    Weight { label: String, expected: i64 },
    #[error("restricted form has a residue {0}; no rational primitive")]
    PrimitiveResidue(String),
    #[error("form is not of the expected kind: {0}")]
    Shape(String),
}

/// Small helpers for building rationals.
pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}
