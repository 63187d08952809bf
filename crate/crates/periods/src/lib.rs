//! Periods and quasi-periods of Δ from Čech cocycles pulled back to the upper
//! half-plane along τ ↦ (g₂(τ), g₃(τ)).
//!
//! Frame: S = Y − 2G₂(τ)T, T = 2πi(τY − X).  Pullbacks: α/Δ ↦ (2/3)·2πi dτ,
//! dΔ/Δ ↦ 2πi·(−24G₂) dτ.  Group cocycles use a finite base point τ₀ = t·i and
//! chart-U0 paths; the Eisenstein class is the holomorphic class of G₁₂.

pub mod cocycle;
pub mod numeric;
pub mod poly;
pub mod project;

use exact_kernel::{par, Laurent};
use rug::Float;
use second_kind::{canonical_basis, holomorphic_cocycle, ClassId, SecondKindCocycle};

pub use cocycle::{
    cocycle_relation_check, composite_path_defect, integrate_cocycle_value, integrate_path, pullback_scalar,
    GroupCocycle, HPath, Quadrature,
};
pub use numeric::Modular;
pub use project::{project, PeriodReport, PeriodReportJson, Projection};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum PeriodsError {
    #[error("τ = {0} is not in the upper half-plane")]
    NotInUpperHalfPlane(String),
    #[error("q-series order {order} too small for |q| = {abs_q}")]
    SeriesOrder { order: usize, abs_q: f64 },
    #[error("chart violation: {0}")]
    Chart(String),
    #[error("quadrature did not converge after {0} bisections")]
    Quadrature(u32),
    #[error("least-squares system is rank deficient at column {0}")]
    RankDeficient(usize),
    #[error("projection residual {residual} above tolerance {tolerance}")]
    Residual { residual: String, tolerance: f64 },
    #[error("cocycle construction failed: {0}")]
    Cocycle(String),
}

#[derive(Clone, Debug)]
pub struct PeriodConfig {
    /// decimal digits P
    pub precision: u32,
    /// q-series order M
    pub qorder: usize,
    /// τ₀ = basepoint·i
    pub basepoint: f64,
    /// bound on the projection residual
    pub tolerance: f64,
}

impl Default for PeriodConfig {
    fn default() -> Self {
        Self { precision: 50, qorder: 80, basepoint: 2.0, tolerance: 1e-10 }
    }
}

/// G₁₂ as an isobaric polynomial in g₂, g₃.
pub fn g12_polynomial() -> Laurent {
    let e = qseries::eisenstein(12, 12).expect("even weight");
    qseries::poly_from_qexpansion(&e, 12).expect("G12 is modular")
}

/// The three weight-12 classes: ω̃_Δ, ω̃₁,₁ and the G₁₂ holomorphic class.
pub fn weight12_classes() -> Result<[SecondKindCocycle; 3], PeriodsError> {
    let err = |e: second_kind::SecondKindError| PeriodsError::Cocycle(e.to_string());
    let basis = canonical_basis(5).map_err(err)?;
    let find = |pred: &dyn Fn(&ClassId) -> bool| basis.iter().find(|c| pred(&c.id)).cloned().expect("class present");
    let delta = find(&|id| matches!(id, ClassId::Holomorphic { name, .. } if name == "Δ"));
    let eleven = find(&|id| *id == ClassId::SecondKind { j: 1, k: 1 });
    let eis = holomorphic_cocycle(&g12_polynomial(), 5).map_err(err)?;
    Ok([delta, eleven, eis])
}

/// Group cocycles of ω̃_Δ, ω̃₁,₁, G₁₂ at the configured base point.
pub fn weight12_cocycles(
    cfg: &PeriodConfig,
    modular: &Modular,
    quad: &Quadrature,
) -> Result<Vec<GroupCocycle>, PeriodsError> {
    let classes = weight12_classes()?;
    par::map(&classes, |c| GroupCocycle::compute(c, cfg.basepoint, modular, quad)).into_iter().collect()
}

pub fn compute_periods(cfg: &PeriodConfig) -> Result<PeriodReport, PeriodsError> {
    let modular = Modular::new(cfg.precision, cfg.qorder);
    let quad = Quadrature::new(&modular, cfg.precision);
    let cs = weight12_cocycles(cfg, &modular, &quad)?;
    let (delta, eleven, eis) = (&cs[0], &cs[1], &cs[2]);
    let pd = project(delta, eis)?;
    let pe = project(eleven, eis)?;
    let defects = [cocycle_relation_check(delta), cocycle_relation_check(eleven), cocycle_relation_check(eis)];
    let report = PeriodReport::assemble(&pd, &pe, defects);
    if report.residual_norm > Float::with_val(modular.prec, cfg.tolerance) {
        return Err(PeriodsError::Residual {
            residual: report.residual_norm.to_string_radix(10, Some(6)),
            tolerance: cfg.tolerance,
        });
    }
    Ok(report)
}
