//! Degree-by-degree construction of the universal flat connection on the
//! bundle of Lie algebras freely generated by the canonical cocycle classes.

pub mod cg;
pub mod pairing;
pub mod series;
pub mod solver;
pub mod words;

pub use pairing::{pair_classes, PairResult};
pub use series::{build_connection, Check, ConnectionJson, LieConnection, Registry};
pub use solver::{solve_lie, solve_sym_batch};
pub use words::{Generator, LieTree, Word};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error(transparent)]
    Cech(#[from] cech::CechError),
    #[error(transparent)]
    SecondKind(#[from] second_kind::SecondKindError),
    #[error("obstruction is not closed")]
    NotClosed,
    #[error("degree-{0} obstruction is not Lie-valued")]
    NotLie(usize),
    #[error("no primitive for an S^{}H-valued cochain with exponents up to {bound}", 2 * .n)]
    NoSolution { n: u32, bound: i32 },
    #[error("solution failed verification at degree {0}")]
    Verification(usize),
}
