//! Decide whether the radical-square-zero algebra `kQ/J^2` of a finite
//! quiver `Q` admits n-cluster-tilting subcategories, construct them, and
//! verify the combinatorial answers with an independent homological oracle
//! over a prime field.
//!
//! The crate is split along the pipeline:
//! - [`quiver`]: the input object `Q` — parsing, degrees, connectivity,
//!   recognition of the oriented path `A_m` and oriented cycle `~A_m`;
//! - [`admissibility`]: flow paths, q-values, n-(pre-)admissibility, the
//!   admissible degree `N(Q)`, divisor lattices, and a generator of
//!   admissible quivers for fuzzing;
//! - [`modules`]: symbolic calculus on the indecomposables of `mod kQ/J^2`
//!   (strings of length at most 2), closed-form inverse translates, the
//!   cluster-tilting module `M`, and the lattice of subcategories;
//! - [`oracle`]: explicit matrix representations over `GF(p)`, Hom and Ext
//!   computations, minimal resolutions, AR translates, and verification of
//!   the cluster-tilting conditions from first principles.

pub mod admissibility;
pub mod gfp;
pub mod modules;
pub mod oracle;
pub mod quiver;

use admissibility::AdmissibilityReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrowId(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("line {line}: arrow endpoint `{name}` is not a declared vertex")]
    DanglingVertex { line: usize, name: String },
    #[error("quiver has no vertices")]
    EmptyQuiver,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow id `{0}`")]
    UnknownArrow(String),
    #[error("quiver is not connected")]
    Disconnected,
    #[error("n must be at least {min} (got {n})")]
    BadLevel { n: u64, min: u64 },
    #[error("quiver is not 2-pre-admissible")]
    NotPreAdmissible(AdmissibilityReport),
    #[error("quiver is not {n}-admissible")]
    NotAdmissible { n: u64, report: AdmissibilityReport },
    #[error("operation is not defined for the oriented cycle ~A_{m}; use the cycle-specific route")]
    CycleShape { m: usize },
    #[error("operation requires an oriented cycle ~A_m")]
    NotCycleShape,
    #[error("{n} does not divide the cycle length {m}")]
    CycleDivisibility { n: u64, m: usize },
    #[error("vertex `{vertex}` does not have degree (2,2)")]
    NotDegree22 { vertex: String },
    #[error("flow path {path}: {n} does not divide k+q = {k_plus_q}")]
    OrbitUndefined { path: String, n: u64, k_plus_q: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field characteristic {0} is too large (must be < 2^31)")]
    FieldTooLarge(u64),
    #[error("resolution length {needed} exceeds the configured cap {cap}")]
    ResolutionCap { needed: usize, cap: usize },
    #[error("cannot decompose representation: {0}")]
    Decompose(String),
    #[error("invalid module description: {0}")]
    BadModule(String),
}
