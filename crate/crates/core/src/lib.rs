//! Exactly solvable position-dependent-mass Schrödinger problems built by a
//! point canonical transformation from constant-mass references, with an
//! independent finite-difference verifier.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod error;
pub mod models;
pub mod pct;
pub mod report;
pub mod special;
pub mod verify;

pub use catalog::{lookup, mass_eval, CatalogEntry, MassProfile, MassTriple, ReferencePotential, Variant};
pub use error::{Error, Result};
pub use models::{
    case_equations, eval_spectrum, eval_wavefunction, list_cases, make_model, norm_squared, spectrum_with, CaseDescriptor, CaseId,
    DeskGrid, Params, Spectrum, SpectrumEntry, TargetModel,
};
pub use pct::{build_map, transport_potential, transport_spectrum, transport_wavefunction, CoordinateMap, PctMap, RadialCase};
pub use report::{convergence_study, verify_desk, verify_model, LevelRecord, VerificationReport, VerifyOptions, CSV_HEADER};
pub use special::{adaptive_quad, kummer_poly, laguerre, pochhammer, PolySeries};
pub use verify::{
    convergence_study_with, discretize_pdm, eigenvector, lowest_eigenvalues, residual_norm, ConvergenceStudy, Grid, GridFunction,
    TridiagonalOperator,
};

/// Version string stamped into reports.
pub const GENERATED_BY: &str = concat!("pdmpct ", env!("CARGO_PKG_VERSION"));
