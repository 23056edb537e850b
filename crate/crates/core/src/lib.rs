//! Simulation and analysis of the modified quadratic Lorenz system
//!
//! ```text
//! x' = σ(yz − x),   y' = ρx − xz,   z' = (xy)² − βz
//! ```
//!
//! and of its geometric and bigeometric multiplicative reformulations.
//!
//! * [`model`]: vector field, Jacobian, divergence, symmetry and the
//!   multiplicative exponent fields.
//! * [`linalg`]: 3×3 determinant, characteristic polynomial, closed-form
//!   eigenvalues, Gram–Schmidt.
//! * [`integrators`]: fixed-step RK4 for the flow, its variational system and
//!   the multiplicative forms.
//! * [`analysis`]: equilibria, stability, Lyapunov spectrum, Kaplan–Yorke
//!   dimension, volume contraction and β sweeps.
//! * [`io`]: CSV trajectories and JSON reports.

// `!(a < b)` is used on purpose so NaN takes the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod integrators;
pub mod io;
pub mod linalg;
pub mod model;

pub use analysis::{
    classify_stability, find_equilibria, kaplan_yorke, lyapunov_spectrum, sweep_beta,
    volume_contraction_check, BenettinSettings, ContractionCheck, Equilibrium, EquilibriumLabel,
    LyapunovSpectrum, Stability, StabilityReport, SweepCell, SweepReport, SweepSummary,
};
pub use error::{Axis, Error, Result};
pub use integrators::{
    bigeometric_rk4_step, geometric_rk4_step, integrate, integrate_multiplicative, rk4_step,
    variational_rk4_step, MulKind, Sample, SimSettings, Trajectory,
};
pub use io::{read_csv, write_csv, write_json, ReportDocument};
pub use linalg::{
    characteristic_coeffs, cubic_roots, det3, eigenvalues3, gram_schmidt3, ComplexScalar, EigenTriple, Mat3,
    TangentFrame,
};
pub use model::{
    apply_symmetry, bigeometric_exponent, divergence, geometric_exponent, jacobian, vector_field, Deriv3,
    MulExponent3, State3, SystemParams,
};
