//! Equilibria and their stability, Lyapunov spectrum, Kaplan–Yorke
//! dimension, volume contraction and β sweeps.

mod equilibria;
mod lyapunov;
mod stats;
mod sweep;

pub use equilibria::{
    classify_stability, find_equilibria, Equilibrium, EquilibriumLabel, Stability, StabilityReport,
};
pub use lyapunov::{
    kaplan_yorke, lyapunov_spectrum, volume_contraction_check, BenettinSettings, ContractionCheck,
    LyapunovSpectrum, SUM_TOLERANCE,
};
pub use stats::{lag_correlation, max_lag_correlation};
pub use sweep::{sweep_beta, SweepCell, SweepReport, SweepSummary};
