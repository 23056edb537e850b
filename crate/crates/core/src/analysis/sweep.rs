use rayon::prelude::*;
use serde::Serialize;

use super::lyapunov::{lyapunov_spectrum, BenettinSettings};
use crate::error::{Error, Result};
use crate::integrators::{integrate, SimSettings};
use crate::model::{State3, SystemParams};

/// Coarse attractor statistics for one β. Extents are `None` when the
/// trajectory blew up; the largest exponent is `None` when the spectrum run
/// failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub z_min: Option<f64>,
    pub z_max: Option<f64>,
    pub x_extent: Option<f64>,
    pub largest_lyapunov: Option<f64>,
    pub bounded: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepCell {
    pub beta: f64,
    pub summary: SweepSummary,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub cells: Vec<SweepCell>,
}

fn run_cell(
    base: &SystemParams,
    beta: f64,
    init: State3,
    cfg: &SimSettings,
    lyap_cfg: &BenettinSettings,
) -> SweepCell {
    let mut errors = Vec::new();
    let mut summary = SweepSummary {
        z_min: None,
        z_max: None,
        x_extent: None,
        largest_lyapunov: None,
        bounded: false,
    };
    let p = match base.with_beta(beta) {
        Ok(p) => p,
        Err(e) => {
            errors.push(e.to_string());
            return SweepCell {
                beta,
                summary,
                errors,
            };
        }
    };

    match integrate(&p, init, cfg) {
        Ok(traj) => {
            let fold = |f: fn(f64, f64) -> f64, init: f64, get: fn(&State3) -> f64| {
                traj.samples.iter().map(|s| get(&s.state)).fold(init, f)
            };
            let x_min = fold(f64::min, f64::INFINITY, |s| s.x);
            let x_max = fold(f64::max, f64::NEG_INFINITY, |s| s.x);
            summary.z_min = Some(fold(f64::min, f64::INFINITY, |s| s.z));
            summary.z_max = Some(fold(f64::max, f64::NEG_INFINITY, |s| s.z));
            summary.x_extent = Some(x_max - x_min);
            summary.bounded = true;
        }
        Err(e) => errors.push(e.to_string()),
    }
    match lyapunov_spectrum(&p, init, lyap_cfg) {
        Ok(spec) => summary.largest_lyapunov = Some(spec.exponents[0]),
        Err(e) => errors.push(e.to_string()),
    }
    SweepCell {
        beta,
        summary,
        errors,
    }
}

/// Runs [`integrate`] and [`lyapunov_spectrum`] for every β in `betas` (σ and
/// ρ from `base`). Cells are computed in parallel and returned in input
/// order; a failing cell records its errors and the sweep carries on.
pub fn sweep_beta(
    base: &SystemParams,
    betas: &[f64],
    init: State3,
    cfg: &SimSettings,
    lyap_cfg: &BenettinSettings,
) -> Result<SweepReport> {
    if betas.is_empty() {
        return Err(Error::Precondition("at least one beta is required".into()));
    }
    cfg.validate()?;
    lyap_cfg.validate()?;
    let cells = betas
        .par_iter()
        .map(|&beta| run_cell(base, beta, init, cfg, lyap_cfg))
        .collect();
    Ok(SweepReport { cells })
}
