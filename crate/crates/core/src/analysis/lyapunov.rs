use serde::Serialize;

use crate::error::{Error, Result};
use crate::integrators::{rk4_step, variational_rk4_step};
use crate::linalg::{det3, gram_schmidt3, TangentFrame};
use crate::model::{divergence, vector_field, State3, SystemParams};

/// Settings for the Benettin (QR re-orthonormalization) method.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenettinSettings {
    pub h: f64,
    /// Time integrated before the tangent frame is attached.
    pub transient: f64,
    pub total_time: f64,
    /// Time between Gram–Schmidt re-orthonormalizations.
    pub renorm_interval: f64,
}

impl Default for BenettinSettings {
    fn default() -> Self {
        Self {
            h: 0.001,
            transient: 100.0,
            total_time: 1000.0,
            renorm_interval: 0.5,
        }
    }
}

impl BenettinSettings {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("h", self.h),
            ("total_time", self.total_time),
            ("renorm_interval", self.renorm_interval),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidSettings(format!("{name} = {v} must be > 0")));
            }
        }
        if !(self.transient.is_finite() && self.transient >= 0.0) {
            return Err(Error::InvalidSettings(format!(
                "transient = {} must be >= 0",
                self.transient
            )));
        }
        if self.renorm_interval < self.h {
            return Err(Error::InvalidSettings(format!(
                "renorm_interval = {} must be >= h = {}",
                self.renorm_interval, self.h
            )));
        }
        if self.total_time < self.renorm_interval {
            return Err(Error::InvalidSettings(format!(
                "total_time = {} must be >= renorm_interval = {}",
                self.total_time, self.renorm_interval
            )));
        }
        if (self.transient + self.total_time) / self.h > u32::MAX as f64 {
            return Err(Error::InvalidSettings("too many steps".into()));
        }
        Ok(())
    }

    fn steps_per_block(&self) -> usize {
        ((self.renorm_interval / self.h).round() as usize).max(1)
    }

    fn blocks(&self) -> usize {
        ((self.total_time / self.renorm_interval).round() as usize).max(1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LyapunovSpectrum {
    /// Sorted descending, in 1/time.
    pub exponents: [f64; 3],
    pub dimension: f64,
    pub settings: BenettinSettings,
    /// Where the reference trajectory ended up.
    pub final_state: State3,
}

/// Allowed gap between the exponent sum and the divergence before a
/// spectrum is flagged.
pub const SUM_TOLERANCE: f64 = 0.5;

impl LyapunovSpectrum {
    pub fn sum(&self) -> f64 {
        self.exponents.iter().sum()
    }

    /// Human-readable warnings about the run: a spectrum whose sum misses the
    /// divergence, and a reference trajectory that was captured by the line
    /// of equilibria `x = z = 0` (the spectrum then describes that line, not a
    /// chaotic set).
    pub fn diagnostics(&self, p: &SystemParams) -> Vec<String> {
        let mut out = Vec::new();
        let div = divergence(p);
        if (self.sum() - div).abs() > SUM_TOLERANCE {
            out.push(format!(
                "exponent sum {:.6} differs from the divergence {div} by more than {SUM_TOLERANCE}",
                self.sum()
            ));
        }
        let s = self.final_state;
        if s.x.abs() < 1e-8 && s.z.abs() < 1e-8 {
            out.push(format!(
                "trajectory settled on the line of equilibria x = z = 0 (final state {s}); \
                 the exponents describe that equilibrium, not a chaotic attractor"
            ));
        }
        out
    }
}

fn blowup_at(time: f64, last: State3) -> impl FnOnce(Error) -> Error {
    move |e| match e {
        Error::Overflow { component } => Error::BlowUp {
            time,
            last,
            component,
        },
        other => other,
    }
}

/// Kaplan–Yorke dimension `j + (l₁ + … + l_j) / |l_{j+1}|`, where `j` is the
/// largest index with a nonnegative partial sum. Zero when `l₁ < 0`, three
/// when every partial sum is nonnegative.
pub fn kaplan_yorke(exponents: [f64; 3]) -> f64 {
    let mut l = exponents;
    l.sort_by(|a, b| b.total_cmp(a));
    let mut partial = 0.0;
    for (j, lj) in l.iter().enumerate() {
        let next = partial + lj;
        if next < 0.0 {
            return j as f64 + partial / lj.abs();
        }
        partial = next;
    }
    3.0
}

/// Benettin's method: the state and an orthonormal tangent frame are advanced
/// together and the frame is re-orthonormalized every `renorm_interval`; the
/// exponents are the time-averaged logarithms of the Gram–Schmidt norms.
pub fn lyapunov_spectrum(p: &SystemParams, init: State3, cfg: &BenettinSettings) -> Result<LyapunovSpectrum> {
    cfg.validate()?;
    if !init.is_finite() {
        return Err(Error::Precondition(format!("initial state {init} is not finite")));
    }
    if vector_field(init, p)?.norm() <= 1e-12 {
        return Err(Error::Precondition(format!(
            "initial state {init} is an equilibrium"
        )));
    }

    let h = cfg.h;
    let mut s = init;
    let transient_steps = (cfg.transient / h).round() as usize;
    for i in 0..transient_steps {
        s = rk4_step(p, s, h).map_err(blowup_at(i as f64 * h, s))?;
    }

    let m = cfg.steps_per_block();
    let blocks = cfg.blocks();
    let mut frame = TangentFrame::IDENTITY;
    let mut sums = [0.0; 3];
    let mut step = transient_steps;
    for _ in 0..blocks {
        for _ in 0..m {
            let (ns, nf) = variational_rk4_step(p, s, &frame, h).map_err(blowup_at(step as f64 * h, s))?;
            s = ns;
            frame = nf;
            step += 1;
        }
        let (q, norms) = gram_schmidt3(&frame)?;
        for (acc, n) in sums.iter_mut().zip(norms) {
            *acc += n.ln();
        }
        frame = q;
    }

    let elapsed = (blocks * m) as f64 * h;
    let mut exponents = sums.map(|v| v / elapsed);
    exponents.sort_by(|a, b| b.total_cmp(a));
    Ok(LyapunovSpectrum {
        exponents,
        dimension: kaplan_yorke(exponents),
        settings: *cfg,
        final_state: s,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContractionCheck {
    /// `ln det(frame) / t` measured along the trajectory.
    pub measured_log_rate: f64,
    /// The divergence `−(σ + β)`.
    pub theoretical: f64,
}

impl ContractionCheck {
    pub fn relative_error(&self) -> f64 {
        ((self.measured_log_rate - self.theoretical) / self.theoretical).abs()
    }
}

/// Propagates an identity frame for time `t` and compares the logarithmic
/// rate of change of its volume with the divergence. The frame is
/// re-orthonormalized every half time unit, with the determinant logged
/// beforehand, so the volume never underflows.
pub fn volume_contraction_check(p: &SystemParams, init: State3, t: f64, h: f64) -> Result<ContractionCheck> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Precondition(format!("t = {t} must be > 0")));
    }
    if !(h.is_finite() && h > 0.0 && h <= t) {
        return Err(Error::Precondition(format!("h = {h} must lie in (0, t]")));
    }
    if !init.is_finite() {
        return Err(Error::Precondition(format!("initial state {init} is not finite")));
    }
    let n = ((t / h).round() as usize).max(1);
    let renorm_every = ((0.5 / h).round() as usize).max(1);

    let mut s = init;
    let mut frame = TangentFrame::IDENTITY;
    let mut log_volume = 0.0;
    for i in 1..=n {
        let (ns, nf) = variational_rk4_step(p, s, &frame, h).map_err(blowup_at((i - 1) as f64 * h, s))?;
        s = ns;
        frame = nf;
        if i % renorm_every == 0 || i == n {
            log_volume += det3(&frame.as_matrix()).abs().ln();
            frame = gram_schmidt3(&frame)?.0;
        }
    }
    Ok(ContractionCheck {
        measured_log_rate: log_volume / (n as f64 * h),
        theoretical: divergence(p),
    })
}
