//! Fixed-step fourth-order Runge–Kutta integration of the flow, of its
//! variational system, and of the geometric and bigeometric multiplicative
//! forms.
//!
//! The multiplicative steppers are classical RK4 applied after the exact
//! change of variables `u = ln|coordinate|` (geometric) and additionally
//! `s = ln t` (bigeometric). Written multiplicatively, one step is
//! `coordinate · exp(h/6 · (e1 + 2e2 + 2e3 + e4))` with stage exponents `e_i`.
//! The sign of every coordinate is therefore frozen at its initial value: a
//! multiplicative solution can approach a coordinate plane but never cross
//! it. When the underlying flow does cross one, the log-space variable runs
//! off to −∞ and the run aborts with a blow-up error.

use serde::Serialize;

use crate::error::{Axis, Error, Result};
use crate::linalg::TangentFrame;
use crate::model::{
    bigeometric_exponent, geometric_exponent, jacobian, vector_field, Deriv3, MulExponent3, State3,
    SystemParams,
};

/// Any coordinate magnitude above this aborts a run. The multiplicative
/// steppers also abort below its reciprocal, the mirror bound in log space.
pub const BLOWUP_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimSettings {
    pub t0: f64,
    pub t_end: f64,
    /// Step size. For bigeometric runs this is the step in `ln t`.
    pub h: f64,
    /// Samples with `t < t0 + discard` are dropped.
    pub discard: f64,
    pub sample_every: usize,
}

impl Default for SimSettings {
    fn default() -> Self {
        Self {
            t0: 0.0,
            t_end: 1000.0,
            h: 0.001,
            discard: 100.0,
            sample_every: 1,
        }
    }
}

impl SimSettings {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSettings(msg));
        if ![self.t0, self.t_end, self.h, self.discard]
            .iter()
            .all(|v| v.is_finite())
        {
            return bad("all times must be finite".into());
        }
        if !(self.h > 0.0) {
            return bad(format!("h = {} must be > 0", self.h));
        }
        if !(self.t_end > self.t0) {
            return bad(format!("t_end = {} must exceed t0 = {}", self.t_end, self.t0));
        }
        if !(self.discard >= 0.0 && self.discard < self.t_end - self.t0) {
            return bad(format!(
                "discard = {} must lie in [0, t_end - t0 = {})",
                self.discard,
                self.t_end - self.t0
            ));
        }
        if self.sample_every == 0 {
            return bad("sample_every must be a positive integer".into());
        }
        let steps = (self.t_end - self.t0) / self.h;
        if steps.round() > u32::MAX as f64 {
            return bad(format!("{steps:.3e} steps is too many"));
        }
        Ok(())
    }

    /// Number of fixed steps covering `[t0, t_end]`.
    pub fn steps(&self) -> usize {
        ((self.t_end - self.t0) / self.h).round() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub state: State3,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub params: SystemParams,
    pub settings: SimSettings,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn component(&self, axis: Axis) -> Vec<f64> {
        self.samples
            .iter()
            .map(|s| match axis {
                Axis::X => s.state.x,
                Axis::Y => s.state.y,
                Axis::Z => s.state.z,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MulKind {
    Geometric,
    Bigeometric,
}

fn check_state(s: State3) -> Result<State3> {
    for (component, v) in Axis::ALL.into_iter().zip(s.to_array()) {
        if !(v.abs() <= BLOWUP_LIMIT) {
            return Err(Error::Overflow { component });
        }
    }
    Ok(s)
}

fn check_mul_state(s: State3) -> Result<State3> {
    for (component, v) in Axis::ALL.into_iter().zip(s.to_array()) {
        let a = v.abs();
        if !(a <= BLOWUP_LIMIT && a >= BLOWUP_LIMIT.recip()) {
            return Err(Error::Overflow { component });
        }
    }
    Ok(s)
}

#[inline]
fn rk4_combine(k1: Deriv3, k2: Deriv3, k3: Deriv3, k4: Deriv3) -> Deriv3 {
    Deriv3 {
        dx: (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx) / 6.0,
        dy: (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy) / 6.0,
        dz: (k1.dz + 2.0 * k2.dz + 2.0 * k3.dz + k4.dz) / 6.0,
    }
}

/// One classical RK4 step of the flow.
pub fn rk4_step(p: &SystemParams, s: State3, h: f64) -> Result<State3> {
    let half = 0.5 * h;
    let k1 = vector_field(s, p)?;
    let k2 = vector_field(check_state(s.advanced(k1, half))?, p)?;
    let k3 = vector_field(check_state(s.advanced(k2, half))?, p)?;
    let k4 = vector_field(check_state(s.advanced(k3, h))?, p)?;
    check_state(s.advanced(rk4_combine(k1, k2, k3, k4), h))
}

/// Drives `step` over `n` steps starting from `init`, recording the samples
/// selected by `cfg`. `time_of(i)` is the time after `i` steps.
fn drive(
    params: &SystemParams,
    cfg: &SimSettings,
    init: State3,
    n: usize,
    time_of: impl Fn(usize) -> f64,
    mut step: impl FnMut(usize, State3) -> Result<State3>,
) -> Result<Trajectory> {
    let keep_from = cfg.t0 + cfg.discard;
    let mut samples = Vec::with_capacity((n + 1) / cfg.sample_every + 1);
    let mut s = init;
    for i in 0..=n {
        let t = time_of(i);
        if i % cfg.sample_every == 0 && t >= keep_from {
            samples.push(Sample { t, state: s });
        }
        if i == n {
            break;
        }
        s = step(i, s).map_err(|e| match e {
            Error::Overflow { component } => Error::BlowUp {
                time: t,
                last: s,
                component,
            },
            other => other,
        })?;
    }
    Ok(Trajectory {
        params: *params,
        settings: *cfg,
        samples,
    })
}

fn check_init(init: State3) -> Result<()> {
    if check_state(init).is_err() {
        return Err(Error::Precondition(format!(
            "initial state {init} must be finite with magnitude <= {BLOWUP_LIMIT:e}"
        )));
    }
    Ok(())
}

/// Repeated [`rk4_step`] from `init` over `[cfg.t0, cfg.t_end]`.
pub fn integrate(p: &SystemParams, init: State3, cfg: &SimSettings) -> Result<Trajectory> {
    cfg.validate()?;
    check_init(init)?;
    let h = cfg.h;
    drive(
        p,
        cfg,
        init,
        cfg.steps(),
        |i| cfg.t0 + i as f64 * h,
        |_, s| rk4_step(p, s, h),
    )
}

#[inline]
fn frame_advanced(f: &TangentFrame, k: &TangentFrame, h: f64) -> TangentFrame {
    TangentFrame {
        cols: std::array::from_fn(|j| std::array::from_fn(|i| f.cols[j][i] + h * k.cols[j][i])),
    }
}

#[inline]
fn frame_rate(p: &SystemParams, s: State3, f: &TangentFrame) -> TangentFrame {
    let jac = jacobian(s, p);
    TangentFrame {
        cols: f.cols.map(|v| jac.mul_vec(v)),
    }
}

fn check_frame(f: TangentFrame) -> Result<TangentFrame> {
    for col in &f.cols {
        for (component, v) in Axis::ALL.into_iter().zip(col) {
            if !v.is_finite() {
                return Err(Error::Overflow { component });
            }
        }
    }
    Ok(f)
}

/// One RK4 step of the flow coupled with `δ' = J(s)·δ` for each frame
/// column. Tangent stages use the Jacobian at the matching state stage.
pub fn variational_rk4_step(
    p: &SystemParams,
    s: State3,
    f: &TangentFrame,
    h: f64,
) -> Result<(State3, TangentFrame)> {
    let half = 0.5 * h;
    let k1 = vector_field(s, p)?;
    let g1 = frame_rate(p, s, f);

    let s2 = check_state(s.advanced(k1, half))?;
    let k2 = vector_field(s2, p)?;
    let g2 = frame_rate(p, s2, &frame_advanced(f, &g1, half));

    let s3 = check_state(s.advanced(k2, half))?;
    let k3 = vector_field(s3, p)?;
    let g3 = frame_rate(p, s3, &frame_advanced(f, &g2, half));

    let s4 = check_state(s.advanced(k3, h))?;
    let k4 = vector_field(s4, p)?;
    let g4 = frame_rate(p, s4, &frame_advanced(f, &g3, h));

    let next = check_state(s.advanced(rk4_combine(k1, k2, k3, k4), h))?;
    let frame = TangentFrame {
        cols: std::array::from_fn(|j| {
            std::array::from_fn(|i| {
                f.cols[j][i]
                    + h * ((g1.cols[j][i] + 2.0 * g2.cols[j][i] + 2.0 * g3.cols[j][i] + g4.cols[j][i]) / 6.0)
            })
        }),
    };
    Ok((next, check_frame(frame)?))
}

#[inline]
fn mul_advanced(s: State3, e: MulExponent3, h: f64) -> State3 {
    State3::new(
        s.x * (h * e.ex).exp(),
        s.y * (h * e.ey).exp(),
        s.z * (h * e.ez).exp(),
    )
}

/// Classical RK4 in log space for an exponent field that may depend on the
/// (log-)time `tau`. `s` must have nonzero coordinates.
pub(crate) fn log_rk4_step<F>(s: State3, tau: f64, h: f64, exponent: F) -> Result<State3>
where
    F: Fn(f64, State3) -> Result<MulExponent3>,
{
    let half = 0.5 * h;
    let e1 = exponent(tau, s)?;
    let e2 = exponent(tau + half, check_mul_state(mul_advanced(s, e1, half))?)?;
    let e3 = exponent(tau + half, check_mul_state(mul_advanced(s, e2, half))?)?;
    let e4 = exponent(tau + h, check_mul_state(mul_advanced(s, e3, h))?)?;
    let combined = MulExponent3 {
        ex: (e1.ex + 2.0 * e2.ex + 2.0 * e3.ex + e4.ex) / 6.0,
        ey: (e1.ey + 2.0 * e2.ey + 2.0 * e3.ey + e4.ey) / 6.0,
        ez: (e1.ez + 2.0 * e2.ez + 2.0 * e3.ez + e4.ez) / 6.0,
    };
    check_mul_state(mul_advanced(s, combined, h))
}

fn require_nonzero(s: State3) -> Result<()> {
    match s.zero_axis() {
        Some(axis) => Err(Error::ZeroCoordinate(axis)),
        None => Ok(()),
    }
}

/// One geometric multiplicative RK4 step.
pub fn geometric_rk4_step(p: &SystemParams, s: State3, h: f64) -> Result<State3> {
    require_nonzero(s)?;
    log_rk4_step(s, 0.0, h, |_, s| geometric_exponent(s, p))
}

fn bigeometric_from_log_time(p: &SystemParams, log_t: f64, s: State3, h_s: f64) -> Result<State3> {
    log_rk4_step(s, log_t, h_s, |tau, s| bigeometric_exponent(tau.exp(), s, p))
}

/// One bigeometric multiplicative RK4 step; `h_s` is the step in `ln t`.
/// Returns the new time `t · exp(h_s)` and state.
pub fn bigeometric_rk4_step(p: &SystemParams, t: f64, s: State3, h_s: f64) -> Result<(f64, State3)> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTime(t));
    }
    require_nonzero(s)?;
    let log_t = t.ln();
    let next = bigeometric_from_log_time(p, log_t, s, h_s)?;
    Ok(((log_t + h_s).exp(), next))
}

/// Loops the geometric or bigeometric stepper with the sampling rules of
/// [`integrate`]. For bigeometric runs `cfg.h` is the step in `ln t`, the
/// step count is `round(ln(t_end / t0) / h)` and sample times are
/// `t0 · exp(i·h)`; discard is still measured in `t`.
pub fn integrate_multiplicative(
    kind: MulKind,
    p: &SystemParams,
    init: State3,
    cfg: &SimSettings,
) -> Result<Trajectory> {
    cfg.validate()?;
    check_init(init)?;
    require_nonzero(init)?;
    if check_mul_state(init).is_err() {
        return Err(Error::Precondition(format!(
            "initial coordinates of {init} must have magnitude >= {:e}",
            BLOWUP_LIMIT.recip()
        )));
    }
    let h = cfg.h;
    match kind {
        MulKind::Geometric => drive(
            p,
            cfg,
            init,
            cfg.steps(),
            |i| cfg.t0 + i as f64 * h,
            |_, s| log_rk4_step(s, 0.0, h, |_, s| geometric_exponent(s, p)),
        ),
        MulKind::Bigeometric => {
            if !(cfg.t0 > 0.0) {
                return Err(Error::NonPositiveTime(cfg.t0));
            }
            let log_t0 = cfg.t0.ln();
            let n = ((cfg.t_end.ln() - log_t0) / h).round() as usize;
            drive(
                p,
                cfg,
                init,
                n,
                |i| (log_t0 + i as f64 * h).exp(),
                |i, s| bigeometric_from_log_time(p, log_t0 + i as f64 * h, s, h),
            )
        }
    }
}
