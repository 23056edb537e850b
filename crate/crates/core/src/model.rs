//! The modified quadratic Lorenz flow
//!
//! ```text
//! x' = σ(yz − x)
//! y' = ρx − xz
//! z' = (xy)² − βz
//! ```
//!
//! together with its Jacobian, divergence, the `(x, y, z) → (−x, −y, z)`
//! symmetry and the exponent fields of its geometric and bigeometric
//! multiplicative forms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Axis, Error, Result};
use crate::linalg::Mat3;

/// The parameter triple `(σ, ρ, β)`. All three are strictly positive; this is
/// checked once at construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemParams {
    sigma: f64,
    rho: f64,
    beta: f64,
}

impl SystemParams {
    pub fn new(sigma: f64, rho: f64, beta: f64) -> Result<Self> {
        for (name, value) in [("sigma", sigma), ("rho", rho), ("beta", beta)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    constraint: "finite and > 0",
                });
            }
        }
        Ok(Self { sigma, rho, beta })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Same σ and ρ with a different β.
    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        Self::new(self.sigma, self.rho, beta)
    }
}

impl Default for SystemParams {
    /// The chaotic regime σ = 12, ρ = 8, β = 4.
    fn default() -> Self {
        Self {
            sigma: 12.0,
            rho: 8.0,
            beta: 4.0,
        }
    }
}

/// A point in phase space.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct State3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl State3 {
    pub const ORIGIN: State3 = State3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array([x, y, z]: [f64; 3]) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// `self + h·d`, the explicit Euler-style offset used by every RK stage.
    #[inline]
    pub fn advanced(self, d: Deriv3, h: f64) -> Self {
        Self {
            x: self.x + h * d.dx,
            y: self.y + h * d.dy,
            z: self.z + h * d.dz,
        }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// First coordinate that is zero, if any.
    pub fn zero_axis(&self) -> Option<Axis> {
        Axis::ALL
            .into_iter()
            .zip(self.to_array())
            .find_map(|(axis, v)| (v == 0.0).then_some(axis))
    }
}

impl fmt::Display for State3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {:?})", self.x, self.y, self.z)
    }
}

/// Time derivative of a [`State3`].
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Deriv3 {
    pub dx: f64,
    pub dy: f64,
    pub dz: f64,
}

impl Deriv3 {
    pub fn to_array(self) -> [f64; 3] {
        [self.dx, self.dy, self.dz]
    }

    pub fn norm(&self) -> f64 {
        (self.dx * self.dx + self.dy * self.dy + self.dz * self.dz).sqrt()
    }
}

/// Log-space value of a multiplicative derivative: the geometric field value
/// of each coordinate is `exp` of the corresponding component.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct MulExponent3 {
    pub ex: f64,
    pub ey: f64,
    pub ez: f64,
}

impl MulExponent3 {
    pub fn to_array(self) -> [f64; 3] {
        [self.ex, self.ey, self.ez]
    }

    pub fn from_array([ex, ey, ez]: [f64; 3]) -> Self {
        Self { ex, ey, ez }
    }

    /// The multiplicative derivative itself, componentwise `exp`.
    pub fn field_value(&self) -> [f64; 3] {
        [self.ex.exp(), self.ey.exp(), self.ez.exp()]
    }
}

fn check_finite(values: [f64; 3]) -> Result<()> {
    match Axis::ALL.into_iter().zip(values).find(|(_, v)| !v.is_finite()) {
        Some((component, _)) => Err(Error::Overflow { component }),
        None => Ok(()),
    }
}

#[inline]
pub fn vector_field(s: State3, p: &SystemParams) -> Result<Deriv3> {
    let xy = s.x * s.y;
    let d = Deriv3 {
        dx: p.sigma * (s.y * s.z - s.x),
        dy: p.rho * s.x - s.x * s.z,
        dz: xy * xy - p.beta * s.z,
    };
    check_finite(d.to_array())?;
    Ok(d)
}

pub fn jacobian(s: State3, p: &SystemParams) -> Mat3 {
    let State3 { x, y, z } = s;
    Mat3::new([
        [-p.sigma, p.sigma * z, p.sigma * y],
        [p.rho - z, 0.0, -x],
        [2.0 * x * y * y, 2.0 * x * x * y, -p.beta],
    ])
}

/// `−(σ + β)`; the flow contracts volume at this constant rate everywhere.
pub fn divergence(p: &SystemParams) -> f64 {
    -(p.sigma + p.beta)
}

pub fn apply_symmetry(s: State3) -> State3 {
    State3::new(-s.x, -s.y, s.z)
}

/// Exponent of the geometric derivative, `(x'/x, y'/y, z'/z)`.
pub fn geometric_exponent(s: State3, p: &SystemParams) -> Result<MulExponent3> {
    if let Some(axis) = s.zero_axis() {
        return Err(Error::ZeroCoordinate(axis));
    }
    let d = vector_field(s, p)?;
    let e = MulExponent3 {
        ex: d.dx / s.x,
        ey: d.dy / s.y,
        ez: d.dz / s.z,
    };
    check_finite(e.to_array())?;
    Ok(e)
}

/// Exponent of the bigeometric derivative, `t · (x'/x, y'/y, z'/z)`.
pub fn bigeometric_exponent(t: f64, s: State3, p: &SystemParams) -> Result<MulExponent3> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTime(t));
    }
    let g = geometric_exponent(s, p)?;
    let e = MulExponent3 {
        ex: t * g.ex,
        ey: t * g.ey,
        ez: t * g.ez,
    };
    check_finite(e.to_array())?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> SystemParams {
        SystemParams::default()
    }

    #[test]
    fn params_reject_nonpositive() {
        assert!(SystemParams::new(12.0, 8.0, 4.0).is_ok());
        let err = SystemParams::new(12.0, 8.0, -1.0).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { name: "beta", .. }));
        assert!(err.to_string().contains("beta"));
        assert!(SystemParams::new(0.0, 8.0, 4.0).is_err());
        assert!(SystemParams::new(12.0, f64::NAN, 4.0).is_err());
    }

    #[test]
    fn field_examples() {
        assert_eq!(vector_field(State3::ORIGIN, &p()).unwrap(), Deriv3::default());
        let d = vector_field(State3::new(1.0, 1.0, 1.0), &p()).unwrap();
        assert_eq!(d.to_array(), [0.0, 7.0, -3.0]);
    }

    #[test]
    fn field_vanishes_at_closed_form_equilibrium() {
        let e = State3::new(2048f64.sqrt().sqrt(), 0.5f64.sqrt().sqrt(), 8.0);
        let d = vector_field(e, &p()).unwrap();
        assert!(d.norm() < 1e-12, "{d:?}");
    }

    #[test]
    fn field_reports_overflowing_component() {
        let err = vector_field(State3::new(1e200, 1e200, 1.0), &p()).unwrap_err();
        assert_eq!(err, Error::Overflow { component: Axis::Z });
        let err = vector_field(State3::new(f64::NAN, 0.0, 0.0), &p()).unwrap_err();
        assert_eq!(err, Error::Overflow { component: Axis::X });
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(
            jacobian(State3::ORIGIN, &p()).rows(),
            [[-12.0, 0.0, 0.0], [8.0, 0.0, 0.0], [0.0, 0.0, -4.0]]
        );
        assert_eq!(
            jacobian(State3::new(1.0, 1.0, 1.0), &p()).rows(),
            [[-12.0, 12.0, 12.0], [7.0, 0.0, -1.0], [2.0, 2.0, -4.0]]
        );
    }

    #[test]
    fn divergence_examples() {
        assert_eq!(divergence(&p()), -16.0);
        assert_eq!(divergence(&SystemParams::new(1.0, 1.0, 1.0).unwrap()), -2.0);
        assert_eq!(divergence(&SystemParams::new(12.0, 8.0, 0.1).unwrap()), -12.1);
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(
            apply_symmetry(State3::new(1.0, 2.0, 3.0)),
            State3::new(-1.0, -2.0, 3.0)
        );
        assert_eq!(
            apply_symmetry(State3::new(0.0, 0.0, 5.0)),
            State3::new(-0.0, -0.0, 5.0)
        );
    }

    #[test]
    fn geometric_examples() {
        let e = geometric_exponent(State3::new(1.0, 1.0, 1.0), &p()).unwrap();
        assert_eq!(e.to_array(), [0.0, 7.0, -3.0]);
        let e = geometric_exponent(State3::new(1.0, 1.0, 2.0), &p()).unwrap();
        assert_eq!(e.to_array(), [12.0, 6.0, -3.5]);
        assert_eq!(
            geometric_exponent(State3::new(0.0, 1.0, 1.0), &p()).unwrap_err(),
            Error::ZeroCoordinate(Axis::X)
        );
    }

    #[test]
    fn bigeometric_examples() {
        let s = State3::new(1.0, 1.0, 1.0);
        assert_eq!(
            bigeometric_exponent(1.0, s, &p()).unwrap().to_array(),
            [0.0, 7.0, -3.0]
        );
        assert_eq!(
            bigeometric_exponent(2.0, s, &p()).unwrap().to_array(),
            [0.0, 14.0, -6.0]
        );
        assert_eq!(
            bigeometric_exponent(0.0, s, &p()).unwrap_err(),
            Error::NonPositiveTime(0.0)
        );
        assert!(bigeometric_exponent(1.0, State3::new(1.0, 0.0, 1.0), &p()).is_err());
    }

    #[test]
    fn field_value_is_exp_of_exponent() {
        let e = MulExponent3 {
            ex: 0.0,
            ey: 1.0,
            ez: -1.0,
        };
        assert_eq!(e.field_value(), [1.0, std::f64::consts::E, (-1f64).exp()]);
    }
}
