use std::fmt;

use crate::model::State3;

/// A phase-space coordinate, used to name the offending component in errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: must be {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("invalid settings: {0}")]
    InvalidSettings(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A stage or result left the finite range (or exceeded the blow-up bound).
    #[error("numerical overflow in component {component}")]
    Overflow { component: Axis },

    /// A run aborted; `last` is the last state that passed all checks.
    #[error("trajectory blew up in component {component} after t = {time} (last finite state {last})")]
    BlowUp {
        time: f64,
        last: State3,
        component: Axis,
    },

    #[error("coordinate {0} is zero; multiplicative fields need nonzero coordinates")]
    ZeroCoordinate(Axis),

    #[error("time must be positive for the bigeometric field, got t = {0}")]
    NonPositiveTime(f64),

    #[error("degenerate tangent frame: vector {index} collapsed during orthonormalization")]
    DegenerateFrame { index: usize },
}

impl Error {
    /// True for failures of the numerics themselves rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Overflow { .. } | Error::BlowUp { .. } | Error::DegenerateFrame { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
