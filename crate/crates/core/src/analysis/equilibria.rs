use std::fmt;

use serde::Serialize;

use crate::linalg::{eigenvalues3, EigenTriple, REAL_SNAP_TOL};
use crate::model::{apply_symmetry, jacobian, State3, SystemParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EquilibriumLabel {
    #[serde(rename = "O")]
    O,
    #[serde(rename = "E+")]
    Eplus,
    #[serde(rename = "E-")]
    Eminus,
}

impl fmt::Display for EquilibriumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquilibriumLabel::O => "O",
            EquilibriumLabel::Eplus => "E+",
            EquilibriumLabel::Eminus => "E-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Equilibrium {
    pub label: EquilibriumLabel,
    pub location: State3,
}

/// The origin and the symmetric pair `E± = (±⁴√(βρ³), ±⁴√(β/ρ), ρ)`.
///
/// The origin is not isolated: every point `(0, y, 0)` is an equilibrium,
/// which is where the zero eigenvalue of `J(O)` comes from. `O` stands in for
/// that whole line here.
pub fn find_equilibria(p: &SystemParams) -> [Equilibrium; 3] {
    let (rho, beta) = (p.rho(), p.beta());
    let plus = State3::new(
        (beta * rho * rho * rho).sqrt().sqrt(),
        (beta / rho).sqrt().sqrt(),
        rho,
    );
    [
        Equilibrium {
            label: EquilibriumLabel::O,
            location: State3::ORIGIN,
        },
        Equilibrium {
            label: EquilibriumLabel::Eplus,
            location: plus,
        },
        Equilibrium {
            label: EquilibriumLabel::Eminus,
            location: apply_symmetry(plus),
        },
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Stability {
    StableNode,
    StableFocus,
    UnstableSaddleFocus,
    Unstable,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub equilibrium: Equilibrium,
    pub eigenvalues: EigenTriple,
    pub classification: Stability,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn classify(eig: &EigenTriple) -> Stability {
    let roots = eig.roots();
    let scale = 1.0 + roots.iter().map(|r| r.abs()).fold(0.0, f64::max);
    let tol = REAL_SNAP_TOL * scale;

    if roots.iter().any(|r| r.re > tol) {
        let unstable_pair = roots.iter().any(|r| !r.is_real() && r.re > tol);
        let contracting_real = roots.iter().any(|r| r.is_real() && r.re < -tol);
        if unstable_pair && contracting_real {
            Stability::UnstableSaddleFocus
        } else {
            Stability::Unstable
        }
    } else if roots.iter().any(|r| r.re.abs() <= tol) {
        Stability::Degenerate
    } else if roots.iter().any(|r| !r.is_real()) {
        Stability::StableFocus
    } else {
        Stability::StableNode
    }
}

/// Linear stability from the eigenvalues of the Jacobian at `e`.
pub fn classify_stability(e: &Equilibrium, p: &SystemParams) -> StabilityReport {
    let eigenvalues = eigenvalues3(&jacobian(e.location, p));
    let classification = classify(&eigenvalues);
    let note = (classification == Stability::Degenerate).then(|| {
        "zero eigenvalue: linearization is inconclusive; the point lies on a line of equilibria \
         x = z = 0 and is not asymptotically stable along it"
            .to_string()
    });
    StabilityReport {
        equilibrium: *e,
        eigenvalues,
        classification,
        note,
    }
}
