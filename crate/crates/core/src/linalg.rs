//! Fixed-size 3×3 linear algebra: determinant, characteristic polynomial,
//! closed-form cubic roots and modified Gram–Schmidt on tangent frames.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Relative tolerance below which an imaginary part is treated as rounding
/// noise and the root is reported as real.
pub const REAL_SNAP_TOL: f64 = 1e-9;

/// Residual norm, relative to the vector's norm before projection, at which
/// Gram–Schmidt declares a frame degenerate.
pub const DEGENERATE_REL_TOL: f64 = 1e-12;

/// A 3×3 real matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3([[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub const fn new(rows: [[f64; 3]; 3]) -> Self {
        Self(rows)
    }

    pub fn diag(d: [f64; 3]) -> Self {
        Self([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }

    pub fn from_columns(cols: [[f64; 3]; 3]) -> Self {
        Self(std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i])))
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    #[inline]
    pub fn mul_vec(&self, v: [f64; 3]) -> [f64; 3] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| self.0[i][k] * other.0[k][j]).sum())
        }))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|v| v.is_finite())
    }
}

/// A complex number `re + i·im`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ComplexScalar {
    pub re: f64,
    pub im: f64,
}

impl ComplexScalar {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub const fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    pub fn is_real(&self) -> bool {
        self.im == 0.0
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }

    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }

    fn div(self, o: Self) -> Self {
        let d = o.re * o.re + o.im * o.im;
        Self::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }

    fn scale(self, k: f64) -> Self {
        Self::new(self.re * k, self.im * k)
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im > 0.0 {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}-{}i", self.re, -self.im)
        }
    }
}

/// Three eigenvalues sorted by descending real part, ties broken by
/// descending imaginary part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenTriple(pub [ComplexScalar; 3]);

impl EigenTriple {
    fn sorted(mut roots: [ComplexScalar; 3]) -> Self {
        roots.sort_by(|a, b| match b.re.total_cmp(&a.re) {
            Ordering::Equal => b.im.total_cmp(&a.im),
            other => other,
        });
        Self(roots)
    }

    pub fn roots(&self) -> &[ComplexScalar; 3] {
        &self.0
    }

    pub fn sum(&self) -> ComplexScalar {
        self.0.iter().fold(ComplexScalar::default(), |acc, r| acc.add(*r))
    }

    pub fn product(&self) -> ComplexScalar {
        self.0[0].mul(self.0[1]).mul(self.0[2])
    }
}

/// Three perturbation vectors, stored as columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentFrame {
    pub cols: [[f64; 3]; 3],
}

impl TangentFrame {
    pub const IDENTITY: TangentFrame = TangentFrame {
        cols: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    pub const fn from_columns(cols: [[f64; 3]; 3]) -> Self {
        Self { cols }
    }

    pub fn as_matrix(&self) -> Mat3 {
        Mat3::from_columns(self.cols)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            cols: self.cols.map(|v| v.map(|e| c * e)),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.cols.iter().flatten().all(|v| v.is_finite())
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn det3(m: &Mat3) -> f64 {
    let a = &m.0;
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Coefficients `(c2, c1, c0)` of `det(λI − m) = λ³ + c2·λ² + c1·λ + c0`.
pub fn characteristic_coeffs(m: &Mat3) -> (f64, f64, f64) {
    let a = &m.0;
    let minors = (a[0][0] * a[1][1] - a[0][1] * a[1][0])
        + (a[0][0] * a[2][2] - a[0][2] * a[2][0])
        + (a[1][1] * a[2][2] - a[1][2] * a[2][1]);
    (-m.trace(), minors, -det3(m))
}

fn eval_cubic(c2: f64, c1: f64, c0: f64, r: f64) -> (f64, f64) {
    (((r + c2) * r + c1) * r + c0, (3.0 * r + 2.0 * c2) * r + c1)
}

fn polish_real(c2: f64, c1: f64, c0: f64, mut r: f64) -> f64 {
    let (mut f, mut fp) = eval_cubic(c2, c1, c0, r);
    for _ in 0..8 {
        if f == 0.0 || fp == 0.0 {
            break;
        }
        let next = r - f / fp;
        let (nf, nfp) = eval_cubic(c2, c1, c0, next);
        if !(nf.abs() < f.abs()) {
            break;
        }
        (r, f, fp) = (next, nf, nfp);
    }
    r
}

fn polish_complex(c2: f64, c1: f64, c0: f64, mut z: ComplexScalar) -> ComplexScalar {
    let eval = |z: ComplexScalar| {
        let c2z = ComplexScalar::real(c2);
        let f = z
            .add(c2z)
            .mul(z)
            .add(ComplexScalar::real(c1))
            .mul(z)
            .add(ComplexScalar::real(c0));
        let fp = z
            .scale(3.0)
            .add(c2z.scale(2.0))
            .mul(z)
            .add(ComplexScalar::real(c1));
        (f, fp)
    };
    let (mut f, mut fp) = eval(z);
    for _ in 0..8 {
        if f.abs() == 0.0 || fp.abs() == 0.0 {
            break;
        }
        let next = z.add(f.div(fp).scale(-1.0));
        let (nf, nfp) = eval(next);
        if !(nf.abs() < f.abs()) {
            break;
        }
        (z, f, fp) = (next, nf, nfp);
    }
    z
}

/// One real root of the depressed-cubic reduction, picking the one of largest
/// magnitude when all three are real.
fn dominant_real_root(c2: f64, c1: f64, c0: f64) -> f64 {
    let shift = c2 / 3.0;
    let p = c1 - c2 * shift;
    let q = c0 - shift * c1 + 2.0 * shift * shift * shift;
    let half_q = 0.5 * q;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;

    let t = if disc > 0.0 {
        // Cardano, with the larger-magnitude branch to avoid cancellation.
        let w = -half_q - half_q.signum() * disc.sqrt();
        let u = w.cbrt();
        let v = if u != 0.0 { -third_p / u } else { 0.0 };
        u + v
    } else if p == 0.0 {
        (-q).cbrt()
    } else {
        let m = 2.0 * (-third_p).sqrt();
        let arg = (3.0 * q / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - shift)
            .max_by(|a, b| a.abs().total_cmp(&b.abs()))
            .map(|r| r + shift)
            .unwrap_or(0.0)
    };
    polish_real(c2, c1, c0, t - shift)
}

fn snap(z: ComplexScalar) -> ComplexScalar {
    if z.im.abs() < REAL_SNAP_TOL * (1.0 + z.re.abs()) {
        // `+ 0.0` normalises a negative zero.
        ComplexScalar::real(z.re + 0.0)
    } else {
        z
    }
}

/// Roots of `λ³ + c2·λ² + c1·λ + c0`.
///
/// A real root is found in closed form (Cardano or the trigonometric form),
/// refined by Newton, and deflated; the remaining quadratic is solved in its
/// cancellation-free form.
pub fn cubic_roots(c2: f64, c1: f64, c0: f64) -> EigenTriple {
    let r = dominant_real_root(c2, c1, c0);

    // (λ − r)(λ² + bλ + c): keep whichever `c` is more consistent with the
    // coefficient it was not derived from.
    let b = c2 + r;
    let c_fwd = c1 + r * b;
    let c = if r != 0.0 {
        let c_bwd = -c0 / r;
        if (c_bwd - r * b - c1).abs() < (-r * c_fwd - c0).abs() {
            c_bwd
        } else {
            c_fwd
        }
    } else {
        c_fwd
    };

    let disc = b * b - 4.0 * c;
    let (r2, r3) = if disc >= 0.0 {
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        let other = if q != 0.0 { c / q } else { 0.0 };
        (
            ComplexScalar::real(polish_real(c2, c1, c0, q)),
            ComplexScalar::real(polish_real(c2, c1, c0, other)),
        )
    } else {
        let z = polish_complex(c2, c1, c0, ComplexScalar::new(-0.5 * b, 0.5 * (-disc).sqrt()));
        (z, z.conj())
    };

    EigenTriple::sorted([snap(ComplexScalar::real(r)), snap(r2), snap(r3)])
}

pub fn eigenvalues3(m: &Mat3) -> EigenTriple {
    let (c2, c1, c0) = characteristic_coeffs(m);
    cubic_roots(c2, c1, c0)
}

/// Modified Gram–Schmidt. Returns the orthonormal frame and the norm of each
/// vector just before it was normalised.
pub fn gram_schmidt3(frame: &TangentFrame) -> Result<(TangentFrame, [f64; 3])> {
    let mut q = frame.cols;
    let mut norms = [0.0; 3];
    for i in 0..3 {
        let before = dot(q[i], q[i]).sqrt();
        for j in 0..i {
            let (proj, qj) = (dot(q[j], q[i]), q[j]);
            for (a, b) in q[i].iter_mut().zip(qj) {
                *a -= proj * b;
            }
        }
        let n = dot(q[i], q[i]).sqrt();
        if !(n > 1e-300) || n <= DEGENERATE_REL_TOL * before {
            return Err(Error::DegenerateFrame { index: i });
        }
        for v in q[i].iter_mut() {
            *v /= n;
        }
        norms[i] = n;
    }
    Ok((TangentFrame { cols: q }, norms))
}
