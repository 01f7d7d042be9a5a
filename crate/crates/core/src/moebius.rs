//! PSL(2,ℝ) arithmetic.
//!
//! Elements are stored as unit-determinant matrices with a sign
//! normalization that picks one of the two representatives `±M`. The
//! boundary circle `∂ℍ²` is coordinatized by an angle `φ`: a boundary
//! point of the upper half-plane is a ray `(cos φ/2, sin φ/2)` in `ℝ²`
//! and matrices act linearly on rays. In this chart the rotation
//! `[[cos θ, −sin θ], [sin θ, cos θ]]` moves every boundary angle forward
//! by `2θ`; that direction is the positive (counterclockwise) one.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, Tolerances};

/// A raw 2×2 real matrix, used where the SL(2,ℝ) sign matters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Adjugate; the inverse for unit determinant.
    pub fn adjugate(&self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs())
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    /// `A B A⁻¹ B⁻¹` for unit-determinant inputs.
    pub fn commutator(x: &Mat2, y: &Mat2) -> Mat2 {
        *x * *y * x.adjugate() * y.adjugate()
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// Trace type of a PSL(2,ℝ) element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsometryClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for IsometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IsometryClass::Identity => "identity",
            IsometryClass::Elliptic => "elliptic",
            IsometryClass::Parabolic => "parabolic",
            IsometryClass::Hyperbolic => "hyperbolic",
        };
        f.write_str(s)
    }
}

/// A point of `∂ℍ²` given by its angle. The stored value is a representative;
/// reduce explicitly with [`BoundaryAngle::reduced`].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoundaryAngle(pub f64);

impl BoundaryAngle {
    /// The representative in `[0, 2π)`.
    pub fn reduced(self) -> BoundaryAngle {
        BoundaryAngle(reduce_angle(self.0))
    }

    /// Signed distance to `other` on the circle, in `(−π, π]`.
    pub fn circle_distance(self, other: BoundaryAngle) -> f64 {
        let d = reduce_angle(self.0 - other.0);
        if d > PI {
            d - TAU
        } else {
            d
        }
    }

    /// The boundary point as a ray vector in `ℝ²`.
    pub fn ray(self) -> (f64, f64) {
        let h = 0.5 * self.0;
        (h.cos(), h.sin())
    }

    /// Angle of the boundary point `x ∈ ℝ` of the upper half-plane.
    pub fn from_real(x: f64) -> BoundaryAngle {
        Self::from_ray(x, 1.0)
    }

    /// Angle of the point at infinity.
    pub fn infinity() -> BoundaryAngle {
        BoundaryAngle(0.0)
    }

    pub fn from_ray(x: f64, y: f64) -> BoundaryAngle {
        BoundaryAngle(reduce_angle(2.0 * y.atan2(x)))
    }
}

/// Reduce an angle to `[0, 2π)`.
pub fn reduce_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// An element of PSL(2,ℝ) stored as its canonical unit-determinant representative.
///
/// Sign rule: trace > 0; or trace = 0 and c > 0; or trace = 0, c = 0 and b > 0.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 2]; 2]", into = "[[f64; 2]; 2]")]
pub struct ProjMatrix(Mat2);

impl fmt::Debug for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.0.a, self.0.b, self.0.c, self.0.d
        )
    }
}

impl TryFrom<[[f64; 2]; 2]> for ProjMatrix {
    type Error = Error;

    fn try_from(m: [[f64; 2]; 2]) -> Result<Self> {
        ProjMatrix::canonicalize(m)
    }
}

impl From<ProjMatrix> for [[f64; 2]; 2] {
    fn from(m: ProjMatrix) -> Self {
        m.0.rows()
    }
}

impl Mul for ProjMatrix {
    type Output = ProjMatrix;

    fn mul(self, o: ProjMatrix) -> ProjMatrix {
        ProjMatrix::from_unimodular(self.0 * o.0)
    }
}

impl ProjMatrix {
    pub const IDENTITY: ProjMatrix = ProjMatrix(Mat2::IDENTITY);

    /// Normalize a raw matrix with positive determinant using the default tolerance.
    pub fn canonicalize(raw: [[f64; 2]; 2]) -> Result<Self> {
        Self::canonicalize_with(raw, Tolerances::default().determinant)
    }

    pub fn canonicalize_with(raw: [[f64; 2]; 2], det_tol: f64) -> Result<Self> {
        let m = Mat2::new(raw[0][0], raw[0][1], raw[1][0], raw[1][1]);
        let det = m.det();
        if !det.is_finite() || det <= det_tol {
            return Err(Error::NonPositiveDeterminant(det));
        }
        Ok(Self::from_positive(m, det))
    }

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::canonicalize([[a, b], [c, d]])
    }

    /// Wrap a product of canonical matrices (determinant 1 up to rounding).
    pub(crate) fn from_unimodular(m: Mat2) -> Self {
        let det = m.det();
        Self::from_positive(m, det)
    }

    fn from_positive(m: Mat2, det: f64) -> Self {
        // Leave already-normalized matrices bit-identical so that
        // canonicalization is idempotent on serialized values.
        let scale = (m.a * m.d).abs() + (m.b * m.c).abs();
        let m = if (det - 1.0).abs() <= 8.0 * f64::EPSILON * scale.max(1.0) {
            m
        } else {
            m.scale(1.0 / det.sqrt())
        };
        let t = m.trace();
        let flip = t < 0.0 || (t == 0.0 && (m.c < 0.0 || (m.c == 0.0 && m.b < 0.0)));
        ProjMatrix(if flip { m.scale(-1.0) } else { m })
    }

    pub fn mat(&self) -> Mat2 {
        self.0
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        self.0.rows()
    }

    pub fn a(&self) -> f64 {
        self.0.a
    }
    pub fn b(&self) -> f64 {
        self.0.b
    }
    pub fn c(&self) -> f64 {
        self.0.c
    }
    pub fn d(&self) -> f64 {
        self.0.d
    }

    /// `Tr(M) = |tr M|`, well defined on PSL(2,ℝ).
    pub fn trace(&self) -> f64 {
        self.0.trace().abs()
    }

    pub fn inverse(&self) -> ProjMatrix {
        Self::from_unimodular(self.0.adjugate())
    }

    pub fn commutator(x: &ProjMatrix, y: &ProjMatrix) -> ProjMatrix {
        Self::from_unimodular(Mat2::commutator(&x.0, &y.0))
    }

    /// `g M g⁻¹`.
    pub fn conjugate_by(&self, g: &ProjMatrix) -> ProjMatrix {
        *g * *self * g.inverse()
    }

    pub fn pow(&self, n: i64) -> ProjMatrix {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut acc = Mat2::IDENTITY;
        let mut sq = base.0;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * sq;
            }
            sq = sq * sq;
            k >>= 1;
        }
        Self::from_unimodular(acc)
    }

    /// Max-entry distance in PSL(2,ℝ), minimizing over the sign of `other`.
    pub fn distance(&self, other: &ProjMatrix) -> f64 {
        let d1 = self.0.max_abs_diff(&other.0);
        let d2 = self.0.max_abs_diff(&other.0.scale(-1.0));
        d1.min(d2)
    }

    pub fn distance_to_identity(&self) -> f64 {
        self.distance(&ProjMatrix::IDENTITY)
    }

    pub fn classify(&self) -> IsometryClass {
        self.classify_with(Tolerances::default().classify)
    }

    pub fn classify_with(&self, tol: f64) -> IsometryClass {
        if self.distance_to_identity() <= tol {
            return IsometryClass::Identity;
        }
        let t = self.trace();
        if t < 2.0 - tol {
            IsometryClass::Elliptic
        } else if t <= 2.0 + tol {
            IsometryClass::Parabolic
        } else {
            IsometryClass::Hyperbolic
        }
    }

    /// True when the trace lies within `tol` of 2 but the matrix is not the identity.
    pub fn is_marginal(&self, tol: f64) -> bool {
        (self.trace() - 2.0).abs() <= tol && self.distance_to_identity() > tol
    }

    /// Half rotation angle `θ ∈ (0, π/2]` and the sign of the rotation generator.
    fn elliptic_parts(&self) -> (f64, bool) {
        let Mat2 { a, b, c, d } = self.0;
        let s = (-(a - d) * (a - d) * 0.25 - b * c).max(0.0).sqrt();
        let theta = s.atan2(0.5 * (a + d));
        (theta, c > 0.0)
    }

    /// Boundary rotation angle `α ∈ (0, 2π)` of an elliptic element.
    pub fn rotation_angle(&self) -> Result<f64> {
        if self.classify() != IsometryClass::Elliptic {
            return Err(Error::NotElliptic);
        }
        Ok(self.rotation_angle_unchecked())
    }

    pub(crate) fn rotation_angle_unchecked(&self) -> f64 {
        let (theta, positive) = self.elliptic_parts();
        if positive {
            2.0 * theta
        } else {
            2.0 * (PI - theta)
        }
    }

    /// Boundary fixed points; hyperbolic output lists the attracting point first.
    pub fn fixed_boundary_angles(&self) -> Result<Vec<BoundaryAngle>> {
        match self.classify() {
            IsometryClass::Elliptic | IsometryClass::Identity => Err(Error::NotBoundaryFixing),
            IsometryClass::Parabolic => Ok(vec![self.eigen_angle(0.5 * self.0.trace())]),
            IsometryClass::Hyperbolic => {
                let t = self.0.trace();
                let disc = (t * t - 4.0).sqrt();
                let big = 0.5 * (t + disc);
                Ok(vec![self.eigen_angle(big), self.eigen_angle(1.0 / big)])
            }
        }
    }

    fn eigen_angle(&self, lambda: f64) -> BoundaryAngle {
        let Mat2 { a, b, c, d } = self.0;
        let v1 = (b, lambda - a);
        let v2 = (lambda - d, c);
        let (x, y) = if v1.0.hypot(v1.1) >= v2.0.hypot(v2.1) {
            v1
        } else {
            v2
        };
        BoundaryAngle::from_ray(x, y)
    }

    /// The one-parameter subgroup through `M`, evaluated at `t`.
    pub fn one_param(&self, t: f64) -> Result<ProjMatrix> {
        let m = self.0;
        let out = match self.classify() {
            IsometryClass::Identity => return Err(Error::IdentityInput),
            IsometryClass::Parabolic => {
                let n = Mat2::new(m.a - 1.0, m.b, m.c, m.d - 1.0);
                Mat2::new(1.0 + t * n.a, t * n.b, t * n.c, 1.0 + t * n.d)
            }
            IsometryClass::Hyperbolic => {
                let ch = 0.5 * m.trace();
                let s = ch.acosh();
                let k = (t * s).sinh() / s.sinh();
                let c0 = (t * s).cosh();
                Mat2::new(c0 + k * (m.a - ch), k * m.b, k * m.c, c0 + k * (m.d - ch))
            }
            IsometryClass::Elliptic => {
                // M = cos θ I + sin θ K with K² = −I; the positive generator
                // J has lower-left entry > 0.
                let (theta, positive) = self.elliptic_parts();
                let (cos, sin) = (theta.cos(), theta.sin());
                let sgn = if positive { 1.0 } else { -1.0 };
                let j = Mat2::new(
                    sgn * (m.a - cos) / sin,
                    sgn * m.b / sin,
                    sgn * m.c / sin,
                    sgn * (m.d - cos) / sin,
                );
                let half = 0.5 * t * self.rotation_angle_unchecked();
                let (c0, s0) = (half.cos(), half.sin());
                Mat2::new(c0 + s0 * j.a, s0 * j.b, s0 * j.c, c0 + s0 * j.d)
            }
        };
        Ok(ProjMatrix::from_unimodular(out))
    }

    /// Elliptic element rotating by `alpha` about `center` (upper half-plane).
    pub fn elliptic_about(center: Complex64, alpha: f64) -> Result<ProjMatrix> {
        if !(alpha > 0.0 && alpha < TAU) {
            return Err(Error::InvalidAngle(alpha));
        }
        if !(center.im > 1e-300 && center.re.is_finite() && center.im.is_finite()) {
            return Err(Error::BoundaryCenter);
        }
        // g maps i to center; rotation about i by α is [[cos α/2, −sin α/2], [sin α/2, cos α/2]].
        let sy = center.im.sqrt();
        let g = Mat2::new(sy, center.re / sy, 0.0, 1.0 / sy);
        let h = 0.5 * alpha;
        let r = Mat2::new(h.cos(), -h.sin(), h.sin(), h.cos());
        Ok(ProjMatrix::from_unimodular(g * r * g.adjugate()))
    }

    /// Action on the boundary circle.
    pub fn circle_map(&self, phi: BoundaryAngle) -> BoundaryAngle {
        let (x, y) = phi.ray();
        let m = self.0;
        BoundaryAngle::from_ray(m.a * x + m.b * y, m.c * x + m.d * y)
    }

    /// Möbius action on the upper half-plane.
    pub fn act(&self, z: Complex64) -> Complex64 {
        let m = self.0;
        (z * m.a + m.b) / (z * m.c + m.d)
    }

    pub fn is_finite(&self) -> bool {
        let m = self.0;
        m.a.is_finite() && m.b.is_finite() && m.c.is_finite() && m.d.is_finite()
    }
}

/// The standard rotation `[[cos θ, −sin θ], [sin θ, cos θ]]` (boundary angle `2θ`).
pub fn rotation(theta: f64) -> ProjMatrix {
    ProjMatrix::from_unimodular(Mat2::new(
        theta.cos(),
        -theta.sin(),
        theta.sin(),
        theta.cos(),
    ))
}

/// The unipotent `[[1, t], [0, 1]]`.
pub fn unipotent(t: f64) -> ProjMatrix {
    ProjMatrix::from_unimodular(Mat2::new(1.0, t, 0.0, 1.0))
}

/// `diag(e^{s/2}, e^{−s/2})`, a hyperbolic translation of length `|s|` along the imaginary axis.
pub fn diagonal(s: f64) -> ProjMatrix {
    let h = 0.5 * s;
    ProjMatrix::from_unimodular(Mat2::new(h.exp(), 0.0, 0.0, (-h).exp()))
}
