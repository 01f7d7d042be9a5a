// Poincaré disk helpers for polygon constructions.
//
// The disk chart is w = (z̄ + i)/(z̄ − i) on the upper half-plane, so the
// disk boundary angle agrees with `BoundaryAngle` and counterclockwise disk
// rotations are positive rotations.

use num_complex::Complex64;

use crate::moebius::{Mat2, ProjMatrix};

/// Orientation-preserving disk isometry `w ↦ (αw + β)/(β̄w + ᾱ)`, `|α|² − |β|² = 1`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct DiskMap {
    alpha: Complex64,
    beta: Complex64,
}

impl DiskMap {
    /// Translation along the diameter through `w`, sending 0 to `w`.
    pub fn translate_to(w: Complex64) -> Self {
        let s = 1.0 / (1.0 - w.norm_sqr()).sqrt();
        Self {
            alpha: Complex64::new(s, 0.0),
            beta: w * s,
        }
    }

    /// Counterclockwise rotation about 0.
    pub fn rotation(angle: f64) -> Self {
        Self {
            alpha: Complex64::from_polar(1.0, 0.5 * angle),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    pub fn rotation_about(center: Complex64, angle: f64) -> Self {
        let t = Self::translate_to(center);
        t.compose(&Self::rotation(angle)).compose(&t.inverse())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiskMap) -> Self {
        Self {
            alpha: self.alpha * other.alpha + self.beta * other.beta.conj(),
            beta: self.alpha * other.beta + self.beta * other.alpha.conj(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    pub fn apply(&self, w: Complex64) -> Complex64 {
        (self.alpha * w + self.beta) / (self.beta.conj() * w + self.alpha.conj())
    }

    /// The unique orientation-preserving isometry with `p ↦ p2`, `q ↦ q2`
    /// (the segments must have equal length).
    pub fn two_point(p: Complex64, q: Complex64, p2: Complex64, q2: Complex64) -> Self {
        let t1 = Self::translate_to(p).inverse();
        let t2 = Self::translate_to(p2);
        let q0 = t1.apply(q);
        let q20 = t2.inverse().apply(q2);
        let turn = q20.arg() - q0.arg();
        t2.compose(&Self::rotation(turn)).compose(&t1)
    }

    pub fn to_proj(self) -> ProjMatrix {
        let (a1, a2) = (self.alpha.re, self.alpha.im);
        let (b1, b2) = (self.beta.re, self.beta.im);
        ProjMatrix::from_unimodular(Mat2::new(a1 + b1, b2 - a2, a2 + b2, a1 - b1))
    }

    pub fn from_proj(m: &ProjMatrix) -> Self {
        let Mat2 { a, b, c, d } = m.mat();
        Self {
            alpha: Complex64::new(0.5 * (a + d), 0.5 * (c - b)),
            beta: Complex64::new(0.5 * (a - d), 0.5 * (b + c)),
        }
    }
}

#[cfg(test)]
pub(crate) fn to_upper_half_plane(w: Complex64) -> Complex64 {
    // inverse of w = (z̄ + i)/(z̄ − i): z̄ = i(w + 1)/(w − 1)
    let i = Complex64::new(0.0, 1.0);
    (i * (w + 1.0) / (w - 1.0)).conj()
}

#[cfg(test)]
pub(crate) fn from_upper_half_plane(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    (z.conj() + i) / (z.conj() - i)
}

/// Hyperbolic distance in the disk.
#[cfg(test)]
pub(crate) fn distance(z: Complex64, w: Complex64) -> f64 {
    let r = ((z - w) / (Complex64::new(1.0, 0.0) - w.conj() * z)).norm();
    2.0 * r.min(1.0 - 1e-17).atanh()
}

/// Unsigned angle at `p` between the geodesics towards `x` and `y`.
pub(crate) fn angle_at(p: Complex64, x: Complex64, y: Complex64) -> f64 {
    let t = DiskMap::translate_to(p).inverse();
    let (u, v) = (t.apply(x), t.apply(y));
    (v / u).arg().abs()
}

pub(crate) fn geodesic_midpoint(p: Complex64, q: Complex64) -> Complex64 {
    let t = DiskMap::translate_to(p);
    let q0 = t.inverse().apply(q);
    let d = 2.0 * q0.norm().atanh();
    let m = Complex64::from_polar((0.25 * d).tanh(), q0.arg());
    t.apply(m)
}
