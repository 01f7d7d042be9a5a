//! The universal cover of PSL(2,ℝ) and Milnor's algorithm.
//!
//! A [`LiftedIsometry`] is a lift `f: ℝ → ℝ` of the boundary action of a
//! PSL(2,ℝ) element, recorded by the base matrix and the value `u = f(0)`.
//! The central generator `z` is the lift of the identity translating by
//! `+2π`.
//!
//! For a representation `ρ` of the closed surface group
//! `⟨a₁, b₁, …, a_g, b_g | [a₁,b₁]⋯[a_g,b_g]⟩`, the lifted product of
//! commutators projects to the identity and therefore equals `z^e`; the
//! integer `e` is the Euler class.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::moebius::{IsometryClass, Mat2, ProjMatrix};
use crate::{BoundaryAngle, Error, Result, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftedIsometry {
    base: ProjMatrix,
    u: f64,
}

impl LiftedIsometry {
    /// Build a lift from its base and value at 0. `u` must be congruent to
    /// the boundary image of 0 modulo 2π.
    pub fn from_parts(base: ProjMatrix, u: f64) -> Self {
        Self { base, u }
    }

    pub fn base(&self) -> ProjMatrix {
        self.base
    }

    /// Value of the lift at the basepoint 0.
    pub fn u(&self) -> f64 {
        self.u
    }

    /// `zⁿ`: the lift of the identity translating by `2πn`.
    pub fn central(n: i64) -> Self {
        Self {
            base: ProjMatrix::IDENTITY,
            u: TAU * n as f64,
        }
    }

    /// The lift with `f(0) ∈ [0, 2π)`.
    pub fn principal(m: ProjMatrix) -> Self {
        Self {
            base: m,
            u: m.circle_map(BoundaryAngle(0.0)).reduced().0,
        }
    }

    /// The lift with a real fixed point, for parabolic and hyperbolic elements.
    pub fn canonical(m: ProjMatrix) -> Result<Self> {
        let fixed = match m.fixed_boundary_angles() {
            Ok(v) => v[0].reduced().0,
            Err(_) => return Err(Error::NoBoundaryFixedPoint),
        };
        let p = Self::principal(m);
        let k = ((p.apply(fixed) - fixed) / TAU).round();
        Ok(Self {
            base: m,
            u: p.u - TAU * k,
        })
    }

    /// Evaluate the lift at `x`.
    pub fn apply(&self, x: f64) -> f64 {
        let n = (x / TAU).floor();
        let mut xr = x - n * TAU;
        let mut n = n;
        if xr >= TAU {
            xr -= TAU;
            n += 1.0;
        }
        let image = |y: f64| self.base.circle_map(BoundaryAngle(y)).0;
        // f(π) sits strictly inside (u, u + 2π); use it to center the
        // reduction window away from the ends of the period.
        let f_pi = self.u + (image(PI) - self.u).rem_euclid(TAU);
        let lo = if xr <= PI {
            let gap = self.u + TAU - f_pi;
            self.u - 0.5 * gap
        } else {
            let gap = f_pi - self.u;
            f_pi - 0.5 * gap
        };
        let w = lo + (image(xr) - lo).rem_euclid(TAU);
        n * TAU + w
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LiftedIsometry) -> LiftedIsometry {
        LiftedIsometry {
            base: self.base * other.base,
            u: self.apply(other.u),
        }
    }

    pub fn inverse(&self) -> LiftedIsometry {
        let inv = self.base.inverse();
        let y0 = inv.circle_map(BoundaryAngle(0.0)).reduced().0;
        let m = (self.apply(y0) / TAU).round();
        LiftedIsometry {
            base: inv,
            u: y0 - TAU * m,
        }
    }

    /// Commutator of lifts of `a` and `b`; independent of the lifts chosen.
    pub fn commutator(a: &ProjMatrix, b: &ProjMatrix) -> LiftedIsometry {
        let la = Self::principal(*a);
        let lb = Self::principal(*b);
        la.compose(&lb)
            .compose(&la.inverse())
            .compose(&lb.inverse())
    }

    /// Shift by `zᵏ`.
    pub fn shifted(&self, k: i64) -> LiftedIsometry {
        LiftedIsometry {
            base: self.base,
            u: self.u + TAU * k as f64,
        }
    }

    /// Translation `f(x) − x` in turns, meaningful when the base is the identity.
    pub fn turns_at(&self, x: f64) -> f64 {
        (self.apply(x) - x) / TAU
    }
}

/// Integer `ε ∈ {−1, 0, 1}` with `[Ã, B̃] = canonical([A,B])·z^ε`.
pub fn commutator_defect(a: &ProjMatrix, b: &ProjMatrix) -> Result<i64> {
    let c = ProjMatrix::commutator(a, b);
    if c.classify() != IsometryClass::Hyperbolic {
        return Err(Error::NotHyperbolicCommutator);
    }
    let lifted = LiftedIsometry::commutator(a, b);
    let canonical = LiftedIsometry::canonical(c)?;
    let eps = ((lifted.u - canonical.u) / TAU).round() as i64;
    if eps.abs() > 1 {
        return Err(Error::DefectOutOfRange(eps));
    }
    Ok(eps)
}

/// A representation of the genus-`g` surface group, given by the images of
/// the standard generators `(a_i, b_i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Representation {
    pub genus: usize,
    pub pairs: Vec<Pair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pair {
    #[serde(rename = "A")]
    pub a: ProjMatrix,
    #[serde(rename = "B")]
    pub b: ProjMatrix,
}

impl Pair {
    pub fn new(a: ProjMatrix, b: ProjMatrix) -> Self {
        Self { a, b }
    }
}

impl Representation {
    pub fn new(pairs: Vec<Pair>) -> Self {
        Self {
            genus: pairs.len(),
            pairs,
        }
    }

    pub fn from_tuples(pairs: impl IntoIterator<Item = (ProjMatrix, ProjMatrix)>) -> Self {
        Self::new(pairs.into_iter().map(|(a, b)| Pair::new(a, b)).collect())
    }

    /// The representation sending every generator to the identity.
    pub fn trivial(genus: usize) -> Self {
        Self::new(vec![
            Pair::new(ProjMatrix::IDENTITY, ProjMatrix::IDENTITY);
            genus
        ])
    }

    /// Product of the SL(2,ℝ) commutators of the stored representatives.
    pub fn sl_product(&self) -> Mat2 {
        self.pairs.iter().fold(Mat2::IDENTITY, |acc, p| {
            acc * Mat2::commutator(&p.a.mat(), &p.b.mat())
        })
    }

    /// `min ‖∏[Aᵢ,Bᵢ] ∓ I‖`, max-entry norm.
    pub fn relation_residual(&self) -> f64 {
        let p = self.sl_product();
        p.max_abs_diff(&Mat2::IDENTITY)
            .min(p.max_abs_diff(&Mat2::IDENTITY.scale(-1.0)))
    }

    pub fn check_relation(&self, tol: &Tolerances) -> Result<()> {
        let residual = self.relation_residual();
        if residual.is_nan() || residual > tol.relation || self.genus != self.pairs.len() {
            return Err(Error::RelationViolated {
                residual,
                tolerance: tol.relation,
            });
        }
        Ok(())
    }

    /// Lifted product `[Ã₁,B̃₁]⋯[Ã_g,B̃_g]`.
    pub fn lifted_product(&self) -> LiftedIsometry {
        self.pairs
            .iter()
            .fold(LiftedIsometry::central(0), |acc, p| {
                acc.compose(&LiftedIsometry::commutator(&p.a, &p.b))
            })
    }

    pub fn euler_class(&self) -> Result<i64> {
        self.euler_class_with(&Tolerances::default(), 0.0)
    }

    /// Euler class evaluated at the given basepoint of the lifted circle.
    pub fn euler_class_with(&self, tol: &Tolerances, basepoint: f64) -> Result<i64> {
        self.check_relation(tol)?;
        let value = self.lifted_product().turns_at(basepoint);
        let e = value.round();
        if value.is_nan() || (value - e).abs() > tol.rounding {
            return Err(Error::RoundingAmbiguous {
                value,
                tolerance: tol.rounding,
            });
        }
        Ok(e as i64)
    }

    /// Sign `s` with `∏[Aᵢ,Bᵢ] = s·I` in SL(2,ℝ).
    pub fn parity(&self) -> Result<i64> {
        self.parity_with(&Tolerances::default())
    }

    pub fn parity_with(&self, tol: &Tolerances) -> Result<i64> {
        self.check_relation(tol)?;
        let p = self.sl_product();
        let plus = p.max_abs_diff(&Mat2::IDENTITY);
        let minus = p.max_abs_diff(&Mat2::IDENTITY.scale(-1.0));
        if plus <= tol.relation {
            Ok(1)
        } else if minus <= tol.relation {
            Ok(-1)
        } else {
            Err(Error::SignAmbiguous {
                residual: plus.min(minus),
            })
        }
    }

    pub fn conjugate_by(&self, g: &ProjMatrix) -> Representation {
        Representation {
            genus: self.genus,
            pairs: self
                .pairs
                .iter()
                .map(|p| Pair::new(p.a.conjugate_by(g), p.b.conjugate_by(g)))
                .collect(),
        }
    }

    /// All generator images in the order `a₁, b₁, a₂, b₂, …`.
    pub fn generators(&self) -> Vec<ProjMatrix> {
        self.pairs.iter().flat_map(|p| [p.a, p.b]).collect()
    }

    /// Max-entry distance between generator images.
    pub fn distance(&self, other: &Representation) -> f64 {
        self.generators()
            .iter()
            .zip(other.generators().iter())
            .map(|(x, y)| x.distance(y))
            .fold(0.0, f64::max)
    }
}
