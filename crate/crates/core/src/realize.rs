//! Numerical Fuchsian groups from signatures.
//!
//! Every construction starts from a fundamental polygon in the Poincaré
//! disk that is star-shaped about the center. The polygon has one sector per
//! cone point and four per handle, all with the same central angle. Sector
//! vertices `Vⱼ` sit on a common circle; a cone sector additionally carries
//! a kite apex `Wᵢ` whose interior angle is `2π/kᵢ`. The elliptic generator
//! `qᵢ` rotates by `2π/kᵢ` about `Wᵢ`, and each handle pairs its four sides
//! crosswise. With cone sectors placed counterclockwise before the handles,
//!
//! ```text
//! q₁ ⋯ q_r · [a₁,b₁] ⋯ [a_g,b_g] = 1.
//! ```

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::discreteness::jorgensen;
use crate::disk::{angle_at, geodesic_midpoint, DiskMap};
use crate::lift::{LiftedIsometry, Pair};
use crate::moebius::{IsometryClass, Mat2};
use crate::{Error, ProjMatrix, Representation, Result, Signature, Tolerances};

/// Bisection stops once the bracket or the residual drops below this.
const SOLVER_TOL: f64 = 1e-12;
const SOLVER_MAX_ITER: usize = 200;

/// Generators of a realized Fuchsian group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuchsianGenerators {
    pub signature: Signature,
    /// Elliptic generators, one per finite period in ascending order.
    pub q: Vec<ProjMatrix>,
    pub handles: Vec<Pair>,
    /// Vertices of the fundamental polygon in the Poincaré disk, counterclockwise.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub domain: Vec<[f64; 2]>,
}

impl FuchsianGenerators {
    /// All generators: the `qᵢ` followed by `a₁, b₁, …`.
    pub fn generators(&self) -> Vec<ProjMatrix> {
        let mut out = self.q.clone();
        out.extend(self.handles.iter().flat_map(|p| [p.a, p.b]));
        out
    }

    /// The handle pairs as a surface group representation (meaningful when there are no cone points).
    pub fn to_representation(&self) -> Representation {
        Representation::new(self.handles.clone())
    }

    pub fn conjugate_by(&self, g: &ProjMatrix) -> FuchsianGenerators {
        let d = DiskMap::from_proj(g);
        FuchsianGenerators {
            signature: self.signature.clone(),
            q: self.q.iter().map(|x| x.conjugate_by(g)).collect(),
            handles: self
                .handles
                .iter()
                .map(|p| Pair::new(p.a.conjugate_by(g), p.b.conjugate_by(g)))
                .collect(),
            domain: self
                .domain
                .iter()
                .map(|&[x, y]| {
                    let w = d.apply(Complex64::new(x, y));
                    [w.re, w.im]
                })
                .collect(),
        }
    }

    /// Raw SL(2,ℝ) product `q₁⋯q_r·∏[aᵢ,bᵢ]`.
    fn long_relation(&self) -> Mat2 {
        let qs = self.q.iter().fold(Mat2::IDENTITY, |acc, q| acc * q.mat());
        self.handles
            .iter()
            .fold(qs, |acc, p| acc * Mat2::commutator(&p.a.mat(), &p.b.mat()))
    }
}

/// Numerical evidence that a set of generators realizes its signature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationCertificate {
    /// `min ‖q₁⋯q_r·∏[aᵢ,bᵢ] ∓ I‖∞`.
    pub residual: f64,
    /// `|rotation_angle(qᵢ) − 2π/kᵢ|` per elliptic generator (∞ if not elliptic).
    pub angle_errors: Vec<f64>,
    /// Polygon area minus `2π·coarea`; absent when no polygon is attached.
    pub area_error: Option<f64>,
    /// Exponent `n` with lifted `q̃₁⋯q̃_r·∏[ãᵢ,b̃ᵢ] = zⁿ`.
    pub lift_exponent: i64,
    /// Distance of the lifted product from `z^{lift_exponent}`, in turns.
    pub lift_rounding: f64,
    /// Smallest Jørgensen value over ordered pairs of non-commuting generators.
    pub jorgensen_min: Option<f64>,
    pub passed: bool,
}

/// Closed-form generators of the `(p, q, r)` triangle group; the periods are
/// used in ascending order.
pub fn realize_triangle(p: u64, q: u64, r: u64) -> Result<FuchsianGenerators> {
    let mut ks = [p, q, r];
    ks.sort_unstable();
    let sig = Signature::new(0, ks.to_vec(), 0).map_err(|_| Error::NotHyperbolicTriple(p, q, r))?;
    if !sig.is_valid() {
        return Err(Error::NotHyperbolicTriple(p, q, r));
    }
    let [alpha, beta, gamma] = ks.map(|k| PI / k as f64);
    // side lengths from the hyperbolic law of cosines for angles
    let cosh_c = (alpha.cos() * beta.cos() + gamma.cos()) / (alpha.sin() * beta.sin());
    let cosh_b = (alpha.cos() * gamma.cos() + beta.cos()) / (alpha.sin() * gamma.sin());
    let a = Complex64::new(0.0, 0.0);
    let b = Complex64::new((0.5 * cosh_c.acosh()).tanh(), 0.0);
    let c = Complex64::from_polar((0.5 * cosh_b.acosh()).tanh(), alpha);
    let b_reflected = b * Complex64::from_polar(1.0, 2.0 * alpha);
    let qs = [a, b, c]
        .iter()
        .zip(ks)
        .map(|(&center, k)| DiskMap::rotation_about(center, TAU / k as f64).to_proj())
        .collect();
    Ok(FuchsianGenerators {
        signature: sig,
        q: qs,
        handles: Vec::new(),
        domain: to_pairs(&[a, b, c, b_reflected]),
    })
}

/// The Teichmüller-component representation pairing the sides of the
/// regular `4g`-gon with vertex angle `π/(2g)`.
pub fn realize_surface(g: usize) -> Result<Representation> {
    Ok(surface_generators(g)?.to_representation())
}

fn surface_generators(g: usize) -> Result<FuchsianGenerators> {
    if g < 2 {
        return Err(Error::InvalidGenus { min: 2, got: g });
    }
    let n = (4 * g) as f64;
    let vertex_angle = PI / (2 * g) as f64;
    let cosh_r = (PI / n).tan().recip() * (0.5 * vertex_angle).tan().recip();
    let radius = (0.5 * cosh_r.acosh()).tanh();
    let sig = Signature::new(g as u64, Vec::new(), 0)?;
    let polygon = StarPolygon::build(&sig, radius);
    Ok(polygon.generators(sig))
}

/// Generators for any valid cocompact signature.
pub fn realize_signature(sig: &Signature) -> Result<FuchsianGenerators> {
    if !sig.is_valid() {
        return Err(Error::InvalidSignature(format!(
            "{sig} has non-positive coarea"
        )));
    }
    if !sig.is_cocompact() {
        return Err(Error::NotCocompact);
    }
    let periods = sig.periods();
    if sig.genus() == 0 && periods.len() == 3 {
        return realize_triangle(periods[0], periods[1], periods[2]);
    }
    if sig.genus() >= 2 && periods.is_empty() {
        return surface_generators(sig.genus() as usize);
    }
    let polygon = StarPolygon::solve(sig)?;
    Ok(polygon.generators(sig.clone()))
}

/// Star polygon: vertices `V₀, …, V_{S−1}` on a circle, with kite apexes in cone sectors.
struct StarPolygon {
    vertices: Vec<Complex64>,
    /// Apex of each cone sector (the first `r` sectors), with its period.
    apexes: Vec<(Complex64, u64)>,
    genus: usize,
}

impl StarPolygon {
    fn sectors(sig: &Signature) -> usize {
        sig.periods().len() + 4 * sig.genus() as usize
    }

    fn build(sig: &Signature, radius: f64) -> StarPolygon {
        let s = Self::sectors(sig);
        let step = TAU / s as f64;
        let vertices: Vec<Complex64> = (0..s)
            .map(|j| Complex64::from_polar(radius, step * j as f64))
            .collect();
        let apexes = sig
            .periods()
            .iter()
            .enumerate()
            .map(|(j, &k)| {
                let (p, q) = (vertices[j], vertices[(j + 1) % s]);
                let dir = Complex64::from_polar(1.0, step * (j as f64 + 0.5));
                (kite_apex(p, q, dir, TAU / k as f64), k)
            })
            .collect();
        StarPolygon {
            vertices,
            apexes,
            genus: sig.genus() as usize,
        }
    }

    /// Sum of the interior angles at the circle vertices.
    fn vertex_angle_sum(&self) -> f64 {
        let s = self.vertices.len();
        let origin = Complex64::new(0.0, 0.0);
        (0..s)
            .map(|j| {
                let (p, q) = (self.vertices[j], self.vertices[(j + 1) % s]);
                // each sector contributes the angles between the radius and its far side
                let (tp, tq) = match self.apexes.get(j) {
                    Some(&(w, _)) => (w, w),
                    None => (q, p),
                };
                angle_at(p, origin, tp) + angle_at(q, origin, tq)
            })
            .sum()
    }

    fn solve(sig: &Signature) -> Result<StarPolygon> {
        let excess = |r: f64| Self::build(sig, r).vertex_angle_sum() - TAU;
        let (mut lo, mut hi) = (1e-9, 1.0 - 1e-9);
        if !(excess(lo) > 0.0 && excess(hi) < 0.0) {
            return Err(Error::SolverNoConvergence(format!(
                "vertex radius not bracketed for {sig}"
            )));
        }
        for _ in 0..SOLVER_MAX_ITER {
            let mid = 0.5 * (lo + hi);
            let f = excess(mid);
            if f.abs() <= SOLVER_TOL || hi - lo <= 1e-16 {
                lo = mid;
                hi = mid;
                break;
            }
            if f > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let polygon = Self::build(sig, 0.5 * (lo + hi));
        let residual = polygon.vertex_angle_sum() - TAU;
        if residual.is_nan() || residual.abs() > 1e-9 {
            return Err(Error::SolverNoConvergence(format!(
                "vertex angle sum off by {residual:e} for {sig}"
            )));
        }
        Ok(polygon)
    }

    fn generators(&self, sig: Signature) -> FuchsianGenerators {
        let s = self.vertices.len();
        let v = |j: usize| self.vertices[j % s];
        let q = self
            .apexes
            .iter()
            .map(|&(w, k)| DiskMap::rotation_about(w, TAU / k as f64).to_proj())
            .collect();
        let r = self.apexes.len();
        let handles = (0..self.genus)
            .map(|i| {
                let s0 = r + 4 * i;
                // side j runs from V_j to V_{j+1}; side s0+2 is glued to side s0
                // reversed, side s0+3 to side s0+1 reversed
                let a = DiskMap::two_point(v(s0 + 2), v(s0 + 3), v(s0 + 1), v(s0)).to_proj();
                let b = DiskMap::two_point(v(s0 + 3), v(s0 + 4), v(s0 + 2), v(s0 + 1)).to_proj();
                Pair::new(a, b.inverse())
            })
            .collect();
        let mut domain = Vec::with_capacity(s + r);
        for j in 0..s {
            domain.push(self.vertices[j]);
            if let Some(&(w, _)) = self.apexes.get(j) {
                domain.push(w);
            }
        }
        FuchsianGenerators {
            signature: sig,
            q,
            handles,
            domain: to_pairs(&domain),
        }
    }
}

/// Point on the ray `dir` whose angle subtended by `p`, `q` equals `apex_angle`.
fn kite_apex(p: Complex64, q: Complex64, dir: Complex64, apex_angle: f64) -> Complex64 {
    let start = geodesic_midpoint(p, q).norm();
    if (apex_angle - PI).abs() <= 1e-15 {
        return dir * start;
    }
    let (mut lo, mut hi) = (start, 1.0 - 1e-15);
    for _ in 0..SOLVER_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        let f = angle_at(dir * mid, p, q) - apex_angle;
        if f.abs() <= SOLVER_TOL {
            return dir * mid;
        }
        // the subtended angle shrinks as the apex moves out
        if f > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    dir * (0.5 * (lo + hi))
}

fn to_pairs(points: &[Complex64]) -> Vec<[f64; 2]> {
    points.iter().map(|w| [w.re, w.im]).collect()
}

/// Hyperbolic area of a polygon given counterclockwise, as a signed sum of
/// triangles from the disk center.
fn polygon_area(vertices: &[[f64; 2]]) -> f64 {
    let origin = Complex64::new(0.0, 0.0);
    let pts: Vec<Complex64> = vertices
        .iter()
        .map(|&[x, y]| Complex64::new(x, y))
        .collect();
    let n = pts.len();
    let mut area = 0.0;
    for i in 0..n {
        let (x, y) = (pts[i], pts[(i + 1) % n]);
        if x.norm() < 1e-14 || y.norm() < 1e-14 {
            continue;
        }
        let orientation = (x.conj() * y).im;
        if orientation == 0.0 {
            continue;
        }
        let angles = angle_at(origin, x, y) + angle_at(x, origin, y) + angle_at(y, origin, x);
        area += (PI - angles) * orientation.signum();
    }
    area
}

pub fn verify_realization(gens: &FuchsianGenerators) -> RealizationCertificate {
    verify_realization_with(gens, &Tolerances::default())
}

pub fn verify_realization_with(
    gens: &FuchsianGenerators,
    tol: &Tolerances,
) -> RealizationCertificate {
    let product = gens.long_relation();
    let residual = product
        .max_abs_diff(&Mat2::IDENTITY)
        .min(product.max_abs_diff(&Mat2::IDENTITY.scale(-1.0)));

    let angle_errors: Vec<f64> = gens
        .q
        .iter()
        .zip(gens.signature.periods())
        .map(|(q, &k)| match q.rotation_angle() {
            Ok(alpha) => (alpha - TAU / k as f64).abs(),
            Err(_) => f64::INFINITY,
        })
        .collect();
    let count_mismatch = gens.q.len() != gens.signature.periods().len()
        || gens.handles.len() as u64 != gens.signature.genus();

    let area_error = if gens.domain.len() >= 3 {
        let coarea = gens.signature.coarea().to_f64().unwrap_or(f64::NAN);
        Some(polygon_area(&gens.domain) - TAU * coarea)
    } else {
        None
    };

    // positive-rotation lifts of the qᵢ are their principal lifts
    let lifted = gens
        .q
        .iter()
        .map(|q| LiftedIsometry::principal(*q))
        .chain(
            gens.handles
                .iter()
                .map(|p| LiftedIsometry::commutator(&p.a, &p.b)),
        )
        .fold(LiftedIsometry::central(0), |acc, x| acc.compose(&x));
    let turns = lifted.turns_at(0.0);
    let lift_exponent = turns.round() as i64;
    let lift_rounding = (turns - turns.round()).abs();

    let generators = gens.generators();
    let mut jorgensen_min: Option<f64> = None;
    for (i, x) in generators.iter().enumerate() {
        for (j, y) in generators.iter().enumerate() {
            if i == j
                || ProjMatrix::commutator(x, y).classify_with(tol.classify)
                    == IsometryClass::Identity
            {
                continue;
            }
            let v = jorgensen(x, y);
            jorgensen_min = Some(jorgensen_min.map_or(v, |m: f64| m.min(v)));
        }
    }

    let expected = 2 * gens.signature.genus() as i64 - 2 + gens.signature.r() as i64;
    let passed = !count_mismatch
        && residual <= tol.realization
        && angle_errors.iter().all(|e| *e <= tol.realization)
        && area_error.is_none_or(|e| e.abs() <= 1e-6)
        && lift_rounding <= tol.rounding
        && lift_exponent == expected;

    RealizationCertificate {
        residual,
        angle_errors,
        area_error,
        lift_exponent,
        lift_rounding,
        jorgensen_min,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::IsometryClass;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn triangle_237() {
        let t = realize_triangle(2, 3, 7).unwrap();
        assert!(((t.q[2].trace()) - 2.0 * (PI / 7.0).cos()).abs() < 1e-8);
        assert!((t.q[0].rotation_angle().unwrap() - PI).abs() < 1e-9);
        let product = t.q[0] * t.q[1] * t.q[2];
        assert!(product.distance_to_identity() < 1e-9);
        let cert = verify_realization(&t);
        assert!(cert.passed, "{cert:?}");
        assert_eq!(cert.lift_exponent, 1);
    }

    #[test]
    fn triangle_rejects_euclidean() {
        assert_eq!(
            realize_triangle(2, 3, 6).unwrap_err(),
            Error::NotHyperbolicTriple(2, 3, 6)
        );
        assert_eq!(
            realize_triangle(2, 2, 50).unwrap_err(),
            Error::NotHyperbolicTriple(2, 2, 50)
        );
    }

    #[test]
    fn surface_genus_two() {
        let rho = realize_surface(2).unwrap();
        assert_eq!(rho.genus, 2);
        assert!(rho.relation_residual() < 1e-8);
        for x in rho.generators() {
            assert_eq!(x.classify(), IsometryClass::Hyperbolic);
        }
        assert_eq!(rho.euler_class().unwrap(), 2);
        assert_eq!(realize_surface(3).unwrap().euler_class().unwrap(), 4);
        assert!(realize_surface(1).is_err());
    }

    #[test]
    fn surface_packaged_certificate() {
        let gens = realize_signature(&sig("2;-")).unwrap();
        let cert = verify_realization(&gens);
        assert!(cert.passed, "{cert:?}");
        assert_eq!(cert.lift_exponent, 2);
    }

    #[test]
    fn star_polygon_family() {
        for (s, expected) in [
            ("1;2", 1),
            ("1;2,2,2", 3),
            ("0;2,4,5", 1),
            ("2;2", 3),
            ("1;3,4", 2),
        ] {
            let gens = realize_signature(&sig(s)).unwrap();
            let cert = verify_realization(&gens);
            assert!(cert.passed, "{s}: {cert:?}");
            assert_eq!(cert.lift_exponent, expected, "{s}");
            assert!(cert.jorgensen_min.unwrap() >= 1.0 - 1e-9, "{s}");
        }
    }

    #[test]
    fn one_two_has_half_turn() {
        let gens = realize_signature(&sig("1;2")).unwrap();
        assert_eq!(gens.q.len(), 1);
        assert_eq!(gens.handles.len(), 1);
        assert!((gens.q[0].rotation_angle().unwrap() - PI).abs() < 1e-9);
    }

    #[test]
    fn gauss_bonnet_area() {
        let gens = realize_signature(&sig("1;2,2,2")).unwrap();
        let cert = verify_realization(&gens);
        assert!(cert.area_error.unwrap().abs() < 1e-6);
    }

    #[test]
    fn star_solver_agrees_with_regular_polygon() {
        let s = sig("2;-");
        let solved = StarPolygon::solve(&s).unwrap();
        let closed = surface_generators(2).unwrap();
        let r_solved = solved.vertices[0].norm();
        let r_closed = closed.domain[0][0];
        assert!((r_solved - r_closed).abs() < 1e-10);
    }

    #[test]
    fn conjugation_preserves_certificate() {
        let g = ProjMatrix::new(1.3, 0.4, -0.2, 0.9).unwrap();
        let gens = realize_signature(&sig("1;2")).unwrap().conjugate_by(&g);
        let cert = verify_realization(&gens);
        assert!(cert.passed, "{cert:?}");
    }

    #[test]
    fn rejects_cusped_and_invalid() {
        assert_eq!(
            realize_signature(&sig("0;2,3,inf")).unwrap_err(),
            Error::NotCocompact
        );
        assert!(matches!(
            realize_signature(&sig("0;2,2,2,2")),
            Err(Error::InvalidSignature(_))
        ));
    }
}
