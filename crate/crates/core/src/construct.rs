//! Explicit representations with prescribed Euler class, and operations on them.
//!
//! Odd Euler classes come from Fuchsian groups with order-two cone points.
//! In the lift of `(g′; 2)` one has `q² = z` and `qc = z^{2g′−1}` where `c`
//! is the product of the handle commutators, hence `c² = z^{4g′−3}`: listing
//! the handles twice gives a representation of genus `2g′` and Euler class
//! `4g′ − 3`. In the lift of `(g′; 2, 2, 2)`,
//!
//! ```text
//! z^{4g′−1} = [q₂⁻¹, q₃⁻¹] · ((q₂q₃)⁻¹ c (q₂q₃)) · c,
//! ```
//!
//! a product of `2g′ + 1` commutators.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::lift::Pair;
use crate::moebius::{diagonal, rotation, unipotent, IsometryClass, Mat2};
use crate::realize::{realize_signature, realize_surface};
use crate::{Error, ProjMatrix, Representation, Result, Signature, Tolerances};

/// Grid step used to bracket rational rotation angles along a deformation.
const SNAP_STEP: f64 = 1.0 / 512.0;
/// Rotation angle accuracy required of a snapped generator.
const SNAP_ANGLE_TOL: f64 = 1e-12;
/// Largest accepted `‖ρ′(a₁)^q − I‖∞` for the witness word.
const WITNESS_TOL: f64 = 1e-7;

/// Elliptic `A`, `B` with `[A, B] = M` for hyperbolic `M`.
///
/// Uses `A = A_{π/2}`, `B = U_t A U_{−t}` with `Tr[A, B] = 2 + 4t² + t⁴`,
/// conjugated so that the commutator matches `M`.
pub fn hyperbolic_as_elliptic_commutator(m: &ProjMatrix) -> Result<(ProjMatrix, ProjMatrix)> {
    if m.classify() != IsometryClass::Hyperbolic {
        return Err(Error::NotHyperbolic);
    }
    let t2 = (m.trace() + 2.0).sqrt() - 2.0;
    let t = t2.max(0.0).sqrt();
    let a0 = rotation(PI / 2.0);
    let b0 = a0.conjugate_by(&unipotent(t));
    let c0 = ProjMatrix::commutator(&a0, &b0);
    let g = eigenbasis(m) * eigenbasis(&c0).inverse();
    Ok((a0.conjugate_by(&g), b0.conjugate_by(&g)))
}

/// Positive-determinant matrix whose columns are the attracting and
/// repelling eigenvectors of a hyperbolic element.
fn eigenbasis(m: &ProjMatrix) -> ProjMatrix {
    let Mat2 { a, b, c, d } = m.mat();
    let t = a + d;
    let disc = (t * t - 4.0).max(0.0).sqrt();
    let eigvec = |lambda: f64| {
        let v1 = (b, lambda - a);
        let v2 = (lambda - d, c);
        if v1.0.hypot(v1.1) >= v2.0.hypot(v2.1) {
            v1
        } else {
            v2
        }
    };
    let (x1, y1) = eigvec(0.5 * (t + disc));
    let (x2, y2) = eigvec(0.5 * (t - disc));
    let det = x1 * y2 - x2 * y1;
    let s = if det > 0.0 { 1.0 } else { -1.0 };
    let raw = Mat2::new(x1, s * x2, y1, s * y2);
    ProjMatrix::canonicalize_with(raw.rows(), 0.0).expect("eigenvectors are independent")
}

/// A discrete representation of genus `g` with Euler class `k`.
pub fn build_euler(g: usize, k: i64) -> Result<Representation> {
    if g < 2 {
        return Err(Error::InvalidGenus { min: 2, got: g });
    }
    build_euler_any_genus(g, k)
}

/// As [`build_euler`], also allowing genus 1 (where only `k = 0` exists).
fn build_euler_any_genus(g: usize, k: i64) -> Result<Representation> {
    let bound = 2 * g as i64 - 2;
    if k.abs() > bound || g == 0 {
        return Err(Error::EulerOutOfRange {
            genus: g,
            euler: k,
            bound,
        });
    }
    // flip before padding so that the identity pairs stay last
    let core = Representation::new(minimal_pairs(k.unsigned_abs())?);
    let mut pairs = if k < 0 {
        flip(&core)?.pairs
    } else {
        core.pairs
    };
    pairs.resize(g, Pair::new(ProjMatrix::IDENTITY, ProjMatrix::IDENTITY));
    Ok(Representation::new(pairs))
}

/// Handle pairs of Euler class `k ≥ 0` in the smallest genus this recipe reaches.
fn minimal_pairs(k: u64) -> Result<Vec<Pair>> {
    if k == 0 {
        let t = diagonal(1.0);
        return Ok(vec![Pair::new(t, t)]);
    }
    if k.is_multiple_of(2) {
        return Ok(realize_surface(k as usize / 2 + 1)?.pairs);
    }
    let g0 = (k + 3) / 2;
    if g0.is_multiple_of(2) {
        let gens = realize_signature(&Signature::cocompact(g0 / 2, &[2])?)?;
        return Ok(gens
            .handles
            .iter()
            .chain(gens.handles.iter())
            .copied()
            .collect());
    }
    let gens = realize_signature(&Signature::cocompact(g0 / 2, &[2, 2, 2])?)?;
    let (q2, q3) = (gens.q[1], gens.q[2]);
    let h = q2 * q3;
    let hinv = h.inverse();
    let mut pairs = vec![Pair::new(q2.inverse(), q3.inverse())];
    pairs.extend(
        gens.handles
            .iter()
            .map(|p| Pair::new(hinv * p.a * h, hinv * p.b * h)),
    );
    pairs.extend(gens.handles.iter().copied());
    // h has a long axis; split the conjugation evenly to keep entries small
    let half = h.one_param(0.5)?;
    Ok(pairs
        .iter()
        .map(|p| Pair::new(p.a.conjugate_by(&half), p.b.conjugate_by(&half)))
        .collect())
}

fn validated(rho: &Representation) -> Result<()> {
    rho.check_relation(&Tolerances::default())
}

/// `ρ′(aᵢ) = ρ(b_{g+1−i})`, `ρ′(bᵢ) = ρ(a_{g+1−i})`; negates the Euler class.
pub fn flip(rho: &Representation) -> Result<Representation> {
    validated(rho)?;
    Ok(Representation::new(
        rho.pairs
            .iter()
            .rev()
            .map(|p| Pair::new(p.b, p.a))
            .collect(),
    ))
}

/// Append pairs `(x, x)`; the Euler class is unchanged and the image grows by `⟨extra⟩`.
pub fn pad(rho: &Representation, extra: &[ProjMatrix]) -> Result<Representation> {
    validated(rho)?;
    let mut pairs = rho.pairs.clone();
    pairs.extend(extra.iter().map(|&x| Pair::new(x, x)));
    Ok(Representation::new(pairs))
}

/// Representation of genus `g + g′` with Euler class `e(ρ) + e(ρ′)`.
pub fn concat(rho: &Representation, other: &Representation) -> Result<Representation> {
    validated(rho)?;
    validated(other)?;
    let mut pairs = rho.pairs.clone();
    pairs.extend(other.pairs.iter().copied());
    Ok(Representation::new(pairs))
}

/// Replace `A₁` by `A₁·B₁(t)`, where `B₁(t)` is the one-parameter subgroup
/// through `B₁`. The first commutator is unchanged.
pub fn deform(rho: &Representation, t: f64) -> Result<Representation> {
    let first = rho.pairs.first().ok_or(Error::IdentityB1)?;
    let bt = first.b.one_param(t).map_err(|_| Error::IdentityB1)?;
    let mut out = rho.clone();
    out.pairs[0].a = first.a * bt;
    Ok(out)
}

/// Forward-difference slope of `t ↦ Tr(A₁·B₁(t))` at `t = 0`.
pub fn trace_slope(rho: &Representation, dt: f64) -> Result<f64> {
    let t0 = deform(rho, 0.0)?.pairs[0].a.trace();
    let t1 = deform(rho, dt)?.pairs[0].a.trace();
    Ok((t1 - t0) / dt)
}

/// A word `a₁^q` that is nontrivial in the surface group but maps near the identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessWord {
    /// `(generator, exponent)` pairs, e.g. `("a1", 4)`.
    pub letters: Vec<(String, i64)>,
    /// `‖ρ(word) − I‖∞` in PSL(2,ℝ).
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snap {
    pub representation: Representation,
    pub witness: WitnessWord,
    /// Deformation parameter that was applied.
    pub t: f64,
    /// The new rotation angle of `ρ′(a₁)` is `2π·p/q`.
    pub p: u64,
    pub q: u64,
}

/// Deform `ρ` along `B₁` to the nearest parameter where `ρ(a₁)` has finite
/// order `q ≤ qmax`.
pub fn snap_nonfaithful(rho: &Representation, qmax: u64) -> Result<Snap> {
    let first = rho.pairs.first().ok_or(Error::NotInE)?;
    if first.a.classify() != IsometryClass::Elliptic
        || first.b.classify() != IsometryClass::Elliptic
    {
        return Err(Error::NotInE);
    }
    if qmax < 2 {
        return Err(Error::NoRationalInRange { qmax });
    }
    let angle = |t: f64| -> Option<f64> {
        let a = first.a * first.b.one_param(t).ok()?;
        a.rotation_angle().ok()
    };

    let steps = (1.0 / SNAP_STEP).round() as i64;
    // (|t*|, q, t*, p)
    let mut best: Option<(f64, u64, f64, u64)> = None;
    for side in [1.0, -1.0] {
        for i in 0..steps {
            let (t0, t1) = (
                side * i as f64 * SNAP_STEP,
                side * (i + 1) as f64 * SNAP_STEP,
            );
            if best.is_some_and(|b| b.0 < t0.abs()) {
                break;
            }
            let (Some(a0), Some(a1)) = (angle(t0), angle(t1)) else {
                continue;
            };
            let (lo, hi) = (a0.min(a1), a0.max(a1));
            for q in 2..=qmax {
                let pmin = (lo * q as f64 / TAU).ceil() as u64;
                let pmax = (hi * q as f64 / TAU).floor() as u64;
                for p in pmin.max(1)..=pmax.min(q - 1) {
                    if p.gcd(&q) != 1 {
                        continue;
                    }
                    let target = TAU * p as f64 / q as f64;
                    let Some(t) = bisect_angle(&angle, t0, t1, a0, target) else {
                        continue;
                    };
                    let better = match best {
                        None => true,
                        Some((bt, bq, _, _)) => t.abs() < bt || (t.abs() == bt && q < bq),
                    };
                    if better {
                        best = Some((t.abs(), q, t, p));
                    }
                }
            }
        }
    }
    let (_, q, t, p) = best.ok_or(Error::NoRationalInRange { qmax })?;
    let representation = deform(rho, t)?;
    let a1 = representation.pairs[0].a;
    let residual = a1.pow(q as i64).distance_to_identity();
    if residual.is_nan() || residual > WITNESS_TOL {
        return Err(Error::NoRationalInRange { qmax });
    }
    Ok(Snap {
        representation,
        witness: WitnessWord {
            letters: vec![("a1".to_string(), q as i64)],
            residual,
        },
        t,
        p,
        q,
    })
}

/// Root of `angle(t) = target` in `[t0, t1]`, given `angle(t0) = a0`.
fn bisect_angle(
    angle: &impl Fn(f64) -> Option<f64>,
    t0: f64,
    t1: f64,
    a0: f64,
    target: f64,
) -> Option<f64> {
    let (mut lo, mut hi) = (t0, t1);
    let below_at_lo = a0 < target;
    if (a0 - target).abs() <= SNAP_ANGLE_TOL {
        return Some(t0);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f = angle(mid)? - target;
        if f.abs() <= SNAP_ANGLE_TOL {
            return Some(mid);
        }
        if (f < 0.0) == below_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        if lo == hi {
            break;
        }
    }
    let mid = 0.5 * (lo + hi);
    ((angle(mid)? - target).abs() <= 1e-10).then_some(mid)
}

/// A representation whose first pair is elliptic, with Euler class `k`.
pub fn build_e_member(g: usize, k: i64) -> Result<Representation> {
    if g < 2 {
        return Err(Error::InvalidGenus { min: 2, got: g });
    }
    let bound = 2 * g as i64 - 3;
    if k.abs() > bound {
        return Err(Error::EulerOutOfRange {
            genus: g,
            euler: k,
            bound,
        });
    }
    if k.abs() < bound {
        let a = ProjMatrix::elliptic_about(Complex64::new(0.0, 1.0), 2.0)?;
        let rest = build_euler_any_genus(g - 1, k)?;
        let mut pairs = vec![Pair::new(a, a)];
        pairs.extend(rest.pairs);
        return Ok(Representation::new(pairs));
    }
    let maximal = realize_surface(g)?;
    let mut rho = if k > 0 { maximal } else { flip(&maximal)? };
    let first = rho.pairs[0];
    let c = ProjMatrix::commutator(&first.a, &first.b);
    if c.classify() != IsometryClass::Hyperbolic {
        return Err(Error::FirstCommutatorNotHyperbolic);
    }
    let (a, b) = hyperbolic_as_elliptic_commutator(&c)?;
    rho.pairs[0] = Pair::new(a, b);
    Ok(rho)
}
