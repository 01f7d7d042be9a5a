//! Jørgensen's inequality and a bounded search for non-discreteness witnesses.
//!
//! If `⟨A, B⟩` is discrete and non-elementary then
//! `J(A,B) = |Tr²A − 4| + |Tr[A,B] − 2| ≥ 1`. Finding `s, t₁, t₂` in the
//! image with `J(s,t₁) < 1`, `J(s,t₂) < 1` and `[t₁,t₂] ≠ 1` is evidence of
//! non-discreteness; not finding one proves nothing.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::moebius::IsometryClass;
use crate::{Error, ProjMatrix, Representation, Result};

/// Strict margin below 1 for a Jørgensen value to count.
const J_MARGIN: f64 = 1e-9;
/// Commutators farther than this from the identity count as nontrivial.
const COMMUTATOR_TOL: f64 = 1e-6;
/// Word values are identified after rounding entries to this grid.
const QUANTUM: f64 = 1e-10;
/// Hard cap on distinct elements kept by the word enumeration.
const MAX_ELEMENTS: usize = 250_000;

pub fn jorgensen(a: &ProjMatrix, b: &ProjMatrix) -> f64 {
    let t = a.trace();
    (t * t - 4.0).abs() + (ProjMatrix::commutator(a, b).trace() - 2.0).abs()
}

/// A word in the generators `a₁, b₁, …`; letters are `(generator index, ±1)`
/// with index `2i` for `a_{i+1}` and `2i + 1` for `b_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<(usize, i8)>);

impl Word {
    pub fn evaluate(&self, generators: &[ProjMatrix]) -> ProjMatrix {
        self.0.iter().fold(ProjMatrix::IDENTITY, |acc, &(g, e)| {
            let x = if e > 0 {
                generators[g]
            } else {
                generators[g].inverse()
            };
            acc * x
        })
    }
}

/// Serialized as its display form, e.g. `"a1 b2^-1"`.
impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let letters: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| {
                let name = if g % 2 == 0 { 'a' } else { 'b' };
                let inv = if e < 0 { "^-1" } else { "" };
                format!("{name}{}{inv}", g / 2 + 1)
            })
            .collect();
        f.write_str(&letters.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JorgensenReport {
    pub value: f64,
    pub pair: (Word, Word),
    /// Heuristic: the pair commutes or shares a boundary fixed point.
    pub elementary: bool,
}

/// Elements `s, t₁, t₂` with `J(s,tᵢ) < 1` and `[t₁,t₂] ≠ 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NondiscretenessCertificate {
    pub first: JorgensenReport,
    pub second: JorgensenReport,
}

impl JorgensenReport {
    pub fn new(pair: (Word, Word), generators: &[ProjMatrix]) -> Self {
        let (a, b) = (pair.0.evaluate(generators), pair.1.evaluate(generators));
        Self {
            value: jorgensen(&a, &b),
            elementary: looks_elementary(&a, &b),
            pair,
        }
    }
}

/// Commuting, or sharing a boundary fixed point within 1e−8.
pub fn looks_elementary(a: &ProjMatrix, b: &ProjMatrix) -> bool {
    if ProjMatrix::commutator(a, b).distance_to_identity() <= 1e-8 {
        return true;
    }
    match (a.fixed_boundary_angles(), b.fixed_boundary_angles()) {
        (Ok(fa), Ok(fb)) => fa
            .iter()
            .any(|x| fb.iter().any(|y| x.circle_distance(*y).abs() <= 1e-8)),
        _ => false,
    }
}

/// Distinct group elements given by reduced words of length ≤ `depth`, in
/// breadth-first order (shortest, then lexicographically smallest, word first).
pub fn enumerate_elements(generators: &[ProjMatrix], depth: usize) -> Vec<(Word, ProjMatrix)> {
    let key = |m: &ProjMatrix| {
        let [[a, b], [c, d]] = m.rows();
        let k = [a, b, c, d].map(|x| (x / QUANTUM).round() as i64);
        // ±M are the same element; near trace 0 the stored sign is not stable
        match k.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => k.map(|x| -x),
            _ => k,
        }
    };
    let mut seen: HashMap<[i64; 4], ()> = HashMap::new();
    seen.insert(key(&ProjMatrix::IDENTITY), ());
    let mut out: Vec<(Word, ProjMatrix)> = Vec::new();
    let mut frontier: Vec<(Word, ProjMatrix)> = vec![(Word(Vec::new()), ProjMatrix::IDENTITY)];
    let letters: Vec<(usize, i8)> = (0..generators.len())
        .flat_map(|g| [(g, 1i8), (g, -1i8)])
        .collect();
    let values: Vec<ProjMatrix> = letters
        .iter()
        .map(|&(g, e)| {
            if e > 0 {
                generators[g]
            } else {
                generators[g].inverse()
            }
        })
        .collect();
    for _ in 0..depth {
        let mut next = Vec::new();
        for (word, m) in &frontier {
            for (letter, value) in letters.iter().zip(&values) {
                if word
                    .0
                    .last()
                    .is_some_and(|&(g, e)| g == letter.0 && e == -letter.1)
                {
                    continue;
                }
                let prod = *m * *value;
                if seen.insert(key(&prod), ()).is_some() {
                    continue;
                }
                let mut w = word.0.clone();
                w.push(*letter);
                next.push((Word(w), prod));
                if out.len() + next.len() >= MAX_ELEMENTS {
                    break;
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
        if out.len() >= MAX_ELEMENTS || frontier.is_empty() {
            break;
        }
    }
    out
}

/// Search words of length ≤ `depth` for a Jørgensen witness of non-discreteness.
pub fn nondiscreteness_certificate(
    rho: &Representation,
    depth: usize,
) -> Result<Option<NondiscretenessCertificate>> {
    if depth == 0 {
        return Err(Error::InvalidDepth);
    }
    let generators = rho.generators();
    let elements = enumerate_elements(&generators, depth);
    for (sw, s) in &elements {
        if s.classify() == IsometryClass::Identity {
            continue;
        }
        let t = s.trace();
        if (t * t - 4.0).abs() >= 1.0 - J_MARGIN {
            continue;
        }
        let small: Vec<&(Word, ProjMatrix)> = elements
            .iter()
            .filter(|(_, x)| jorgensen(s, x) < 1.0 - J_MARGIN)
            .collect();
        for (i, (w1, t1)) in small.iter().enumerate() {
            for (w2, t2) in &small[i + 1..] {
                if ProjMatrix::commutator(t1, t2).distance_to_identity() > COMMUTATOR_TOL {
                    return Ok(Some(NondiscretenessCertificate {
                        first: JorgensenReport::new((sw.clone(), w1.clone()), &generators),
                        second: JorgensenReport::new((sw.clone(), w2.clone()), &generators),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Smallest Jørgensen value over ordered pairs of distinct generator images
/// that do not commute.
pub fn generator_scan(rho: &Representation) -> Option<JorgensenReport> {
    let generators = rho.generators();
    let mut best: Option<JorgensenReport> = None;
    for i in 0..generators.len() {
        for j in 0..generators.len() {
            let (x, y) = (generators[i], generators[j]);
            if i == j || ProjMatrix::commutator(&x, &y).classify() == IsometryClass::Identity {
                continue;
            }
            let report =
                JorgensenReport::new((Word(vec![(i, 1)]), Word(vec![(j, 1)])), &generators);
            if best.as_ref().is_none_or(|b| report.value < b.value) {
                best = Some(report);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::{diagonal, rotation, unipotent};
    use std::f64::consts::PI;

    #[test]
    fn jorgensen_examples() {
        let a = unipotent(1.0);
        let b = ProjMatrix::new(1.0, 0.0, 1.0, 1.0).unwrap();
        assert!((jorgensen(&a, &b) - 1.0).abs() < 1e-12);
        let theta = PI / 100.0;
        let j = jorgensen(&rotation(theta), &unipotent(1.0));
        assert!((j - 5.0 * theta.sin().powi(2)).abs() < 1e-12);
        assert!(jorgensen(&ProjMatrix::IDENTITY, &b).abs() < 1e-15);
        assert!(looks_elementary(&ProjMatrix::IDENTITY, &b));
    }

    #[test]
    fn jorgensen_closed_form_in_theta() {
        for &(theta, t) in &[(0.3, 0.5), (1.0, 2.0), (PI / 2.0, 1.0)] {
            let j = jorgensen(&rotation(theta), &unipotent(t));
            let expected = (4.0 + t * t) * f64::sin(theta).powi(2);
            assert!((j - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn conjugation_invariance() {
        let a = ProjMatrix::new(1.2, 0.5, -0.3, 0.7).unwrap();
        let b = diagonal(0.8) * rotation(0.3);
        let g = ProjMatrix::new(2.0, 1.0, 0.5, 0.75).unwrap();
        let j1 = jorgensen(&a, &b);
        let j2 = jorgensen(&a.conjugate_by(&g), &b.conjugate_by(&g));
        assert!((j1 - j2).abs() < 1e-8);
    }

    #[test]
    fn shared_fixed_point_is_elementary() {
        assert!(looks_elementary(&diagonal(1.0), &unipotent(2.0)));
        assert!(!looks_elementary(
            &unipotent(1.0),
            &ProjMatrix::new(1.0, 0.0, 1.0, 1.0).unwrap()
        ));
    }

    #[test]
    fn depth_zero_is_rejected() {
        let rho = Representation::trivial(2);
        assert_eq!(
            nondiscreteness_certificate(&rho, 0),
            Err(Error::InvalidDepth)
        );
    }

    #[test]
    fn word_display_and_evaluation() {
        let w = Word(vec![(0, 1), (3, -1)]);
        assert_eq!(w.to_string(), "a1 b2^-1");
        let gens = [rotation(0.2), diagonal(1.0), unipotent(1.0), diagonal(0.5)];
        assert!(w.evaluate(&gens).distance(&(gens[0] * gens[3].inverse())) < 1e-14);
    }

    #[test]
    fn enumeration_dedupes_torsion() {
        // a quarter turn has order 2 in PSL, so a and a⁻¹ coincide
        let gens = [rotation(PI / 2.0), ProjMatrix::IDENTITY];
        let elems = enumerate_elements(&gens, 5);
        assert_eq!(elems.len(), 1);
    }

    #[test]
    fn small_rotation_with_hyperbolics_is_caught() {
        let rho = Representation::from_tuples([
            (rotation(0.05), diagonal(1.5)),
            (diagonal(1.5), rotation(0.05)),
        ]);
        let cert = nondiscreteness_certificate(&rho, 2)
            .unwrap()
            .expect("certificate");
        assert!(cert.first.value < 1.0 && cert.second.value < 1.0);
    }
}
