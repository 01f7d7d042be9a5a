use std::f64::consts::{PI, SQRT_2};

use milnor::construct::build_euler;
use milnor::discreteness::{generator_scan, jorgensen, nondiscreteness_certificate};
use milnor::moebius::{diagonal, rotation};
use milnor::realize::{realize_signature, realize_surface};
use milnor::{ProjMatrix, Representation, Signature};

#[test]
fn build_euler_image_has_no_certificate() {
    let rho = build_euler(2, 1).unwrap();
    assert_eq!(nondiscreteness_certificate(&rho, 4).unwrap(), None);
}

#[test]
fn realized_groups_have_no_certificate() {
    for s in ["0;2,3,7", "0;2,4,5", "1;2", "1;2,2,2", "2;2"] {
        let sig: Signature = s.parse().unwrap();
        let gens = realize_signature(&sig).unwrap().generators();
        // Treat the generator list as pairs only to reuse the word search.
        let mut list = gens.clone();
        if list.len() % 2 == 1 {
            list.push(ProjMatrix::IDENTITY);
        }
        let rho = Representation::from_tuples(list.chunks(2).map(|c| (c[0], c[1])));
        assert_eq!(nondiscreteness_certificate(&rho, 4).unwrap(), None, "{s}");
    }
    let rho = realize_surface(2).unwrap();
    assert_eq!(nondiscreteness_certificate(&rho, 4).unwrap(), None);
}

#[test]
fn irrational_rotation_fixture_is_caught_at_depth_six() {
    let a = rotation(PI * SQRT_2 / 7.0);
    let b = diagonal(1.2);
    let rho = Representation::from_tuples([(a, b), (b, a)]);
    assert!(rho.relation_residual() < 1e-12);
    let cert = nondiscreteness_certificate(&rho, 6)
        .unwrap()
        .expect("certificate");
    assert!(cert.first.value < 1.0 && cert.second.value < 1.0);
    let gens = rho.generators();
    for report in [&cert.first, &cert.second] {
        let (s, t) = (report.pair.0.evaluate(&gens), report.pair.1.evaluate(&gens));
        assert!((jorgensen(&s, &t) - report.value).abs() < 1e-9);
    }
}

/// Discrete cyclic images `a₁ ↦ R(1)`, `b₁ ↦ R(p/q)` converging to the
/// non-discrete image with `b₁ ↦ R(√2)`.
#[test]
fn discrete_abelian_sequence_converges_to_nondiscrete_limit() {
    let r = |t: f64| diagonal(1.0).one_param(t).unwrap();
    let convergents = [
        (1u32, 1u32),
        (3, 2),
        (7, 5),
        (17, 12),
        (41, 29),
        (99, 70),
        (239, 169),
    ];
    let mut last = f64::INFINITY;
    for &(p, q) in &convergents {
        let rho = Representation::from_tuples([
            (r(1.0), r(p as f64 / q as f64)),
            (ProjMatrix::IDENTITY, ProjMatrix::IDENTITY),
        ]);
        assert!(rho.relation_residual() < 1e-12);
        assert_eq!(rho.euler_class().unwrap(), 0);
        assert_eq!(nondiscreteness_certificate(&rho, 3).unwrap(), None);
        let scan = generator_scan(&rho);
        assert!(scan.is_none_or(|s| s.elementary));
        // In the limit, a₁^p b₁^{−q} is a nontrivial element close to the identity.
        let small = r(1.0).pow(p as i64) * r(SQRT_2).pow(-(q as i64));
        let d = small.distance_to_identity();
        assert!(d > 0.0 && d < last);
        last = d;
    }
    assert!(last < 1e-2);
}
