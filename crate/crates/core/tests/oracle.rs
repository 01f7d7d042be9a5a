use milnor::homology::{oracle_e, oracle_h_trivial};
use milnor::Signature;
use num_integer::Integer;
use proptest::prelude::*;

fn nondecreasing(r: usize, kmax: u64, out: &mut Vec<Vec<u64>>, cur: &mut Vec<u64>) {
    if cur.len() == r {
        out.push(cur.clone());
        return;
    }
    let start = cur.last().copied().unwrap_or(2);
    for k in start..=kmax {
        cur.push(k);
        nondecreasing(r, kmax, out, cur);
        cur.pop();
    }
}

fn family(gmax: u64, rmax: usize, kmax: u64) -> Vec<Signature> {
    let mut sigs = Vec::new();
    for g in 0..=gmax {
        for r in 0..=rmax {
            let mut periods = Vec::new();
            nondecreasing(r, kmax, &mut periods, &mut Vec::new());
            for p in periods {
                let sig = Signature::cocompact(g, &p).unwrap();
                if sig.is_valid() {
                    sigs.push(sig);
                }
            }
        }
    }
    sigs
}

#[test]
fn formula_matches_lattice_on_small_family() {
    let sigs = family(1, 4, 8);
    assert!(sigs.len() > 300);
    for sig in &sigs {
        assert_eq!(sig.e_gamma().unwrap(), oracle_e(sig).unwrap(), "{sig}");
        assert_eq!(
            sig.admits_odd().unwrap(),
            oracle_h_trivial(sig).unwrap(),
            "{sig}"
        );
    }
}

#[test]
fn nontrivial_h_forces_even_e() {
    for sig in family(2, 4, 10) {
        if !oracle_h_trivial(&sig).unwrap() {
            assert!(sig.e_gamma().unwrap().is_even(), "{sig}");
        }
    }
}

#[test]
fn anchors() {
    let s: Signature = "0;2,3,7".parse().unwrap();
    assert_eq!(oracle_e(&s).unwrap(), 1.into());
    assert!(oracle_h_trivial(&s).unwrap());
    let modular: Signature = "0;2,3,inf".parse().unwrap();
    assert!(!modular.admits_odd().unwrap());
    assert!(!oracle_h_trivial(&modular).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn formula_matches_lattice_on_random_signatures(
        g in 0u64..=3,
        periods in prop::collection::vec(2u64..=30, 0..=5),
        cusps in 0u64..=2,
    ) {
        let sig = Signature::new(g, periods, cusps).unwrap();
        prop_assume!(sig.is_valid());
        prop_assert_eq!(sig.e_gamma().unwrap(), oracle_e(&sig).unwrap());
        prop_assert_eq!(sig.admits_odd().unwrap(), oracle_h_trivial(&sig).unwrap());
    }
}
