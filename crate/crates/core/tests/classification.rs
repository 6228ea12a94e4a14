use fatpoints_core::sweep::{family, theorem_violations};
use fatpoints_core::{classify, is_acm};

#[test]
fn theorem_sweep_with_multiplicity_four() {
    let fam = family(3, 3, 4);
    let v = theorem_violations(&fam);
    assert!(v.is_empty(), "{v:?}");
}

#[test]
fn support_pattern_matches_acm_test_on_reduced_schemes() {
    for s in family(3, 3, 3) {
        let red = s.support();
        assert_eq!(classify(&red).support_acm, is_acm(&red).unwrap().acm, "{s}");
    }
}

#[test]
fn classification_invariants() {
    for s in family(3, 3, 3) {
        let c = classify(&s);
        if c.quasi_homogeneous.is_some() || c.homogeneous.is_some() {
            assert!(c.almost_homogeneous.is_some(), "{s}");
        }
        if c.support_ci {
            assert!(c.support_acm, "{s}");
        }
        if let Some(t) = &c.quasi_homogeneous {
            assert_eq!(t.len(), s.rows());
            assert!(t.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
