use std::sync::Arc;

use crossedcoh::cochain::{Cochain1, DEFAULT_BUDGET};
use crossedcoh::crossed::CrossedModule;
use crossedcoh::fixtures::{self, Q8_I, V4_B1};
use crossedcoh::group::FiniteGroup;
use crossedcoh::hyper::h1_pointed;
use crossedcoh::obstruction::*;
use crossedcoh::out::compute_out;
use crossedcoh::Error;

fn z2_band() -> Band {
    let out = Arc::new(compute_out(&FiniteGroup::cyclic(2)).unwrap());
    Band::trivial(fixtures::z2_gamma(), out)
}

fn z2_nontrivial() -> TwoCocycle {
    // u_{γ,γ} = −1, f ≡ id
    TwoCocycle {
        u: vec![0, 0, 0, 1],
        f: vec![0, 0],
    }
}

#[test]
fn z2_cocycles_by_hand() {
    let band = z2_band();
    let neutral = TwoCocycle {
        u: vec![0; 4],
        f: vec![0, 0],
    };
    assert!(is_cocycle2(&band, &neutral));
    assert_eq!(is_neutral_class(&band, &neutral).unwrap(), Some(vec![0, 0]));

    let c = z2_nontrivial();
    assert!(is_cocycle2(&band, &c));
    assert_eq!(is_neutral_class(&band, &c).unwrap(), None);
}

#[test]
fn associativity_mutation_is_reported() {
    let band = z2_band();
    let broken = TwoCocycle {
        u: vec![0, 1, 0, 1],
        f: vec![0, 0],
    };
    let v = cocycle2_violation(&band, &broken).unwrap();
    assert_eq!(v.condition, Cocycle2Condition::Associativity);
    assert_eq!(v.indices.len(), 3);
    let [s, t, nu] = [v.indices[0], v.indices[1], v.indices[2]];
    let g = band.gamma();
    let a = band.group();
    let lhs = a.mul(broken.u(s, g.mul(t, nu)), broken.u(t, nu));
    let rhs = a.mul(broken.u(g.mul(s, t), nu), broken.u(s, t));
    assert_ne!(lhs, rhs);
}

#[test]
fn act_w_is_an_action_and_identity_fixes() {
    let band = z2_band();
    let c = z2_nontrivial();
    assert_eq!(act_w(&band, &[0, 0], &c), c);
    let a = band.group();
    for w1 in 0..4usize {
        for w2 in 0..4usize {
            let w1v = vec![w1 >> 1, w1 & 1];
            let w2v = vec![w2 >> 1, w2 & 1];
            let prod: Vec<usize> = w1v.iter().zip(&w2v).map(|(&x, &y)| a.mul(x, y)).collect();
            let seq = act_w(&band, &w1v, &act_w(&band, &w2v, &c));
            assert_eq!(seq, act_w(&band, &prod, &c));
        }
    }
}

#[test]
fn neutral_orbit_is_coboundaries() {
    let band = z2_band();
    let neutral = TwoCocycle {
        u: vec![0; 4],
        f: vec![0, 0],
    };
    let orbit = orbit_w(&band, &neutral, DEFAULT_BUDGET).unwrap();
    let g = band.gamma();
    let a = band.group();
    let mut coboundaries = std::collections::BTreeSet::new();
    for w in 0..4usize {
        let w = [w >> 1, w & 1];
        let u: Vec<usize> = (0..2)
            .flat_map(|s| (0..2).map(move |t| (s, t)))
            .map(|(s, t)| a.mul_all(&[w[g.mul(s, t)], a.inv(w[t]), a.inv(w[s])]))
            .collect();
        coboundaries.insert(u);
    }
    let us: std::collections::BTreeSet<_> = orbit.iter().map(|c| c.u.clone()).collect();
    assert_eq!(us, coboundaries);
    for c in &orbit {
        assert!(is_cocycle2(&band, c));
        assert!(is_neutral_class(&band, c).unwrap().is_some());
    }
    for c in orbit_w(&band, &z2_nontrivial(), DEFAULT_BUDGET).unwrap() {
        assert!(is_neutral_class(&band, &c).unwrap().is_none());
    }
}

#[test]
fn delta_on_image_of_cr1_is_neutral_shape() {
    let cm = fixtures::q8_to_v4();
    let z = Cochain1::from_psi(vec![0, V4_B1], 0);
    let (band, c) = delta_coboundary(&cm, &z).unwrap();
    assert!(is_cocycle2(&band, &c));
    assert!(c.is_neutral_shape(0));
    assert_eq!(is_neutral_class(&band, &c).unwrap(), Some(vec![0, 0]));
}

#[test]
fn delta_of_nonneutral_class_for_z2_to_one() {
    let cm = fixtures::z2_to_one().cm().clone();
    let z = Cochain1 {
        u: vec![0, 0, 0, 1],
        psi: vec![0, 0],
    };
    let (band, c) = delta_coboundary(&cm, &z).unwrap();
    assert!(is_cocycle2(&band, &c));
    assert_eq!(is_neutral_class(&band, &c).unwrap(), None);
}

#[test]
fn delta_of_lift_of_b1_has_witness() {
    let cm = fixtures::q8_to_v4();
    // u_{γ,γ} = −1 with ψ_γ = b1: the class of cr¹(b1), not of neutral shape.
    let z = Cochain1 {
        u: vec![0, 0, 0, 1],
        psi: vec![0, V4_B1],
    };
    let (band, c) = delta_coboundary(&cm, &z).unwrap();
    assert!(!c.is_neutral_shape(0));
    let w = is_neutral_class(&band, &c).unwrap().expect("neutral");
    assert!(act_w(&band, &w, &c).is_neutral_shape(0));
    assert_eq!(w, vec![0, Q8_I]);
}

#[test]
fn delta_rejects_non_cocycles() {
    let cm = fixtures::q8_to_v4();
    let z = Cochain1 {
        u: vec![0, 0, 0, Q8_I],
        psi: vec![0, V4_B1],
    };
    assert!(matches!(
        delta_coboundary(&cm, &z),
        Err(Error::NotACocycle(_))
    ));
}

#[test]
fn kang_criterion_on_named_fixtures() {
    let q8 = kang_criterion(&fixtures::q8_to_v4()).unwrap();
    assert!(q8.holds());
    assert_eq!(q8.rows.len(), 2);
    assert!(q8.rows.iter().all(|r| r.in_image && r.delta_neutral));

    let z2 = kang_criterion(fixtures::z2_to_one().cm()).unwrap();
    assert!(z2.holds());
    assert_eq!(z2.image_classes(), vec![0]);
    assert!(!z2.rows[1].delta_neutral);

    let v4 = kang_criterion(fixtures::one_to_v4().cm()).unwrap();
    assert!(v4.holds());
    assert_eq!(v4.rows.len(), 4);
    assert!(v4.rows.iter().all(|r| r.in_image && r.delta_neutral));
}

#[test]
fn kang_criterion_and_delta_invariance_on_every_fixture() {
    for (name, b) in fixtures::braided_fixtures() {
        let report = kang_criterion(b.cm()).unwrap();
        assert!(report.holds(), "{name}: {report:?}");
        assert_eq!(report.rows.len(), h1_pointed(b.cm()).unwrap().len());
        let inv = delta_invariance(b.cm(), DEFAULT_BUDGET).unwrap();
        assert!(inv.all_passed(), "{name}:\n{inv}");
    }
}

#[test]
fn band_must_be_a_homomorphism() {
    let a = fixtures::q8();
    let out = Arc::new(compute_out(&a).unwrap());
    assert_eq!(out.out_order(), 6);
    let gamma = FiniteGroup::cyclic(2);
    let bad = (1..6)
        .find(|&k| out.out_mul(k, k) != out.out_identity())
        .unwrap();
    assert!(Band::new(gamma.clone(), out.clone(), vec![out.out_identity(), bad]).is_err());
    let good = (1..6)
        .find(|&k| out.out_mul(k, k) == out.out_identity())
        .unwrap();
    let id = out.out_identity();
    assert!(Band::new(gamma, out, vec![id, good]).is_ok());
}

#[test]
fn swapped_gamma_action_gives_nontrivial_band() {
    let b = fixtures::q8_to_v4_swap_braided();
    let cm: &CrossedModule = b.cm();
    let z = Cochain1::identity(2, 0, 0);
    let (band, _) = delta_coboundary(cm, &z).unwrap();
    assert_ne!(band.beta()[1], band.out().out_identity());
}
