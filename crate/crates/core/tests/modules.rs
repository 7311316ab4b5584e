use std::time::Instant;

use crossedcoh::group::FiniteGroup;
use crossedcoh::linalg::{snf, snf::from_i64};
use crossedcoh::modules::*;
use crossedcoh::Error;

fn sign_module(gamma_order: usize) -> GammaModule {
    let gamma = FiniteGroup::cyclic(gamma_order);
    let action = gamma
        .elements()
        .map(|g| vec![vec![if g % 2 == 1 { -1 } else { 1 }]])
        .collect();
    GammaModule::new(FgAbelianGroup::free(1), gamma, action).unwrap()
}

#[test]
fn snf_examples() {
    let s = snf(&from_i64(&[vec![2, 0], vec![0, 3]]));
    assert_eq!(s.diagonal, vec![1.into(), 6.into()]);
}

#[test]
fn h1_trivial_gamma_vanishes() {
    let m = GammaModule::trivial(
        FiniteGroup::trivial(),
        FgAbelianGroup::new(2, vec![vec![6, 0]]).unwrap(),
    );
    assert!(mod_h1(&m).unwrap().invariant_factors().is_empty());
}

#[test]
fn h1_of_sign_representation() {
    let h1 = mod_h1(&sign_module(2)).unwrap();
    assert_eq!(h1.invariant_factors(), &[2]);
    let g = &h1.generators[0];
    assert!(h1.module().is_cocycle(g));
    assert!(!h1.is_trivial_class(g).unwrap());
    let h0 = mod_h0(&sign_module(2)).unwrap();
    assert!(h0.invariant_factors().is_empty());
}

#[test]
fn h0_of_trivial_action_is_everything() {
    let group = FgAbelianGroup::new(2, vec![vec![4, 0]]).unwrap();
    let m = GammaModule::trivial(FiniteGroup::cyclic(3), group);
    assert_eq!(mod_h0(&m).unwrap().invariant_factors(), &[4, 0]);
}

#[test]
fn non_cocycles_are_rejected() {
    let h1 = mod_h1(&sign_module(2)).unwrap();
    assert!(matches!(
        h1.class_of(&[vec![1], vec![0]]),
        Err(Error::NotACocycle(_))
    ));
}

#[test]
fn unitary_presentations() {
    let ex = build_unitary_example(1).unwrap();
    assert_eq!(ex.x.module().invariant_factors(), &[4, 0]);
    assert_eq!(ex.x_sc.module().invariant_factors(), &[0]);
    for n in 1..=3 {
        let ex = build_unitary_example(n).unwrap();
        let torsion: Vec<u64> =
            ex.x.module()
                .invariant_factors()
                .iter()
                .copied()
                .filter(|&d| d != 0)
                .collect();
        assert_eq!(torsion, vec![4]);
        assert_eq!(ex.x.module().free_rank(), 2 * n - 1);
    }
}

#[test]
fn unitary_h1_matches_reduction() {
    for n in 1..=3 {
        let start = Instant::now();
        let ex = build_unitary_example(n).unwrap();
        let h1 = mod_h1(&ex.x).unwrap();
        let expected = direct_sum(&[
            &mod_two(ex.x.module()).unwrap(),
            &two_torsion(ex.x.module()).unwrap(),
        ])
        .unwrap();
        assert_eq!(
            h1.invariant_factors(),
            expected.invariant_factors(),
            "n = {n}"
        );
        assert_eq!(h1.invariant_factors(), vec![2u64; 2 * n + 1].as_slice());
        eprintln!("n = {n}: {:?}", start.elapsed());
    }
}

#[test]
fn unitary_kernel() {
    for n in 1..=3 {
        let ex = build_unitary_example(n).unwrap();
        let source = mod_h1(&ex.x).unwrap();
        let target = mod_h1(&ex.x_sc).unwrap();
        let ker = h1_kernel_of(&ex.map, &source, &target).unwrap();
        assert_eq!(ker.invariant_factors(), &[2, 2, 2], "n = {n}");
        let image = h1_image_order(&ex.map, &source, &target).unwrap().unwrap();
        assert_eq!(ker.group.order().unwrap() * image, source.order().unwrap());

        // The classes named in the reduction span the kernel.
        let d2 = vec![2i64; 2 * n];
        let d1 = vec![1i64; 2 * n];
        let mut e1 = vec![0i64; 2 * n];
        e1[0] = 2;
        let zero = vec![0i64; 2 * n];
        let (d2x, d1x, e1x) = (
            ex.x_coordinates(&d2).unwrap(),
            ex.x_coordinates(&d1).unwrap(),
            ex.x_coordinates(&e1).unwrap(),
        );
        let zx = ex.x_coordinates(&zero).unwrap();
        let named = [
            ex.cocycle(&zx, &d2x).unwrap(),
            ex.cocycle(&e1x, &zx).unwrap(),
            ex.cocycle(&d1x, &zx).unwrap(),
        ];
        let mut span = std::collections::BTreeSet::new();
        for mask in 0..8u32 {
            let mut acc = vec![vec![0i64; 2 * n]; 32];
            for (k, c) in named.iter().enumerate() {
                assert!(ex.x.is_cocycle(c));
                if mask >> k & 1 == 1 {
                    for s in 0..32 {
                        for l in 0..2 * n {
                            acc[s][l] += c[s][l];
                        }
                    }
                }
            }
            let image = map_cocycle(&ex.map, &acc).unwrap();
            assert!(target.is_trivial_class(&image).unwrap());
            span.insert(source.class_of(&acc).unwrap());
        }
        assert_eq!(span.len(), 8);
    }
}

#[test]
fn z8_klein() {
    let start = Instant::now();
    let ses = build_z8_klein_sequence().unwrap();
    assert!(ses.a().action().iter().all(|m| m == &vec![vec![1]]));
    assert_eq!(ses.b().module().order(), Some(8));
    let c = ses.c();
    assert!(c.module().same_class(
        &c.act(KLEIN_SIGMA, &[1])
            .iter()
            .map(|&x| x as i64)
            .collect::<Vec<_>>(),
        &[1]
    ));

    let h0 = mod_h0(c).unwrap();
    assert_eq!(h0.invariant_factors(), &[2]);
    let fixed: Vec<_> = c
        .module()
        .elements(100)
        .unwrap()
        .into_iter()
        .filter(|x| c.is_fixed(x))
        .collect();
    assert_eq!(fixed, vec![vec![0], vec![2]]);
    assert_eq!(h0.generators, vec![vec![2]]);

    let sigma = [0, KLEIN_SIGMA];
    for choice in [LiftChoice::Least, LiftChoice::Greatest, LiftChoice::Solver] {
        let dx = connecting_delta0(&ses, &[1], &sigma, choice).unwrap();
        assert!(!dx.trivial);
        assert_eq!(dx.cocycle, vec![vec![0], vec![1]]);
        let d2x = connecting_delta0(&ses, &[2], &sigma, choice).unwrap();
        assert!(d2x.trivial);
        let d0 = connecting_delta0(&ses, &[0], &sigma, choice).unwrap();
        assert!(d0.trivial);
    }
    // σ(x) − x = 4x
    let b = ses.b();
    let moved = b.act(KLEIN_SIGMA, &[1])[0] - 1;
    assert_eq!(moved, 4);
    assert!(matches!(
        connecting_delta0(&ses, &[1], &[0, 1, 2, 3], LiftChoice::Least),
        Err(Error::NotFixed(_))
    ));
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn broken_sequences_are_rejected() {
    let gamma = FiniteGroup::trivial();
    let z2 = GammaModule::trivial(gamma.clone(), FgAbelianGroup::cyclic(2));
    let z4 = GammaModule::trivial(gamma.clone(), FgAbelianGroup::cyclic(4));
    let z8 = GammaModule::trivial(gamma, FgAbelianGroup::cyclic(8));
    // ℤ/2 → ℤ/8 → ℤ/4 with the projection doubled is not exact.
    let i = ModuleHom::new(z2.clone(), z8.clone(), vec![vec![4]]).unwrap();
    let p = ModuleHom::new(z8.clone(), z4.clone(), vec![vec![2]]).unwrap();
    assert!(matches!(
        ShortExactSequence::new(i, p),
        Err(Error::NotExact(_))
    ));
    let zero = ModuleHom::new(z2, z8.clone(), vec![vec![0]]).unwrap();
    let p = ModuleHom::new(z8, z4, vec![vec![1]]).unwrap();
    assert!(matches!(
        ShortExactSequence::new(zero, p),
        Err(Error::NotExact(_))
    ));
}

#[test]
fn identity_kernel_is_trivial() {
    let m = sign_module(4);
    let k = h1_kernel(&ModuleHom::identity(&m)).unwrap();
    assert!(k.invariant_factors().is_empty());
}

#[test]
fn invalid_actions_are_rejected() {
    let gamma = FiniteGroup::cyclic(2);
    // ×2 on ℤ is not invertible, so it cannot square to the identity.
    let action = vec![vec![vec![1]], vec![vec![2]]];
    assert!(matches!(
        GammaModule::new(FgAbelianGroup::free(1), gamma.clone(), action),
        Err(Error::NotAnAction(_))
    ));
    // ×3 on ℤ/4 squares to 9 ≡ 1 and is fine.
    let action = vec![vec![vec![1]], vec![vec![3]]];
    assert!(GammaModule::new(FgAbelianGroup::cyclic(4), gamma, action).is_ok());
}
