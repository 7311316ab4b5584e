//! Built-in groups, crossed modules and morphisms used by the scenarios and
//! test suites.

use crate::crossed::{commutator_braiding, Braiding, CrossedModule, CrossedMorphism};
use crate::gamma::GammaGroup;
use crate::group::{FiniteGroup, GroupHom};

/// Q₈ with elements `1, -1, i, -i, j, -j, k, -k` at indices 0..8.
pub fn q8() -> FiniteGroup {
    let table = vec![
        vec![0, 1, 2, 3, 4, 5, 6, 7],
        vec![1, 0, 3, 2, 5, 4, 7, 6],
        vec![2, 3, 1, 0, 6, 7, 5, 4],
        vec![3, 2, 0, 1, 7, 6, 4, 5],
        vec![4, 5, 7, 6, 1, 0, 2, 3],
        vec![5, 4, 6, 7, 0, 1, 3, 2],
        vec![6, 7, 4, 5, 3, 2, 1, 0],
        vec![7, 6, 5, 4, 2, 3, 0, 1],
    ];
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    FiniteGroup::from_table(table, Some(names.iter().map(|s| s.to_string()).collect()))
        .expect("Q8 table")
}

pub const Q8_MINUS_ONE: usize = 1;
pub const Q8_I: usize = 2;
pub const Q8_J: usize = 4;

/// V₄ = Q₈/{±1} with elements `1, b1, b2, b1b2`; `b1`, `b2` are the images
/// of `i`, `j`.
pub fn v4() -> FiniteGroup {
    let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    let names = ["1", "b1", "b2", "b1b2"];
    FiniteGroup::from_table(table, Some(names.iter().map(|s| s.to_string()).collect()))
        .expect("V4 table")
}

pub const V4_B1: usize = 1;
pub const V4_B2: usize = 2;
pub const V4_B1B2: usize = 3;

/// ℤ/2 with elements `1, gamma`, the usual choice of Γ.
pub fn z2_gamma() -> FiniteGroup {
    FiniteGroup::cyclic(2)
        .with_names(vec!["1".into(), "gamma".into()])
        .expect("names")
}

/// S₃ as permutations of {0,1,2} in lexicographic order, composed as maps.
pub fn s3() -> FiniteGroup {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("perm");
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| index([p[q[0]], p[q[1]], p[q[2]]]))
                .collect()
        })
        .collect();
    FiniteGroup::from_table(table, None).expect("S3 table")
}

fn trivial_z2(group: FiniteGroup) -> GammaGroup {
    GammaGroup::trivial_action(z2_gamma(), group)
}

/// Q₈ → V₄, Γ = ℤ/2 acting trivially, θ conjugation by lifts.
pub fn q8_to_v4() -> CrossedModule {
    let rho = GroupHom::new(&q8(), &v4(), (0..8).map(|x| x / 2).collect()).expect("quotient map");
    CrossedModule::from_central_quotient(trivial_z2(q8()), trivial_z2(v4()), rho).expect("Q8 -> V4")
}

/// Q₈ → V₄ with the commutator-of-lifts braiding.
pub fn q8_to_v4_braided() -> Braiding {
    commutator_braiding(&q8_to_v4()).expect("commutator braiding")
}

/// Q₈ → V₄ with Γ = ℤ/2 swapping `i` and `j` (hence `k ↦ -k`, `b1 ↔ b2`).
pub fn q8_to_v4_swap_braided() -> Braiding {
    let swap_q8 = vec![0, 1, 4, 5, 2, 3, 7, 6];
    let swap_v4 = vec![0, 2, 1, 3];
    let a = GammaGroup::new(z2_gamma(), q8(), vec![(0..8).collect(), swap_q8]).expect("action");
    let g = GammaGroup::new(z2_gamma(), v4(), vec![(0..4).collect(), swap_v4]).expect("action");
    let rho = GroupHom::new(&q8(), &v4(), (0..8).map(|x| x / 2).collect()).expect("quotient map");
    let cm = CrossedModule::from_central_quotient(a, g, rho).expect("Q8 -> V4");
    commutator_braiding(&cm).expect("commutator braiding")
}

/// Q₈ → V₄ over the trivial Γ.
pub fn q8_to_v4_trivial_gamma() -> Braiding {
    let gamma = FiniteGroup::trivial();
    let a = GammaGroup::trivial_action(gamma.clone(), q8());
    let g = GammaGroup::trivial_action(gamma, v4());
    let rho = GroupHom::new(&q8(), &v4(), (0..8).map(|x| x / 2).collect()).expect("quotient map");
    let cm = CrossedModule::from_central_quotient(a, g, rho).expect("Q8 -> V4");
    commutator_braiding(&cm).expect("commutator braiding")
}

/// 1 → V₄, Γ = ℤ/2 trivial, with the trivial braiding.
pub fn one_to_v4() -> Braiding {
    Braiding::trivial(CrossedModule::trivial_over(trivial_z2(v4())))
}

/// ℤ/2 → 1, Γ = ℤ/2 trivial.
pub fn z2_to_one() -> Braiding {
    Braiding::trivial(CrossedModule::to_trivial(trivial_z2(FiniteGroup::cyclic(
        2,
    ))))
}

/// A₃ ↪ S₃, Γ = ℤ/2 acting by conjugation with a transposition, braiding
/// `{g, g'} = [g, g']` read in A₃.
pub fn a3_to_s3() -> Braiding {
    let s3 = s3();
    let a3 = vec![0, 3, 4];
    let (a3_group, emb) = s3.subgroup(&a3).expect("A3");
    let t = 1;
    let conj_s3: Vec<usize> = s3.elements().map(|x| s3.conj(t, x)).collect();
    let conj_a3: Vec<usize> = a3_group
        .elements()
        .map(|x| {
            emb.iter()
                .position(|&y| y == s3.conj(t, emb[x]))
                .expect("normal")
        })
        .collect();
    let id3: Vec<usize> = (0..3).collect();
    let id6: Vec<usize> = (0..6).collect();
    let a = GammaGroup::new(z2_gamma(), a3_group.clone(), vec![id3, conj_a3]).expect("action");
    let g = GammaGroup::new(z2_gamma(), s3.clone(), vec![id6, conj_s3]).expect("action");
    let rho = GroupHom::new(&a3_group, &s3, emb.clone()).expect("inclusion");
    let cm = CrossedModule::from_normal_inclusion(a, g, rho).expect("A3 -> S3");
    let pairing = s3
        .elements()
        .map(|x| {
            s3.elements()
                .map(|y| {
                    emb.iter()
                        .position(|&z| z == s3.commutator(x, y))
                        .expect("[S3,S3] = A3")
                })
                .collect()
        })
        .collect();
    Braiding::new(cm, pairing).expect("pairing")
}

/// S₃ → S₃ identity with the commutator braiding, Γ = ℤ/2 trivial.
pub fn s3_identity() -> Braiding {
    let s3 = s3();
    let rho = GroupHom::identity(&s3);
    let cm = CrossedModule::from_central_quotient(trivial_z2(s3.clone()), trivial_z2(s3), rho)
        .expect("identity crossed module");
    commutator_braiding(&cm).expect("commutator braiding")
}

/// Every shipped braided crossed-module fixture, by name.
pub fn braided_fixtures() -> Vec<(&'static str, Braiding)> {
    vec![
        ("q8_v4", q8_to_v4_braided()),
        ("q8_v4_swap", q8_to_v4_swap_braided()),
        ("q8_v4_trivial_gamma", q8_to_v4_trivial_gamma()),
        ("one_v4", one_to_v4()),
        ("z2_one", z2_to_one()),
        ("a3_s3", a3_to_s3()),
        ("s3_identity", s3_identity()),
    ]
}

/// (1 → V₄) → (Q₈ → V₄): identity on V₄.
pub fn inclusion_one_v4() -> CrossedMorphism {
    let source = one_to_v4().cm().clone();
    let target = q8_to_v4();
    CrossedMorphism::new(source, target, vec![0], (0..4).collect()).expect("inclusion")
}

/// (ℤ/2 → 1) → (Q₈ → V₄) onto the kernel {±1}; a quasi-isomorphism.
pub fn kernel_inclusion() -> CrossedMorphism {
    let source = z2_to_one().cm().clone();
    let target = q8_to_v4();
    CrossedMorphism::new(source, target, vec![0, Q8_MINUS_ONE], vec![0]).expect("kernel inclusion")
}

/// Every shipped morphism fixture, by name.
pub fn morphism_fixtures() -> Vec<(&'static str, CrossedMorphism)> {
    vec![
        ("one_v4_into_q8_v4", inclusion_one_v4()),
        ("z2_one_into_q8_v4", kernel_inclusion()),
        ("q8_v4_identity", CrossedMorphism::identity(&q8_to_v4())),
        (
            "q8_v4_to_terminal",
            CrossedMorphism::to_terminal(&q8_to_v4()),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    // Quaternion units as (sign, axis) with axis 0..4 for 1, i, j, k.
    fn quat_mul(a: (bool, usize), b: (bool, usize)) -> (bool, usize) {
        let (neg, axis) = match (a.1, b.1) {
            (0, x) => (false, x),
            (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        };
        (neg ^ a.0 ^ b.0, axis)
    }

    #[test]
    fn q8_table_matches_quaternion_arithmetic() {
        let g = q8();
        let decode = |x: usize| (x % 2 == 1, x / 2);
        let encode = |(neg, axis): (bool, usize)| 2 * axis + usize::from(neg);
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(g.mul(x, y), encode(quat_mul(decode(x), decode(y))));
            }
        }
        assert_eq!(g.center(), vec![0, 1]);
    }

    #[test]
    fn v4_is_quotient_of_q8() {
        let (quot, proj) = q8().quotient(&[0, 1]).unwrap();
        assert_eq!(quot.table_rows(), v4().table_rows());
        assert_eq!(proj, (0..8).map(|x| x / 2).collect::<Vec<_>>());
    }

    #[test]
    fn s3_is_nonabelian_of_order_six() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.closure(&[3]), vec![0, 3, 4]);
    }
}
