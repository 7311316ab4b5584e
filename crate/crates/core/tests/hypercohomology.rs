use std::collections::{BTreeMap, BTreeSet};

use crossedcoh::braided::h1_abelian;
use crossedcoh::cochain::{Cochain0, Cochain1};
use crossedcoh::crossed::CrossedModule;
use crossedcoh::fixtures::{self, Q8_I, Q8_MINUS_ONE, V4_B1, V4_B1B2};
use crossedcoh::hyper::{act_c0, coboundary0, cr1, enumerate_z1, h1_pointed, is_cocycle1};

// Cocycle identities written out directly on the tables:
//   ρ(u_{s,t}) ψ_s ^s ψ_t = ψ_{st}
//   u_{s,tv} · ^{ψ_s}(^s u_{t,v}) = u_{st,v} · u_{s,t}
fn brute_is_cocycle(cm: &CrossedModule, u: &[usize], psi: &[usize]) -> bool {
    let (a, g, gm) = (cm.a(), cm.g(), cm.gamma());
    let n = gm.order();
    let u = |s: usize, t: usize| u[s * n + t];
    for s in 0..n {
        for t in 0..n {
            let lhs = g.mul(g.mul(cm.rho(u(s, t)), psi[s]), cm.act_g(s, psi[t]));
            if lhs != psi[gm.mul(s, t)] {
                return false;
            }
            for v in 0..n {
                let l = a.mul(u(s, gm.mul(t, v)), cm.theta(psi[s], cm.act_a(s, u(t, v))));
                let r = a.mul(u(gm.mul(s, t), v), u(s, t));
                if l != r {
                    return false;
                }
            }
        }
    }
    true
}

// Odometer over all tuples with the given per-slot bounds.
fn tuples(bounds: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = bounds.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0; bounds.len()];
    for _ in 0..total {
        out.push(cur.clone());
        for (c, &b) in cur.iter_mut().zip(bounds).rev() {
            *c += 1;
            if *c < b {
                break;
            }
            *c = 0;
        }
    }
    out
}

fn brute_z1(cm: &CrossedModule) -> BTreeSet<Cochain1> {
    let n = cm.gamma().order();
    let mut bounds = vec![cm.a().order(); n * n];
    bounds.extend(std::iter::repeat(cm.g().order()).take(n));
    tuples(&bounds)
        .into_iter()
        .filter(|t| brute_is_cocycle(cm, &t[..n * n], &t[n * n..]))
        .map(|t| Cochain1 {
            u: t[..n * n].to_vec(),
            psi: t[n * n..].to_vec(),
        })
        .collect()
}

fn all_c0(cm: &CrossedModule) -> Vec<Cochain0> {
    let n = cm.gamma().order();
    let mut bounds = vec![cm.a().order(); n];
    bounds.push(cm.g().order());
    tuples(&bounds)
        .into_iter()
        .map(|t| Cochain0 {
            phi: t[..n].to_vec(),
            g: t[n],
        })
        .collect()
}

// The C⁰ action written out independently of the library:
//   u' = ^{g⁻¹}(φ_{st} u_{s,t} ^{ψ_s}(^s φ_t⁻¹) φ_s⁻¹),  ψ' = g⁻¹ ρ(φ_s) ψ_s ^s g
fn brute_act(cm: &CrossedModule, z: &Cochain1, c: &Cochain0) -> Cochain1 {
    let (a, g, gm) = (cm.a(), cm.g(), cm.gamma());
    let n = gm.order();
    let gi = g.inv(c.g);
    let mut u = vec![];
    for s in 0..n {
        for t in 0..n {
            let x = a.mul(c.phi[gm.mul(s, t)], z.u[s * n + t]);
            let x = a.mul(x, cm.theta(z.psi[s], cm.act_a(s, a.inv(c.phi[t]))));
            u.push(cm.theta(gi, a.mul(x, a.inv(c.phi[s]))));
        }
    }
    let psi = (0..n)
        .map(|s| {
            g.mul(
                g.mul(g.mul(gi, cm.rho(c.phi[s])), z.psi[s]),
                cm.act_g(s, c.g),
            )
        })
        .collect();
    Cochain1 { u, psi }
}

/// Orbits of the full C⁰ action, as a map from cocycle to orbit id.
fn brute_orbits(cm: &CrossedModule, z1: &BTreeSet<Cochain1>) -> BTreeMap<Cochain1, usize> {
    let c0 = all_c0(cm);
    let mut id = BTreeMap::new();
    let mut next = 0;
    for z in z1 {
        if id.contains_key(z) {
            continue;
        }
        for c in &c0 {
            let w = brute_act(cm, z, c);
            assert!(z1.contains(&w), "action leaves Z1");
            id.insert(w, next);
        }
        next += 1;
    }
    id
}

fn identity1(cm: &CrossedModule) -> Cochain1 {
    Cochain1::identity(cm.gamma().order(), cm.a().identity(), cm.g().identity())
}

#[test]
fn pruned_search_matches_full_enumeration() {
    for (name, b) in fixtures::braided_fixtures() {
        let cm = b.cm();
        let brute = brute_z1(cm);
        let fast: BTreeSet<Cochain1> = enumerate_z1(cm, u128::MAX).unwrap().into_iter().collect();
        assert_eq!(fast, brute, "{name}");
        for z in &brute {
            assert!(is_cocycle1(cm, z), "{name}");
        }
    }
}

#[test]
fn h1_classes_match_brute_orbits() {
    for (name, b) in fixtures::braided_fixtures() {
        let cm = b.cm();
        let z1 = brute_z1(cm);
        let orbits = brute_orbits(cm, &z1);
        let h = h1_pointed(cm).unwrap();
        let count = orbits.values().collect::<BTreeSet<_>>().len();
        assert_eq!(h.len(), count, "{name}");
        // Same partition, not just the same number of parts.
        for x in &z1 {
            for y in &z1 {
                assert_eq!(
                    orbits[x] == orbits[y],
                    h.class_of(x) == h.class_of(y),
                    "{name}"
                );
            }
        }
        assert_eq!(
            h.class_of(&identity1(cm)),
            Some(h.distinguished()),
            "{name}"
        );
    }
}

#[test]
fn library_action_matches_formula() {
    let cm = fixtures::q8_to_v4_swap_braided().cm().clone();
    let z1 = brute_z1(&cm);
    let c0 = all_c0(&cm);
    for z in z1.iter().step_by(7) {
        for c in c0.iter().step_by(5) {
            assert_eq!(act_c0(&cm, z, c), brute_act(&cm, z, c));
        }
    }
}

#[test]
fn known_class_counts() {
    let count = |b: crossedcoh::crossed::Braiding| h1_pointed(b.cm()).unwrap().len();
    assert_eq!(count(fixtures::q8_to_v4_braided()), 2);
    assert_eq!(count(fixtures::one_to_v4()), 4);
    assert_eq!(count(fixtures::q8_to_v4_trivial_gamma()), 1);
    assert_eq!(count(fixtures::z2_to_one()), 2);
}

#[test]
fn cocycle_examples_on_q8_to_v4() {
    let cm = fixtures::q8_to_v4();
    let gamma = 1;
    let with = |uu: usize, psi: usize| {
        let mut z = identity1(&cm);
        z.u[gamma * 2 + gamma] = uu;
        z.psi[gamma] = psi;
        z
    };
    // ρ(u_{γ,γ}) ψ_γ ψ_γ = ψ_1 = 1 forces ρ(u_{γ,γ}) = 1.
    assert!(is_cocycle1(&cm, &with(Q8_MINUS_ONE, V4_B1)));
    assert!(is_cocycle1(&cm, &with(0, V4_B1)));
    assert!(!is_cocycle1(&cm, &with(Q8_I, V4_B1)));
    for uu in cm.a().elements() {
        let z = with(uu, V4_B1);
        assert_eq!(
            is_cocycle1(&cm, &z),
            brute_is_cocycle(&cm, &z.u, &z.psi),
            "u = {uu}"
        );
    }
}

#[test]
fn cr1_classes() {
    let cm = fixtures::q8_to_v4();
    let h = h1_pointed(&cm).unwrap();
    let trivial = cr1(&cm, &h, &[0, 0]).unwrap();
    assert_eq!(trivial, h.distinguished());
    let b1 = cr1(&cm, &h, &[0, V4_B1]).unwrap();
    let b1b2 = cr1(&cm, &h, &[0, V4_B1B2]).unwrap();
    assert_ne!(b1, h.distinguished());
    assert_eq!(b1, b1b2);
    // ψ_1 must be 1 for a group cocycle.
    assert!(cr1(&cm, &h, &[V4_B1, V4_B1]).is_err());
}

#[test]
fn coboundary_of_zero_cochain_fixes_the_identity() {
    for (name, b) in fixtures::braided_fixtures() {
        let cm = b.cm();
        let one = identity1(cm);
        for s in cm.a().elements() {
            let c = coboundary0(cm, s);
            assert_eq!(c.g, cm.g().inv(cm.rho(s)), "{name}");
            assert_eq!(act_c0(cm, &one, &c), one, "{name}: s = {s}");
        }
    }
}

#[test]
fn abelian_h1_of_one_to_v4_is_v4() {
    let ab = h1_abelian(&fixtures::one_to_v4()).unwrap();
    assert_eq!(ab.order(), 4);
    assert_eq!(ab.invariant_factors, vec![2, 2]);
    let ab = h1_abelian(&fixtures::q8_to_v4_braided()).unwrap();
    assert_eq!(ab.invariant_factors, vec![2]);
}
