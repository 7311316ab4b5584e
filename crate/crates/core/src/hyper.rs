//! Pointed hypercohomology `H⁰` and `H¹` of a crossed module by exhaustive
//! enumeration, the crossing map, induced maps, the long exact sequence and
//! quasi-isomorphism invariance.
//!
//! `C⁰` carries the plain product `(φ¹,g₁)(φ²,g₂) = (σ ↦ ^{g₁}φ²_σ·φ¹_σ, g₁g₂)`
//! and acts on `Z¹` from the right.

use std::collections::{BTreeSet, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{default_budget, Cochain0, Cochain1};
use crate::crossed::{CrossedModule, CrossedMorphism};
use crate::error::{bound_check, Error, Result};
use crate::gamma::GammaGroup;

/// Which of the two 1-cocycle identities fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CocycleCondition {
    Shape,
    /// `ρ(u_{σ,τ})·ψ_σ·^σψ_τ = ψ_{στ}`, indices `(σ, τ)`.
    Psi,
    /// `u_{σ,τν}·^{ψ_σ σ}u_{τ,ν} = u_{στ,ν}·u_{σ,τ}`, indices `(σ, τ, ν)`.
    U,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleViolation {
    pub condition: CocycleCondition,
    pub indices: Vec<usize>,
}

/// First violated 1-cocycle identity, scanning `(σ, τ)` and then
/// `(σ, τ, ν)` in index order.
pub fn cocycle1_violation(cm: &CrossedModule, c: &Cochain1) -> Option<CocycleViolation> {
    let (a, g, gamma) = (cm.a(), cm.g(), cm.gamma());
    let n = gamma.order();
    if c.psi.len() != n
        || c.u.len() != n * n
        || c.psi.iter().any(|&x| x >= g.order())
        || c.u.iter().any(|&x| x >= a.order())
    {
        return Some(CocycleViolation {
            condition: CocycleCondition::Shape,
            indices: vec![],
        });
    }
    for s in 0..n {
        for t in 0..n {
            let lhs = g.mul_all(&[cm.rho(c.u(s, t)), c.psi[s], cm.act_g(s, c.psi[t])]);
            if lhs != c.psi[gamma.mul(s, t)] {
                return Some(CocycleViolation {
                    condition: CocycleCondition::Psi,
                    indices: vec![s, t],
                });
            }
        }
    }
    for s in 0..n {
        for t in 0..n {
            for v in 0..n {
                let lhs = a.mul(
                    c.u(s, gamma.mul(t, v)),
                    cm.theta_after_gamma(c.psi[s], s, c.u(t, v)),
                );
                let rhs = a.mul(c.u(gamma.mul(s, t), v), c.u(s, t));
                if lhs != rhs {
                    return Some(CocycleViolation {
                        condition: CocycleCondition::U,
                        indices: vec![s, t, v],
                    });
                }
            }
        }
    }
    None
}

pub fn is_cocycle1(cm: &CrossedModule, c: &Cochain1) -> bool {
    cocycle1_violation(cm, c).is_none()
}

/// `z * (φ, g)`: `u'_{σ,τ} = ^{g⁻¹}(φ_{στ}·u_{σ,τ}·^{ψ_σ σ}φ_τ⁻¹·φ_σ⁻¹)`,
/// `ψ'_σ = g⁻¹·ρ(φ_σ)·ψ_σ·^σg`.
pub fn act_c0(cm: &CrossedModule, z: &Cochain1, c: &Cochain0) -> Cochain1 {
    let (a, g, gamma) = (cm.a(), cm.g(), cm.gamma());
    let n = gamma.order();
    let g_inv = g.inv(c.g);
    let mut u = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            let inner = a.mul_all(&[
                c.phi[gamma.mul(s, t)],
                z.u(s, t),
                cm.theta_after_gamma(z.psi[s], s, a.inv(c.phi[t])),
                a.inv(c.phi[s]),
            ]);
            u.push(cm.theta(g_inv, inner));
        }
    }
    let psi = (0..n)
        .map(|s| g.mul_all(&[g_inv, cm.rho(c.phi[s]), z.psi[s], cm.act_g(s, c.g)]))
        .collect();
    Cochain1 { u, psi }
}

/// Plain product on `C⁰`.
pub fn c0_mul_plain(cm: &CrossedModule, x: &Cochain0, y: &Cochain0) -> Cochain0 {
    let a = cm.a();
    Cochain0 {
        phi: x
            .phi
            .iter()
            .zip(&y.phi)
            .map(|(&p1, &p2)| a.mul(cm.theta(x.g, p2), p1))
            .collect(),
        g: cm.g().mul(x.g, y.g),
    }
}

pub fn c0_inv_plain(cm: &CrossedModule, x: &Cochain0) -> Cochain0 {
    let (a, g) = (cm.a(), cm.g());
    let g_inv = g.inv(x.g);
    Cochain0 {
        phi: x.phi.iter().map(|&p| cm.theta(g_inv, a.inv(p))).collect(),
        g: g_inv,
    }
}

/// `|C⁰| = |A|^|Γ|·|G|`, saturating.
pub fn c0_count(cm: &CrossedModule) -> u128 {
    let n = cm.gamma().order() as u32;
    (cm.a().order() as u128)
        .saturating_pow(n)
        .saturating_mul(cm.g().order() as u128)
}

/// The `idx`-th 0-cochain in lexicographic order of `(φ, g)`.
pub fn c0_from_index(cm: &CrossedModule, mut idx: u128) -> Cochain0 {
    let (na, ng) = (cm.a().order() as u128, cm.g().order() as u128);
    let n = cm.gamma().order();
    let g = (idx % ng) as usize;
    idx /= ng;
    let mut phi = vec![0; n];
    for s in (0..n).rev() {
        phi[s] = (idx % na) as usize;
        idx /= na;
    }
    Cochain0 { phi, g }
}

/// The 0-coboundary `(σ ↦ s⁻¹·^σs, ρ(s)⁻¹)`.
pub fn coboundary0(cm: &CrossedModule, s: usize) -> Cochain0 {
    let a = cm.a();
    Cochain0 {
        phi: cm
            .gamma()
            .elements()
            .map(|t| a.mul(a.inv(s), cm.act_a(t, s)))
            .collect(),
        g: cm.g().inv(cm.rho(s)),
    }
}

/// Generators of `C⁰` under the plain product: single-point `φ` with values
/// in a generating set of `A`, and `(1, g)` for generators `g` of `G`.
pub fn c0_generators(cm: &CrossedModule) -> Vec<Cochain0> {
    let (a, g) = (cm.a(), cm.g());
    let n = cm.gamma().order();
    let mut gens = Vec::new();
    for s in 0..n {
        for x in a.generators() {
            let mut c = Cochain0::identity(n, a.identity(), g.identity());
            c.phi[s] = x;
            gens.push(c);
        }
    }
    for x in g.generators() {
        let mut c = Cochain0::identity(n, a.identity(), g.identity());
        c.g = x;
        gens.push(c);
    }
    gens
}

struct WorkCounter<'a> {
    used: &'a AtomicU64,
    budget: u128,
}

impl WorkCounter<'_> {
    fn tick(&self) -> bool {
        (self.used.fetch_add(1, Ordering::Relaxed) as u128) < self.budget
    }
}

fn exceeded(what: &str, used: &AtomicU64, budget: u128) -> Error {
    Error::BoundExceeded {
        what: what.into(),
        needed: (used.load(Ordering::Relaxed) as u128).max(budget + 1),
        budget,
    }
}

/// All 1-cocycles, sorted. Work is counted in search nodes.
///
/// `ψ` is enumerated first; each pair `(σ, τ)` then restricts `u_{σ,τ}` to
/// the fiber of `ρ` over `ψ_{στ}·(^σψ_τ)⁻¹·ψ_σ⁻¹`, and the second identity
/// is checked as soon as all four entries it involves are assigned.
pub fn enumerate_z1(cm: &CrossedModule, budget: u128) -> Result<Vec<Cochain1>> {
    let (a, g, gamma) = (cm.a(), cm.g(), cm.gamma());
    let n = gamma.order();
    let mut fiber: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    for s in a.elements() {
        fiber[cm.rho(s)].push(s);
    }
    let used = AtomicU64::new(0);
    let counter = WorkCounter {
        used: &used,
        budget,
    };

    // ψ search: pair (σ, τ) is checked once max(σ, τ, στ) is assigned.
    let mut pairs_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for s in 0..n {
        for t in 0..n {
            pairs_at[s.max(t).max(gamma.mul(s, t))].push((s, t));
        }
    }
    let target = |psi: &[usize], s: usize, t: usize| -> usize {
        g.mul_all(&[
            psi[gamma.mul(s, t)],
            g.inv(cm.act_g(s, psi[t])),
            g.inv(psi[s]),
        ])
    };
    let mut psis = Vec::new();
    let mut psi = vec![0; n];
    let mut ok = true;
    fn psi_search(
        k: usize,
        psi: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        ctx: &dyn Fn(&[usize], usize) -> bool,
        g_order: usize,
        counter: &WorkCounter,
        ok: &mut bool,
    ) {
        if !*ok {
            return;
        }
        if k == psi.len() {
            out.push(psi.clone());
            return;
        }
        for x in 0..g_order {
            if !counter.tick() {
                *ok = false;
                return;
            }
            psi[k] = x;
            if ctx(psi, k) {
                psi_search(k + 1, psi, out, ctx, g_order, counter, ok);
            }
        }
    }
    let ctx = |psi: &[usize], k: usize| -> bool {
        pairs_at[k]
            .iter()
            .all(|&(s, t)| !fiber[target(psi, s, t)].is_empty())
    };
    if n > 0 {
        psi_search(0, &mut psi, &mut psis, &ctx, g.order(), &counter, &mut ok);
    }
    if !ok {
        return Err(exceeded(
            "1-cocycle enumeration (search nodes)",
            &used,
            budget,
        ));
    }

    // u search: triple (σ, τ, ν) touches pairs (σ,τν), (τ,ν), (στ,ν), (σ,τ).
    let mut triples_at: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n * n];
    for s in 0..n {
        for t in 0..n {
            for v in 0..n {
                let ps = [
                    s * n + gamma.mul(t, v),
                    t * n + v,
                    gamma.mul(s, t) * n + v,
                    s * n + t,
                ];
                triples_at[*ps.iter().max().expect("four pairs")].push((s, t, v));
            }
        }
    }

    let results: Vec<Option<Vec<Cochain1>>> = psis
        .par_iter()
        .map(|psi| {
            let fibers: Vec<&[usize]> = (0..n * n)
                .map(|p| fiber[target(psi, p / n, p % n)].as_slice())
                .collect();
            let mut found = Vec::new();
            let mut u = vec![0; n * n];
            let good = u_search(
                0,
                &mut u,
                &fibers,
                &triples_at,
                psi,
                cm,
                &counter,
                &mut found,
            );
            good.then_some(found)
        })
        .collect();
    let mut z1 = Vec::new();
    for r in results {
        match r {
            Some(v) => z1.extend(v),
            None => {
                return Err(exceeded(
                    "1-cocycle enumeration (search nodes)",
                    &used,
                    budget,
                ))
            }
        }
    }
    z1.sort();
    Ok(z1)
}

#[allow(clippy::too_many_arguments)]
fn u_search(
    p: usize,
    u: &mut Vec<usize>,
    fibers: &[&[usize]],
    triples_at: &[Vec<(usize, usize, usize)>],
    psi: &[usize],
    cm: &CrossedModule,
    counter: &WorkCounter,
    found: &mut Vec<Cochain1>,
) -> bool {
    if p == u.len() {
        found.push(Cochain1 {
            u: u.clone(),
            psi: psi.to_vec(),
        });
        return true;
    }
    let (a, gamma) = (cm.a(), cm.gamma());
    let n = psi.len();
    for &x in fibers[p] {
        if !counter.tick() {
            return false;
        }
        u[p] = x;
        let consistent = triples_at[p].iter().all(|&(s, t, v)| {
            let lhs = a.mul(
                u[s * n + gamma.mul(t, v)],
                cm.theta_after_gamma(psi[s], s, u[t * n + v]),
            );
            lhs == a.mul(u[gamma.mul(s, t) * n + v], u[s * n + t])
        });
        if consistent && !u_search(p + 1, u, fibers, triples_at, psi, cm, counter, found) {
            return false;
        }
    }
    true
}

/// One class of `H¹`: its least member and orbit size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Class {
    pub representative: Cochain1,
    pub orbit_size: usize,
}

/// `Z¹` with its decomposition into `C⁰`-orbits.
#[derive(Clone, Debug)]
pub struct H1Set {
    z1: Vec<Cochain1>,
    index: HashMap<Cochain1, usize>,
    class_of: Vec<usize>,
    classes: Vec<H1Class>,
    distinguished: usize,
}

impl H1Set {
    pub fn z1(&self) -> &[Cochain1] {
        &self.z1
    }
    pub fn classes(&self) -> &[H1Class] {
        &self.classes
    }
    pub fn len(&self) -> usize {
        self.classes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
    /// Class of the orbit of `(1, 1)`.
    pub fn distinguished(&self) -> usize {
        self.distinguished
    }
    pub fn index_of(&self, z: &Cochain1) -> Option<usize> {
        self.index.get(z).copied()
    }
    /// Class of the `i`-th element of `Z¹`.
    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i]
    }
    pub fn class_of(&self, z: &Cochain1) -> Option<usize> {
        self.index_of(z).map(|i| self.class_of[i])
    }
    pub fn members(&self, class: usize) -> Vec<usize> {
        (0..self.z1.len())
            .filter(|&i| self.class_of[i] == class)
            .collect()
    }
    pub fn representative(&self, class: usize) -> &Cochain1 {
        &self.classes[class].representative
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Pointed `H¹(Γ, A → G)` with the default budget.
pub fn h1_pointed(cm: &CrossedModule) -> Result<H1Set> {
    h1_pointed_with(cm, default_budget())
}

pub fn h1_pointed_with(cm: &CrossedModule, budget: u128) -> Result<H1Set> {
    let z1 = enumerate_z1(cm, budget)?;
    let index: HashMap<Cochain1, usize> = z1
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, z)| (z, i))
        .collect();
    let gens = c0_generators(cm);
    bound_check(
        "orbit computation (actions)",
        (z1.len() as u128).saturating_mul(gens.len() as u128),
        budget,
    )?;
    let images: Vec<Vec<usize>> = z1
        .par_iter()
        .map(|z| {
            gens.iter()
                .map(|c| index.get(&act_c0(cm, z, c)).copied().unwrap_or(usize::MAX))
                .collect()
        })
        .collect();
    let mut parent: Vec<usize> = (0..z1.len()).collect();
    for (i, imgs) in images.iter().enumerate() {
        for &j in imgs {
            if j == usize::MAX {
                return Err(Error::StructureFailure(
                    "the C⁰-action leaves Z¹; the crossed-module axioms fail".into(),
                ));
            }
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut class_of = vec![usize::MAX; z1.len()];
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<H1Class> = Vec::new();
    for i in 0..z1.len() {
        let r = find(&mut parent, i);
        let c = *root_class.entry(r).or_insert_with(|| {
            classes.push(H1Class {
                representative: z1[i].clone(),
                orbit_size: 0,
            });
            classes.len() - 1
        });
        class_of[i] = c;
        classes[c].orbit_size += 1;
    }
    let one = Cochain1::identity(cm.gamma().order(), cm.a().identity(), cm.g().identity());
    let distinguished = class_of[index[&one]];
    Ok(H1Set {
        z1,
        index,
        class_of,
        classes,
        distinguished,
    })
}

/// The orbit of `z` computed by acting with every element of `C⁰`; an
/// oracle for the generator-based orbit computation.
pub fn orbit_full(cm: &CrossedModule, z: &Cochain1, budget: u128) -> Result<BTreeSet<Cochain1>> {
    let total = c0_count(cm);
    bound_check("full C⁰ orbit", total, budget)?;
    Ok((0..total)
        .map(|i| act_c0(cm, z, &c0_from_index(cm, i)))
        .collect())
}

/// `ψ_{στ} = ψ_σ·^σψ_τ` for all `σ, τ`.
pub fn is_group_cocycle(g: &GammaGroup, psi: &[usize]) -> bool {
    let gamma = g.gamma();
    psi.len() == gamma.order()
        && psi.iter().all(|&x| x < g.group().order())
        && gamma.elements().all(|s| {
            gamma
                .elements()
                .all(|t| psi[gamma.mul(s, t)] == g.group().mul(psi[s], g.act(s, psi[t])))
        })
}

/// `cr¹`: class of `(1, ψ)` for a `G`-valued 1-cocycle `ψ`.
pub fn cr1(cm: &CrossedModule, h1: &H1Set, psi: &[usize]) -> Result<usize> {
    if !is_group_cocycle(cm.gamma_g(), psi) {
        return Err(Error::NotACocycle(format!(
            "ψ = {psi:?} is not a G-valued 1-cocycle"
        )));
    }
    let z = Cochain1::from_psi(psi.to_vec(), cm.a().identity());
    h1.class_of(&z)
        .ok_or_else(|| Error::StructureFailure("(1, ψ) missing from Z¹".into()))
}

pub fn map_cochain1(m: &CrossedMorphism, z: &Cochain1) -> Cochain1 {
    Cochain1 {
        u: z.u.iter().map(|&x| m.fa(x)).collect(),
        psi: z.psi.iter().map(|&x| m.fg(x)).collect(),
    }
}

pub fn map_cochain0(m: &CrossedMorphism, c: &Cochain0) -> Cochain0 {
    Cochain0 {
        phi: c.phi.iter().map(|&x| m.fa(x)).collect(),
        g: m.fg(c.g),
    }
}

/// Map on `H¹` classes induced by `m`. Every element of every source orbit
/// is mapped, so a representative-dependent result is reported as an error.
pub fn h1_induced(m: &CrossedMorphism, source: &H1Set, target: &H1Set) -> Result<Vec<usize>> {
    let mut map = vec![usize::MAX; source.len()];
    for (i, z) in source.z1().iter().enumerate() {
        let img = map_cochain1(m, z);
        let c = target.class_of(&img).ok_or_else(|| {
            Error::StructureFailure("image of a 1-cocycle is not a 1-cocycle".into())
        })?;
        let slot = &mut map[source.class_of_index(i)];
        if *slot == usize::MAX {
            *slot = c;
        } else if *slot != c {
            return Err(Error::StructureFailure(format!(
                "induced map depends on the representative of class {}",
                source.class_of_index(i)
            )));
        }
    }
    Ok(map)
}

/// `H⁰ = Z⁰/B⁰` with
/// `Z⁰ = {(φ, g) : φ_{στ} = φ_σ·^σφ_τ, ρ(φ_σ)·^σg = g}` and
/// `B⁰ = {(σ ↦ s⁻¹·^σs, ρ(s)⁻¹)}`.
#[derive(Clone, Debug)]
pub struct H0Set {
    z0: Vec<Cochain0>,
    index: HashMap<Cochain0, usize>,
    class_of: Vec<usize>,
    representatives: Vec<usize>,
    distinguished: usize,
}

impl H0Set {
    pub fn z0(&self) -> &[Cochain0] {
        &self.z0
    }
    pub fn len(&self) -> usize {
        self.representatives.len()
    }
    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
    pub fn distinguished(&self) -> usize {
        self.distinguished
    }
    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i]
    }
    pub fn class_of(&self, c: &Cochain0) -> Option<usize> {
        self.index.get(c).map(|&i| self.class_of[i])
    }
    pub fn representative(&self, class: usize) -> &Cochain0 {
        &self.z0[self.representatives[class]]
    }
}

pub fn h0(cm: &CrossedModule) -> Result<H0Set> {
    h0_with(cm, default_budget())
}

pub fn h0_with(cm: &CrossedModule, budget: u128) -> Result<H0Set> {
    let (a, g, gamma) = (cm.a(), cm.g(), cm.gamma());
    let n = gamma.order();
    let mut at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for s in 0..n {
        for t in 0..n {
            at[s.max(t).max(gamma.mul(s, t))].push((s, t));
        }
    }
    let mut phis = Vec::new();
    let mut phi = vec![0; n];
    let mut work: u128 = 0;
    fn search(
        k: usize,
        phi: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cm: &CrossedModule,
        at: &[Vec<(usize, usize)>],
        work: &mut u128,
        budget: u128,
    ) -> bool {
        if k == phi.len() {
            out.push(phi.clone());
            return true;
        }
        let (a, gamma) = (cm.a(), cm.gamma());
        for x in a.elements() {
            *work += 1;
            if *work > budget {
                return false;
            }
            phi[k] = x;
            let ok = at[k]
                .iter()
                .all(|&(s, t)| phi[gamma.mul(s, t)] == a.mul(phi[s], cm.act_a(s, phi[t])));
            if ok && !search(k + 1, phi, out, cm, at, work, budget) {
                return false;
            }
        }
        true
    }
    if n > 0 && !search(0, &mut phi, &mut phis, cm, &at, &mut work, budget) {
        return Err(Error::BoundExceeded {
            what: "0-cocycle enumeration (search nodes)".into(),
            needed: work,
            budget,
        });
    }
    let mut z0 = Vec::new();
    for phi in phis {
        for x in g.elements() {
            if (0..n).all(|s| g.mul(cm.rho(phi[s]), cm.act_g(s, x)) == x) {
                z0.push(Cochain0 {
                    phi: phi.clone(),
                    g: x,
                });
            }
        }
    }
    z0.sort();
    let index: HashMap<Cochain0, usize> = z0
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let mut b0: Vec<Cochain0> = a.elements().map(|s| coboundary0(cm, s)).collect();
    b0.sort();
    b0.dedup();
    let mut class_of = vec![usize::MAX; z0.len()];
    let mut representatives = Vec::new();
    for i in 0..z0.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(i);
        for b in &b0 {
            let j = *index
                .get(&c0_mul_plain(cm, &z0[i], b))
                .ok_or_else(|| Error::StructureFailure("Z⁰·B⁰ leaves Z⁰".into()))?;
            class_of[j] = c;
        }
    }
    let one = Cochain0::identity(n, a.identity(), g.identity());
    let distinguished = class_of[index[&one]];
    Ok(H0Set {
        z0,
        index,
        class_of,
        representatives,
        distinguished,
    })
}

pub fn h0_induced(m: &CrossedMorphism, source: &H0Set, target: &H0Set) -> Result<Vec<usize>> {
    let mut map = vec![usize::MAX; source.len()];
    for (i, c) in source.z0().iter().enumerate() {
        let img = target.class_of(&map_cochain0(m, c)).ok_or_else(|| {
            Error::StructureFailure("image of a 0-cocycle is not a 0-cocycle".into())
        })?;
        let slot = &mut map[source.class_of_index(i)];
        if *slot == usize::MAX {
            *slot = img;
        } else if *slot != img {
            return Err(Error::StructureFailure(
                "induced map on H⁰ is not well defined".into(),
            ));
        }
    }
    Ok(map)
}

/// One junction of the exact sequence.
#[derive(Clone, Debug, Serialize)]
pub struct Junction {
    pub name: String,
    pub exact: bool,
    pub witness: Option<String>,
}

/// Sizes of the six terms and the verdict at each junction of
/// `H⁰(A) → H⁰(G) → H⁰(A→G) → H¹(A) → H¹(G) → H¹(A→G)`.
#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub term_sizes: Vec<usize>,
    pub junctions: Vec<Junction>,
}

impl ExactnessReport {
    pub fn all_exact(&self) -> bool {
        self.junctions.iter().all(|j| j.exact)
    }

    /// The first failing junction as an [`Error::ExactnessFailure`].
    pub fn ensure_exact(&self) -> Result<()> {
        match self.junctions.iter().find(|j| !j.exact) {
            None => Ok(()),
            Some(j) => Err(Error::ExactnessFailure {
                junction: j.name.clone(),
                witness: j.witness.clone().unwrap_or_default(),
            }),
        }
    }
}

/// Exactness at the middle term of `P --f--> X --h--> Y` of pointed sets.
fn junction(name: &str, f: &[usize], h: &[usize], x_size: usize, y_point: usize) -> Junction {
    let image: BTreeSet<usize> = f.iter().copied().collect();
    let kernel: BTreeSet<usize> = (0..x_size).filter(|&x| h[x] == y_point).collect();
    let witness = image.symmetric_difference(&kernel).next().map(|&x| {
        if image.contains(&x) {
            format!("class {x} is in the image but not in the kernel")
        } else {
            format!("class {x} is in the kernel but not in the image")
        }
    });
    Junction {
        name: name.into(),
        exact: witness.is_none(),
        witness,
    }
}

/// `(1 → A)`, whose `H⁰`/`H¹` are the usual `H⁰(Γ, A)`/`H¹(Γ, A)`.
pub fn as_coefficients(x: &GammaGroup) -> CrossedModule {
    CrossedModule::trivial_over(x.clone())
}

/// Builds the six terms and checks exactness at the four inner junctions.
/// `δ[φ, g]` is the class of `σ ↦ φ_σ` in `H¹(Γ, A)`.
pub fn check_exact_sequence(cm: &CrossedModule) -> Result<ExactnessReport> {
    check_exact_sequence_with(cm, default_budget())
}

pub fn check_exact_sequence_with(cm: &CrossedModule, budget: u128) -> Result<ExactnessReport> {
    let ca = as_coefficients(cm.gamma_a());
    let cg = as_coefficients(cm.gamma_g());
    let rho_star = CrossedMorphism::new(ca.clone(), cg.clone(), vec![0], cm.rho_table().to_vec())?;
    let cross = CrossedMorphism::new(
        cg.clone(),
        cm.clone(),
        vec![cm.a().identity()],
        cm.g().elements().collect(),
    )?;

    let (h0a, h0g, h0c) = (
        h0_with(&ca, budget)?,
        h0_with(&cg, budget)?,
        h0_with(cm, budget)?,
    );
    let (h1a, h1g, h1c) = (
        h1_pointed_with(&ca, budget)?,
        h1_pointed_with(&cg, budget)?,
        h1_pointed_with(cm, budget)?,
    );

    let rho0 = h0_induced(&rho_star, &h0a, &h0g)?;
    let cr0 = h0_induced(&cross, &h0g, &h0c)?;
    let rho1 = h1_induced(&rho_star, &h1a, &h1g)?;
    let cr1_map = h1_induced(&cross, &h1g, &h1c)?;

    let mut delta = vec![usize::MAX; h0c.len()];
    let mut delta_defined = true;
    for (i, c) in h0c.z0().iter().enumerate() {
        let z = Cochain1 {
            u: vec![0; c.phi.len() * c.phi.len()],
            psi: c.phi.clone(),
        };
        let Some(k) = h1a.class_of(&z) else {
            delta_defined = false;
            continue;
        };
        let slot = &mut delta[h0c.class_of_index(i)];
        if *slot == usize::MAX {
            *slot = k;
        } else if *slot != k {
            delta_defined = false;
        }
    }

    let mut junctions = vec![junction(
        "H0(G)",
        &rho0,
        &cr0,
        h0g.len(),
        h0c.distinguished(),
    )];
    if delta_defined {
        junctions.push(junction(
            "H0(A->G)",
            &cr0,
            &delta,
            h0c.len(),
            h1a.distinguished(),
        ));
        junctions.push(junction(
            "H1(A)",
            &delta,
            &rho1,
            h1a.len(),
            h1g.distinguished(),
        ));
    } else {
        for name in ["H0(A->G)", "H1(A)"] {
            junctions.push(Junction {
                name: name.into(),
                exact: false,
                witness: Some("connecting map is not well defined on classes".into()),
            });
        }
    }
    junctions.push(junction(
        "H1(G)",
        &rho1,
        &cr1_map,
        h1g.len(),
        h1c.distinguished(),
    ));

    Ok(ExactnessReport {
        term_sizes: vec![
            h0a.len(),
            h0g.len(),
            h0c.len(),
            h1a.len(),
            h1g.len(),
            h1c.len(),
        ],
        junctions,
    })
}

/// `true` iff `f_A: ker ρ₁ → ker ρ₂` and `f_G: coker ρ₁ → coker ρ₂` are
/// bijective.
pub fn check_quasi_iso(m: &CrossedMorphism) -> bool {
    let (s, t) = (m.source(), m.target());
    let (ks, kt) = (s.kernel(), t.kernel());
    let mut hit: BTreeSet<usize> = BTreeSet::new();
    for &k in &ks {
        if !hit.insert(m.fa(k)) {
            return false;
        }
    }
    if hit.len() != kt.len() || !hit.iter().all(|x| kt.binary_search(x).is_ok()) {
        return false;
    }
    let (is, it) = (s.image(), t.image());
    // injective on cokernels: f_G(g) ∈ im ρ₂ ⇒ g ∈ im ρ₁
    let injective = s
        .g()
        .elements()
        .all(|x| it.binary_search(&m.fg(x)).is_err() || is.binary_search(&x).is_ok());
    // surjective on cokernels: f_G(G₁)·im ρ₂ = G₂
    let mut covered = vec![false; t.g().order()];
    for x in s.g().elements() {
        for &y in &it {
            covered[t.g().mul(m.fg(x), y)] = true;
        }
    }
    injective && covered.into_iter().all(|c| c)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiIsoReport {
    pub quasi_iso: bool,
    pub source_classes: usize,
    pub target_classes: usize,
    pub class_map: Vec<usize>,
    pub h1_bijective: bool,
}

impl QuasiIsoReport {
    /// A quasi-isomorphism must induce a bijection on `H¹`.
    pub fn passed(&self) -> bool {
        !self.quasi_iso || self.h1_bijective
    }
}

pub fn h1_bijective_under_quasi_iso(m: &CrossedMorphism) -> Result<QuasiIsoReport> {
    let source = h1_pointed(m.source())?;
    let target = h1_pointed(m.target())?;
    let class_map = h1_induced(m, &source, &target)?;
    let distinct: BTreeSet<usize> = class_map.iter().copied().collect();
    Ok(QuasiIsoReport {
        quasi_iso: check_quasi_iso(m),
        source_classes: source.len(),
        target_classes: target.len(),
        h1_bijective: distinct.len() == class_map.len() && distinct.len() == target.len(),
        class_map,
    })
}
