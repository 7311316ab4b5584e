//! Band-valued nonabelian 2-cocycles, their neutrality, and the coboundary
//! `Δ: Z¹(Γ, A→G) → Z²(Γ, A, β)` detecting the image of `H¹(Γ, G)`.
//!
//! Automorphisms of `A` are indices into an [`OutData`]; composition is
//! `(f ∘ g)(x) = f(g(x))`.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cochain::{default_budget, Cochain0, Cochain1};
use crate::crossed::CrossedModule;
use crate::error::{bound_check, Error, Result};
use crate::group::FiniteGroup;
use crate::hyper::{act_c0, cocycle1_violation, h1_pointed_with, is_group_cocycle, H1Set};
use crate::out::{compute_out, OutData};
use crate::report::ValidationReport;

/// A Γ-kernel: a homomorphism `β: Γ → Out(A)`, stored as Out-class indices.
#[derive(Clone, Debug)]
pub struct Band {
    gamma: FiniteGroup,
    out: Arc<OutData>,
    beta: Vec<usize>,
}

impl Band {
    pub fn new(gamma: FiniteGroup, out: Arc<OutData>, beta: Vec<usize>) -> Result<Self> {
        if beta.len() != gamma.order() || beta.iter().any(|&b| b >= out.out_order()) {
            return Err(Error::Malformed(format!(
                "band needs {} Out-class indices below {}",
                gamma.order(),
                out.out_order()
            )));
        }
        for s in gamma.elements() {
            for t in gamma.elements() {
                if out.out_mul(beta[s], beta[t]) != beta[gamma.mul(s, t)] {
                    return Err(Error::NotAHomomorphism(format!(
                        "β(σ)β(τ) ≠ β(στ) at (σ, τ) = ({s}, {t})"
                    )));
                }
            }
        }
        Ok(Self { gamma, out, beta })
    }

    /// The band with `β ≡ 1`.
    pub fn trivial(gamma: FiniteGroup, out: Arc<OutData>) -> Self {
        let beta = vec![out.out_identity(); gamma.order()];
        Self { gamma, out, beta }
    }

    pub fn gamma(&self) -> &FiniteGroup {
        &self.gamma
    }

    pub fn group(&self) -> &FiniteGroup {
        self.out.group()
    }

    pub fn out(&self) -> &OutData {
        &self.out
    }

    pub fn out_arc(&self) -> &Arc<OutData> {
        &self.out
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    /// Same Γ, same `A` and classwise equal `β`.
    pub fn same_band(&self, other: &Band) -> bool {
        self.gamma.table_rows() == other.gamma.table_rows()
            && self.group().table_rows() == other.group().table_rows()
            && self.beta == other.beta
    }
}

/// `(u, f)` with `u: Γ × Γ → A` row-major and `f: Γ → Aut(A)` as
/// automorphism indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoCocycle {
    pub u: Vec<usize>,
    pub f: Vec<usize>,
}

impl TwoCocycle {
    #[inline]
    pub fn u(&self, sigma: usize, tau: usize) -> usize {
        self.u[sigma * self.f.len() + tau]
    }

    pub fn is_neutral_shape(&self, a_identity: usize) -> bool {
        self.u.iter().all(|&x| x == a_identity)
    }
}

/// Which 2-cocycle condition fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Cocycle2Condition {
    Shape,
    /// `inn(u_{σ,τ})∘f_σ∘f_τ = f_{στ}`, indices `(σ, τ)`.
    Composition,
    /// `u_{σ,τν}·f_σ(u_{τ,ν}) = u_{στ,ν}·u_{σ,τ}`, indices `(σ, τ, ν)`.
    Associativity,
    /// `f_σ mod Inn = β(σ)`, index `σ`.
    Band,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cocycle2Violation {
    pub condition: Cocycle2Condition,
    pub indices: Vec<usize>,
}

fn apply(out: &OutData, f: usize, x: usize) -> usize {
    out.aut(f)[x]
}

/// First violated condition, scanning in index order.
pub fn cocycle2_violation(band: &Band, c: &TwoCocycle) -> Option<Cocycle2Violation> {
    let (gamma, a, out) = (band.gamma(), band.group(), band.out());
    let n = gamma.order();
    let shape_ok = c.f.len() == n
        && c.u.len() == n * n
        && c.f.iter().all(|&f| f < out.aut_order())
        && c.u.iter().all(|&x| x < a.order());
    if !shape_ok {
        return Some(Cocycle2Violation {
            condition: Cocycle2Condition::Shape,
            indices: vec![],
        });
    }
    for s in 0..n {
        if out.class_of(c.f[s]) != band.beta()[s] {
            return Some(Cocycle2Violation {
                condition: Cocycle2Condition::Band,
                indices: vec![s],
            });
        }
    }
    for s in 0..n {
        for t in 0..n {
            let lhs = out.compose(out.inn(c.u(s, t)), out.compose(c.f[s], c.f[t]));
            if lhs != c.f[gamma.mul(s, t)] {
                return Some(Cocycle2Violation {
                    condition: Cocycle2Condition::Composition,
                    indices: vec![s, t],
                });
            }
        }
    }
    for s in 0..n {
        for t in 0..n {
            for v in 0..n {
                let lhs = a.mul(c.u(s, gamma.mul(t, v)), apply(out, c.f[s], c.u(t, v)));
                let rhs = a.mul(c.u(gamma.mul(s, t), v), c.u(s, t));
                if lhs != rhs {
                    return Some(Cocycle2Violation {
                        condition: Cocycle2Condition::Associativity,
                        indices: vec![s, t, v],
                    });
                }
            }
        }
    }
    None
}

pub fn is_cocycle2(band: &Band, c: &TwoCocycle) -> bool {
    cocycle2_violation(band, c).is_none()
}

/// `w * (u, f)`: `u'_{σ,τ} = w_{στ}·u_{σ,τ}·f_σ(w_τ)⁻¹·w_σ⁻¹`,
/// `f'_σ = inn(w_σ)∘f_σ`.
pub fn act_w(band: &Band, w: &[usize], c: &TwoCocycle) -> TwoCocycle {
    let (gamma, a, out) = (band.gamma(), band.group(), band.out());
    let n = gamma.order();
    let mut u = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            u.push(a.mul_all(&[
                w[gamma.mul(s, t)],
                c.u(s, t),
                a.inv(apply(out, c.f[s], w[t])),
                a.inv(w[s]),
            ]));
        }
    }
    let f = (0..n).map(|s| out.compose(out.inn(w[s]), c.f[s])).collect();
    TwoCocycle { u, f }
}

/// The whole `Maps(Γ, A)`-orbit of `c`.
pub fn orbit_w(band: &Band, c: &TwoCocycle, budget: u128) -> Result<BTreeSet<TwoCocycle>> {
    let (n, order) = (band.gamma().order(), band.group().order());
    let total = (order as u128).saturating_pow(n as u32);
    bound_check("Maps(Γ, A)", total, budget)?;
    Ok((0..total)
        .map(|i| act_w(band, &maps_from_index(n, order, i), c))
        .collect())
}

/// The `i`-th map `Γ → X` in lexicographic order (first coordinate most
/// significant).
fn maps_from_index(n: usize, order: usize, mut i: u128) -> Vec<usize> {
    let mut w = vec![0; n];
    for slot in w.iter_mut().rev() {
        *slot = (i % order as u128) as usize;
        i /= order as u128;
    }
    w
}

/// Lexicographically least `w` with `w_{στ}·u_{σ,τ}·tw(σ, w_τ)⁻¹·w_σ⁻¹ = 1`
/// for all `σ, τ`. Depth-first over `w_0, w_1, …`; a pair is checked once
/// its three indices are assigned. The top level is split across workers
/// and the first branch (in index order) with a solution wins.
fn least_neutralizer<F>(
    gamma: &FiniteGroup,
    a: &FiniteGroup,
    u: &[usize],
    twist: F,
) -> Option<Vec<usize>>
where
    F: Fn(usize, usize) -> usize + Sync,
{
    let n = gamma.order();
    let mut due: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for s in 0..n {
        for t in 0..n {
            due[s.max(t).max(gamma.mul(s, t))].push((s, t));
        }
    }
    let holds = |w: &[usize], s: usize, t: usize| {
        a.mul_all(&[
            w[gamma.mul(s, t)],
            u[s * n + t],
            a.inv(twist(s, w[t])),
            a.inv(w[s]),
        ]) == a.identity()
    };
    fn dfs(
        k: usize,
        w: &mut Vec<usize>,
        n: usize,
        order: usize,
        due: &[Vec<(usize, usize)>],
        holds: &dyn Fn(&[usize], usize, usize) -> bool,
    ) -> bool {
        if k == n {
            return true;
        }
        for x in 0..order {
            w[k] = x;
            if due[k].iter().all(|&(s, t)| holds(w, s, t)) && dfs(k + 1, w, n, order, due, holds) {
                return true;
            }
        }
        false
    }
    (0..a.order()).into_par_iter().find_map_first(|x0| {
        let mut w = vec![0; n];
        w[0] = x0;
        let ok = due[0].iter().all(|&(s, t)| holds(&w, s, t))
            && dfs(1, &mut w, n, a.order(), &due, &holds);
        ok.then_some(w)
    })
}

/// Neutrality of the class of `c`: the lexicographically least `w` with
/// `w * c` having `u' ≡ 1`, if any.
pub fn is_neutral_class(band: &Band, c: &TwoCocycle) -> Result<Option<Vec<usize>>> {
    is_neutral_class_with(band, c, default_budget())
}

pub fn is_neutral_class_with(
    band: &Band,
    c: &TwoCocycle,
    budget: u128,
) -> Result<Option<Vec<usize>>> {
    let (gamma, a, out) = (band.gamma(), band.group(), band.out());
    let total = (a.order() as u128).saturating_pow(gamma.order() as u32);
    bound_check("neutrality search over Maps(Γ, A)", total, budget)?;
    Ok(least_neutralizer(gamma, a, &c.u, |s, x| {
        apply(out, c.f[s], x)
    }))
}

/// The automorphism `x ↦ θ_{ψ_σ}(^σx)` of `A`.
fn semilinear_twist(cm: &CrossedModule, g: usize, sigma: usize) -> Vec<usize> {
    cm.a()
        .elements()
        .map(|x| cm.theta_after_gamma(g, sigma, x))
        .collect()
}

/// `Δ(u, ψ) = (u, f)` with `f_σ = θ_{ψ_σ}∘σ`, with its band `β = f mod Inn`.
pub fn delta_coboundary(cm: &CrossedModule, z: &Cochain1) -> Result<(Band, TwoCocycle)> {
    let out = Arc::new(compute_out(cm.a())?);
    delta_coboundary_with_out(cm, z, &out)
}

pub fn delta_coboundary_with_out(
    cm: &CrossedModule,
    z: &Cochain1,
    out: &Arc<OutData>,
) -> Result<(Band, TwoCocycle)> {
    if let Some(v) = cocycle1_violation(cm, z) {
        return Err(Error::NotACocycle(format!(
            "{:?} identity fails at {:?}",
            v.condition, v.indices
        )));
    }
    let n = cm.gamma().order();
    let mut f = Vec::with_capacity(n);
    for s in 0..n {
        let perm = semilinear_twist(cm, z.psi[s], s);
        f.push(out.aut_index(&perm).ok_or_else(|| {
            Error::StructureFailure(format!("θ_ψ∘σ at σ = {s} is not an automorphism of A"))
        })?);
    }
    let beta = f.iter().map(|&x| out.class_of(x)).collect();
    let band = Band::new(cm.gamma().clone(), out.clone(), beta)?;
    Ok((band, TwoCocycle { u: z.u.clone(), f }))
}

/// Direct search for `w ∈ Maps(Γ, A)` with
/// `w_{στ}·u_{σ,τ}·^{ψ_σ σ}w_τ⁻¹·w_σ⁻¹ = 1`, scanning all maps in
/// lexicographic order without passing through `Aut(A)`.
pub fn two_neutral_witness(
    cm: &CrossedModule,
    z: &Cochain1,
    budget: u128,
) -> Result<Option<Vec<usize>>> {
    let (a, gamma) = (cm.a(), cm.gamma());
    let n = gamma.order();
    let total = (a.order() as u128).saturating_pow(n as u32);
    bound_check("2-neutrality search over Maps(Γ, A)", total, budget)?;
    for i in 0..total {
        let w = maps_from_index(n, a.order(), i);
        let ok = gamma.elements().all(|s| {
            gamma.elements().all(|t| {
                let x = a.mul_all(&[
                    w[gamma.mul(s, t)],
                    z.u(s, t),
                    cm.theta_after_gamma(z.psi[s], s, a.inv(w[t])),
                    a.inv(w[s]),
                ]);
                x == a.identity()
            })
        });
        if ok {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// All `G`-valued 1-cocycles `ψ: Γ → G`, in lexicographic order.
pub fn group_cocycles(cm: &CrossedModule, budget: u128) -> Result<Vec<Vec<usize>>> {
    let (g, n) = (cm.g(), cm.gamma().order());
    let total = (g.order() as u128).saturating_pow(n as u32);
    bound_check("Maps(Γ, G)", total, budget)?;
    Ok((0..total)
        .map(|i| maps_from_index(n, g.order(), i))
        .filter(|psi| is_group_cocycle(cm.gamma_g(), psi))
        .collect())
}

/// One class of `H¹(Γ, A→G)` seen four ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KangRow {
    pub class: usize,
    pub representative: Cochain1,
    /// Hit by `(1, ψ)` for some `G`-valued cocycle `ψ`.
    pub in_image: bool,
    /// Some member of the class has `u ≡ 1`.
    pub two_neutral: bool,
    /// The direct `w`-search on the representative succeeds.
    pub two_neutral_by_search: bool,
    /// `Δ(representative)` is neutral.
    pub delta_neutral: bool,
    /// Least neutralizing `w` for `Δ(representative)`.
    pub witness: Option<Vec<usize>>,
    /// `z * (w, 1)` has `u ≡ 1` for the search witness.
    pub witness_verified: bool,
}

impl KangRow {
    pub fn consistent(&self) -> bool {
        self.in_image == self.delta_neutral
            && self.in_image == self.two_neutral
            && self.in_image == self.two_neutral_by_search
            && self.witness_verified
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KangReport {
    pub group_cocycles: usize,
    pub rows: Vec<KangRow>,
}

impl KangReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(KangRow::consistent)
    }

    pub fn image_classes(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.in_image)
            .map(|r| r.class)
            .collect()
    }
}

pub fn kang_criterion(cm: &CrossedModule) -> Result<KangReport> {
    kang_criterion_with(cm, default_budget())
}

pub fn kang_criterion_with(cm: &CrossedModule, budget: u128) -> Result<KangReport> {
    let h1 = h1_pointed_with(cm, budget)?;
    kang_criterion_on(cm, &h1, budget)
}

/// Same as [`kang_criterion_with`] on an already computed `H¹`.
pub fn kang_criterion_on(cm: &CrossedModule, h1: &H1Set, budget: u128) -> Result<KangReport> {
    let out = Arc::new(compute_out(cm.a())?);
    let a_e = cm.a().identity();
    let psis = group_cocycles(cm, budget)?;
    let mut hit = vec![false; h1.len()];
    for psi in &psis {
        let z = Cochain1::from_psi(psi.clone(), a_e);
        let class = h1
            .class_of(&z)
            .ok_or_else(|| Error::StructureFailure("(1, ψ) missing from Z¹".into()))?;
        hit[class] = true;
    }
    let mut rows = Vec::with_capacity(h1.len());
    for class in 0..h1.len() {
        let rep = h1.representative(class).clone();
        let two_neutral = h1
            .members(class)
            .into_iter()
            .any(|i| h1.z1()[i].is_two_neutral(a_e));
        let search = two_neutral_witness(cm, &rep, budget)?;
        let witness_verified = match &search {
            Some(w) => {
                let c = Cochain0 {
                    phi: w.clone(),
                    g: cm.g().identity(),
                };
                act_c0(cm, &rep, &c).is_two_neutral(a_e)
            }
            None => true,
        };
        let (band, c) = delta_coboundary_with_out(cm, &rep, &out)?;
        let witness = is_neutral_class_with(&band, &c, budget)?;
        rows.push(KangRow {
            class,
            representative: rep,
            in_image: hit[class],
            two_neutral,
            two_neutral_by_search: search.is_some(),
            delta_neutral: witness.is_some(),
            witness,
            witness_verified,
        });
    }
    Ok(KangReport {
        group_cocycles: psis.len(),
        rows,
    })
}

/// Exhaustive checks of how `Δ` behaves along `C⁰`-orbits:
/// `(φ, 1)` moves `Δ` inside its `Maps(Γ, A)`-orbit with the same band,
/// `(1, g)` conjugates it by `θ_g` and keeps neutrality, and neutrality is
/// constant along `Maps(Γ, A)`-orbits.
pub fn delta_invariance(cm: &CrossedModule, budget: u128) -> Result<ValidationReport> {
    let out = Arc::new(compute_out(cm.a())?);
    let h1 = h1_pointed_with(cm, budget)?;
    let (a, g, gamma) = (cm.a(), cm.g(), cm.gamma());
    let n = gamma.order();
    let maps_total = (a.order() as u128).saturating_pow(n as u32);
    bound_check("Maps(Γ, A)", maps_total, budget)?;
    let maps: Vec<Vec<usize>> = (0..maps_total)
        .map(|i| maps_from_index(n, a.order(), i))
        .collect();
    bound_check(
        "Δ invariance instances",
        (h1.z1().len() as u128) * (maps.len() as u128 + g.order() as u128),
        budget,
    )?;
    let theta_aut: Vec<usize> = g
        .elements()
        .map(|x| {
            let perm: Vec<usize> = a.elements().map(|s| cm.theta(x, s)).collect();
            out.aut_index(&perm)
                .ok_or_else(|| Error::StructureFailure(format!("θ_{x} is not an automorphism")))
        })
        .collect::<Result<_>>()?;

    let mut report = ValidationReport::new();
    let deltas: Vec<(Band, TwoCocycle)> = h1
        .z1()
        .iter()
        .map(|z| delta_coboundary_with_out(cm, z, &out))
        .collect::<Result<_>>()?;
    let neutral: Vec<bool> = deltas
        .iter()
        .map(|(b, c)| is_neutral_class_with(b, c, budget).map(|w| w.is_some()))
        .collect::<Result<_>>()?;

    {
        let mut rec = report.check("Delta is a 2-cocycle");
        for (i, (band, c)) in deltas.iter().enumerate() {
            rec.record(is_cocycle2(band, c), &[i], || format!("Δ(Z¹[{i}]) = {c:?}"));
        }
    }
    {
        let mut rec = report.check("Delta under (phi,1)");
        for (i, z) in h1.z1().iter().enumerate() {
            let (band, c) = &deltas[i];
            for (j, phi) in maps.iter().enumerate() {
                let moved = act_c0(
                    cm,
                    z,
                    &Cochain0 {
                        phi: phi.clone(),
                        g: g.identity(),
                    },
                );
                let (band2, c2) = delta_coboundary_with_out(cm, &moved, &out)?;
                let ok = band.same_band(&band2) && c2 == act_w(band, phi, c);
                rec.record(ok, &[i, j], || format!("z = {z:?}, φ = {phi:?}"));
            }
        }
    }
    {
        let mut rec = report.check("Delta under (1,g)");
        for (i, z) in h1.z1().iter().enumerate() {
            let (_, c) = &deltas[i];
            for x in g.elements() {
                let moved = act_c0(
                    cm,
                    z,
                    &Cochain0 {
                        phi: vec![a.identity(); n],
                        g: x,
                    },
                );
                let (band2, c2) = delta_coboundary_with_out(cm, &moved, &out)?;
                let x_inv = g.inv(x);
                let expected = TwoCocycle {
                    u: c.u.iter().map(|&s| cm.theta(x_inv, s)).collect(),
                    f: c.f
                        .iter()
                        .map(|&f| out.compose(theta_aut[x_inv], out.compose(f, theta_aut[x])))
                        .collect(),
                };
                let ok = c2 == expected
                    && is_neutral_class_with(&band2, &c2, budget)?.is_some() == neutral[i];
                rec.record(ok, &[i, x], || format!("z = {z:?}, g = {x}"));
            }
        }
    }
    {
        let mut rec = report.check("neutrality constant on orbits");
        let mut seen = BTreeSet::new();
        for (i, (band, c)) in deltas.iter().enumerate() {
            if !seen.insert(c.clone()) {
                continue;
            }
            for (j, w) in maps.iter().enumerate() {
                let moved = act_w(band, w, c);
                let ok = is_cocycle2(band, &moved)
                    && is_neutral_class_with(band, &moved, budget)?.is_some() == neutral[i];
                rec.record(ok, &[i, j], || format!("c = {c:?}, w = {w:?}"));
            }
        }
    }
    Ok(report)
}
