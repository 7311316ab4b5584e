//! Crossed modules of Γ-groups, braidings and morphisms, with exhaustive
//! axiom validators.
//!
//! Notation in comments: `^g s` is θ_g(s), `^σ x` is the Γ-action and
//! `{g, h}` is the braiding.

use crate::error::{Error, Result};
use crate::gamma::GammaGroup;
use crate::group::{FiniteGroup, GroupHom};
use crate::report::ValidationReport;

/// `(A, G, ρ, θ)`: the complex `A → G` in degrees −1 and 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    a: GammaGroup,
    g: GammaGroup,
    rho: Vec<usize>,
    theta: Vec<Vec<usize>>,
}

impl CrossedModule {
    /// Checks only that the data is well-formed (same Γ, tables of the right
    /// shape and range). Axioms are checked by [`validate_crossed_module`].
    pub fn new(
        a: GammaGroup,
        g: GammaGroup,
        rho: Vec<usize>,
        theta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if a.gamma() != g.gamma() {
            return Err(Error::Malformed("A and G carry different Γ".into()));
        }
        let (na, ng) = (a.group().order(), g.group().order());
        if rho.len() != na || rho.iter().any(|&x| x >= ng) {
            return Err(Error::Malformed("ρ table has the wrong shape".into()));
        }
        if theta.len() != ng
            || theta
                .iter()
                .any(|p| p.len() != na || p.iter().any(|&x| x >= na))
        {
            return Err(Error::Malformed("θ table has the wrong shape".into()));
        }
        Ok(Self { a, g, rho, theta })
    }

    /// `1 → G`
    pub fn trivial_over(g: GammaGroup) -> Self {
        let a = GammaGroup::trivial_action(g.gamma().clone(), FiniteGroup::trivial());
        let rho = vec![g.group().identity()];
        let theta = vec![vec![0]; g.group().order()];
        Self { a, g, rho, theta }
    }

    /// `A → 1`; requires A abelian for CM1 to hold.
    pub fn to_trivial(a: GammaGroup) -> Self {
        let g = GammaGroup::trivial_action(a.gamma().clone(), FiniteGroup::trivial());
        let rho = vec![0; a.group().order()];
        let theta = vec![a.group().elements().collect()];
        Self { a, g, rho, theta }
    }

    /// Surjection `ρ: A → G` with central kernel; θ_g is conjugation by any
    /// lift of g.
    pub fn from_central_quotient(a: GammaGroup, g: GammaGroup, rho: GroupHom) -> Result<Self> {
        if !rho.is_surjective() {
            return Err(Error::NotSurjective("ρ: A → G".into()));
        }
        check_central_kernel(a.group(), g.group(), &rho)?;
        let lifts = least_lifts(&rho, g.group().order());
        let ag = a.group();
        let theta = lifts
            .iter()
            .map(|&l| ag.elements().map(|s| ag.conj(l, s)).collect())
            .collect();
        Self::new(a, g, rho.image_table().to_vec(), theta)
    }

    /// Injective `ρ: A → G` onto a normal subgroup; θ_g is conjugation in G.
    pub fn from_normal_inclusion(a: GammaGroup, g: GammaGroup, rho: GroupHom) -> Result<Self> {
        let gg = g.group();
        let mut preimage = vec![usize::MAX; gg.order()];
        for s in a.group().elements() {
            if preimage[rho.apply(s)] != usize::MAX {
                return Err(Error::Malformed("ρ is not injective".into()));
            }
            preimage[rho.apply(s)] = s;
        }
        let mut theta = Vec::with_capacity(gg.order());
        for x in gg.elements() {
            let mut row = Vec::with_capacity(a.group().order());
            for s in a.group().elements() {
                let c = gg.conj(x, rho.apply(s));
                let pre = preimage[c];
                if pre == usize::MAX {
                    return Err(Error::Malformed("image of ρ is not normal".into()));
                }
                row.push(pre);
            }
            theta.push(row);
        }
        Self::new(a, g, rho.image_table().to_vec(), theta)
    }

    pub fn direct_product(left: &CrossedModule, right: &CrossedModule) -> Result<Self> {
        let a = GammaGroup::direct_product(&left.a, &right.a)?;
        let g = GammaGroup::direct_product(&left.g, &right.g)?;
        let (ma, mg) = (right.a.group().order(), right.g.group().order());
        let rho = a
            .group()
            .elements()
            .map(|s| left.rho(s / ma) * mg + right.rho(s % ma))
            .collect();
        let theta = g
            .group()
            .elements()
            .map(|x| {
                a.group()
                    .elements()
                    .map(|s| left.theta(x / mg, s / ma) * ma + right.theta(x % mg, s % ma))
                    .collect()
            })
            .collect();
        Self::new(a, g, rho, theta)
    }

    pub fn gamma(&self) -> &FiniteGroup {
        self.a.gamma()
    }
    pub fn a(&self) -> &FiniteGroup {
        self.a.group()
    }
    pub fn g(&self) -> &FiniteGroup {
        self.g.group()
    }
    pub fn gamma_a(&self) -> &GammaGroup {
        &self.a
    }
    pub fn gamma_g(&self) -> &GammaGroup {
        &self.g
    }
    pub fn rho_table(&self) -> &[usize] {
        &self.rho
    }
    pub fn theta_table(&self) -> &[Vec<usize>] {
        &self.theta
    }

    #[inline]
    pub fn rho(&self, s: usize) -> usize {
        self.rho[s]
    }

    /// `^g s`
    #[inline]
    pub fn theta(&self, g: usize, s: usize) -> usize {
        self.theta[g][s]
    }

    /// `^σ s` for s ∈ A
    #[inline]
    pub fn act_a(&self, sigma: usize, s: usize) -> usize {
        self.a.act(sigma, s)
    }

    /// `^σ g` for g ∈ G
    #[inline]
    pub fn act_g(&self, sigma: usize, g: usize) -> usize {
        self.g.act(sigma, g)
    }

    /// `^(g σ) s = θ_g(^σ s)`
    #[inline]
    pub fn theta_after_gamma(&self, g: usize, sigma: usize, s: usize) -> usize {
        self.theta(g, self.act_a(sigma, s))
    }

    pub fn kernel(&self) -> Vec<usize> {
        let e = self.g().identity();
        self.a().elements().filter(|&s| self.rho(s) == e).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut im: Vec<usize> = self.rho.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    /// Restriction to a subgroup of Γ given as Γ elements.
    pub fn restrict(&self, sub: &[usize]) -> Result<CrossedModule> {
        Self::new(
            self.a.restrict(sub)?,
            self.g.restrict(sub)?,
            self.rho.clone(),
            self.theta.clone(),
        )
    }
}

fn check_central_kernel(a: &FiniteGroup, g: &FiniteGroup, rho: &GroupHom) -> Result<()> {
    for k in rho.kernel(a, g) {
        if let Some(other) = a.elements().find(|&x| a.mul(k, x) != a.mul(x, k)) {
            return Err(Error::KernelNotCentral { witness: k, other });
        }
    }
    Ok(())
}

/// How preimages are chosen when lifting along a surjection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftStrategy {
    Least,
    Greatest,
}

fn lifts_with(rho: &GroupHom, g_order: usize, strategy: LiftStrategy) -> Vec<usize> {
    let mut lifts = vec![usize::MAX; g_order];
    for s in 0..rho.source_order() {
        let slot = &mut lifts[rho.apply(s)];
        match strategy {
            LiftStrategy::Least if *slot == usize::MAX => *slot = s,
            LiftStrategy::Greatest => *slot = s,
            _ => {}
        }
    }
    lifts
}

fn least_lifts(rho: &GroupHom, g_order: usize) -> Vec<usize> {
    lifts_with(rho, g_order, LiftStrategy::Least)
}

/// Exhaustive check of the crossed-module axioms, including Γ-equivariance.
pub fn validate_crossed_module(cm: &CrossedModule) -> ValidationReport {
    let (a, g, gamma) = (cm.a(), cm.g(), cm.gamma());
    let mut report = ValidationReport::new();

    let mut c = report.check("rho homomorphism");
    for x in a.elements() {
        for y in a.elements() {
            c.record(
                cm.rho(a.mul(x, y)) == g.mul(cm.rho(x), cm.rho(y)),
                &[x, y],
                || format!("ρ({x}·{y}) ≠ ρ({x})·ρ({y})"),
            );
        }
    }

    let mut c = report.check("theta automorphisms");
    for h in g.elements() {
        for x in a.elements() {
            for y in a.elements() {
                c.record(
                    cm.theta(h, a.mul(x, y)) == a.mul(cm.theta(h, x), cm.theta(h, y)),
                    &[h, x, y],
                    || format!("θ_{h} fails on ({x}, {y})"),
                );
            }
        }
    }

    let mut c = report.check("theta action");
    for h1 in g.elements() {
        for h2 in g.elements() {
            let h12 = g.mul(h1, h2);
            for s in a.elements() {
                c.record(
                    cm.theta(h12, s) == cm.theta(h1, cm.theta(h2, s)),
                    &[h1, h2, s],
                    || format!("θ_({h1}·{h2})({s}) ≠ θ_{h1}(θ_{h2}({s}))"),
                );
            }
        }
    }

    let mut c = report.check("rho equivariance");
    for sigma in gamma.elements() {
        for s in a.elements() {
            c.record(
                cm.rho(cm.act_a(sigma, s)) == cm.act_g(sigma, cm.rho(s)),
                &[sigma, s],
                || format!("ρ(^σ s) ≠ ^σ ρ(s) at σ={sigma}, s={s}"),
            );
        }
    }

    let mut c = report.check("theta equivariance");
    for sigma in gamma.elements() {
        for h in g.elements() {
            for s in a.elements() {
                c.record(
                    cm.act_a(sigma, cm.theta(h, s))
                        == cm.theta(cm.act_g(sigma, h), cm.act_a(sigma, s)),
                    &[sigma, h, s],
                    || format!("^σ(θ_g s) ≠ θ_(^σ g)(^σ s) at σ={sigma}, g={h}, s={s}"),
                );
            }
        }
    }

    let mut c = report.check("CM1");
    for s in a.elements() {
        for t in a.elements() {
            c.record(cm.theta(cm.rho(s), t) == a.conj(s, t), &[s, t], || {
                format!("θ_ρ(s)(s') ≠ s s' s⁻¹ at s={}, s'={}", a.name(s), a.name(t))
            });
        }
    }

    let mut c = report.check("CM2");
    for h in g.elements() {
        for t in a.elements() {
            c.record(
                cm.rho(cm.theta(h, t)) == g.conj(h, cm.rho(t)),
                &[h, t],
                || {
                    format!(
                        "ρ(θ_g s') ≠ g ρ(s') g⁻¹ at g={}, s'={}",
                        g.name(h),
                        a.name(t)
                    )
                },
            );
        }
    }
    report
}

/// Strength of braiding axioms to require.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BraidingMode {
    Braided,
    Symmetric,
    Picard,
}

/// A crossed module together with a pairing `{−,−}: G × G → A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Braiding {
    cm: CrossedModule,
    pairing: Vec<usize>,
}

impl Braiding {
    /// `pairing[g][h] = {g, h}`; only the shape is checked here.
    pub fn new(cm: CrossedModule, pairing: Vec<Vec<usize>>) -> Result<Self> {
        let n = cm.g().order();
        let na = cm.a().order();
        if pairing.len() != n
            || pairing
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= na))
        {
            return Err(Error::Malformed(
                "braiding table has the wrong shape".into(),
            ));
        }
        Ok(Self {
            cm,
            pairing: pairing.into_iter().flatten().collect(),
        })
    }

    /// The braiding that is identically 1.
    pub fn trivial(cm: CrossedModule) -> Self {
        let n = cm.g().order();
        let e = cm.a().identity();
        Self {
            cm,
            pairing: vec![e; n * n],
        }
    }

    pub fn cm(&self) -> &CrossedModule {
        &self.cm
    }

    #[inline]
    pub fn pair(&self, g: usize, h: usize) -> usize {
        self.pairing[g * self.cm.g().order() + h]
    }

    pub fn pairing_rows(&self) -> Vec<Vec<usize>> {
        self.pairing
            .chunks(self.cm.g().order())
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn with_entry(&self, g: usize, h: usize, value: usize) -> Braiding {
        let mut out = self.clone();
        let n = self.cm.g().order();
        out.pairing[g * n + h] = value;
        out
    }

    pub fn direct_product(left: &Braiding, right: &Braiding) -> Result<Self> {
        let cm = CrossedModule::direct_product(&left.cm, &right.cm)?;
        let (ma, mg) = (right.cm.a().order(), right.cm.g().order());
        let n = cm.g().order();
        let mut pairing = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                pairing.push(left.pair(x / mg, y / mg) * ma + right.pair(x % mg, y % mg));
            }
        }
        Ok(Self { cm, pairing })
    }
}

/// Exhaustive check of Γ-equivariance, (Br1)–(Br5) and, depending on
/// `mode`, symmetry and the Picard condition.
pub fn validate_braiding(b: &Braiding, mode: BraidingMode) -> ValidationReport {
    let cm = b.cm();
    let (a, g, gamma) = (cm.a(), cm.g(), cm.gamma());
    let mut report = ValidationReport::new();

    let mut c = report.check("braiding equivariance");
    for sigma in gamma.elements() {
        for x in g.elements() {
            for y in g.elements() {
                c.record(
                    cm.act_a(sigma, b.pair(x, y)) == b.pair(cm.act_g(sigma, x), cm.act_g(sigma, y)),
                    &[sigma, x, y],
                    || format!("^σ{{g,g'}} ≠ {{^σg,^σg'}} at σ={sigma}, g={x}, g'={y}"),
                );
            }
        }
    }

    let mut c = report.check("Br1");
    for x in g.elements() {
        for y in g.elements() {
            c.record(cm.rho(b.pair(x, y)) == g.commutator(x, y), &[x, y], || {
                format!("ρ{{g,g'}} ≠ [g,g'] at g={}, g'={}", g.name(x), g.name(y))
            });
        }
    }

    let mut c = report.check("Br2");
    for s in a.elements() {
        for x in g.elements() {
            let rhs = a.mul(s, cm.theta(x, a.inv(s)));
            c.record(b.pair(cm.rho(s), x) == rhs, &[s, x], || {
                format!(
                    "{{ρ(s'),g}} ≠ s'·^g s'⁻¹ at s'={}, g={}",
                    a.name(s),
                    g.name(x)
                )
            });
        }
    }

    let mut c = report.check("Br3");
    for s in a.elements() {
        for x in g.elements() {
            let rhs = a.mul(cm.theta(x, s), a.inv(s));
            c.record(b.pair(x, cm.rho(s)) == rhs, &[s, x], || {
                format!(
                    "{{g,ρ(s')}} ≠ ^g s'·s'⁻¹ at s'={}, g={}",
                    a.name(s),
                    g.name(x)
                )
            });
        }
    }

    let mut c = report.check("Br4");
    for x in g.elements() {
        for y in g.elements() {
            for z in g.elements() {
                let rhs = a.mul(b.pair(x, y), cm.theta(y, b.pair(x, z)));
                c.record(b.pair(x, g.mul(y, z)) == rhs, &[x, y, z], || {
                    format!("Br4 fails at ({}, {}, {})", g.name(x), g.name(y), g.name(z))
                });
            }
        }
    }

    let mut c = report.check("Br5");
    for x in g.elements() {
        for y in g.elements() {
            for z in g.elements() {
                let rhs = a.mul(cm.theta(x, b.pair(y, z)), b.pair(x, z));
                c.record(b.pair(g.mul(x, y), z) == rhs, &[x, y, z], || {
                    format!("Br5 fails at ({}, {}, {})", g.name(x), g.name(y), g.name(z))
                });
            }
        }
    }

    if mode >= BraidingMode::Symmetric {
        let mut c = report.check("Sym");
        for x in g.elements() {
            for y in g.elements() {
                c.record(
                    a.mul(b.pair(x, y), b.pair(y, x)) == a.identity(),
                    &[x, y],
                    || format!("{{g,g'}}{{g',g}} ≠ 1 at g={}, g'={}", g.name(x), g.name(y)),
                );
            }
        }
    }
    if mode >= BraidingMode::Picard {
        let mut c = report.check("Pic");
        for x in g.elements() {
            c.record(b.pair(x, x) == a.identity(), &[x], || {
                format!("{{g,g}} ≠ 1 at g={}", g.name(x))
            });
        }
    }
    report
}

/// Exhaustively checks the identities every braiding satisfies as a
/// consequence of its axioms. Independent of [`validate_braiding`]: it is
/// used as a consistency oracle for it.
pub fn derived_identities(b: &Braiding) -> ValidationReport {
    let cm = b.cm();
    let (a, g) = (cm.a(), cm.g());
    let mut report = ValidationReport::new();

    let mut c1 = report.check("B.1");
    for s in a.elements() {
        for x in g.elements() {
            for y in g.elements() {
                let lhs = a.mul(cm.theta(x, s), b.pair(x, y));
                let rhs = a.mul(b.pair(x, g.mul(cm.rho(s), y)), s);
                c1.record(lhs == rhs, &[s, x, y], || {
                    format!("^g s·{{g,g'}} ≠ {{g,ρ(s)g'}}·s at s={s}, g={x}, g'={y}")
                });
            }
        }
    }
    let mut c2 = report.check("B.2");
    for s in a.elements() {
        for x in g.elements() {
            for y in g.elements() {
                let lhs = a.mul(s, b.pair(y, x));
                let rhs = a.mul(b.pair(g.mul(cm.rho(s), y), x), cm.theta(x, s));
                c2.record(lhs == rhs, &[s, x, y], || {
                    format!("s·{{g',g}} ≠ {{ρ(s)g',g}}·^g s at s={s}, g={x}, g'={y}")
                });
            }
        }
    }
    let mut c3 = report.check("B.3");
    for s in a.elements() {
        for x in g.elements() {
            for y in g.elements() {
                let lhs = a.mul(b.pair(x, y), cm.theta(g.mul(y, x), s));
                let rhs = a.mul(cm.theta(g.mul(x, y), s), b.pair(x, y));
                c3.record(lhs == rhs, &[s, x, y], || {
                    format!("B.3 fails at s={s}, g={x}, g'={y}")
                });
            }
        }
    }
    let mut c4 = report.check("B.4");
    let e = g.identity();
    for x in g.elements() {
        c4.record(
            b.pair(e, x) == a.identity() && b.pair(x, e) == a.identity(),
            &[x],
            || format!("{{1,g}} or {{g,1}} ≠ 1 at g={x}"),
        );
    }
    let mut c5 = report.check("B.5");
    for x in g.elements() {
        for y in g.elements() {
            let rhs = cm.theta(g.mul(y, x), b.pair(g.inv(x), g.inv(y)));
            c5.record(b.pair(x, y) == rhs, &[x, y], || {
                format!("{{g,g'}} ≠ ^(g'g){{g⁻¹,g'⁻¹}} at g={x}, g'={y}")
            });
        }
    }
    report
}

/// The braiding `{g, g'} = [s, s']` for lifts `s, s'` of `g, g'`, defined
/// when ρ is surjective with central kernel. Lifts are least-index
/// preimages.
pub fn commutator_braiding(cm: &CrossedModule) -> Result<Braiding> {
    commutator_braiding_with(cm, LiftStrategy::Least)
}

pub fn commutator_braiding_with(cm: &CrossedModule, strategy: LiftStrategy) -> Result<Braiding> {
    let (a, g) = (cm.a(), cm.g());
    let rho = GroupHom::new(a, g, cm.rho_table().to_vec())?;
    if !rho.is_surjective() {
        let missing = g
            .elements()
            .find(|x| !cm.rho_table().contains(x))
            .expect("not surjective");
        return Err(Error::NotSurjective(format!(
            "element {} of G has no preimage",
            g.name(missing)
        )));
    }
    check_central_kernel(a, g, &rho)?;
    let lifts = lifts_with(&rho, g.order(), strategy);
    let pairing = g
        .elements()
        .map(|x| {
            g.elements()
                .map(|y| a.commutator(lifts[x], lifts[y]))
                .collect()
        })
        .collect();
    Braiding::new(cm.clone(), pairing)
}

/// A morphism of crossed modules over the same Γ.
#[derive(Clone, Debug)]
pub struct CrossedMorphism {
    source: CrossedModule,
    target: CrossedModule,
    fa: Vec<usize>,
    fg: Vec<usize>,
}

impl CrossedMorphism {
    pub fn new(
        source: CrossedModule,
        target: CrossedModule,
        fa: Vec<usize>,
        fg: Vec<usize>,
    ) -> Result<Self> {
        if source.gamma() != target.gamma() {
            return Err(Error::Malformed(
                "morphism between crossed modules over different Γ".into(),
            ));
        }
        if fa.len() != source.a().order() || fa.iter().any(|&x| x >= target.a().order()) {
            return Err(Error::Malformed("f_A table has the wrong shape".into()));
        }
        if fg.len() != source.g().order() || fg.iter().any(|&x| x >= target.g().order()) {
            return Err(Error::Malformed("f_G table has the wrong shape".into()));
        }
        Ok(Self {
            source,
            target,
            fa,
            fg,
        })
    }

    pub fn identity(cm: &CrossedModule) -> Self {
        Self {
            source: cm.clone(),
            target: cm.clone(),
            fa: cm.a().elements().collect(),
            fg: cm.g().elements().collect(),
        }
    }

    /// The canonical morphism from `cm` to `1 → 1`.
    pub fn to_terminal(cm: &CrossedModule) -> Self {
        let gamma = cm.gamma().clone();
        let terminal =
            CrossedModule::trivial_over(GammaGroup::trivial_action(gamma, FiniteGroup::trivial()));
        Self {
            source: cm.clone(),
            target: terminal,
            fa: vec![0; cm.a().order()],
            fg: vec![0; cm.g().order()],
        }
    }

    pub fn source(&self) -> &CrossedModule {
        &self.source
    }
    pub fn target(&self) -> &CrossedModule {
        &self.target
    }
    #[inline]
    pub fn fa(&self, s: usize) -> usize {
        self.fa[s]
    }
    #[inline]
    pub fn fg(&self, g: usize) -> usize {
        self.fg[g]
    }
    pub fn fa_table(&self) -> &[usize] {
        &self.fa
    }
    pub fn fg_table(&self) -> &[usize] {
        &self.fg
    }

    /// `next ∘ self`
    pub fn then(&self, next: &CrossedMorphism) -> Result<CrossedMorphism> {
        if self.target != next.source {
            return Err(Error::Malformed("morphisms are not composable".into()));
        }
        Ok(CrossedMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            fa: self.fa.iter().map(|&x| next.fa(x)).collect(),
            fg: self.fg.iter().map(|&x| next.fg(x)).collect(),
        })
    }
}

pub fn validate_morphism(m: &CrossedMorphism) -> ValidationReport {
    let (s, t) = (m.source(), m.target());
    let gamma = s.gamma();
    let mut report = ValidationReport::new();

    let mut c = report.check("f_A homomorphism");
    for x in s.a().elements() {
        for y in s.a().elements() {
            c.record(
                m.fa(s.a().mul(x, y)) == t.a().mul(m.fa(x), m.fa(y)),
                &[x, y],
                || format!("f_A({x}·{y}) ≠ f_A({x})·f_A({y})"),
            );
        }
    }
    let mut c = report.check("f_G homomorphism");
    for x in s.g().elements() {
        for y in s.g().elements() {
            c.record(
                m.fg(s.g().mul(x, y)) == t.g().mul(m.fg(x), m.fg(y)),
                &[x, y],
                || format!("f_G({x}·{y}) ≠ f_G({x})·f_G({y})"),
            );
        }
    }
    let mut c = report.check("rho compatibility");
    for x in s.a().elements() {
        c.record(t.rho(m.fa(x)) == m.fg(s.rho(x)), &[x], || {
            format!("ρ₂ f_A ≠ f_G ρ₁ at {x}")
        });
    }
    let mut c = report.check("equivariance");
    for sigma in gamma.elements() {
        for x in s.a().elements() {
            c.record(
                m.fa(s.act_a(sigma, x)) == t.act_a(sigma, m.fa(x)),
                &[sigma, x],
                || format!("f_A not Γ-equivariant at σ={sigma}, s={x}"),
            );
        }
        for x in s.g().elements() {
            c.record(
                m.fg(s.act_g(sigma, x)) == t.act_g(sigma, m.fg(x)),
                &[sigma, x],
                || format!("f_G not Γ-equivariant at σ={sigma}, g={x}"),
            );
        }
    }
    let mut c = report.check("theta compatibility");
    for h in s.g().elements() {
        for x in s.a().elements() {
            c.record(
                m.fa(s.theta(h, x)) == t.theta(m.fg(h), m.fa(x)),
                &[h, x],
                || format!("f_A(^g s) ≠ ^f_G(g) f_A(s) at g={h}, s={x}"),
            );
        }
    }
    report
}

/// First pair `(g, g')` with `f_A({g,g'}₁) ≠ {f_G g, f_G g'}₂`, if any.
pub fn braiding_violation(
    m: &CrossedMorphism,
    source: &Braiding,
    target: &Braiding,
) -> Option<(usize, usize)> {
    let g = m.source().g();
    for x in g.elements() {
        for y in g.elements() {
            if m.fa(source.pair(x, y)) != target.pair(m.fg(x), m.fg(y)) {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn braiding_preserved(m: &CrossedMorphism, source: &Braiding, target: &Braiding) -> bool {
    braiding_violation(m, source, target).is_none()
}
