//! Group laws on `C⁰` and `C¹` defined with a braiding, the differential
//! `d: C⁰ → Z¹`, the crossed module `d̄: C⁰/B⁰ → Z¹` with its braiding,
//! and the induced abelian group structure on `H¹`.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cochain::{default_budget, Cochain0, Cochain1};
use crate::crossed::{
    derived_identities, validate_braiding, validate_crossed_module, Braiding, BraidingMode,
};
use crate::error::{Error, Result};
use crate::hyper::{
    act_c0, c0_count, c0_from_index, c0_generators, coboundary0, h1_pointed_with, is_cocycle1,
    H1Class, H1Set,
};
use crate::report::ValidationReport;

/// `(φ¹,g₁)·(φ²,g₂) = (φ^{1,2}, g₁g₂)` with
/// `φ^{1,2}_σ = ^{g₁}{g₁⁻¹ρ(φ¹_σ)^σg₁, g₂}⁻¹·φ¹_σ·^{^σg₁}φ²_σ`.
pub fn c0_mul(b: &Braiding, x: &Cochain0, y: &Cochain0) -> Cochain0 {
    let cm = b.cm();
    let (a, g) = (cm.a(), cm.g());
    let g1_inv = g.inv(x.g);
    let phi = (0..x.phi.len())
        .map(|s| {
            let sg1 = cm.act_g(s, x.g);
            let arg = g.mul_all(&[g1_inv, cm.rho(x.phi[s]), sg1]);
            let corr = a.inv(cm.theta(x.g, b.pair(arg, y.g)));
            a.mul_all(&[corr, x.phi[s], cm.theta(sg1, y.phi[s])])
        })
        .collect();
    Cochain0 {
        phi,
        g: g.mul(x.g, y.g),
    }
}

/// Inverse for [`c0_mul`]:
/// `φ'_σ = ^{^σg⁻¹}φ_σ⁻¹·^{(^σg⁻¹)g}{g⁻¹ρ(φ_σ)^σg, g⁻¹}`.
pub fn c0_inv(b: &Braiding, x: &Cochain0) -> Cochain0 {
    let cm = b.cm();
    let (a, g) = (cm.a(), cm.g());
    let g_inv = g.inv(x.g);
    let phi = (0..x.phi.len())
        .map(|s| {
            let sg_inv = cm.act_g(s, g_inv);
            let arg = g.mul_all(&[g_inv, cm.rho(x.phi[s]), cm.act_g(s, x.g)]);
            a.mul(
                cm.theta(sg_inv, a.inv(x.phi[s])),
                cm.theta(g.mul(sg_inv, x.g), b.pair(arg, g_inv)),
            )
        })
        .collect();
    Cochain0 { phi, g: g_inv }
}

/// `(u¹,ψ¹)·(u²,ψ²)` with
/// `u_{σ,τ} = u¹_{σ,τ}·^{ψ¹_σ ^σψ¹_τ}u²_{σ,τ}·^{ψ¹_σ}{^σψ¹_τ, ψ²_σ}` and
/// `ψ_σ = ψ¹_σψ²_σ`.
pub fn c1_mul(b: &Braiding, x: &Cochain1, y: &Cochain1) -> Cochain1 {
    let cm = b.cm();
    let (a, g) = (cm.a(), cm.g());
    let n = x.psi.len();
    let mut u = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            let spt = cm.act_g(s, x.psi[t]);
            u.push(a.mul_all(&[
                x.u(s, t),
                cm.theta(g.mul(x.psi[s], spt), y.u(s, t)),
                cm.theta(x.psi[s], b.pair(spt, y.psi[s])),
            ]));
        }
    }
    let psi = x
        .psi
        .iter()
        .zip(&y.psi)
        .map(|(&p, &q)| g.mul(p, q))
        .collect();
    Cochain1 { u, psi }
}

/// Inverse for [`c1_mul`]:
/// `u'_{σ,τ} = ^{(ψ_σ ^σψ_τ)⁻¹}u_{σ,τ}⁻¹·{^σψ_τ⁻¹, ψ_σ⁻¹}`, `ψ' = ψ⁻¹`.
///
/// On `Z¹` the twist `(ψ_σ ^σψ_τ)⁻¹` may be replaced by `ψ_{στ}⁻¹`, since the
/// two differ by `ρ(u_{σ,τ})`, which acts on `u_{σ,τ}` trivially. Only the
/// form used here is a two-sided inverse on all of `C¹`.
pub fn c1_inv(b: &Braiding, x: &Cochain1) -> Cochain1 {
    let cm = b.cm();
    let (a, g) = (cm.a(), cm.g());
    let n = x.psi.len();
    let mut u = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            let twist = g.inv(g.mul(x.psi[s], cm.act_g(s, x.psi[t])));
            u.push(a.mul(
                cm.theta(twist, a.inv(x.u(s, t))),
                b.pair(g.inv(cm.act_g(s, x.psi[t])), g.inv(x.psi[s])),
            ));
        }
    }
    let psi = x.psi.iter().map(|&p| g.inv(p)).collect();
    Cochain1 { u, psi }
}

/// `d(φ, g) = (u, ψ)` with `u_{σ,τ} = ^{g⁻¹}(φ_{στ}·^σφ_τ⁻¹·φ_σ⁻¹)` and
/// `ψ_σ = g⁻¹·ρ(φ_σ)·^σg`.
pub fn diff_d(b: &Braiding, c: &Cochain0) -> Cochain1 {
    let cm = b.cm();
    let (a, g, gamma) = (cm.a(), cm.g(), cm.gamma());
    let n = c.phi.len();
    let g_inv = g.inv(c.g);
    let mut u = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            let inner = a.mul_all(&[
                c.phi[gamma.mul(s, t)],
                cm.act_a(s, a.inv(c.phi[t])),
                a.inv(c.phi[s]),
            ]);
            u.push(cm.theta(g_inv, inner));
        }
    }
    let psi = (0..n)
        .map(|s| g.mul_all(&[g_inv, cm.rho(c.phi[s]), cm.act_g(s, c.g)]))
        .collect();
    Cochain1 { u, psi }
}

/// All 0-coboundaries, sorted and without repetition.
pub fn b0(b: &Braiding) -> Vec<Cochain0> {
    let cm = b.cm();
    let mut out: Vec<Cochain0> = cm.a().elements().map(|s| coboundary0(cm, s)).collect();
    out.sort();
    out.dedup();
    out
}

/// Left action of `Z¹` on `C⁰`:
/// `φ'_σ = {ψ_σ, g}⁻¹·^{ψ_σ}φ_σ·{^σg, ψ_σ}⁻¹`, `g' = g`.
pub fn act_z1(b: &Braiding, z: &Cochain1, c: &Cochain0) -> Cochain0 {
    let cm = b.cm();
    let a = cm.a();
    let phi = (0..c.phi.len())
        .map(|s| {
            let p = z.psi[s];
            a.mul_all(&[
                a.inv(b.pair(p, c.g)),
                cm.theta(p, c.phi[s]),
                a.inv(b.pair(cm.act_g(s, c.g), p)),
            ])
        })
        .collect();
    Cochain0 { phi, g: c.g }
}

/// `δ(ψ, g)_σ = {^σg, ψ_σ}⁻¹`
pub fn delta_correction(b: &Braiding, psi: &[usize], g: usize) -> Vec<usize> {
    let cm = b.cm();
    (0..psi.len())
        .map(|s| cm.a().inv(b.pair(cm.act_g(s, g), psi[s])))
        .collect()
}

/// The braiding on `Z¹`, as a 0-cochain: `({ψ¹_σ, ψ²_σ}, 1)`.
pub fn br_z1(b: &Braiding, x: &Cochain1, y: &Cochain1) -> Cochain0 {
    Cochain0 {
        phi: x
            .psi
            .iter()
            .zip(&y.psi)
            .map(|(&p, &q)| b.pair(p, q))
            .collect(),
        g: b.cm().g().identity(),
    }
}

fn c1_identity(b: &Braiding) -> Cochain1 {
    let cm = b.cm();
    Cochain1::identity(cm.gamma().order(), cm.a().identity(), cm.g().identity())
}

fn c0_identity(b: &Braiding) -> Cochain0 {
    let cm = b.cm();
    Cochain0::identity(cm.gamma().order(), cm.a().identity(), cm.g().identity())
}

/// `H¹` with the group structure coming from `coker d̄`.
#[derive(Clone, Debug, Serialize)]
pub struct AbelianH1 {
    pub classes: Vec<H1Class>,
    pub mul_table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverses: Vec<usize>,
    /// Invariant factors `d₁ | d₂ | …`, all greater than 1.
    pub invariant_factors: Vec<u64>,
}

impl AbelianH1 {
    pub fn order(&self) -> usize {
        self.classes.len()
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul_table[y][x];
            k += 1;
        }
        k
    }
}

/// Indexed access to `Z¹` with its braided group law.
struct Z1Group<'a> {
    b: &'a Braiding,
    h1: &'a H1Set,
}

impl Z1Group<'_> {
    fn idx(&self, z: &Cochain1) -> Result<usize> {
        self.h1.index_of(z).ok_or_else(|| {
            Error::StructureFailure("Z¹ is not closed under the braided product".into())
        })
    }
    fn mul(&self, i: usize, j: usize) -> Result<usize> {
        let z = self.h1.z1();
        self.idx(&c1_mul(self.b, &z[i], &z[j]))
    }
}

/// Invariant factors of a finite abelian group from its element orders.
pub fn invariant_factors_from_orders(orders: &[usize]) -> Vec<u64> {
    let n = orders.len();
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    // For each prime, the sizes of its cyclic p-power summands, largest first.
    let mut parts: Vec<Vec<u64>> = Vec::new();
    for &p in &primes {
        let mut counts = vec![1usize];
        let mut pk = 1;
        loop {
            pk *= p;
            let c = orders.iter().filter(|&&o| pk % o == 0).count();
            if c == *counts.last().expect("nonempty") {
                break;
            }
            counts.push(c);
        }
        let log = |c: usize| {
            let mut k = 0;
            let mut x = c;
            while x > 1 {
                x /= p;
                k += 1;
            }
            k
        };
        let logs: Vec<usize> = counts.iter().map(|&c| log(c)).collect();
        // number of summands of exponent ≥ k is logs[k] − logs[k−1]
        let ge: Vec<usize> = (1..logs.len()).map(|k| logs[k] - logs[k - 1]).collect();
        let mut sizes = Vec::new();
        for (k, &count) in ge.iter().enumerate() {
            let next = ge.get(k + 1).copied().unwrap_or(0);
            for _ in 0..count - next {
                sizes.push((p as u64).pow(k as u32 + 1));
            }
        }
        sizes.sort_unstable_by(|x, y| y.cmp(x));
        parts.push(sizes);
    }
    let len = parts.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..len)
        .map(|i| {
            parts
                .iter()
                .map(|s| s.get(i).copied().unwrap_or(1))
                .product()
        })
        .collect();
    factors.reverse();
    factors
}

pub fn h1_abelian(b: &Braiding) -> Result<AbelianH1> {
    h1_abelian_with(b, default_budget())
}

/// Builds `coker d̄` on top of the pointed `H¹`, checking on the way that
/// `im d` is the orbit of `(1,1)`, that it is normal, that its cosets are
/// exactly the `C⁰`-orbits and that the quotient is abelian.
pub fn h1_abelian_with(b: &Braiding, budget: u128) -> Result<AbelianH1> {
    let cm = b.cm();
    let h1 = h1_pointed_with(cm, budget)?;
    let zg = Z1Group { b, h1: &h1 };
    let z1 = h1.z1();
    let one = zg.idx(&c1_identity(b))?;

    let gens: Vec<usize> = c0_generators(cm)
        .iter()
        .map(|c| zg.idx(&diff_d(b, c)))
        .collect::<Result<_>>()?;
    let mut in_image = vec![false; z1.len()];
    in_image[one] = true;
    let mut queue = VecDeque::from([one]);
    while let Some(x) = queue.pop_front() {
        for &h in &gens {
            let y = zg.mul(x, h)?;
            if !in_image[y] {
                in_image[y] = true;
                queue.push_back(y);
            }
        }
    }
    let image: Vec<usize> = (0..z1.len()).filter(|&i| in_image[i]).collect();
    let orbit_one = h1.members(h1.distinguished());
    if image != orbit_one {
        return Err(Error::StructureFailure(
            "im d differs from the orbit of (1,1)".into(),
        ));
    }

    for (i, z) in z1.iter().enumerate() {
        let zi = zg.idx(&c1_inv(b, z))?;
        for &h in &gens {
            let c = zg.mul(zg.mul(i, h)?, zi)?;
            if !in_image[c] {
                return Err(Error::NonNormalImage(format!(
                    "conjugating a generator of im d by Z¹ element {i} leaves im d"
                )));
            }
        }
    }

    let mut coset_of = vec![usize::MAX; z1.len()];
    let mut coset_class = Vec::new();
    for i in 0..z1.len() {
        if coset_of[i] != usize::MAX {
            continue;
        }
        let c = coset_class.len();
        coset_class.push(h1.class_of_index(i));
        for &h in &image {
            coset_of[zg.mul(h, i)?] = c;
        }
    }
    let bijective = coset_class.len() == h1.len()
        && (0..z1.len()).all(|i| coset_class[coset_of[i]] == h1.class_of_index(i));
    if !bijective {
        return Err(Error::StructureFailure(
            "cosets of im d differ from the C⁰-orbits".into(),
        ));
    }

    let k = h1.len();
    let reps: Vec<usize> = (0..k)
        .map(|c| zg.idx(h1.representative(c)))
        .collect::<Result<_>>()?;
    let mut mul_table = vec![vec![0; k]; k];
    for x in 0..k {
        for y in 0..k {
            mul_table[x][y] = h1.class_of_index(zg.mul(reps[x], reps[y])?);
        }
    }
    if (z1.len() as u128).pow(2) <= 250_000 {
        for i in 0..z1.len() {
            for j in 0..z1.len() {
                let (ci, cj) = (h1.class_of_index(i), h1.class_of_index(j));
                if h1.class_of_index(zg.mul(i, j)?) != mul_table[ci][cj] {
                    return Err(Error::StructureFailure(
                        "product on H¹ depends on representatives".into(),
                    ));
                }
            }
        }
    }
    for x in 0..k {
        for y in 0..x {
            if mul_table[x][y] != mul_table[y][x] {
                return Err(Error::StructureFailure(format!(
                    "H¹ is not abelian: classes {x} and {y}"
                )));
            }
        }
    }
    let identity = h1.distinguished();
    let inverses: Vec<usize> = (0..k)
        .map(|x| {
            (0..k)
                .find(|&y| mul_table[x][y] == identity)
                .expect("group")
        })
        .collect();
    let tmp = AbelianH1 {
        classes: h1.classes().to_vec(),
        mul_table,
        identity,
        inverses,
        invariant_factors: vec![],
    };
    let orders: Vec<usize> = (0..k).map(|x| tmp.element_order(x)).collect();
    Ok(AbelianH1 {
        invariant_factors: invariant_factors_from_orders(&orders),
        ..tmp
    })
}

/// Exhaustive-or-sampled sweep settings for [`validate_dbar_structures`].
#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    /// Tuple spaces up to this size are enumerated completely.
    pub exhaustive_limit: u128,
    /// Otherwise this many tuples are drawn at random.
    pub samples: usize,
    pub seed: u64,
    pub budget: u128,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            exhaustive_limit: 100_000,
            samples: 1_500,
            seed: 0x5eed,
            budget: default_budget(),
        }
    }
}

/// Index tuples over the given space sizes: all of them if few enough,
/// otherwise a seeded random sample.
fn tuples(sizes: &[u128], cfg: &SweepConfig, rng: &mut ChaCha8Rng) -> Vec<Vec<u128>> {
    let total = sizes.iter().fold(1u128, |acc, &s| acc.saturating_mul(s));
    if sizes.contains(&0) {
        return vec![];
    }
    if total <= cfg.exhaustive_limit {
        (0..total)
            .map(|mut i| {
                let mut t = vec![0; sizes.len()];
                for k in (0..sizes.len()).rev() {
                    t[k] = i % sizes[k];
                    i /= sizes[k];
                }
                t
            })
            .collect()
    } else {
        (0..cfg.samples)
            .map(|_| sizes.iter().map(|&s| rng.gen_range(0..s)).collect())
            .collect()
    }
}

fn c1_count(b: &Braiding) -> u128 {
    let cm = b.cm();
    let n = cm.gamma().order() as u32;
    (cm.a().order() as u128)
        .saturating_pow(n * n)
        .saturating_mul((cm.g().order() as u128).saturating_pow(n))
}

fn c1_from_index(b: &Braiding, mut idx: u128) -> Cochain1 {
    let cm = b.cm();
    let n = cm.gamma().order();
    let (na, ng) = (cm.a().order() as u128, cm.g().order() as u128);
    let mut psi = vec![0; n];
    for s in (0..n).rev() {
        psi[s] = (idx % ng) as usize;
        idx /= ng;
    }
    let mut u = vec![0; n * n];
    for p in (0..n * n).rev() {
        u[p] = (idx % na) as usize;
        idx /= na;
    }
    Cochain1 { u, psi }
}

/// Checks the structures built from a braiding: the group laws on `C⁰` and
/// `C¹`, `Z¹` as a subgroup, `d` and `B⁰`, the crossed module `d̄` with the
/// `Z¹`-action on `C⁰/B⁰`, the braiding on `Z¹`, that `im d` contains all
/// commutators of `Z¹`, and the identity `z*(φ,g) = d(φ·δ(ψ,g), g)·z`.
pub fn validate_dbar_structures(b: &Braiding, cfg: &SweepConfig) -> Result<ValidationReport> {
    let cm = b.cm();
    let (a, g) = (cm.a(), cm.g());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let h1 = h1_pointed_with(cm, cfg.budget)?;
    let z1 = h1.z1();
    let nz = z1.len() as u128;
    let nc0 = c0_count(cm);
    let nc1 = c1_count(b);
    let bzero = b0(b);
    let b0_set: HashSet<Cochain0> = bzero.iter().cloned().collect();
    let nb = bzero.len() as u128;
    let c0 = |i: u128| c0_from_index(cm, i);
    let zi = |i: u128| &z1[i as usize];
    let e0 = c0_identity(b);
    let e1 = c1_identity(b);
    // x ≡ y in C⁰/B⁰
    let equiv = |x: &Cochain0, y: &Cochain0| b0_set.contains(&c0_mul(b, &c0_inv(b, x), y));
    let mut report = ValidationReport::new();

    let mut c = report.check("C0 associativity");
    for t in tuples(&[nc0, nc0, nc0], cfg, &mut rng) {
        let (x, y, z) = (c0(t[0]), c0(t[1]), c0(t[2]));
        let ok = c0_mul(b, &c0_mul(b, &x, &y), &z) == c0_mul(b, &x, &c0_mul(b, &y, &z));
        c.record(ok, &[], || format!("({x:?}, {y:?}, {z:?})"));
    }
    let mut c = report.check("C0 identity and inverse");
    for t in tuples(&[nc0], cfg, &mut rng) {
        let x = c0(t[0]);
        let xi = c0_inv(b, &x);
        let ok = c0_mul(b, &x, &e0) == x
            && c0_mul(b, &e0, &x) == x
            && c0_mul(b, &x, &xi) == e0
            && c0_mul(b, &xi, &x) == e0;
        c.record(ok, &[], || format!("{x:?}"));
    }
    let c1 = |i: u128| c1_from_index(b, i);
    let mut c = report.check("C1 associativity");
    for t in tuples(&[nc1, nc1, nc1], cfg, &mut rng) {
        let (x, y, z) = (c1(t[0]), c1(t[1]), c1(t[2]));
        let ok = c1_mul(b, &c1_mul(b, &x, &y), &z) == c1_mul(b, &x, &c1_mul(b, &y, &z));
        c.record(ok, &[], || format!("({x:?}, {y:?}, {z:?})"));
    }
    let mut c = report.check("C1 identity and inverse");
    for t in tuples(&[nc1], cfg, &mut rng) {
        let x = c1(t[0]);
        let xi = c1_inv(b, &x);
        let ok = c1_mul(b, &x, &e1) == x
            && c1_mul(b, &e1, &x) == x
            && c1_mul(b, &x, &xi) == e1
            && c1_mul(b, &xi, &x) == e1;
        c.record(ok, &[], || format!("{x:?}"));
    }
    let mut c = report.check("Z1 subgroup");
    for t in tuples(&[nz, nz], cfg, &mut rng) {
        let (x, y) = (zi(t[0]), zi(t[1]));
        let ok = is_cocycle1(cm, &c1_mul(b, x, y)) && is_cocycle1(cm, &c1_inv(b, x));
        c.record(ok, &[t[0] as usize, t[1] as usize], || {
            format!("({x:?}, {y:?})")
        });
    }
    let mut c = report.check("d lands in Z1");
    for t in tuples(&[nc0], cfg, &mut rng) {
        let x = c0(t[0]);
        c.record(is_cocycle1(cm, &diff_d(b, &x)), &[], || format!("{x:?}"));
    }
    let mut c = report.check("d homomorphism");
    for t in tuples(&[nc0, nc0], cfg, &mut rng) {
        let (x, y) = (c0(t[0]), c0(t[1]));
        let ok = diff_d(b, &c0_mul(b, &x, &y)) == c1_mul(b, &diff_d(b, &x), &diff_d(b, &y));
        c.record(ok, &[], || format!("({x:?}, {y:?})"));
    }
    let mut c = report.check("d vanishes on B0");
    for s in a.elements() {
        let x = coboundary0(cm, s);
        c.record(diff_d(b, &x) == e1, &[s], || format!("s = {}", a.name(s)));
    }
    let mut c = report.check("B0 normal subgroup");
    for t in tuples(&[nb, nb], cfg, &mut rng) {
        let (x, y) = (&bzero[t[0] as usize], &bzero[t[1] as usize]);
        let ok = b0_set.contains(&c0_mul(b, x, y)) && b0_set.contains(&c0_inv(b, x));
        c.record(ok, &[t[0] as usize, t[1] as usize], || {
            format!("({x:?}, {y:?})")
        });
    }
    for t in tuples(&[nc0, nb], cfg, &mut rng) {
        let (x, y) = (c0(t[0]), &bzero[t[1] as usize]);
        let conj = c0_mul(b, &c0_mul(b, &x, y), &c0_inv(b, &x));
        c.record(b0_set.contains(&conj), &[], || format!("({x:?}, {y:?})"));
    }

    let mut c = report.check("Z1 action preserves B0");
    for t in tuples(&[nz, nb], cfg, &mut rng) {
        let (z, y) = (zi(t[0]), &bzero[t[1] as usize]);
        c.record(
            b0_set.contains(&act_z1(b, z, y)),
            &[t[0] as usize, t[1] as usize],
            || format!("({z:?}, {y:?})"),
        );
    }
    let mut c = report.check("Z1 action by automorphisms");
    for t in tuples(&[nz, nc0, nc0], cfg, &mut rng) {
        let (z, x, y) = (zi(t[0]), c0(t[1]), c0(t[2]));
        let ok = equiv(
            &act_z1(b, z, &c0_mul(b, &x, &y)),
            &c0_mul(b, &act_z1(b, z, &x), &act_z1(b, z, &y)),
        );
        c.record(ok, &[], || format!("({z:?}, {x:?}, {y:?})"));
    }
    let mut c = report.check("Z1 action law");
    for t in tuples(&[nz, nz, nc0], cfg, &mut rng) {
        let (z, w, x) = (zi(t[0]), zi(t[1]), c0(t[2]));
        let ok = equiv(
            &act_z1(b, &c1_mul(b, z, w), &x),
            &act_z1(b, z, &act_z1(b, w, &x)),
        ) && equiv(&act_z1(b, &e1, &x), &x);
        c.record(ok, &[], || format!("({z:?}, {w:?}, {x:?})"));
    }
    let mut c = report.check("dbar CM1");
    for t in tuples(&[nc0, nc0], cfg, &mut rng) {
        let (x, y) = (c0(t[0]), c0(t[1]));
        let conj = c0_mul(b, &c0_mul(b, &x, &y), &c0_inv(b, &x));
        c.record(equiv(&act_z1(b, &diff_d(b, &x), &y), &conj), &[], || {
            format!("({x:?}, {y:?})")
        });
    }
    let mut c = report.check("dbar CM2");
    for t in tuples(&[nz, nc0], cfg, &mut rng) {
        let (z, x) = (zi(t[0]), c0(t[1]));
        let rhs = c1_mul(b, &c1_mul(b, z, &diff_d(b, &x)), &c1_inv(b, z));
        c.record(diff_d(b, &act_z1(b, z, &x)) == rhs, &[], || {
            format!("({z:?}, {x:?})")
        });
    }
    let mut c = report.check("Br1");
    for t in tuples(&[nz, nz], cfg, &mut rng) {
        let (z, w) = (zi(t[0]), zi(t[1]));
        let comm = c1_mul(
            b,
            &c1_mul(b, z, w),
            &c1_mul(b, &c1_inv(b, z), &c1_inv(b, w)),
        );
        c.record(
            diff_d(b, &br_z1(b, z, w)) == comm,
            &[t[0] as usize, t[1] as usize],
            || format!("({z:?}, {w:?})"),
        );
    }
    let mut c = report.check("Br2");
    for t in tuples(&[nc0, nz], cfg, &mut rng) {
        let (x, z) = (c0(t[0]), zi(t[1]));
        let rhs = c0_mul(b, &x, &act_z1(b, z, &c0_inv(b, &x)));
        c.record(equiv(&br_z1(b, &diff_d(b, &x), z), &rhs), &[], || {
            format!("({x:?}, {z:?})")
        });
    }
    let mut c = report.check("Br3");
    for t in tuples(&[nc0, nz], cfg, &mut rng) {
        let (x, z) = (c0(t[0]), zi(t[1]));
        let rhs = c0_mul(b, &act_z1(b, z, &x), &c0_inv(b, &x));
        c.record(equiv(&br_z1(b, z, &diff_d(b, &x)), &rhs), &[], || {
            format!("({x:?}, {z:?})")
        });
    }
    let mut c = report.check("Br4");
    for t in tuples(&[nz, nz, nz], cfg, &mut rng) {
        let (x, y, z) = (zi(t[0]), zi(t[1]), zi(t[2]));
        let lhs = br_z1(b, x, &c1_mul(b, y, z));
        let rhs = c0_mul(b, &br_z1(b, x, y), &act_z1(b, y, &br_z1(b, x, z)));
        c.record(equiv(&lhs, &rhs), &[], || format!("({x:?}, {y:?}, {z:?})"));
    }
    let mut c = report.check("Br5");
    for t in tuples(&[nz, nz, nz], cfg, &mut rng) {
        let (x, y, z) = (zi(t[0]), zi(t[1]), zi(t[2]));
        let lhs = br_z1(b, &c1_mul(b, x, y), z);
        let rhs = c0_mul(b, &act_z1(b, x, &br_z1(b, y, z)), &br_z1(b, x, z));
        c.record(equiv(&lhs, &rhs), &[], || format!("({x:?}, {y:?}, {z:?})"));
    }
    let symmetric = g.elements().all(|x| {
        g.elements()
            .all(|y| a.mul(b.pair(x, y), b.pair(y, x)) == a.identity())
    });
    if symmetric {
        let mut c = report.check("Sym");
        for t in tuples(&[nz, nz], cfg, &mut rng) {
            let (x, y) = (zi(t[0]), zi(t[1]));
            c.record(
                equiv(&c0_mul(b, &br_z1(b, x, y), &br_z1(b, y, x)), &e0),
                &[t[0] as usize, t[1] as usize],
                || format!("({x:?}, {y:?})"),
            );
        }
    }

    let image: HashSet<&Cochain1> = h1
        .members(h1.distinguished())
        .into_iter()
        .map(|i| &z1[i])
        .collect();
    let mut c = report.check("commutators in im d");
    for t in tuples(&[nz, nz], cfg, &mut rng) {
        let (x, y) = (zi(t[0]), zi(t[1]));
        let comm = c1_mul(
            b,
            &c1_mul(b, x, y),
            &c1_mul(b, &c1_inv(b, x), &c1_inv(b, y)),
        );
        c.record(
            image.contains(&comm),
            &[t[0] as usize, t[1] as usize],
            || format!("({x:?}, {y:?})"),
        );
    }
    let mut c = report.check("C0-action via d");
    for t in tuples(&[nz, nc0], cfg, &mut rng) {
        let (z, x) = (zi(t[0]), c0(t[1]));
        let corr = delta_correction(b, &z.psi, x.g);
        let twisted = Cochain0 {
            phi: x
                .phi
                .iter()
                .zip(&corr)
                .map(|(&p, &q)| a.mul(p, q))
                .collect(),
            g: x.g,
        };
        let ok = act_c0(cm, z, &x) == c1_mul(b, &diff_d(b, &twisted), z);
        c.record(ok, &[], || format!("({z:?}, {x:?})"));
    }
    Ok(report)
}

/// `true` when the induced class map is a homomorphism of the abelian
/// groups; otherwise the first pair `(x, y)` with `f(xy) ≠ f(x)f(y)`.
pub fn homomorphism_violation(
    map: &[usize],
    source: &AbelianH1,
    target: &AbelianH1,
) -> Option<(usize, usize)> {
    for x in 0..source.order() {
        for y in 0..source.order() {
            if map[source.mul_table[x][y]] != target.mul_table[map[x]][map[y]] {
                return Some((x, y));
            }
        }
    }
    None
}

/// Lookup table from classes of one `AbelianH1` to indices, for callers
/// that hold representatives.
pub fn class_index(h: &AbelianH1) -> HashMap<Cochain1, usize> {
    h.classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.representative.clone(), i))
        .collect()
}

/// Every check for one symmetrically braided crossed module: its axioms
/// including symmetry, the derived
/// identities, [`validate_dbar_structures`], and `H¹` as `coker d̄` (the
/// coset/orbit bijection and commutativity, verified by [`h1_abelian_with`]).
pub fn braided_suite(b: &Braiding, cfg: &SweepConfig) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    report.merge_prefixed("crossed module: ", validate_crossed_module(b.cm()));
    report.merge_prefixed("braiding: ", validate_braiding(b, BraidingMode::Symmetric));
    report.merge_prefixed("derived: ", derived_identities(b));
    report.merge(validate_dbar_structures(b, cfg)?);
    let pointed = h1_pointed_with(b.cm(), cfg.budget)?.len();
    let mut c = report.check("H1 = coker dbar, abelian");
    match h1_abelian_with(b, cfg.budget) {
        Ok(ab) => {
            let k = ab.order();
            let commutative =
                (0..k).all(|x| (0..k).all(|y| ab.mul_table[x][y] == ab.mul_table[y][x]));
            let order: u64 = ab.invariant_factors.iter().product();
            c.record(
                k == pointed && commutative && order == k as u64,
                &[],
                || {
                    format!(
                        "{k} classes against {pointed} orbits, invariants {:?}",
                        ab.invariant_factors
                    )
                },
            );
        }
        Err(e @ (Error::StructureFailure(_) | Error::NonNormalImage(_))) => {
            c.record(false, &[], || e.to_string())
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}
