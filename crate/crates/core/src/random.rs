//! Seeded generators of small symmetrically braided crossed modules and
//! finite Γ-modules for the randomized property suites.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::crossed::{commutator_braiding, Braiding, CrossedModule};
use crate::error::Result;
use crate::fixtures;
use crate::gamma::GammaGroup;
use crate::group::{compose, FiniteGroup, GroupHom};
use crate::modules::{FgAbelianGroup, GammaModule, IntMatrix};
use crate::out::{compute_out, OutData};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Group generated by permutations of `0..degree`; the identity gets index 0.
pub fn perm_group(degree: usize, gens: &[Vec<usize>]) -> FiniteGroup {
    let id: Vec<usize> = (0..degree).collect();
    let mut elems = vec![id.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for g in gens {
            let y = compose(&x, g);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
    }
    let table = elems
        .iter()
        .map(|p| elems.iter().map(|q| index[&compose(p, q)]).collect())
        .collect();
    FiniteGroup::from_table(table, None).expect("permutation groups are groups")
}

fn cycle(degree: usize, points: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    for (k, &x) in points.iter().enumerate() {
        p[x] = points[(k + 1) % points.len()];
    }
    p
}

fn dihedral(n: usize) -> FiniteGroup {
    let rot = cycle(n, &(0..n).collect::<Vec<_>>());
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    perm_group(n, &[rot, refl])
}

/// `ℤ/m₁ × ℤ/m₂ × …`, with the first factor most significant in the index.
pub fn abelian(moduli: &[usize]) -> FiniteGroup {
    moduli.iter().fold(FiniteGroup::trivial(), |acc, &m| {
        FiniteGroup::direct_product(&acc, &FiniteGroup::cyclic(m))
    })
}

fn decode(moduli: &[usize], mut x: usize) -> Vec<usize> {
    let mut v = vec![0; moduli.len()];
    for i in (0..moduli.len()).rev() {
        v[i] = x % moduli[i];
        x /= moduli[i];
    }
    v
}

fn encode(moduli: &[usize], v: &[usize]) -> usize {
    moduli
        .iter()
        .zip(v)
        .fold(0, |acc, (&m, &x)| acc * m + x % m)
}

/// A catalogue of groups of order at most 16.
pub fn small_groups() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    for shape in [
        &[1][..],
        &[2],
        &[3],
        &[4],
        &[5],
        &[6],
        &[7],
        &[8],
        &[9],
        &[10],
        &[12],
        &[16],
        &[2, 2],
        &[2, 4],
        &[2, 2, 2],
        &[3, 3],
        &[2, 6],
        &[4, 4],
        &[2, 8],
        &[2, 2, 4],
        &[2, 2, 2, 2],
    ] {
        let name = shape
            .iter()
            .map(|m| format!("Z{m}"))
            .collect::<Vec<_>>()
            .join("x");
        out.push((name, abelian(shape)));
    }
    let dic3 = perm_group(
        7,
        &[
            cycle(7, &[0, 1, 2]),
            compose(&cycle(7, &[1, 2]), &cycle(7, &[3, 4, 5, 6])),
        ],
    );
    let a4 = perm_group(
        4,
        &[
            cycle(4, &[0, 1, 2]),
            compose(&cycle(4, &[0, 1]), &cycle(4, &[2, 3])),
        ],
    );
    out.extend([
        ("S3".to_string(), fixtures::s3()),
        ("D4".to_string(), dihedral(4)),
        ("Q8".to_string(), fixtures::q8()),
        ("D5".to_string(), dihedral(5)),
        ("D6".to_string(), dihedral(6)),
        ("A4".to_string(), a4),
        ("Dic3".to_string(), dic3),
        ("D8".to_string(), dihedral(8)),
        (
            "Z2xQ8".to_string(),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &fixtures::q8()),
        ),
        (
            "Z2xD4".to_string(),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &dihedral(4)),
        ),
    ]);
    out
}

/// Extends `γ ↦ images[i]` on the generators `gens` of Γ to all of Γ;
/// `None` if the assignment is not a homomorphism.
pub fn extend_action(
    gamma: &FiniteGroup,
    degree: usize,
    gens: &[usize],
    images: &[Vec<usize>],
) -> Option<Vec<Vec<usize>>> {
    let mut action: Vec<Option<Vec<usize>>> = vec![None; gamma.order()];
    action[gamma.identity()] = Some((0..degree).collect());
    let mut queue = vec![gamma.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (g, img) in gens.iter().zip(images) {
            let y = gamma.mul(x, *g);
            let p = compose(action[x].as_ref().expect("visited"), img);
            match &action[y] {
                Some(q) if *q != p => return None,
                Some(_) => {}
                None => {
                    action[y] = Some(p);
                    queue.push(y);
                }
            }
        }
    }
    action.into_iter().collect()
}

fn closure_normal(g: &FiniteGroup, seed: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> = seed.to_vec();
    loop {
        let span = g.closure(&gens);
        let conj: BTreeSet<usize> = span
            .iter()
            .flat_map(|&h| g.elements().map(move |x| (x, h)))
            .map(|(x, h)| g.conj(x, h))
            .collect();
        if conj.iter().all(|c| span.binary_search(c).is_ok()) {
            return span;
        }
        gens.extend(conj);
    }
}

/// Which construction produced a random braided crossed module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `A ↠ A/K` with `K` central, commutator braiding.
    CentralQuotient,
    /// `A ⊴ G` containing `[G, G]`, braiding `{g, h} = [g, h]`.
    NormalInclusion,
    /// Abelian `A`, `G` with `ρ = 0` and an alternating pairing.
    AbelianPairing,
    /// `1 → G` with `G` abelian, or `A → 1`.
    Trivial,
    Product,
}

#[derive(Clone, Debug)]
pub struct RandomBraided {
    pub family: Family,
    pub description: String,
    pub braiding: Braiding,
}

/// Draws symmetrically braided crossed modules with `|A|, |G| ≤ 16` and
/// `|Γ| ≤ 4`.
pub struct BraidedGenerator {
    rng: ChaCha8Rng,
    groups: Vec<(String, FiniteGroup)>,
    auts: HashMap<usize, Arc<OutData>>,
}

fn gamma_choices() -> Vec<(String, FiniteGroup)> {
    let mut v: Vec<(String, FiniteGroup)> = (1..=4)
        .map(|m| (format!("Z{m}"), FiniteGroup::cyclic(m)))
        .collect();
    v.push(("Z2xZ2".into(), abelian(&[2, 2])));
    v
}

impl BraidedGenerator {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: rng(seed),
            groups: small_groups(),
            auts: HashMap::new(),
        }
    }

    fn automorphisms(&mut self, group: usize) -> Arc<OutData> {
        let g = &self.groups[group].1;
        self.auts
            .entry(group)
            .or_insert_with(|| Arc::new(compute_out(g).expect("small groups have small Aut")))
            .clone()
    }

    fn pick_group(&mut self, max: usize, nonabelian_bias: bool) -> usize {
        let fits: Vec<usize> = (0..self.groups.len())
            .filter(|&i| self.groups[i].1.order() <= max)
            .filter(|&i| {
                !nonabelian_bias || !self.groups[i].1.is_abelian() || self.rng.gen_bool(0.4)
            })
            .collect();
        *fits.choose(&mut self.rng).unwrap_or(&0)
    }

    /// A Γ-action on group `idx` by automorphisms preserving `keep`.
    fn action(&mut self, gamma: &FiniteGroup, idx: usize, keep: &[usize]) -> Vec<Vec<usize>> {
        let n = self.groups[idx].1.order();
        let trivial = vec![(0..n).collect::<Vec<_>>(); gamma.order()];
        if gamma.order() == 1 || self.rng.gen_bool(0.3) {
            return trivial;
        }
        let out = self.automorphisms(idx);
        let keep: BTreeSet<usize> = keep.iter().copied().collect();
        let usable: Vec<&Vec<usize>> = out
            .automorphisms()
            .iter()
            .filter(|p| keep.iter().all(|x| keep.contains(&p[*x])))
            .collect();
        let gens = gamma.generators();
        for _ in 0..40 {
            let images: Vec<Vec<usize>> = gens
                .iter()
                .map(|_| (*usable.choose(&mut self.rng).expect("identity is usable")).clone())
                .collect();
            if let Some(a) = extend_action(gamma, n, &gens, &images) {
                return a;
            }
        }
        trivial
    }

    fn central_quotient(
        &mut self,
        gamma: &FiniteGroup,
        max_a: usize,
        max_g: usize,
    ) -> Option<RandomBraided> {
        let ai = self.pick_group(max_a, true);
        let a = self.groups[ai].1.clone();
        let center = a.center();
        let picks: Vec<usize> = (0..self.rng.gen_range(0..=2))
            .map(|_| *center.choose(&mut self.rng).expect("identity is central"))
            .collect();
        let k = a.closure(&picks);
        let (g, proj) = a.quotient(&k).ok()?;
        if g.order() > max_g {
            return None;
        }
        let act_a = self.action(gamma, ai, &k);
        let mut rep = vec![usize::MAX; g.order()];
        for x in a.elements() {
            if rep[proj[x]] == usize::MAX {
                rep[proj[x]] = x;
            }
        }
        let act_g: Vec<Vec<usize>> = act_a
            .iter()
            .map(|p| rep.iter().map(|&r| proj[p[r]]).collect())
            .collect();
        let ga = GammaGroup::new(gamma.clone(), a.clone(), act_a).ok()?;
        let gg = GammaGroup::new(gamma.clone(), g.clone(), act_g).ok()?;
        let rho = GroupHom::new(&a, &g, proj).ok()?;
        let cm = CrossedModule::from_central_quotient(ga, gg, rho).ok()?;
        let braiding = commutator_braiding(&cm).ok()?;
        Some(RandomBraided {
            family: Family::CentralQuotient,
            description: format!(
                "{} / central subgroup of order {}",
                self.groups[ai].0,
                k.len()
            ),
            braiding,
        })
    }

    fn normal_inclusion(
        &mut self,
        gamma: &FiniteGroup,
        max_a: usize,
        max_g: usize,
    ) -> Option<RandomBraided> {
        let gi = self.pick_group(max_g, true);
        let g = self.groups[gi].1.clone();
        let mut seed: Vec<usize> = g
            .elements()
            .flat_map(|x| g.elements().map(move |y| (x, y)))
            .map(|(x, y)| g.commutator(x, y))
            .collect();
        for _ in 0..self.rng.gen_range(0..=1) {
            seed.push(self.rng.gen_range(0..g.order()));
        }
        let n = closure_normal(&g, &seed);
        if n.len() > max_a {
            return None;
        }
        let (a, emb) = g.subgroup(&n).ok()?;
        let act_g = self.action(gamma, gi, &n);
        let pos = |x: usize| emb.binary_search(&x).expect("preserved");
        let act_a: Vec<Vec<usize>> = act_g
            .iter()
            .map(|p| emb.iter().map(|&x| pos(p[x])).collect())
            .collect();
        let ga = GammaGroup::new(gamma.clone(), a.clone(), act_a).ok()?;
        let gg = GammaGroup::new(gamma.clone(), g.clone(), act_g).ok()?;
        let rho = GroupHom::new(&a, &g, emb.clone()).ok()?;
        let cm = CrossedModule::from_normal_inclusion(ga, gg, rho).ok()?;
        let pairing = g
            .elements()
            .map(|x| g.elements().map(|y| pos(g.commutator(x, y))).collect())
            .collect();
        let braiding = Braiding::new(cm, pairing).ok()?;
        Some(RandomBraided {
            family: Family::NormalInclusion,
            description: format!(
                "normal subgroup of order {} in {}",
                n.len(),
                self.groups[gi].0
            ),
            braiding,
        })
    }

    fn abelian_pairing(
        &mut self,
        gamma: &FiniteGroup,
        max_a: usize,
        max_g: usize,
    ) -> Option<RandomBraided> {
        const SHAPES: [&[usize]; 9] = [
            &[2],
            &[3],
            &[4],
            &[6],
            &[8],
            &[2, 2],
            &[2, 4],
            &[4, 4],
            &[2, 2, 2],
        ];
        let fit = |max: usize| -> Vec<&[usize]> {
            SHAPES
                .iter()
                .copied()
                .filter(|s| s.iter().product::<usize>() <= max)
                .collect()
        };
        let sa = *fit(max_a).choose(&mut self.rng)?;
        let sg = *fit(max_g).choose(&mut self.rng)?;
        let (a, g) = (abelian(sa), abelian(sg));
        // c[l][i][j] = coefficient of {e_i, e_j} in the l-th factor of A;
        // alternating, so the pairing is symmetric and Picard.
        let k = sg.len();
        let mut coeffs = vec![vec![vec![0usize; k]; k]; sa.len()];
        for (l, &n) in sa.iter().enumerate() {
            for i in 0..k {
                for j in i + 1..k {
                    let step = lcm(n / gcd(n, sg[i]), n / gcd(n, sg[j]));
                    let c = step * self.rng.gen_range(0..n / step) % n;
                    coeffs[l][i][j] = c;
                    coeffs[l][j][i] = (n - c) % n;
                }
            }
        }
        let pair = |x: usize, y: usize| -> usize {
            let (u, v) = (decode(sg, x), decode(sg, y));
            let val: Vec<usize> = sa
                .iter()
                .enumerate()
                .map(|(l, &n)| {
                    let mut s = 0;
                    for (i, &ui) in u.iter().enumerate() {
                        for (j, &vj) in v.iter().enumerate() {
                            s += coeffs[l][i][j] * ui * vj;
                        }
                    }
                    s % n
                })
                .collect();
            encode(sa, &val)
        };
        let pairing: Vec<Vec<usize>> = g
            .elements()
            .map(|x| g.elements().map(|y| pair(x, y)).collect())
            .collect();
        // Γ inverts G through a character or acts trivially; the pairing is
        // invariant under simultaneous inversion.
        let gens = gamma.generators();
        let inv: Vec<usize> = g.elements().map(|x| g.inv(x)).collect();
        let id: Vec<usize> = g.elements().collect();
        let images: Vec<Vec<usize>> = gens
            .iter()
            .map(|_| {
                if self.rng.gen_bool(0.5) {
                    inv.clone()
                } else {
                    id.clone()
                }
            })
            .collect();
        let act_g = extend_action(gamma, g.order(), &gens, &images)
            .unwrap_or_else(|| vec![id.clone(); gamma.order()]);
        let ga = GammaGroup::trivial_action(gamma.clone(), a.clone());
        let gg = GammaGroup::new(gamma.clone(), g.clone(), act_g).ok()?;
        let theta = vec![a.elements().collect(); g.order()];
        let cm = CrossedModule::new(ga, gg, vec![g.identity(); a.order()], theta).ok()?;
        let braiding = Braiding::new(cm, pairing).ok()?;
        Some(RandomBraided {
            family: Family::AbelianPairing,
            description: format!("pairing {sg:?} x {sg:?} -> {sa:?}"),
            braiding,
        })
    }

    fn trivial(
        &mut self,
        gamma: &FiniteGroup,
        max_a: usize,
        max_g: usize,
    ) -> Option<RandomBraided> {
        let abelian_fits: Vec<usize> = (0..self.groups.len())
            .filter(|&i| self.groups[i].1.is_abelian())
            .collect();
        let i = *abelian_fits.choose(&mut self.rng)?;
        let x = self.groups[i].1.clone();
        let act = self.action(gamma, i, &[]);
        let gx = GammaGroup::new(gamma.clone(), x.clone(), act).ok()?;
        let (cm, what) = if self.rng.gen_bool(0.5) {
            if x.order() > max_g {
                return None;
            }
            (CrossedModule::trivial_over(gx), "1 -> ")
        } else {
            if x.order() > max_a {
                return None;
            }
            (CrossedModule::to_trivial(gx), "-> 1 from ")
        };
        Some(RandomBraided {
            family: Family::Trivial,
            description: format!("{what}{}", self.groups[i].0),
            braiding: Braiding::trivial(cm),
        })
    }

    fn draw(
        &mut self,
        gamma: &FiniteGroup,
        max_a: usize,
        max_g: usize,
        allow_product: bool,
    ) -> RandomBraided {
        loop {
            let roll = self.rng.gen_range(0..if allow_product { 9 } else { 8 });
            let got = match roll {
                0..=2 => self.central_quotient(gamma, max_a, max_g),
                3..=4 => self.normal_inclusion(gamma, max_a, max_g),
                5..=6 => self.abelian_pairing(gamma, max_a, max_g),
                7 => self.trivial(gamma, max_a, max_g),
                _ => {
                    let left = self.draw(gamma, 4, 4, false);
                    let (la, lg) = (
                        left.braiding.cm().a().order(),
                        left.braiding.cm().g().order(),
                    );
                    let right = self.draw(gamma, 16 / la, 16 / lg, false);
                    Braiding::direct_product(&left.braiding, &right.braiding)
                        .ok()
                        .map(|braiding| RandomBraided {
                            family: Family::Product,
                            description: format!(
                                "({}) x ({})",
                                left.description, right.description
                            ),
                            braiding,
                        })
                }
            };
            if let Some(b) = got {
                return b;
            }
        }
    }

    /// The next random braided crossed module.
    pub fn next_braided(&mut self) -> RandomBraided {
        let gammas = gamma_choices();
        let (gname, gamma) = gammas.choose(&mut self.rng).expect("nonempty").clone();
        let mut b = self.draw(&gamma, 16, 16, true);
        b.description = format!("{} over {gname}", b.description);
        b
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A finite module `⊕ ℤ/dᵢ` in diagonal coordinates with its action
/// matrices, entries read mod `dᵢ` row-wise.
#[derive(Clone, Debug)]
pub struct PlainModule {
    pub moduli: Vec<u64>,
    pub action: Vec<IntMatrix>,
}

impl PlainModule {
    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }
}

#[derive(Clone, Debug)]
pub struct RandomModule {
    pub description: String,
    /// The module in scrambled coordinates, as handed to the library.
    pub module: GammaModule,
    pub plain: PlainModule,
}

/// Finite groups of order at most 8 to act on random modules.
pub fn small_gammas() -> Vec<(String, FiniteGroup)> {
    let mut v: Vec<(String, FiniteGroup)> = (1..=8)
        .map(|m| (format!("Z{m}"), FiniteGroup::cyclic(m)))
        .collect();
    v.extend([
        ("Z2xZ2".to_string(), abelian(&[2, 2])),
        ("Z2xZ4".to_string(), abelian(&[2, 4])),
        ("Z2xZ2xZ2".to_string(), abelian(&[2, 2, 2])),
        ("S3".to_string(), fixtures::s3()),
        ("D4".to_string(), dihedral(4)),
        ("Q8".to_string(), fixtures::q8()),
    ]);
    v
}

/// Homomorphisms Γ → {±1}, as sign tables.
fn sign_characters(gamma: &FiniteGroup) -> Vec<Vec<i64>> {
    let gens = gamma.generators();
    let mut out = Vec::new();
    for mask in 0..1u32 << gens.len() {
        let images: Vec<Vec<usize>> = (0..gens.len())
            .map(|i| {
                if mask >> i & 1 == 1 {
                    vec![1, 0]
                } else {
                    vec![0, 1]
                }
            })
            .collect();
        if let Some(a) = extend_action(gamma, 2, &gens, &images) {
            out.push(a.iter().map(|p| if p[0] == 0 { 1 } else { -1 }).collect());
        }
    }
    out
}

/// Left cosets of the subgroup `h`: the coset index of every element.
fn cosets(gamma: &FiniteGroup, h: &[usize]) -> (usize, Vec<usize>) {
    let mut of = vec![usize::MAX; gamma.order()];
    let mut count = 0;
    for x in gamma.elements() {
        if of[x] == usize::MAX {
            for &y in h {
                of[gamma.mul(x, y)] = count;
            }
            count += 1;
        }
    }
    (count, of)
}

fn unit_mod(d: u64, rng: &mut ChaCha8Rng, order: usize) -> u64 {
    let units: Vec<u64> = (1..d.max(2))
        .filter(|&u| gcd(u as usize, d as usize) == 1)
        .filter(|&u| {
            let mut x = 1u64;
            for _ in 0..order {
                x = x * u % d;
            }
            x == 1 % d
        })
        .collect();
    *units.choose(rng).unwrap_or(&1)
}

/// A random finite Γ-module with `|M| ≤ max_order` and `|Γ| ≤ 8`: a sum of
/// sign-twisted permutation modules `ℤ/d[Γ/H]` (and, for cyclic Γ, twists
/// by units of ℤ/d), presented in a scrambled basis.
pub fn random_module(rng: &mut ChaCha8Rng, max_order: u64) -> Result<RandomModule> {
    let gammas = small_gammas();
    let (gname, gamma) = gammas.choose(rng).expect("nonempty").clone();
    let characters = sign_characters(&gamma);
    let cyclic = gamma.generators().len() == 1;
    let mut moduli: Vec<u64> = Vec::new();
    let mut blocks: Vec<(usize, Vec<IntMatrix>)> = Vec::new();
    let mut parts = Vec::new();
    let mut size = 1u64;
    let target = rng.gen_range(2..=max_order.max(2));
    while size < target && blocks.len() < 4 {
        let extra: Vec<usize> = (0..rng.gen_range(0..=2))
            .map(|_| rng.gen_range(0..gamma.order()))
            .collect();
        let mut h = gamma.closure(&extra);
        let mut k = gamma.order() / h.len();
        let ds: Vec<u64> = [2u64, 3, 4, 5, 6, 8, 9, 12, 16]
            .into_iter()
            .filter(|&d| size.saturating_mul(d.saturating_pow(k as u32)) <= max_order)
            .collect();
        let ds = if ds.is_empty() {
            h = gamma.elements().collect();
            k = 1;
            [2u64, 3, 4, 5, 8]
                .into_iter()
                .filter(|&d| size * d <= max_order)
                .collect()
        } else {
            ds
        };
        let Some(&d) = ds.choose(rng) else { break };
        let (count, of) = cosets(&gamma, &h);
        debug_assert_eq!(count, k);
        let chi = characters.choose(rng).expect("trivial character").clone();
        let unit_twist = cyclic && k == 1 && rng.gen_bool(0.5);
        let u = if unit_twist {
            unit_mod(d, rng, gamma.order())
        } else {
            1
        };
        let mats: Vec<IntMatrix> = gamma
            .elements()
            .map(|s| {
                let mut m = vec![vec![0i64; k]; k];
                for c in 0..k {
                    let rep = (0..gamma.order()).find(|&x| of[x] == c).expect("coset");
                    let target = of[gamma.mul(s, rep)];
                    let mut coeff = chi[s];
                    if unit_twist {
                        let mut x = 1u64;
                        for _ in 0..s {
                            x = x * u % d;
                        }
                        coeff *= x as i64;
                    }
                    m[target][c] = coeff;
                }
                m
            })
            .collect();
        parts.push(format!(
            "Z/{d}[{k} cosets]{}",
            if u != 1 {
                format!(" twisted by {u}")
            } else {
                String::new()
            }
        ));
        moduli.extend(std::iter::repeat(d).take(k));
        blocks.push((k, mats));
        size *= d.pow(k as u32);
    }
    if moduli.is_empty() {
        moduli.push(1);
        blocks.push((1, vec![vec![vec![1]]; gamma.order()]));
        parts.push("0".into());
    }
    let p = moduli.len();
    let action: Vec<IntMatrix> = gamma
        .elements()
        .map(|s| {
            let mut m = vec![vec![0i64; p]; p];
            let mut off = 0;
            for (k, mats) in &blocks {
                for i in 0..*k {
                    for j in 0..*k {
                        m[off + i][off + j] = mats[s][i][j];
                    }
                }
                off += k;
            }
            m
        })
        .collect();

    // x = U·y with U unimodular: relations dᵢ·(column i of U⁻¹), action U⁻¹AU.
    let (u, u_inv) = random_unimodular(rng, p);
    let mut relations: Vec<Vec<i64>> = (0..p)
        .map(|i| (0..p).map(|r| moduli[i] as i64 * u_inv[r][i]).collect())
        .collect();
    if p > 1 && rng.gen_bool(0.5) {
        let (a, b) = (rng.gen_range(0..p), rng.gen_range(0..p));
        let extra = relations[a]
            .iter()
            .zip(&relations[b])
            .map(|(x, y)| x + 2 * y)
            .collect();
        relations.push(extra);
    }
    let scrambled: Vec<IntMatrix> = action
        .iter()
        .map(|a| mat_mul(&mat_mul(&u_inv, a), &u))
        .collect();
    let module = GammaModule::new(FgAbelianGroup::new(p, relations)?, gamma, scrambled)?;
    Ok(RandomModule {
        description: format!("{} over {gname}", parts.join(" + ")),
        module,
        plain: PlainModule { moduli, action },
    })
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> IntMatrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum())
                .collect()
        })
        .collect()
}

/// A product of a few elementary matrices with small coefficients, and its
/// inverse.
fn random_unimodular(rng: &mut ChaCha8Rng, p: usize) -> (IntMatrix, IntMatrix) {
    let id: IntMatrix = (0..p)
        .map(|i| (0..p).map(|j| i64::from(i == j)).collect())
        .collect();
    let (mut u, mut inv) = (id.clone(), id);
    if p < 2 {
        return (u, inv);
    }
    for _ in 0..rng.gen_range(0..=p + 1) {
        let i = rng.gen_range(0..p);
        let j = (i + rng.gen_range(1..p)) % p;
        let k = rng.gen_range(-2i64..=2);
        // U ← U·E with E = I + k·e_{ij}: column j += k·column i.
        for row in u.iter_mut() {
            row[j] += k * row[i];
        }
        // U⁻¹ ← E⁻¹·U⁻¹: row i −= k·row j.
        let rj = inv[j].clone();
        for (x, y) in inv[i].iter_mut().zip(&rj) {
            *x -= k * y;
        }
    }
    (u, inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_is_sound() {
        let groups = small_groups();
        let orders: Vec<usize> = groups.iter().map(|(_, g)| g.order()).collect();
        assert!(orders.iter().all(|&n| n <= 16));
        let find = |n: &str| groups.iter().find(|(m, _)| m == n).unwrap().1.clone();
        assert_eq!(find("Dic3").order(), 12);
        assert_eq!(find("A4").order(), 12);
        assert_eq!(find("D8").order(), 16);
        assert_eq!(find("A4").center().len(), 1);
        assert_eq!(find("Dic3").center().len(), 2);
    }

    #[test]
    fn unimodular_pair_is_inverse() {
        let mut r = rng(3);
        for p in 1..5 {
            let (u, v) = random_unimodular(&mut r, p);
            let id: IntMatrix = (0..p)
                .map(|i| (0..p).map(|j| i64::from(i == j)).collect())
                .collect();
            assert_eq!(mat_mul(&u, &v), id);
        }
    }

    #[test]
    fn characters_of_small_groups() {
        let count = |g: &FiniteGroup| sign_characters(g).len();
        assert_eq!(count(&FiniteGroup::cyclic(3)), 1);
        assert_eq!(count(&FiniteGroup::cyclic(4)), 2);
        assert_eq!(count(&fixtures::s3()), 2);
        assert_eq!(count(&fixtures::q8()), 4);
    }
}
