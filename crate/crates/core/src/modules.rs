//! Finitely generated abelian groups and Γ-modules given by integer
//! presentations; `H⁰` and `H¹` by exact linear algebra over ℤ; short exact
//! sequences and the connecting map `C^Γ′ → H¹(Γ′, A)`.
//!
//! Elements are integer column vectors in the generators. Relations are
//! row vectors; the subgroup they span is the relation lattice `R`.
//! `γ` acts by `x ↦ A_γ·x`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::cochain::default_budget;
use crate::error::{bound_check, Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{snf_with_shape, Lattice, Quotient, Smith};

pub type Vector = Vec<i64>;
pub type IntMatrix = Vec<Vec<i64>>;

fn too_big(what: &str) -> Error {
    Error::BoundExceeded {
        what: format!("{what} (64-bit integer)"),
        needed: u128::MAX,
        budget: i64::MAX as u128,
    }
}

fn to_i64(x: &BigInt, what: &str) -> Result<i64> {
    x.to_i64().ok_or_else(|| too_big(what))
}

fn to_i128(x: &BigInt, what: &str) -> Result<i128> {
    x.to_i128().ok_or_else(|| too_big(what))
}

fn widen(v: &[i64]) -> Vec<i128> {
    v.iter().map(|&x| i128::from(x)).collect()
}

fn mat_vec(m: &[Vec<i64>], x: &[i64]) -> Vec<i128> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .map(|(&a, &b)| i128::from(a) * i128::from(b))
                .sum()
        })
        .collect()
}

fn narrow(v: &[i128], what: &str) -> Result<Vector> {
    v.iter()
        .map(|&x| i64::try_from(x).map_err(|_| too_big(what)))
        .collect()
}

/// A finitely generated abelian group `ℤ^p / R`.
#[derive(Clone, Debug)]
pub struct FgAbelianGroup {
    generators: usize,
    relations: IntMatrix,
    smith: Smith,
    lattice: Lattice,
    invariants: Vec<u64>,
}

impl PartialEq for FgAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.relations == other.relations
    }
}

impl Eq for FgAbelianGroup {}

impl FgAbelianGroup {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.iter().any(|r| r.len() != generators) {
            return Err(Error::Malformed(format!(
                "every relation must have {generators} coefficients"
            )));
        }
        let big: Vec<Vec<BigInt>> = relations
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let smith = snf_with_shape(relations.len(), generators, &big);
        let lattice = Lattice::from_generators(
            generators,
            &relations.iter().map(|r| widen(r)).collect::<Vec<_>>(),
        )?;
        let mut invariants = Vec::new();
        for d in &smith.diagonal {
            if !d.is_zero() && !d.is_one() {
                invariants.push(d.to_u64().ok_or_else(|| too_big("invariant factor"))?);
            }
        }
        invariants.extend(std::iter::repeat(0).take(generators - smith.rank()));
        Ok(Self {
            generators,
            relations,
            smith,
            lattice,
            invariants,
        })
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, Vec::new()).expect("free group")
    }

    /// `ℤ/n`, with `n = 0` giving ℤ.
    pub fn cyclic(n: i64) -> Self {
        let relations = if n == 0 { vec![] } else { vec![vec![n]] };
        Self::new(1, relations).expect("cyclic group")
    }

    /// `⊕ ℤ/dᵢ` with `dᵢ = 0` standing for ℤ.
    pub fn from_invariants(factors: &[u64]) -> Result<Self> {
        let p = factors.len();
        let mut relations = Vec::new();
        for (i, &d) in factors.iter().enumerate() {
            if d != 0 {
                let mut r = vec![0; p];
                r[i] = i64::try_from(d).map_err(|_| too_big("invariant factor"))?;
                relations.push(r);
            }
        }
        Self::new(p, relations)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    pub fn smith(&self) -> &Smith {
        &self.smith
    }

    pub fn relation_lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Nontrivial torsion invariant factors in divisor-chain order, then one
    /// 0 per free summand.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariants
    }

    pub fn free_rank(&self) -> usize {
        self.invariants.iter().filter(|&&d| d == 0).count()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<u128> {
        self.is_finite().then(|| {
            self.invariants
                .iter()
                .fold(1u128, |acc, &d| acc.saturating_mul(u128::from(d)))
        })
    }

    /// `y = x·V`; `x ∈ R` iff `yᵢ ≡ 0 mod dᵢ` on every diagonal slot and
    /// `yᵢ = 0` past the rank.
    fn smith_coordinates(&self, x: &[i128]) -> Vec<BigInt> {
        (0..self.generators)
            .map(|i| {
                let mut s = BigInt::zero();
                for (l, &xl) in x.iter().enumerate() {
                    if xl != 0 {
                        s += &self.smith.v[l][i] * BigInt::from(xl);
                    }
                }
                s
            })
            .collect()
    }

    fn modulus(&self, i: usize) -> BigInt {
        self.smith
            .diagonal
            .get(i)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn is_relation(&self, x: &[i128]) -> bool {
        let y = self.smith_coordinates(x);
        y.iter().enumerate().all(|(i, yi)| {
            let d = self.modulus(i);
            if d.is_zero() {
                yi.is_zero()
            } else {
                (yi % d).is_zero()
            }
        })
    }

    /// Unique representative of the class of `x`: Smith coordinates reduced
    /// into `[0, dᵢ)` on torsion slots, free slots untouched.
    pub fn normal_form_wide(&self, x: &[i128]) -> Result<Vector> {
        if x.len() != self.generators {
            return Err(Error::Malformed(format!(
                "element must have {} coordinates",
                self.generators
            )));
        }
        let mut y = self.smith_coordinates(x);
        for (i, yi) in y.iter_mut().enumerate() {
            let d = self.modulus(i);
            if !d.is_zero() {
                *yi = yi.mod_floor(&d);
            }
        }
        (0..self.generators)
            .map(|j| {
                let mut s = BigInt::zero();
                for (i, yi) in y.iter().enumerate() {
                    if !yi.is_zero() {
                        s += yi * &self.smith.v_inv[i][j];
                    }
                }
                to_i64(&s, "normal form")
            })
            .collect()
    }

    pub fn normal_form(&self, x: &[i64]) -> Result<Vector> {
        self.normal_form_wide(&widen(x))
    }

    pub fn same_class(&self, x: &[i64], y: &[i64]) -> bool {
        let diff: Vec<i128> = x
            .iter()
            .zip(y)
            .map(|(&a, &b)| i128::from(a) - i128::from(b))
            .collect();
        self.is_relation(&diff)
    }

    pub fn zero(&self) -> Vector {
        vec![0; self.generators]
    }

    /// Every element, as sorted normal forms.
    pub fn elements(&self, budget: u128) -> Result<Vec<Vector>> {
        let order = self
            .order()
            .ok_or_else(|| Error::Malformed("group is infinite".into()))?;
        bound_check("group elements", order, budget)?;
        let slots: Vec<(usize, i64)> = (0..self.generators)
            .filter_map(|i| {
                let d = self.modulus(i);
                (!d.is_zero() && !d.is_one()).then(|| (i, d.to_i64().unwrap_or(i64::MAX)))
            })
            .collect();
        let mut out = Vec::with_capacity(order as usize);
        let mut y = vec![0i64; slots.len()];
        loop {
            let mut x = vec![BigInt::zero(); self.generators];
            for (k, &(i, _)) in slots.iter().enumerate() {
                for (j, xj) in x.iter_mut().enumerate() {
                    *xj += BigInt::from(y[k]) * &self.smith.v_inv[i][j];
                }
            }
            let wide: Vec<i128> = x
                .iter()
                .map(|v| to_i128(v, "element"))
                .collect::<Result<_>>()?;
            out.push(self.normal_form_wide(&wide)?);
            let mut k = 0;
            while k < slots.len() {
                y[k] += 1;
                if y[k] < slots[k].1 {
                    break;
                }
                y[k] = 0;
                k += 1;
            }
            if k == slots.len() {
                break;
            }
        }
        out.sort();
        Ok(out)
    }

    /// Congruences on `x ∈ ℤ^dim` expressing `M·x ∈ R`, for a
    /// `generators × dim` matrix `M`.
    fn membership_congruences(
        &self,
        m: &[Vec<i128>],
        dim: usize,
    ) -> Result<Vec<(Vec<(usize, i128)>, i128)>> {
        let mut out = Vec::new();
        for i in 0..self.generators {
            let d = self.modulus(i);
            if d.is_one() {
                continue;
            }
            let modulus = to_i128(&d, "relation modulus")?;
            let mut row = Vec::new();
            for k in 0..dim {
                let mut s = BigInt::zero();
                for (l, ml) in m.iter().enumerate() {
                    if ml[k] != 0 {
                        s += &self.smith.v[l][i] * BigInt::from(ml[k]);
                    }
                }
                if !s.is_zero() {
                    row.push((k, to_i128(&s, "congruence coefficient")?));
                }
            }
            out.push((row, modulus));
        }
        Ok(out)
    }

    /// Exponent of the group, or 0 when it is infinite.
    pub fn exponent(&self) -> u64 {
        if !self.is_finite() {
            return 0;
        }
        self.invariant_factors().last().copied().unwrap_or(1)
    }

    /// `{x ∈ ℤ^dim : M·x ∈ R}`.
    fn preimage_lattice(&self, m: &[Vec<i128>], dim: usize) -> Result<Lattice> {
        let congruences = self.membership_congruences(m, dim)?;
        Lattice::kernel_mod_bounded(dim, congruences, i128::from(self.exponent()))
    }

    /// Some `x` with `M·x ≡ z` modulo `R`, if one exists.
    fn solve(&self, m: &[Vec<i128>], dim: usize, z: &[i128]) -> Result<Option<Vec<i128>>> {
        let p = self.generators;
        let r = self.relations.len();
        let k: Vec<Vec<BigInt>> = (0..p)
            .map(|l| {
                (0..dim)
                    .map(|c| BigInt::from(m[l][c]))
                    .chain(self.relations.iter().map(|rel| BigInt::from(rel[l])))
                    .collect()
            })
            .collect();
        let s = snf_with_shape(p, dim + r, &k);
        let y: Vec<BigInt> = (0..p)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (l, &zl) in z.iter().enumerate() {
                    if zl != 0 {
                        acc += &s.u[i][l] * BigInt::from(zl);
                    }
                }
                acc
            })
            .collect();
        let mut w = vec![BigInt::zero(); dim + r];
        for (i, yi) in y.iter().enumerate() {
            let d = s.diagonal.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                if !yi.is_zero() {
                    return Ok(None);
                }
            } else {
                if !(yi % &d).is_zero() {
                    return Ok(None);
                }
                w[i] = yi / &d;
            }
        }
        let x = (0..dim)
            .map(|row| {
                let mut acc = BigInt::zero();
                for (i, wi) in w.iter().enumerate() {
                    if !wi.is_zero() {
                        acc += &s.v[row][i] * wi;
                    }
                }
                to_i128(&acc, "solution")
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(x))
    }
}

/// A finitely generated abelian group with a Γ-action by integer matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaModule {
    module: FgAbelianGroup,
    gamma: FiniteGroup,
    action: Vec<IntMatrix>,
}

impl GammaModule {
    pub fn new(module: FgAbelianGroup, gamma: FiniteGroup, action: Vec<IntMatrix>) -> Result<Self> {
        let p = module.generators();
        if action.len() != gamma.order()
            || action
                .iter()
                .any(|m| m.len() != p || m.iter().any(|r| r.len() != p))
        {
            return Err(Error::Malformed(format!(
                "need {} action matrices of size {p}×{p}",
                gamma.order()
            )));
        }
        let m = Self {
            module,
            gamma,
            action,
        };
        for (g, a) in m.action.iter().enumerate() {
            for rel in m.module.relations() {
                if !m.module.is_relation(&mat_vec(a, rel)) {
                    return Err(Error::NotAnAction(format!(
                        "γ = {g} does not preserve the relation {rel:?}"
                    )));
                }
            }
        }
        for j in 0..p {
            let mut e = vec![0i64; p];
            e[j] = 1;
            let diff: Vec<i128> = m
                .act(m.gamma.identity(), &e)
                .iter()
                .zip(&e)
                .map(|(&a, &b)| a - i128::from(b))
                .collect();
            if !m.module.is_relation(&diff) {
                return Err(Error::NotAnAction(format!("identity moves generator {j}")));
            }
            for s in m.gamma.elements() {
                let inner = narrow(&m.act(s, &e), "action")?;
                for t in m.gamma.elements() {
                    let lhs = m.act(m.gamma.mul(t, s), &e);
                    let rhs = m.act(t, &inner);
                    let diff: Vec<i128> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                    if !m.module.is_relation(&diff) {
                        return Err(Error::NotAnAction(format!(
                            "A_(τσ) ≠ A_τ·A_σ on generator {j} at (τ, σ) = ({t}, {s})"
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn trivial(gamma: FiniteGroup, module: FgAbelianGroup) -> Self {
        let p = module.generators();
        let id: IntMatrix = (0..p)
            .map(|i| (0..p).map(|j| i64::from(i == j)).collect())
            .collect();
        let action = vec![id; gamma.order()];
        Self {
            module,
            gamma,
            action,
        }
    }

    pub fn module(&self) -> &FgAbelianGroup {
        &self.module
    }

    pub fn gamma(&self) -> &FiniteGroup {
        &self.gamma
    }

    pub fn action(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn rank(&self) -> usize {
        self.module.generators()
    }

    /// `A_γ·x` without reduction.
    pub fn act(&self, gamma: usize, x: &[i64]) -> Vec<i128> {
        mat_vec(&self.action[gamma], x)
    }

    /// Restriction to the subgroup with the given elements of Γ.
    pub fn restrict(&self, sub: &[usize]) -> Result<(GammaModule, Vec<usize>)> {
        let (group, emb) = self.gamma.subgroup(sub)?;
        let action = emb.iter().map(|&g| self.action[g].clone()).collect();
        Ok((
            GammaModule {
                module: self.module.clone(),
                gamma: group,
                action,
            },
            emb,
        ))
    }

    pub fn is_fixed(&self, x: &[i64]) -> bool {
        self.gamma.elements().all(|g| {
            let diff: Vec<i128> = self
                .act(g, x)
                .iter()
                .zip(x)
                .map(|(&a, &b)| a - i128::from(b))
                .collect();
            self.module.is_relation(&diff)
        })
    }

    /// `c_{στ} = c_σ + σ·c_τ` modulo `R` for all `σ, τ`.
    pub fn is_cocycle(&self, c: &[Vector]) -> bool {
        let n = self.gamma.order();
        c.len() == n
            && c.iter().all(|v| v.len() == self.rank())
            && self.gamma.elements().all(|s| {
                self.gamma.elements().all(|t| {
                    let sc = self.act(s, &c[t]);
                    let diff: Vec<i128> = (0..self.rank())
                        .map(|l| {
                            i128::from(c[self.gamma.mul(s, t)][l]) - i128::from(c[s][l]) - sc[l]
                        })
                        .collect();
                    self.module.is_relation(&diff)
                })
            })
    }

    /// `σ ↦ σ·m − m`
    pub fn coboundary(&self, m: &[i64]) -> Result<Vec<Vector>> {
        self.gamma
            .elements()
            .map(|s| {
                let v: Vec<i128> = self
                    .act(s, m)
                    .iter()
                    .zip(m)
                    .map(|(&a, &b)| a - i128::from(b))
                    .collect();
                self.module.normal_form_wide(&v)
            })
            .collect()
    }
}

/// A Γ-equivariant homomorphism given by a `target × source` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    source: GammaModule,
    target: GammaModule,
    matrix: IntMatrix,
}

impl ModuleHom {
    pub fn new(source: GammaModule, target: GammaModule, matrix: IntMatrix) -> Result<Self> {
        let (p, q) = (source.rank(), target.rank());
        if matrix.len() != q || matrix.iter().any(|r| r.len() != p) {
            return Err(Error::Malformed(format!(
                "homomorphism matrix must be {q}×{p}"
            )));
        }
        if source.gamma().table_rows() != target.gamma().table_rows() {
            return Err(Error::Malformed(
                "source and target have different Γ".into(),
            ));
        }
        for rel in source.module().relations() {
            if !target.module().is_relation(&mat_vec(&matrix, rel)) {
                return Err(Error::NotAHomomorphism(format!(
                    "relation {rel:?} does not map into the target relations"
                )));
            }
        }
        for g in source.gamma().elements() {
            for j in 0..p {
                let mut e = vec![0i64; p];
                e[j] = 1;
                let lhs = mat_vec(&matrix, &narrow(&source.act(g, &e), "action")?);
                let rhs = target.act(g, &narrow(&mat_vec(&matrix, &e), "image")?);
                let diff: Vec<i128> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                if !target.module().is_relation(&diff) {
                    return Err(Error::NotAHomomorphism(format!(
                        "not equivariant at γ = {g} on generator {j}"
                    )));
                }
            }
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(m: &GammaModule) -> Self {
        let p = m.rank();
        let matrix = (0..p)
            .map(|i| (0..p).map(|j| i64::from(i == j)).collect())
            .collect();
        Self {
            source: m.clone(),
            target: m.clone(),
            matrix,
        }
    }

    pub fn source(&self) -> &GammaModule {
        &self.source
    }

    pub fn target(&self) -> &GammaModule {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn apply(&self, x: &[i64]) -> Result<Vector> {
        self.target
            .module()
            .normal_form_wide(&mat_vec(&self.matrix, x))
    }

    fn wide(&self) -> Vec<Vec<i128>> {
        self.matrix.iter().map(|r| widen(r)).collect()
    }
}

/// `M^Γ` with generators as elements of `M`.
#[derive(Clone, Debug)]
pub struct ModuleH0 {
    pub group: FgAbelianGroup,
    pub generators: Vec<Vector>,
    quotient: Quotient,
}

impl ModuleH0 {
    pub fn invariant_factors(&self) -> &[u64] {
        self.group.invariant_factors()
    }

    /// Coordinates of a fixed element; `None` if `x` is not fixed.
    pub fn coordinates(&self, x: &[i64]) -> Result<Option<Vec<BigInt>>> {
        self.quotient.coords(&widen(x))
    }
}

/// `H¹(Γ, M)` with a representative cocycle for each cyclic generator.
#[derive(Clone, Debug)]
pub struct ModuleH1 {
    pub group: FgAbelianGroup,
    pub generators: Vec<Vec<Vector>>,
    module: GammaModule,
    quotient: Quotient,
}

impl ModuleH1 {
    pub fn invariant_factors(&self) -> &[u64] {
        self.group.invariant_factors()
    }

    pub fn order(&self) -> Option<u128> {
        self.group.order()
    }

    pub fn module(&self) -> &GammaModule {
        &self.module
    }

    /// Coordinates of the class of `c` on the cyclic generators.
    pub fn class_of(&self, c: &[Vector]) -> Result<Vec<BigInt>> {
        let n = self.module.gamma().order();
        let p = self.module.rank();
        if c.len() != n || c.iter().any(|v| v.len() != p) {
            return Err(Error::Malformed(format!(
                "a cochain needs {n} vectors of length {p}"
            )));
        }
        let flat: Vec<i128> = c.iter().flat_map(|v| widen(v)).collect();
        self.quotient
            .coords(&flat)?
            .ok_or_else(|| Error::NotACocycle(format!("{c:?} fails the cocycle identity")))
    }

    pub fn is_trivial_class(&self, c: &[Vector]) -> Result<bool> {
        Ok(self.class_of(c)?.iter().all(Zero::is_zero))
    }

    /// `Σ xⱼ·(generator j)`, normalized pointwise.
    pub fn combination(&self, x: &[BigInt]) -> Result<Vec<Vector>> {
        combine(&self.module, &self.generators, x)
    }
}

fn combine(m: &GammaModule, gens: &[Vec<Vector>], x: &[BigInt]) -> Result<Vec<Vector>> {
    let (n, p) = (m.gamma().order(), m.rank());
    let mut acc = vec![vec![0i128; p]; n];
    for (g, k) in gens.iter().zip(x) {
        let k = to_i128(k, "coefficient")?;
        for s in 0..n {
            for l in 0..p {
                acc[s][l] += k * i128::from(g[s][l]);
            }
        }
    }
    acc.iter().map(|v| m.module().normal_form_wide(v)).collect()
}

fn to_group(q: &Quotient) -> Result<FgAbelianGroup> {
    let factors: Vec<u64> = q
        .invariants()
        .iter()
        .map(|d| d.to_u64().ok_or_else(|| too_big("invariant factor")))
        .collect::<Result<_>>()?;
    FgAbelianGroup::from_invariants(&factors)
}

/// Fixed points `M^Γ = {y : (A_σ − 1)·y ∈ R for all σ} / R`.
pub fn mod_h0(m: &GammaModule) -> Result<ModuleH0> {
    mod_h0_with(m, default_budget())
}

pub fn mod_h0_with(m: &GammaModule, budget: u128) -> Result<ModuleH0> {
    let p = m.rank();
    let n = m.gamma().order();
    bound_check("H⁰ linear system", (n * p * p) as u128, budget)?;
    let mut congruences = Vec::new();
    for s in m.gamma().elements() {
        let a: Vec<Vec<i128>> = (0..p)
            .map(|i| {
                (0..p)
                    .map(|j| i128::from(m.action[s][i][j]) - i128::from(i == j))
                    .collect()
            })
            .collect();
        congruences.extend(m.module.membership_congruences(&a, p)?);
    }
    let lattice = Lattice::kernel_mod_bounded(p, congruences, i128::from(m.module.exponent()))?;
    let rels: Vec<Vec<i128>> = m.module.relations().iter().map(|r| widen(r)).collect();
    let quotient = Quotient::new(lattice, &rels)?;
    let group = to_group(&quotient)?;
    let generators = (0..group.generators())
        .map(|c| {
            let v: Vec<i128> = quotient
                .generator(c)
                .iter()
                .map(|x| to_i128(x, "generator"))
                .collect::<Result<_>>()?;
            m.module.normal_form_wide(&v)
        })
        .collect::<Result<_>>()?;
    Ok(ModuleH0 {
        group,
        generators,
        quotient,
    })
}

/// `H¹(Γ, M)` as cocycles modulo coboundaries. Unknowns are the `|Γ|·p`
/// coordinates of `c: Γ → ℤ^p`; every pair `(σ, τ)` contributes the
/// congruences `c_{στ} − c_σ − A_σ·c_τ ∈ R`.
pub fn mod_h1(m: &GammaModule) -> Result<ModuleH1> {
    mod_h1_with(m, default_budget())
}

pub fn mod_h1_with(m: &GammaModule, budget: u128) -> Result<ModuleH1> {
    let p = m.rank();
    let gamma = m.gamma();
    let n = gamma.order();
    let dim = n * p;
    bound_check(
        "H¹ linear system",
        (n * n * p) as u128 * dim as u128,
        budget,
    )?;
    let mut congruences = Vec::new();
    for s in 0..n {
        for t in 0..n {
            let st = gamma.mul(s, t);
            let mut e = vec![vec![0i128; dim]; p];
            for l in 0..p {
                e[l][st * p + l] += 1;
                e[l][s * p + l] -= 1;
                for k in 0..p {
                    e[l][t * p + k] -= i128::from(m.action[s][l][k]);
                }
            }
            congruences.extend(m.module.membership_congruences(&e, dim)?);
        }
    }
    let lattice = Lattice::kernel_mod_bounded(dim, congruences, i128::from(m.module.exponent()))?;
    let mut sub = Vec::new();
    for j in 0..p {
        let mut v = vec![0i128; dim];
        for s in 0..n {
            for l in 0..p {
                v[s * p + l] = i128::from(m.action[s][l][j]) - i128::from(l == j);
            }
        }
        sub.push(v);
    }
    for s in 0..n {
        for rel in m.module.relations() {
            let mut v = vec![0i128; dim];
            for l in 0..p {
                v[s * p + l] = i128::from(rel[l]);
            }
            sub.push(v);
        }
    }
    let quotient = Quotient::new(lattice, &sub)?;
    let group = to_group(&quotient)?;
    let generators = (0..group.generators())
        .map(|c| {
            let v = quotient.generator(c);
            (0..n)
                .map(|s| {
                    let block: Vec<i128> = v[s * p..(s + 1) * p]
                        .iter()
                        .map(|x| to_i128(x, "generator"))
                        .collect::<Result<_>>()?;
                    m.module.normal_form_wide(&block)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(ModuleH1 {
        group,
        generators,
        module: m.clone(),
        quotient,
    })
}

/// Pushes a cocycle forward along `f`.
pub fn map_cocycle(f: &ModuleHom, c: &[Vector]) -> Result<Vec<Vector>> {
    c.iter().map(|v| f.apply(v)).collect()
}

/// The matrix of `H¹(f)` on cyclic generators: column `j` holds the target
/// coordinates of the image of source generator `j`.
pub fn h1_map_matrix(
    f: &ModuleHom,
    source: &ModuleH1,
    target: &ModuleH1,
) -> Result<Vec<Vec<BigInt>>> {
    source
        .generators
        .iter()
        .map(|g| target.class_of(&map_cocycle(f, g)?))
        .collect()
}

/// A subgroup of `H¹(Γ, M)` with generator cocycles.
#[derive(Clone, Debug)]
pub struct H1Subgroup {
    pub group: FgAbelianGroup,
    pub generators: Vec<Vec<Vector>>,
}

impl H1Subgroup {
    pub fn invariant_factors(&self) -> &[u64] {
        self.group.invariant_factors()
    }
}

/// `ker[H¹(Γ, M) → H¹(Γ, N)]` for `f: M → N`.
pub fn h1_kernel(f: &ModuleHom) -> Result<H1Subgroup> {
    let source = mod_h1(f.source())?;
    let target = mod_h1(f.target())?;
    h1_kernel_of(f, &source, &target)
}

pub fn h1_kernel_of(f: &ModuleHom, source: &ModuleH1, target: &ModuleH1) -> Result<H1Subgroup> {
    let cols = h1_map_matrix(f, source, target)?;
    let s = source.generators.len();
    let e = target.invariant_factors();
    let mut congruences = Vec::new();
    for (i, &ei) in e.iter().enumerate() {
        let row = cols
            .iter()
            .enumerate()
            .filter(|(_, c)| !c[i].is_zero())
            .map(|(j, c)| Ok((j, to_i128(&c[i], "H¹ map entry")?)))
            .collect::<Result<Vec<_>>>()?;
        congruences.push((row, i128::from(ei)));
    }
    let exponent = if e.contains(&0) {
        0
    } else {
        e.iter().copied().max().unwrap_or(1)
    };
    let lattice = Lattice::kernel_mod_bounded(s, congruences, i128::from(exponent))?;
    let sub: Vec<Vec<i128>> = source
        .invariant_factors()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(j, &d)| {
            let mut v = vec![0i128; s];
            v[j] = i128::from(d);
            v
        })
        .collect();
    let quotient = Quotient::new(lattice, &sub)?;
    let group = to_group(&quotient)?;
    let generators = (0..group.generators())
        .map(|c| source.combination(&quotient.generator(c)))
        .collect::<Result<_>>()?;
    Ok(H1Subgroup { group, generators })
}

/// Order of the image of `H¹(f)`, or `None` if it is infinite.
pub fn h1_image_order(f: &ModuleHom, source: &ModuleH1, target: &ModuleH1) -> Result<Option<u128>> {
    let cols = h1_map_matrix(f, source, target)?;
    let t = target.generators.len();
    let mut gens: Vec<Vec<i128>> = cols
        .iter()
        .map(|c| c.iter().map(|x| to_i128(x, "H¹ map entry")).collect())
        .collect::<Result<_>>()?;
    let diag: Vec<Vec<i128>> = target
        .invariant_factors()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| {
            let mut v = vec![0i128; t];
            v[i] = i128::from(d);
            v
        })
        .collect();
    gens.extend(diag.iter().cloned());
    let lattice = Lattice::from_generators(t, &gens)?;
    let q = Quotient::new(lattice, &diag)?;
    Ok(q.order().and_then(|o| o.to_u128()))
}

/// A short exact sequence `0 → A → B → C → 0` of Γ-modules, verified.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    i: ModuleHom,
    p: ModuleHom,
}

/// How the connecting map lifts an element of `C` to `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LiftChoice {
    /// Least preimage in normal form; `B` must be finite.
    Least,
    /// Greatest preimage in normal form; `B` must be finite.
    Greatest,
    /// Whatever the integer solver returns.
    Solver,
}

impl ShortExactSequence {
    pub fn new(i: ModuleHom, p: ModuleHom) -> Result<Self> {
        if i.target() != p.source() {
            return Err(Error::NotExact("the middle terms differ".into()));
        }
        let (a, b, c) = (i.source(), i.target(), p.target());
        let (pa, pb, pc) = (a.rank(), b.rank(), c.rank());

        let ker_i = b.module().preimage_lattice(&i.wide(), pa)?;
        if !a.module().relation_lattice().contains_lattice(&ker_i)? {
            return Err(Error::NotExact("A → B is not injective".into()));
        }
        for j in 0..pa {
            let mut e = vec![0i64; pa];
            e[j] = 1;
            let pi = mat_vec(&p.matrix, &narrow(&mat_vec(&i.matrix, &e), "image")?);
            if !c.module().is_relation(&pi) {
                return Err(Error::NotExact(format!(
                    "B → C kills no image of generator {j} of A"
                )));
            }
        }
        let ker_p = c.module().preimage_lattice(&p.wide(), pb)?;
        let mut im_i: Vec<Vec<i128>> = (0..pa)
            .map(|j| (0..pb).map(|l| i128::from(i.matrix[l][j])).collect())
            .collect();
        im_i.extend(b.module().relations().iter().map(|r| widen(r)));
        let im_i = Lattice::from_generators(pb, &im_i)?;
        if !im_i.contains_lattice(&ker_p)? {
            return Err(Error::NotExact(
                "the kernel of B → C exceeds the image of A".into(),
            ));
        }
        for k in 0..pc {
            let mut e = vec![0i128; pc];
            e[k] = 1;
            if c.module().solve(&p.wide(), pb, &e)?.is_none() {
                return Err(Error::NotExact(format!("B → C misses generator {k}")));
            }
        }
        Ok(Self { i, p })
    }

    pub fn a(&self) -> &GammaModule {
        self.i.source()
    }

    pub fn b(&self) -> &GammaModule {
        self.i.target()
    }

    pub fn c(&self) -> &GammaModule {
        self.p.target()
    }

    pub fn inclusion(&self) -> &ModuleHom {
        &self.i
    }

    pub fn projection(&self) -> &ModuleHom {
        &self.p
    }

    /// A preimage of `c` in `B` in normal form.
    pub fn lift(&self, c: &[i64], choice: LiftChoice) -> Result<Vector> {
        let b = self.b().module();
        match choice {
            LiftChoice::Solver => {
                let x = self
                    .c()
                    .module()
                    .solve(&self.p.wide(), b.generators(), &widen(c))?
                    .ok_or_else(|| Error::NotExact("no preimage in B".into()))?;
                b.normal_form_wide(&x)
            }
            LiftChoice::Least | LiftChoice::Greatest => {
                let elems = b.elements(default_budget())?;
                let hit = |x: &Vector| {
                    let diff: Vec<i128> = mat_vec(&self.p.matrix, x)
                        .iter()
                        .zip(c)
                        .map(|(&a, &b)| a - i128::from(b))
                        .collect();
                    self.c().module().is_relation(&diff)
                };
                let found = if choice == LiftChoice::Least {
                    elems.iter().find(|x| hit(x))
                } else {
                    elems.iter().rev().find(|x| hit(x))
                };
                found
                    .cloned()
                    .ok_or_else(|| Error::NotExact("no preimage in B".into()))
            }
        }
    }

    /// The unique `a ∈ A` (in normal form) with `i(a) = b`.
    pub fn preimage_in_a(&self, b: &[i64]) -> Result<Vector> {
        let a = self.a().module();
        let x = self
            .b()
            .module()
            .solve(&self.i.wide(), a.generators(), &widen(b))?
            .ok_or_else(|| Error::NotExact(format!("{b:?} is not in the image of A")))?;
        a.normal_form_wide(&x)
    }
}

/// `δ(c)` for `c ∈ C^Γ′`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectingClass {
    /// Elements of Γ forming Γ′, in index order.
    pub subgroup: Vec<usize>,
    pub lift: Vector,
    /// `σ ↦ σ·b − b` read in `A`, indexed like `subgroup`.
    pub cocycle: Vec<Vector>,
    /// Invariant factors of `H¹(Γ′, A)`.
    pub h1_invariants: Vec<u64>,
    /// Coordinates of the class in `H¹(Γ′, A)`.
    pub coordinates: Vec<String>,
    pub trivial: bool,
}

/// `δ: C^Γ′ → H¹(Γ′, A)`: lift `c` to `b`, then take the class of
/// `σ ↦ σ·b − b`.
pub fn connecting_delta0(
    ses: &ShortExactSequence,
    c: &[i64],
    subgroup: &[usize],
    choice: LiftChoice,
) -> Result<ConnectingClass> {
    let (a_res, emb) = ses.a().restrict(subgroup)?;
    let (c_res, _) = ses.c().restrict(subgroup)?;
    if !c_res.is_fixed(c) {
        return Err(Error::NotFixed(format!(
            "{c:?} is not fixed by the subgroup {emb:?}"
        )));
    }
    let b = ses.lift(c, choice)?;
    let cocycle = emb
        .iter()
        .map(|&s| {
            let moved: Vec<i64> = narrow(
                &ses.b()
                    .act(s, &b)
                    .iter()
                    .zip(&b)
                    .map(|(&x, &y)| x - i128::from(y))
                    .collect::<Vec<_>>(),
                "coboundary",
            )?;
            ses.preimage_in_a(&moved)
        })
        .collect::<Result<Vec<_>>>()?;
    let h1 = mod_h1(&a_res)?;
    let coords = h1.class_of(&cocycle)?;
    Ok(ConnectingClass {
        subgroup: emb,
        lift: b,
        trivial: coords.iter().all(Zero::is_zero),
        cocycle,
        h1_invariants: h1.invariant_factors().to_vec(),
        coordinates: coords.iter().map(ToString::to_string).collect(),
    })
}

/// Γ = ⟨φ⟩ × ⟨τ⟩ ≅ ℤ/8 × ℤ/4, element `φ^a τ^b` at index `4a + b`.
pub fn unitary_gamma() -> FiniteGroup {
    FiniteGroup::direct_product(&FiniteGroup::cyclic(8), &FiniteGroup::cyclic(4))
}

pub const UNITARY_PHI: usize = 4;
pub const UNITARY_TAU: usize = 1;

fn unitary_action(p: usize) -> Vec<IntMatrix> {
    let gamma = unitary_gamma();
    gamma
        .elements()
        .map(|g| {
            let sign = if (g / 4) % 2 == 1 { -1 } else { 1 };
            (0..p)
                .map(|i| (0..p).map(|j| if i == j { sign } else { 0 }).collect())
                .collect()
        })
        .collect()
}

/// The lattice data of the unitary example.
#[derive(Clone, Debug)]
pub struct UnitaryExample {
    pub n: usize,
    /// `X`: basis `v₁ = 2e₁`, `vᵢ = eᵢ − e₁` of the even-sum sublattice of
    /// ℤ^{2n}, modulo `(4, …, 4) = 4n·v₁ + 4·Σ_{i≥2} vᵢ`.
    pub x: GammaModule,
    /// `X^sc = ℤ^{2n} / ℤ·(1, …, 1)`.
    pub x_sc: GammaModule,
    /// `X → X^sc` induced by the inclusion into ℤ^{2n}.
    pub map: ModuleHom,
}

impl UnitaryExample {
    /// Coordinates in the `v`-basis of a vector of the even-sum lattice.
    pub fn x_coordinates(&self, e: &[i64]) -> Result<Vector> {
        let total: i64 = e.iter().sum();
        if e.len() != 2 * self.n || total % 2 != 0 {
            return Err(Error::Malformed(format!(
                "{e:?} is not in the even-sum lattice"
            )));
        }
        let mut v = vec![0i64; 2 * self.n];
        v[0] = total / 2;
        v[1..].copy_from_slice(&e[1..]);
        self.x.module().normal_form(&v)
    }

    /// The cocycle with `c_φ = a`, `c_τ = b` (`a ∈ X`, `2b = 0`):
    /// `c_{φ^i τ^j} = [i odd]·a + (−1)^i·j·b`.
    pub fn cocycle(&self, a: &[i64], b: &[i64]) -> Result<Vec<Vector>> {
        let gamma = unitary_gamma();
        gamma
            .elements()
            .map(|g| {
                let (i, j) = ((g / 4) as i64, (g % 4) as i64);
                let sign = if i % 2 == 1 { -1 } else { 1 };
                let v: Vec<i128> = a
                    .iter()
                    .zip(b)
                    .map(|(&x, &y)| i128::from((i % 2) * x + sign * j * y))
                    .collect();
                self.x.module().normal_form_wide(&v)
            })
            .collect()
    }
}

pub fn build_unitary_example(n: usize) -> Result<UnitaryExample> {
    if n == 0 {
        return Err(Error::Malformed("n must be positive".into()));
    }
    let p = 2 * n;
    let mut rel = vec![4i64; p];
    rel[0] = 4 * n as i64;
    let x_group = FgAbelianGroup::new(p, vec![rel])?;
    let x = GammaModule::new(x_group, unitary_gamma(), unitary_action(p))?;
    let sc_group = FgAbelianGroup::new(p, vec![vec![1; p]])?;
    let x_sc = GammaModule::new(sc_group, unitary_gamma(), unitary_action(p))?;
    let mut e = vec![vec![0i64; p]; p];
    e[0][0] = 2;
    for j in 1..p {
        e[0][j] = -1;
        e[j][j] = 1;
    }
    let map = ModuleHom::new(x.clone(), x_sc.clone(), e)?;
    Ok(UnitaryExample { n, x, x_sc, map })
}

/// Γ = ⟨σ⟩ × ⟨τ⟩ ≅ (ℤ/2)², `σ^a τ^b` at index `2a + b`.
pub fn klein_gamma() -> FiniteGroup {
    FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
}

pub const KLEIN_SIGMA: usize = 2;
pub const KLEIN_TAU: usize = 1;

/// `0 → ⟨4x⟩ → ⟨x⟩ ≅ ℤ/8 → ℤ/4 → 0` with `σ·b = 5b`, `τ·b = −b`.
pub fn build_z8_klein_sequence() -> Result<ShortExactSequence> {
    let gamma = klein_gamma();
    let on_b = |g: usize| -> IntMatrix {
        let (s, t) = (g / 2, g % 2);
        let mut k = 1i64;
        if s == 1 {
            k *= 5;
        }
        if t == 1 {
            k = -k;
        }
        vec![vec![k]]
    };
    let b = GammaModule::new(
        FgAbelianGroup::cyclic(8),
        gamma.clone(),
        gamma.elements().map(on_b).collect(),
    )?;
    let c = GammaModule::new(
        FgAbelianGroup::cyclic(4),
        gamma.clone(),
        gamma.elements().map(on_b).collect(),
    )?;
    let a = GammaModule::trivial(gamma, FgAbelianGroup::cyclic(2));
    let i = ModuleHom::new(a, b.clone(), vec![vec![4]])?;
    let p = ModuleHom::new(b, c, vec![vec![1]])?;
    ShortExactSequence::new(i, p)
}

/// `X/2X`: the relations of `X` together with `2·eⱼ`.
pub fn mod_two(m: &FgAbelianGroup) -> Result<FgAbelianGroup> {
    let p = m.generators();
    let mut rels = m.relations().to_vec();
    for j in 0..p {
        let mut r = vec![0i64; p];
        r[j] = 2;
        rels.push(r);
    }
    FgAbelianGroup::new(p, rels)
}

/// `X₂ = {x : 2x = 0}` computed as a congruence lattice modulo `R`.
pub fn two_torsion(m: &FgAbelianGroup) -> Result<FgAbelianGroup> {
    let p = m.generators();
    let two: Vec<Vec<i128>> = (0..p)
        .map(|i| (0..p).map(|j| if i == j { 2 } else { 0 }).collect())
        .collect();
    let lattice = m.preimage_lattice(&two, p)?;
    let rels: Vec<Vec<i128>> = m.relations().iter().map(|r| widen(r)).collect();
    to_group(&Quotient::new(lattice, &rels)?)
}

/// Invariant factors of a direct sum, recomputed from a block-diagonal
/// presentation.
pub fn direct_sum(parts: &[&FgAbelianGroup]) -> Result<FgAbelianGroup> {
    let p: usize = parts.iter().map(|g| g.generators()).sum();
    let mut rels = Vec::new();
    let mut offset = 0;
    for g in parts {
        for r in g.relations() {
            let mut row = vec![0i64; p];
            row[offset..offset + g.generators()].copy_from_slice(r);
            rels.push(row);
        }
        offset += g.generators();
    }
    FgAbelianGroup::new(p, rels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_forms_are_canonical() {
        let g = FgAbelianGroup::new(2, vec![vec![4, 4]]).unwrap();
        assert_eq!(g.invariant_factors(), &[4, 0]);
        let x = g.normal_form(&[5, 5]).unwrap();
        assert_eq!(g.normal_form(&[1, 1]).unwrap(), x);
        assert!(g.same_class(&[5, 5], &[1, 1]));
        assert!(!g.same_class(&[2, 2], &[0, 0]));
    }

    #[test]
    fn elements_of_finite_group() {
        let g = FgAbelianGroup::new(2, vec![vec![2, 0], vec![0, 3]]).unwrap();
        let els = g.elements(1000).unwrap();
        assert_eq!(els.len(), 6);
        for (i, x) in els.iter().enumerate() {
            for y in &els[i + 1..] {
                assert!(!g.same_class(x, y));
            }
        }
    }
}
