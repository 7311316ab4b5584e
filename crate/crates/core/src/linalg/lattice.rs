//! Sublattices of ℤⁿ in Hermite normal form with checked `i128` arithmetic,
//! built by imposing linear congruences one at a time, and quotients of a
//! lattice by a sublattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::snf::{snf_with_shape, Smith};
use crate::error::{Error, Result};

/// Entries above this trigger a Hermite reduction during batch building.
const REDUCE_THRESHOLD: i128 = 1 << 40;

fn overflow() -> Error {
    Error::BoundExceeded {
        what: "i128 lattice arithmetic".into(),
        needed: u128::MAX,
        budget: i128::MAX as u128,
    }
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or_else(overflow)
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or_else(overflow)
}

/// `dst += k·src`
fn axpy(dst: &mut [i128], src: &[i128], k: i128) -> Result<()> {
    if k == 0 {
        return Ok(());
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = add(*d, mul(k, s)?)?;
        }
    }
    Ok(())
}

/// A sublattice of ℤ^dim given by a basis of row vectors in Hermite normal
/// form: pivots strictly increase, are positive, and entries above a pivot
/// lie in `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<i128>>,
}

impl Lattice {
    pub fn full(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| i128::from(i == j)).collect())
            .collect();
        Self { dim, basis }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            basis: Vec::new(),
        }
    }

    /// The lattice spanned by `generators`.
    pub fn from_generators(dim: usize, generators: &[Vec<i128>]) -> Result<Self> {
        if generators.iter().any(|g| g.len() != dim) {
            return Err(Error::Malformed(format!(
                "lattice generators must have length {dim}"
            )));
        }
        let mut l = Self {
            dim,
            basis: generators.to_vec(),
        };
        l.reduce()?;
        Ok(l)
    }

    /// `{x : row·x ≡ 0 mod m}` for each `(row, m)`; `m = 0` asks for equality.
    /// Rows are sparse `(index, coefficient)` lists.
    pub fn kernel_mod<I>(dim: usize, congruences: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<(usize, i128)>, i128)>,
    {
        let mut l = Self::full(dim);
        for (row, m) in congruences {
            l.impose_unreduced(&row, m, 0)?;
        }
        l.reduce()?;
        Ok(l)
    }

    /// As [`Lattice::kernel_mod`] when every congruence is already satisfied
    /// by `exponent·ℤ^dim` (`exponent > 0`, each modulus dividing it). Rows
    /// are then kept reduced mod `exponent`, which bounds all entries.
    pub fn kernel_mod_bounded<I>(dim: usize, congruences: I, exponent: i128) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<(usize, i128)>, i128)>,
    {
        if exponent <= 0 {
            return Self::kernel_mod(dim, congruences);
        }
        let mut l = Self::full(dim);
        for (row, m) in congruences {
            if m == 0 || exponent % m != 0 {
                return Err(Error::Malformed(format!(
                    "modulus {m} does not divide the exponent {exponent}"
                )));
            }
            l.impose_unreduced(&row, m, exponent)?;
        }
        l.reduce_modulo(exponent)?;
        Ok(l)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i128>] {
        &self.basis
    }

    /// Restricts to `{x : row·x ≡ 0 mod m}`.
    pub fn impose(&mut self, row: &[(usize, i128)], modulus: i128) -> Result<()> {
        self.impose_unreduced(row, modulus, 0)?;
        self.reduce()
    }

    /// One congruence by Euclid's algorithm on the row values. With
    /// `exponent > 0` the lattice is implicitly `span + exponent·ℤ^dim` and
    /// rows are reduced mod `exponent`.
    fn impose_unreduced(
        &mut self,
        row: &[(usize, i128)],
        modulus: i128,
        exponent: i128,
    ) -> Result<()> {
        let m = modulus.abs();
        if m == 1 || row.is_empty() {
            return Ok(());
        }
        let mut values = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let mut v = 0i128;
            for &(i, c) in row {
                if c != 0 && b[i] != 0 {
                    v = add(v, mul(c, b[i])?)?;
                }
            }
            values.push(if m == 0 { v } else { v.rem_euclid(m) });
        }
        let carrier = loop {
            let active: Vec<usize> = (0..values.len()).filter(|&j| values[j] != 0).collect();
            let Some(&p) = active.iter().min_by_key(|&&j| values[j].abs()) else {
                return Ok(());
            };
            if active.len() == 1 {
                break p;
            }
            let pivot = self.basis[p].clone();
            for &j in &active {
                if j != p {
                    let q = values[j] / values[p];
                    axpy(&mut self.basis[j], &pivot, -q)?;
                    values[j] -= q * values[p];
                }
            }
        };
        if m == 0 {
            self.basis.remove(carrier);
        } else {
            let k = m / values[carrier].gcd(&m);
            for x in self.basis[carrier].iter_mut() {
                *x = mul(*x, k)?;
            }
        }
        if exponent > 0 {
            for r in self.basis.iter_mut() {
                for x in r.iter_mut() {
                    *x = x.rem_euclid(exponent);
                }
            }
            self.basis.retain(|r| r.iter().any(|&x| x != 0));
        } else if self
            .basis
            .iter()
            .flatten()
            .any(|x| x.abs() > REDUCE_THRESHOLD)
        {
            self.reduce()?;
        }
        Ok(())
    }

    /// Brings the basis to Hermite normal form, dropping dependent rows.
    fn reduce(&mut self) -> Result<()> {
        let mut rows = std::mem::take(&mut self.basis);
        let mut r = 0;
        for col in 0..self.dim {
            if r == rows.len() {
                break;
            }
            loop {
                let pivot = (r..rows.len())
                    .filter(|&i| rows[i][col] != 0)
                    .min_by_key(|&i| rows[i][col].abs());
                let Some(p) = pivot else { break };
                rows.swap(r, p);
                let mut done = true;
                for i in r + 1..rows.len() {
                    if rows[i][col] != 0 {
                        let q = rows[i][col].div_euclid(rows[r][col]);
                        let (lo, hi) = rows.split_at_mut(i);
                        axpy(&mut hi[0], &lo[r], -q)?;
                        done &= hi[0][col] == 0;
                    }
                }
                if done {
                    break;
                }
            }
            if r < rows.len() && rows[r][col] != 0 {
                if rows[r][col] < 0 {
                    for x in rows[r].iter_mut() {
                        *x = -*x;
                    }
                }
                for i in 0..r {
                    let q = rows[i][col].div_euclid(rows[r][col]);
                    if q != 0 {
                        let (lo, hi) = rows.split_at_mut(r);
                        axpy(&mut lo[i], &hi[0], -q)?;
                    }
                }
                r += 1;
            }
        }
        rows.truncate(r);
        self.basis = rows;
        Ok(())
    }

    /// Hermite normal form of `span + e·ℤ^dim`, column by column with the
    /// implicit row `e·e_c` joining the elimination at column `c` and every
    /// later entry reduced mod `e`.
    fn reduce_modulo(&mut self, e: i128) -> Result<()> {
        let mut rest = std::mem::take(&mut self.basis);
        let mut done: Vec<Vec<i128>> = Vec::with_capacity(self.dim);
        for col in 0..self.dim {
            let mut unit = vec![0i128; self.dim];
            unit[col] = e;
            rest.push(unit);
            loop {
                let active: Vec<usize> = (0..rest.len()).filter(|&i| rest[i][col] != 0).collect();
                let p = *active
                    .iter()
                    .min_by_key(|&&i| rest[i][col].abs())
                    .expect("e·e_c is active");
                if active.len() == 1 {
                    let mut row = rest.swap_remove(p);
                    if row[col] < 0 {
                        row.iter_mut().for_each(|x| *x = -*x);
                    }
                    for x in row[col + 1..].iter_mut() {
                        *x = x.rem_euclid(e);
                    }
                    done.push(row);
                    break;
                }
                let pivot = rest[p].clone();
                for &j in &active {
                    if j != p {
                        let q = rest[j][col] / pivot[col];
                        axpy(&mut rest[j], &pivot, -q)?;
                        for x in rest[j][col + 1..].iter_mut() {
                            *x = x.rem_euclid(e);
                        }
                    }
                }
            }
            rest.retain(|r| r.iter().any(|&x| x != 0));
        }
        for r in 0..done.len() {
            let (lo, hi) = done.split_at_mut(r);
            let pivot = &hi[0];
            let col = r;
            for row in lo.iter_mut() {
                let q = row[col].div_euclid(pivot[col]);
                if q != 0 {
                    axpy(row, pivot, -q)?;
                }
            }
        }
        self.basis = done;
        Ok(())
    }

    fn pivot(row: &[i128]) -> usize {
        row.iter()
            .position(|&x| x != 0)
            .expect("basis rows are nonzero")
    }

    /// Coefficients of `v` in the basis, or `None` if `v` is not in the
    /// lattice.
    pub fn coordinates(&self, v: &[i128]) -> Result<Option<Vec<i128>>> {
        if v.len() != self.dim {
            return Err(Error::Malformed(format!(
                "vector must have length {}",
                self.dim
            )));
        }
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let p = Self::pivot(b);
            if rest[..p].iter().any(|&x| x != 0) {
                return Ok(None);
            }
            if rest[p] % b[p] != 0 {
                return Ok(None);
            }
            let q = rest[p] / b[p];
            axpy(&mut rest, b, -q)?;
            coeffs.push(q);
        }
        Ok(rest.iter().all(|&x| x == 0).then_some(coeffs))
    }

    pub fn contains(&self, v: &[i128]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// Whether every basis vector of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        for b in &other.basis {
            if !self.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `L / S` for a lattice `L` and vectors generating `S ⊆ L`, as
/// `⊕ ℤ/dᵢ` with `dᵢ = 0` meaning ℤ.
#[derive(Clone, Debug)]
pub struct Quotient {
    lattice: Lattice,
    smith: Smith,
    /// One entry per basis vector of `L`; entries equal to 1 are trivial.
    factors: Vec<BigInt>,
}

impl Quotient {
    pub fn new(lattice: Lattice, sub: &[Vec<i128>]) -> Result<Self> {
        let k = lattice.rank();
        let mut y = vec![vec![BigInt::zero(); sub.len()]; k];
        for (j, s) in sub.iter().enumerate() {
            let c = lattice
                .coordinates(s)?
                .ok_or_else(|| Error::Malformed("quotient generator outside the lattice".into()))?;
            for (i, x) in c.into_iter().enumerate() {
                y[i][j] = BigInt::from(x);
            }
        }
        let smith = snf_with_shape(k, sub.len(), &y);
        let mut factors = smith.diagonal.clone();
        factors.resize(k, BigInt::zero());
        Ok(Self {
            lattice,
            smith,
            factors,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Indices of the nontrivial cyclic factors, in divisor-chain order.
    pub fn components(&self) -> Vec<usize> {
        (0..self.factors.len())
            .filter(|&i| self.factors[i] != BigInt::from(1))
            .collect()
    }

    /// Orders of the nontrivial cyclic factors; 0 stands for ℤ.
    pub fn invariants(&self) -> Vec<BigInt> {
        self.components()
            .into_iter()
            .map(|i| self.factors[i].clone())
            .collect()
    }

    /// Coordinates of `v ∈ L` on the nontrivial factors, reduced into
    /// `[0, dᵢ)` on finite ones. `None` if `v ∉ L`.
    pub fn coords(&self, v: &[i128]) -> Result<Option<Vec<BigInt>>> {
        let Some(c) = self.lattice.coordinates(v)? else {
            return Ok(None);
        };
        let out = self
            .components()
            .into_iter()
            .map(|i| {
                let mut s = BigInt::zero();
                for (l, x) in c.iter().enumerate() {
                    if *x != 0 {
                        s += &self.smith.u[i][l] * BigInt::from(*x);
                    }
                }
                let d = &self.factors[i];
                if d.is_zero() {
                    s
                } else {
                    s.mod_floor(d)
                }
            })
            .collect();
        Ok(Some(out))
    }

    /// A vector of `L` mapping to the `c`-th nontrivial generator.
    pub fn generator(&self, c: usize) -> Vec<BigInt> {
        let i = self.components()[c];
        let mut v = vec![BigInt::zero(); self.lattice.dim()];
        for (l, b) in self.lattice.basis().iter().enumerate() {
            let k = &self.smith.u_inv[l][i];
            if !k.is_zero() {
                for (vx, &bx) in v.iter_mut().zip(b) {
                    *vx += k * BigInt::from(bx);
                }
            }
        }
        v
    }

    /// Whether the quotient is finite.
    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|d| !d.is_zero())
    }

    /// Order of the quotient, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.factors.iter().product())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn congruence_lattice() {
        // x + y ≡ 0 mod 2 in ℤ²: the even-sum lattice of index 2.
        let l = Lattice::kernel_mod(2, [(vec![(0, 1), (1, 1)], 2)]).unwrap();
        assert_eq!(l.basis(), &[vec![1, 1], vec![0, 2]]);
        assert!(l.contains(&[3, 5]).unwrap());
        assert!(!l.contains(&[3, 4]).unwrap());
        // x = y exactly
        let l = Lattice::kernel_mod(2, [(vec![(0, 1), (1, -1)], 0)]).unwrap();
        assert_eq!(l.basis(), &[vec![1, 1]]);
    }

    #[test]
    fn bounded_kernel_agrees() {
        // 2x + 3y ≡ 0 mod 6 and x − y ≡ 0 mod 3 in ℤ², then x ≡ 0 mod 2.
        let rows = vec![
            (vec![(0, 2), (1, 3)], 6),
            (vec![(0, 1), (1, -1)], 3),
            (vec![(0, 1)], 2),
        ];
        let a = Lattice::kernel_mod(2, rows.clone()).unwrap();
        let b = Lattice::kernel_mod_bounded(2, rows, 6).unwrap();
        for x in -12i128..12 {
            for y in -12i128..12 {
                let brute = (2 * x + 3 * y) % 6 == 0 && (x - y) % 3 == 0 && x % 2 == 0;
                assert_eq!(a.contains(&[x, y]).unwrap(), brute);
                assert_eq!(b.contains(&[x, y]).unwrap(), brute);
            }
        }
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_of_z_by_even() {
        let l = Lattice::full(1);
        let q = Quotient::new(l, &[vec![6]]).unwrap();
        assert_eq!(q.invariants(), vec![BigInt::from(6)]);
        assert_eq!(q.coords(&[13]).unwrap(), Some(vec![BigInt::from(1)]));
        let q = Quotient::new(Lattice::full(2), &[vec![2, 0]]).unwrap();
        assert_eq!(q.invariants(), vec![BigInt::from(2), BigInt::from(0)]);
        assert_eq!(q.order(), None);
    }
}
