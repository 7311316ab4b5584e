//! Smith normal form over ℤ with arbitrary-precision entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix as a list of rows.
pub type Matrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn from_i64(m: &[Vec<i64>]) -> Matrix {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn from_i128(m: &[Vec<i128>]) -> Matrix {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// `a·b` for an `r × k` and a `k × c` matrix; `inner` is `k`, needed when
/// `a` has no rows to read it from.
pub fn mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal, `d₀ | d₁ | …`,
/// zeros last. The inverses of `U` and `V` are kept alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
    /// `min(rows, cols)` diagonal entries, all nonnegative.
    pub diagonal: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    /// The full `rows × cols` matrix `D`.
    pub fn d(&self) -> Matrix {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, x) in self.diagonal.iter().enumerate() {
            d[i][i] = x.clone();
        }
        d
    }
}

struct Work {
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

fn axpy(dst: &mut [BigInt], src: &[BigInt], k: &BigInt) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += k * s;
        }
    }
}

fn two_rows(m: &mut Matrix, i: usize, j: usize) -> (&mut Vec<BigInt>, &Vec<BigInt>) {
    if i < j {
        let (lo, hi) = m.split_at_mut(j);
        (&mut lo[i], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(i);
        (&mut hi[0], &lo[j])
    }
}

fn col_axpy(m: &mut Matrix, dst: usize, src: usize, k: &BigInt) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let t = k * &row[src];
            row[dst] += t;
        }
    }
}

impl Work {
    /// row i += k·row t
    fn row_add(&mut self, i: usize, t: usize, k: &BigInt) {
        let (d, s) = two_rows(&mut self.a, i, t);
        axpy(d, s, k);
        let (d, s) = two_rows(&mut self.u, i, t);
        axpy(d, s, k);
        col_axpy(&mut self.u_inv, t, i, &-k);
    }

    /// col j += k·col t
    fn col_add(&mut self, j: usize, t: usize, k: &BigInt) {
        col_axpy(&mut self.a, j, t, k);
        col_axpy(&mut self.v, j, t, k);
        let (d, s) = two_rows(&mut self.v_inv, t, j);
        axpy(d, s, &-k);
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
            for row in self.u_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in self.a.iter_mut() {
                row.swap(i, j);
            }
            for row in self.v.iter_mut() {
                row.swap(i, j);
            }
            self.v_inv.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -&row[i];
        }
    }
}

/// Quotient of `a` by `b` rounded to the nearest integer.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_mod_floor(b);
    if BigInt::from(2) * r.abs() > b.abs() {
        q += 1;
    }
    q
}

/// Smith normal form of the `rows × cols` matrix `m`. Pivots are chosen by
/// least absolute value.
pub fn snf_with_shape(rows: usize, cols: usize, m: &[Vec<BigInt>]) -> Smith {
    let mut w = Work {
        a: m.to_vec(),
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
    };
    let n = rows.min(cols);
    for t in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !w.a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let q = nearest_quotient(&w.a[i][t], &w.a[t][t]);
                    w.row_add(i, t, &-q);
                    clean &= w.a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let q = nearest_quotient(&w.a[t][j], &w.a[t][t]);
                    w.col_add(j, t, &-q);
                    clean &= w.a[t][j].is_zero();
                }
            }
            if clean {
                let bad = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !(&w.a[i][j] % &w.a[t][t]).is_zero()));
                match bad {
                    None => break,
                    Some(i) => {
                        w.row_add(t, i, &BigInt::one());
                        continue;
                    }
                }
            }
            // A remainder smaller than the pivot is left in row or column t.
            let mut best = (t, t);
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() && w.a[i][t].abs() < w.a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() && w.a[t][j].abs() < w.a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            w.swap_rows(t, best.0);
            w.swap_cols(t, best.1);
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    let diagonal = (0..n).map(|i| w.a[i][i].clone()).collect();
    Smith {
        rows,
        cols,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        diagonal,
    }
}

/// Smith normal form; the column count is read from the first row.
pub fn snf(m: &[Vec<BigInt>]) -> Smith {
    let cols = m.first().map_or(0, Vec::len);
    snf_with_shape(m.len(), cols, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &[Vec<i64>]) -> Smith {
        let mb = from_i64(m);
        let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
        let s = snf_with_shape(r, c, &mb);
        let prod = mul(&mul(&s.u, &mb, r, c), &s.v, c, c);
        assert_eq!(prod, s.d());
        assert_eq!(mul(&s.u, &s.u_inv, r, r), identity(r));
        assert_eq!(mul(&s.v, &s.v_inv, c, c), identity(c));
        for w in s.diagonal.windows(2) {
            if !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            } else if w[0].is_zero() {
                assert!(w[1].is_zero());
            }
        }
        s
    }

    fn diag(s: &Smith) -> Vec<i64> {
        s.diagonal
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(diag(&check(&[vec![1, 0], vec![0, 1]])), vec![1, 1]);
        assert_eq!(diag(&check(&[vec![2, 0], vec![0, 3]])), vec![1, 6]);
        assert_eq!(diag(&check(&[vec![0, 0], vec![0, 0]])), vec![0, 0]);
        assert_eq!(
            diag(&check(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])),
            vec![2, 6, 12]
        );
        assert_eq!(diag(&check(&[vec![4, 4]])), vec![4]);
        assert_eq!(diag(&check(&[vec![0], vec![6], vec![4]])), vec![2]);
        check(&[]);
    }
}
