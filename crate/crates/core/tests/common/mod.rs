#![allow(dead_code)]

use crossedcoh::group::FiniteGroup;
use crossedcoh::random::PlainModule;

/// Index tables for a finite module `⊕ ℤ/dᵢ`, built with plain modular
/// arithmetic.
pub struct Tables {
    pub order: usize,
    pub add: Vec<u32>,
    pub act: Vec<Vec<u32>>,
}

fn decode(moduli: &[u64], mut x: u64) -> Vec<u64> {
    let mut v = vec![0; moduli.len()];
    for i in (0..moduli.len()).rev() {
        v[i] = x % moduli[i];
        x /= moduli[i];
    }
    v
}

fn encode(moduli: &[u64], v: &[u64]) -> u64 {
    moduli
        .iter()
        .zip(v)
        .fold(0, |acc, (&m, &x)| acc * m + x % m)
}

pub fn tables(m: &PlainModule) -> Tables {
    let n = m.order() as usize;
    let coords: Vec<Vec<u64>> = (0..n as u64).map(|x| decode(&m.moduli, x)).collect();
    let mut add = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let s: Vec<u64> = coords[x]
                .iter()
                .zip(&coords[y])
                .map(|(a, b)| a + b)
                .collect();
            add[x * n + y] = encode(&m.moduli, &s) as u32;
        }
    }
    let act = m
        .action
        .iter()
        .map(|a| {
            coords
                .iter()
                .map(|v| {
                    let w: Vec<u64> = a
                        .iter()
                        .zip(&m.moduli)
                        .map(|(row, &d)| {
                            let s: i64 = row.iter().zip(v).map(|(c, &x)| c * x as i64).sum();
                            s.rem_euclid(d as i64) as u64
                        })
                        .collect();
                    encode(&m.moduli, &w) as u32
                })
                .collect()
        })
        .collect();
    Tables { order: n, add, act }
}

/// `|M^Γ|` by scanning every element.
pub fn brute_fixed_count(m: &PlainModule) -> u64 {
    let t = tables(m);
    (0..t.order)
        .filter(|&x| t.act.iter().all(|a| a[x] as usize == x))
        .count() as u64
}

/// `(|Z¹|, |B¹|)`: every assignment of values on a generating set of Γ is
/// extended along a spanning tree of the Cayley graph and kept when all
/// edges agree; coboundaries are collected from every element of `M`.
pub fn brute_h1_counts(m: &PlainModule, gamma: &FiniteGroup) -> (u64, u64) {
    let t = tables(m);
    let n = t.order;
    let gens = gamma.generators();
    let e = gamma.identity();
    let mut order = vec![e];
    let mut tree: Vec<Option<(usize, usize)>> = vec![None; gamma.order()];
    let mut seen = vec![false; gamma.order()];
    seen[e] = true;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for (gi, &g) in gens.iter().enumerate() {
            let y = gamma.mul(x, g);
            if !seen[y] {
                seen[y] = true;
                tree[y] = Some((x, gi));
                order.push(y);
            }
        }
    }
    let edges: Vec<(usize, usize, usize)> = gamma
        .elements()
        .flat_map(|x| gens.iter().enumerate().map(move |(gi, &g)| (x, gi, g)))
        .map(|(x, gi, g)| (x, gi, gamma.mul(x, g)))
        .collect();
    let total = (n as u64).pow(gens.len() as u32);
    let mut z1 = 0u64;
    let mut f = vec![0u32; gamma.order()];
    let mut vals = vec![0u32; gens.len()];
    for mut idx in 0..total {
        for v in vals.iter_mut().rev() {
            *v = (idx % n as u64) as u32;
            idx /= n as u64;
        }
        f[e] = 0;
        for &y in &order[1..] {
            let (p, gi) = tree[y].expect("tree");
            f[y] = t.add[f[p] as usize * n + t.act[p][vals[gi] as usize] as usize];
        }
        let ok = edges.iter().all(|&(x, gi, y)| {
            f[y] == t.add[f[x] as usize * n + t.act[x][vals[gi] as usize] as usize]
        });
        if ok {
            z1 += 1;
        }
    }
    let mut neg = vec![0u32; n];
    for x in 0..n {
        for y in 0..n {
            if t.add[x * n + y] == 0 {
                neg[x] = y as u32;
            }
        }
    }
    let b1: std::collections::HashSet<Vec<u32>> = (0..n)
        .map(|x| {
            gamma
                .elements()
                .map(|s| t.add[t.act[s][x] as usize * n + neg[x] as usize])
                .collect()
        })
        .collect();
    (z1, b1.len() as u64)
}

/// Work of [`brute_h1_counts`]: assignments times group elements.
pub fn brute_cost(m: &PlainModule, gamma: &FiniteGroup) -> u128 {
    (m.order() as u128).pow(gamma.generators().len() as u32) * gamma.order() as u128
}
