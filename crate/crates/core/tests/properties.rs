mod common;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use crossedcoh::braided::h1_abelian_with;
use crossedcoh::crossed::{
    derived_identities, validate_braiding, validate_crossed_module, BraidingMode,
};
use crossedcoh::hyper::h1_pointed_with;
use crossedcoh::linalg::snf;
use crossedcoh::linalg::snf::{from_i64, identity, mul};
use crossedcoh::modules::mod_h1;
use crossedcoh::random::{random_module, rng, BraidedGenerator};
use crossedcoh::scenario::RANDOM_INSTANCE_BUDGET;
use crossedcoh::Error;

// Cofactor expansion, fine for the sizes drawn here.
fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * i128::from(m[0][j]) * det(&minor)
        })
        .sum()
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-12i64..=12, c), r))
}

fn square() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-9i64..=9, n), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_factorizes(m in matrix(5, 5)) {
        let rows = m.len();
        let cols = m.first().map_or(1, Vec::len);
        let s = snf::snf_with_shape(rows, cols, &from_i64(&m));
        let um = mul(&s.u, &from_i64(&m), rows, cols);
        prop_assert_eq!(mul(&um, &s.v, cols, cols), s.d());
        prop_assert_eq!(mul(&s.u, &s.u_inv, rows, rows), identity(rows));
        prop_assert_eq!(mul(&s.v, &s.v_inv, cols, cols), identity(cols));
        for w in s.diagonal.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn smith_diagonal_multiplies_to_determinant(m in square()) {
        let s = snf::snf(&from_i64(&m));
        let prod = s.diagonal.iter().fold(BigInt::from(1), |acc, d| acc * d);
        prop_assert_eq!(prod, BigInt::from(det(&m).abs()));
    }

    #[test]
    fn random_module_h1_matches_brute_force(seed in any::<u64>()) {
        let rm = random_module(&mut rng(seed), 256).unwrap();
        let gamma = rm.module.gamma().clone();
        prop_assume!(common::brute_cost(&rm.plain, &gamma) <= 1 << 20);
        let (z1, b1) = common::brute_h1_counts(&rm.plain, &gamma);
        let h1 = mod_h1(&rm.module).unwrap();
        prop_assert_eq!(h1.order(), Some(u128::from(z1 / b1)), "{}", rm.description);
        let product: u128 = h1.invariant_factors().iter().map(|&d| u128::from(d)).product();
        prop_assert_eq!(h1.order(), Some(product));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_braided_h1_is_an_abelian_group(seed in any::<u64>()) {
        let b = BraidedGenerator::new(seed).next_braided();
        let br = &b.braiding;
        prop_assert!(validate_crossed_module(br.cm()).all_passed(), "{}", b.description);
        prop_assert!(validate_braiding(br, BraidingMode::Symmetric).all_passed(), "{}", b.description);
        prop_assert!(derived_identities(br).all_passed(), "{}", b.description);

        let ab = match h1_abelian_with(br, RANDOM_INSTANCE_BUDGET) {
            Err(Error::BoundExceeded { .. }) => return Err(TestCaseError::reject("over budget")),
            other => other.unwrap(),
        };
        let pointed = h1_pointed_with(br.cm(), RANDOM_INSTANCE_BUDGET).unwrap();
        let n = ab.order();
        prop_assert_eq!(n, pointed.len());
        prop_assert_eq!(ab.invariant_factors.iter().product::<u64>(), n as u64);
        let t = &ab.mul_table;
        for x in 0..n {
            prop_assert_eq!(t[ab.identity][x], x);
            prop_assert_eq!(t[x][ab.inverses[x]], ab.identity);
            for y in 0..n {
                prop_assert_eq!(t[x][y], t[y][x]);
                for z in 0..n {
                    prop_assert_eq!(t[t[x][y]][z], t[x][t[y][z]]);
                }
            }
        }
        // Exponent of the group is the largest invariant factor.
        let exp = ab.invariant_factors.last().copied().unwrap_or(1) as usize;
        for x in 0..n {
            let mut p = ab.identity;
            for _ in 0..exp {
                p = t[p][x];
            }
            prop_assert_eq!(p, ab.identity);
        }
    }
}
