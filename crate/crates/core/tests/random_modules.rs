mod common;

use crossedcoh::modules::{mod_h0, mod_h1};
use crossedcoh::random::{random_module, rng};

#[test]
fn module_cohomology_matches_brute_force() {
    let mut r = rng(11);
    let mut checked = 0;
    while checked < 25 {
        let rm = random_module(&mut r, 1024).unwrap();
        let gamma = rm.module.gamma().clone();
        if common::brute_cost(&rm.plain, &gamma) > 1 << 22 {
            continue;
        }
        let (z1, b1) = common::brute_h1_counts(&rm.plain, &gamma);
        assert_eq!(z1 % b1, 0);
        let h1 = mod_h1(&rm.module).unwrap();
        assert_eq!(h1.order(), Some(u128::from(z1 / b1)), "{}", rm.description);
        let h0 = mod_h0(&rm.module).unwrap();
        assert_eq!(
            h0.group.order(),
            Some(u128::from(common::brute_fixed_count(&rm.plain))),
            "{}",
            rm.description
        );
        assert_eq!(
            rm.module.module().order(),
            Some(u128::from(rm.plain.order()))
        );
        checked += 1;
    }
}
