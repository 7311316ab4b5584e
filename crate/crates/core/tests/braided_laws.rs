use crossedcoh::braided::{h1_abelian, validate_dbar_structures, SweepConfig};
use crossedcoh::fixtures;
use crossedcoh::hyper::h1_pointed;

#[test]
fn fixture_sizes() {
    for (name, b) in fixtures::braided_fixtures() {
        let h = h1_pointed(b.cm()).unwrap();
        let ab = h1_abelian(&b).unwrap();
        println!(
            "{name}: |Z1| = {}, classes = {}, invariants = {:?}",
            h.z1().len(),
            h.len(),
            ab.invariant_factors
        );
        let r = validate_dbar_structures(&b, &SweepConfig::default()).unwrap();
        println!("{r}");
        assert!(r.all_passed(), "{name}");
    }
}
