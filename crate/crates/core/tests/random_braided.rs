use std::collections::BTreeMap;
use std::time::Instant;

use crossedcoh::braided::{braided_suite, SweepConfig};
use crossedcoh::random::BraidedGenerator;
use crossedcoh::Error;

#[test]
fn random_braided_crossed_modules_pass_the_suite() {
    let start = Instant::now();
    let mut generator = BraidedGenerator::new(7);
    let cfg = SweepConfig {
        budget: 2_000_000,
        ..SweepConfig::default()
    };
    let mut families = BTreeMap::new();
    let mut skipped = 0;
    let mut checked = 0;
    while checked < 40 {
        let r = generator.next_braided();
        let cm = r.braiding.cm();
        assert!(cm.a().order() <= 16 && cm.g().order() <= 16 && cm.gamma().order() <= 4);
        let t = Instant::now();
        match braided_suite(&r.braiding, &cfg) {
            Ok(report) => {
                assert!(report.all_passed(), "{}:\n{report}", r.description);
                *families.entry(format!("{:?}", r.family)).or_insert(0) += 1;
                checked += 1;
            }
            Err(Error::BoundExceeded { .. }) => skipped += 1,
            Err(e) => panic!("{}: {e}", r.description),
        }
        eprintln!("{:>8.3}s {}", t.elapsed().as_secs_f64(), r.description);
    }
    eprintln!(
        "{families:?}, skipped {skipped}, total {:?}",
        start.elapsed()
    );
}
