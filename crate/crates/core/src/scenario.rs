//! Named end-to-end computations with expected values, and regression
//! checks for the shipped fixture documents.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::braided::{braided_suite, h1_abelian_with, homomorphism_violation, SweepConfig};
use crate::cochain::DEFAULT_BUDGET;
use crate::crossed::{
    braiding_violation, validate_braiding, validate_crossed_module, Braiding, BraidingMode,
    CrossedModule,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::hyper::{
    check_exact_sequence_with, h0_with, h1_bijective_under_quasi_iso, h1_induced, h1_pointed_with,
};
use crate::io::{from_str, Document, Fixture};
use crate::modules::{
    build_unitary_example, build_z8_klein_sequence, connecting_delta0, direct_sum, h1_kernel_of,
    mod_h0_with, mod_h1_with, mod_two, two_torsion, GammaModule, LiftChoice, ShortExactSequence,
    KLEIN_SIGMA,
};
use crate::obstruction::{delta_invariance, kang_criterion_with};
use crate::random::BraidedGenerator;

pub const DEFAULT_SEED: u64 = 0x00c0_ffee;
pub const DEFAULT_RANDOM: usize = 200;
pub const DEFAULT_UNITARY_N: usize = 2;
/// Per-instance enumeration budget for random braided crossed modules;
/// instances above it are skipped and counted, not checked.
pub const RANDOM_INSTANCE_BUDGET: u128 = 2_000_000;

pub const SCENARIOS: &[&str] = &[
    "pu2",
    "zmod8",
    "unitary",
    "axioms",
    "kang",
    "exactness",
    "fixtures",
];

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the published computation being reproduced.
    Published,
    /// Obtained independently, e.g. by exhaustive enumeration.
    Derived,
    /// Holds by construction.
    Trivial,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Published => "published",
            Provenance::Derived => "derived",
            Provenance::Trivial => "trivial",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expectation {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub provenance: Provenance,
    pub passed: bool,
}

/// Outcome of one scenario. Field order and map keys are fixed, so the JSON
/// form is byte-identical across runs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub parameters: BTreeMap<String, Value>,
    pub computed: BTreeMap<String, Value>,
    pub expectations: Vec<Expectation>,
    pub passed: bool,
}

impl Report {
    pub fn new(scenario: &str) -> Self {
        Self {
            scenario: scenario.to_string(),
            parameters: BTreeMap::new(),
            computed: BTreeMap::new(),
            expectations: Vec::new(),
            passed: true,
        }
    }

    pub fn param(&mut self, key: &str, v: impl Serialize) {
        self.parameters.insert(key.into(), json!(v));
    }

    pub fn compute(&mut self, key: &str, v: impl Serialize) {
        self.computed.insert(key.into(), json!(v));
    }

    /// Records an expectation by comparing JSON values.
    pub fn expect(
        &mut self,
        name: &str,
        expected: impl Serialize,
        computed: impl Serialize,
        provenance: Provenance,
    ) {
        let (expected, computed) = (json!(expected), json!(computed));
        let passed = expected == computed;
        self.push(name, expected, computed, provenance, passed);
    }

    /// Records an expectation whose verdict is decided by the caller.
    pub fn expect_that(
        &mut self,
        name: &str,
        expected: impl Serialize,
        computed: impl Serialize,
        provenance: Provenance,
        passed: bool,
    ) {
        self.push(name, json!(expected), json!(computed), provenance, passed);
    }

    fn push(
        &mut self,
        name: &str,
        expected: Value,
        computed: Value,
        provenance: Provenance,
        passed: bool,
    ) {
        self.passed &= passed;
        self.expectations.push(Expectation {
            name: name.into(),
            expected,
            computed,
            provenance,
            passed,
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn short(v: &Value) -> String {
    let s = v.to_string();
    if s.chars().count() > 100 {
        format!("{}...", s.chars().take(97).collect::<String>())
    } else {
        s
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "scenario {}: {}",
            self.scenario,
            if self.passed { "PASS" } else { "FAIL" }
        )?;
        for (k, v) in &self.parameters {
            writeln!(f, "  param {k} = {v}")?;
        }
        for (k, v) in &self.computed {
            writeln!(f, "  {k} = {}", short(v))?;
        }
        for e in &self.expectations {
            writeln!(
                f,
                "  [{}] {} ({}): expected {}, computed {}",
                if e.passed { "ok" } else { "FAIL" },
                e.name,
                e.provenance,
                short(&e.expected),
                short(&e.computed)
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ScenarioOptions {
    /// Rank parameter of the unitary example.
    pub n: usize,
    pub seed: u64,
    pub budget: u128,
    /// Number of random braided crossed modules for `axioms`.
    pub random: usize,
}

impl Default for ScenarioOptions {
    fn default() -> Self {
        Self {
            n: DEFAULT_UNITARY_N,
            seed: DEFAULT_SEED,
            budget: DEFAULT_BUDGET,
            random: DEFAULT_RANDOM,
        }
    }
}

pub fn run_scenario(name: &str, opts: &ScenarioOptions) -> Result<Report> {
    match name {
        "pu2" => pu2(opts),
        "zmod8" => zmod8(),
        "unitary" => unitary(opts.n, opts.budget),
        "axioms" => axioms(opts),
        "kang" => kang(opts),
        "exactness" => exactness(opts),
        "fixtures" => fixture_regression(opts.budget),
        other => Err(Error::UnknownScenario(other.to_string())),
    }
}

fn pu2(opts: &ScenarioOptions) -> Result<Report> {
    let mut r = Report::new("pu2");
    let target = fixtures::q8_to_v4_braided();
    let source = fixtures::one_to_v4();
    let inclusion = fixtures::inclusion_one_v4();
    let g = target.cm().g();

    let th = h1_pointed_with(target.cm(), opts.budget)?;
    let tab = h1_abelian_with(&target, opts.budget)?;
    let sh = h1_pointed_with(source.cm(), opts.budget)?;
    let sab = h1_abelian_with(&source, opts.budget)?;
    r.expect("pointed H1 classes", 2, th.len(), Provenance::Published);
    r.expect("abelian H1 order", 2, tab.order(), Provenance::Published);
    r.compute("abelian H1 invariants", &tab.invariant_factors);
    r.expect(
        "source abelian H1 order",
        4,
        sab.order(),
        Provenance::Derived,
    );

    let map = h1_induced(&inclusion, &sh, &th)?;
    let psi_names = |h: &crate::hyper::H1Set, c: usize| -> Vec<String> {
        h.representative(c).psi.iter().map(|&x| g.name(x)).collect()
    };
    let rows: Vec<Value> = (0..sh.len())
        .map(|c| json!({"class": c, "psi": psi_names(&sh, c), "image": map[c]}))
        .collect();
    r.compute("induced map", rows);
    let nontrivial: Vec<usize> = (0..sh.len()).filter(|&c| c != sh.distinguished()).collect();
    let images: Vec<bool> = nontrivial
        .iter()
        .map(|&c| map[c] != th.distinguished())
        .collect();
    r.expect(
        "nontrivial source classes hit the nontrivial class",
        vec![true; 3],
        images,
        Provenance::Published,
    );

    match homomorphism_violation(&map, &sab, &tab) {
        Some((x, y)) => {
            let xy = sab.mul_table[x][y];
            let lhs = map[xy];
            let rhs = tab.mul_table[map[x]][map[y]];
            r.compute(
                "non-homomorphism witness",
                json!({
                    "x": psi_names(&sh, x), "y": psi_names(&sh, y), "xy": psi_names(&sh, xy),
                    "f(xy)": lhs, "f(x)f(y)": rhs,
                }),
            );
            r.expect(
                "induced map is a homomorphism",
                false,
                lhs == rhs,
                Provenance::Published,
            );
        }
        None => r.expect(
            "induced map is a homomorphism",
            false,
            true,
            Provenance::Published,
        ),
    }

    let w = braiding_violation(&inclusion, &source, &target);
    r.expect(
        "braiding preserved",
        false,
        w.is_none(),
        Provenance::Published,
    );
    let named = w.map(|(x, y)| vec![g.name(x), g.name(y)]);
    r.expect(
        "braiding witness",
        vec![g.name(fixtures::V4_B1), g.name(fixtures::V4_B2)],
        named,
        Provenance::Published,
    );
    let value = w.map(|(x, y)| target.cm().a().name(target.pair(x, y)));
    r.expect(
        "braiding value at witness",
        target.cm().a().name(fixtures::Q8_MINUS_ONE),
        value,
        Provenance::Published,
    );
    Ok(r)
}

fn zmod8() -> Result<Report> {
    let mut r = Report::new("zmod8");
    let ses = build_z8_klein_sequence()?;
    let sub = [0, KLEIN_SIGMA];
    let c = ses.c();
    let fixed: Vec<i64> = c
        .module()
        .elements(1 << 20)?
        .into_iter()
        .filter(|x| c.is_fixed(x))
        .map(|x| x[0])
        .collect();
    r.expect("C^Gamma", vec![0, 2], fixed, Provenance::Published);
    let moved = ses.b().act(KLEIN_SIGMA, &[1])[0] - 1;
    r.expect("sigma(x) - x", 4, moved, Provenance::Published);

    let mut per_choice = BTreeMap::new();
    for choice in [LiftChoice::Least, LiftChoice::Greatest, LiftChoice::Solver] {
        let dx = connecting_delta0(&ses, &[1], &sub, choice)?;
        let d2x = connecting_delta0(&ses, &[2], &sub, choice)?;
        per_choice.insert(
            format!("{choice:?}").to_lowercase(),
            (dx.trivial, d2x.trivial, dx.cocycle.clone()),
        );
    }
    let first = per_choice["least"].clone();
    r.expect("delta[x] trivial", false, first.0, Provenance::Published);
    r.expect("delta[2x] trivial", true, first.1, Provenance::Published);
    r.compute("delta[x] cocycle on <sigma>", &first.2);
    r.expect(
        "delta independent of the lift",
        true,
        per_choice
            .values()
            .all(|v| v.0 == first.0 && v.1 == first.1),
        Provenance::Derived,
    );
    r.compute(
        "H1(<sigma>, A) invariants",
        connecting_delta0(&ses, &[1], &sub, LiftChoice::Least)?.h1_invariants,
    );
    Ok(r)
}

fn unitary(n: usize, budget: u128) -> Result<Report> {
    let mut r = Report::new("unitary");
    r.param("n", n);
    let ex = build_unitary_example(n)?;
    let source = mod_h1_with(&ex.x, budget)?;
    let target = mod_h1_with(&ex.x_sc, budget)?;
    let ker = h1_kernel_of(&ex.map, &source, &target)?;
    r.expect(
        "kernel invariant factors",
        vec![2u64, 2, 2],
        ker.invariant_factors(),
        Provenance::Published,
    );
    let reduced = direct_sum(&[&mod_two(ex.x.module())?, &two_torsion(ex.x.module())?])?;
    r.expect(
        "H1(X) = X/2X + X_2",
        reduced.invariant_factors(),
        source.invariant_factors(),
        Provenance::Published,
    );
    r.expect(
        "H1(X) invariant factors",
        vec![2u64; 2 * n + 1],
        source.invariant_factors(),
        Provenance::Derived,
    );
    r.compute("H1(X^sc) invariant factors", target.invariant_factors());
    Ok(r)
}

/// Braided fixtures parsed from the shipped documents.
fn shipped_braidings() -> Result<Vec<(String, Braiding)>> {
    let mut out = Vec::new();
    for f in shipped_fixtures()? {
        if let Document::CrossedModule(_, Some(b)) = f.build()? {
            out.push((f.name.clone(), b));
        }
    }
    Ok(out)
}

fn shipped_crossed_modules() -> Result<Vec<(String, CrossedModule)>> {
    let mut out = Vec::new();
    for f in shipped_fixtures()? {
        if let Document::CrossedModule(cm, _) = f.build()? {
            out.push((f.name.clone(), cm));
        }
    }
    Ok(out)
}

fn axioms(opts: &ScenarioOptions) -> Result<Report> {
    let mut r = Report::new("axioms");
    r.param("seed", opts.seed);
    r.param("random", opts.random);
    let cfg = SweepConfig {
        seed: opts.seed,
        budget: opts.budget,
        ..SweepConfig::default()
    };
    for (name, b) in shipped_braidings()? {
        let rep = braided_suite(&b, &cfg)?;
        r.expect(
            &format!("{name}: failed checks"),
            Vec::<String>::new(),
            rep.failed_names(),
            Provenance::Derived,
        );
    }

    let instance_cfg = SweepConfig {
        budget: opts.budget.min(RANDOM_INSTANCE_BUDGET),
        ..cfg
    };
    let mut generator = BraidedGenerator::new(opts.seed);
    let (mut checked, mut skipped) = (0usize, 0usize);
    let mut failures: Vec<String> = Vec::new();
    let mut families: BTreeMap<String, usize> = BTreeMap::new();
    while checked < opts.random {
        let want = opts.random - checked;
        let batch: Vec<_> = (0..want + want / 4 + 1)
            .map(|_| generator.next_braided())
            .collect();
        let results: Vec<Result<Option<Vec<String>>>> = batch
            .par_iter()
            .map(|x| match braided_suite(&x.braiding, &instance_cfg) {
                Ok(rep) => Ok(Some(
                    rep.failed_names().into_iter().map(String::from).collect(),
                )),
                Err(Error::BoundExceeded { .. }) => Ok(None),
                Err(e) => Err(e),
            })
            .collect();
        for (x, res) in batch.iter().zip(results) {
            if checked == opts.random {
                break;
            }
            match res? {
                None => skipped += 1,
                Some(failed) => {
                    checked += 1;
                    *families.entry(format!("{:?}", x.family)).or_default() += 1;
                    if !failed.is_empty() {
                        failures.push(format!("{}: {}", x.description, failed.join(", ")));
                    }
                }
            }
        }
    }
    r.compute("random families", families);
    r.compute("random skipped over budget", skipped);
    r.expect(
        "random instances checked",
        opts.random,
        checked,
        Provenance::Trivial,
    );
    r.expect(
        "random instances failing",
        Vec::<String>::new(),
        failures,
        Provenance::Derived,
    );
    Ok(r)
}

fn kang(opts: &ScenarioOptions) -> Result<Report> {
    let mut r = Report::new("kang");
    for (name, cm) in shipped_crossed_modules()? {
        let k = kang_criterion_with(&cm, opts.budget)?;
        let bad: Vec<usize> = k
            .rows
            .iter()
            .filter(|row| !row.consistent())
            .map(|row| row.class)
            .collect();
        r.expect(
            &format!("{name}: inconsistent classes"),
            Vec::<usize>::new(),
            bad,
            Provenance::Derived,
        );
        r.compute(
            &format!("{name}: neutral classes"),
            json!({"classes": k.rows.len(), "in image of cr1": k.image_classes()}),
        );
        let inv = delta_invariance(&cm, opts.budget)?;
        r.expect(
            &format!("{name}: orbit neutrality"),
            Vec::<String>::new(),
            inv.failed_names(),
            Provenance::Derived,
        );
        if name == "z2_one" {
            let nonneutral = k.rows.iter().filter(|row| !row.delta_neutral).count();
            r.expect(
                "z2_one: non-neutral classes",
                1,
                nonneutral,
                Provenance::Published,
            );
        }
    }
    Ok(r)
}

fn exactness(opts: &ScenarioOptions) -> Result<Report> {
    let mut r = Report::new("exactness");
    for (name, cm) in shipped_crossed_modules()? {
        let e = check_exact_sequence_with(&cm, opts.budget)?;
        let bad: Vec<String> = e
            .junctions
            .iter()
            .filter(|j| !j.exact)
            .map(|j| j.name.clone())
            .collect();
        r.compute(&format!("{name}: term sizes"), &e.term_sizes);
        r.expect(
            &format!("{name}: inexact junctions"),
            Vec::<String>::new(),
            bad,
            Provenance::Derived,
        );
    }
    for (name, m) in fixtures::morphism_fixtures() {
        let q = h1_bijective_under_quasi_iso(&m)?;
        r.compute(&format!("{name}: quasi-iso"), q.quasi_iso);
        r.expect_that(
            &format!("{name}: bijective on H1 if quasi-iso"),
            true,
            json!({"quasi_iso": q.quasi_iso, "h1_bijective": q.h1_bijective}),
            Provenance::Derived,
            q.passed(),
        );
    }
    let q = h1_bijective_under_quasi_iso(&fixtures::kernel_inclusion())?;
    r.expect(
        "z2_one_into_q8_v4 is a quasi-iso",
        true,
        q.quasi_iso,
        Provenance::Derived,
    );
    Ok(r)
}

const SHIPPED: &[&str] = &[
    include_str!("../fixtures/q8_v4.json"),
    include_str!("../fixtures/q8_v4_swap.json"),
    include_str!("../fixtures/q8_v4_trivial_gamma.json"),
    include_str!("../fixtures/one_v4.json"),
    include_str!("../fixtures/z2_one.json"),
    include_str!("../fixtures/a3_s3.json"),
    include_str!("../fixtures/s3_identity.json"),
    include_str!("../fixtures/unitary_1.json"),
    include_str!("../fixtures/unitary_2.json"),
    include_str!("../fixtures/unitary_3.json"),
    include_str!("../fixtures/z8_klein.json"),
];

/// The fixture documents compiled into the crate.
pub fn shipped_fixtures() -> Result<Vec<Fixture>> {
    SHIPPED.iter().map(|t| from_str(t)).collect()
}

/// Quantities a fixture of each kind can pin down, keyed like the
/// `expected` object of a fixture document.
pub fn fixture_values(doc: &Document, budget: u128) -> Result<BTreeMap<String, Value>> {
    let mut v = BTreeMap::new();
    match doc {
        Document::CrossedModule(cm, b) => {
            v.insert(
                "crossed_module_valid".into(),
                json!(validate_crossed_module(cm).all_passed()),
            );
            v.insert("h0_classes".into(), json!(h0_with(cm, budget)?.len()));
            let h1 = h1_pointed_with(cm, budget)?;
            v.insert("h1_classes".into(), json!(h1.len()));
            v.insert(
                "exact".into(),
                json!(check_exact_sequence_with(cm, budget)?.all_exact()),
            );
            let k = kang_criterion_with(cm, budget)?;
            v.insert("cr1_image_classes".into(), json!(k.image_classes().len()));
            v.insert("kang_holds".into(), json!(k.holds()));
            if let Some(b) = b {
                v.insert(
                    "braiding_valid".into(),
                    json!(validate_braiding(b, BraidingMode::Braided).all_passed()),
                );
                v.insert(
                    "symmetric".into(),
                    json!(validate_braiding(b, BraidingMode::Symmetric).all_passed()),
                );
                v.insert(
                    "picard".into(),
                    json!(validate_braiding(b, BraidingMode::Picard).all_passed()),
                );
                v.insert(
                    "h1_invariants".into(),
                    json!(h1_abelian_with(b, budget)?.invariant_factors),
                );
            }
        }
        Document::Module(m) => module_values(&mut v, "", m, budget)?,
        Document::Sequence(s) => sequence_values(&mut v, s, budget)?,
    }
    Ok(v)
}

fn module_values(
    v: &mut BTreeMap<String, Value>,
    prefix: &str,
    m: &GammaModule,
    budget: u128,
) -> Result<()> {
    v.insert(
        format!("{prefix}invariants"),
        json!(m.module().invariant_factors()),
    );
    v.insert(
        format!("{prefix}h0_invariants"),
        json!(mod_h0_with(m, budget)?.invariant_factors()),
    );
    v.insert(
        format!("{prefix}h1_invariants"),
        json!(mod_h1_with(m, budget)?.invariant_factors()),
    );
    Ok(())
}

fn sequence_values(
    v: &mut BTreeMap<String, Value>,
    s: &ShortExactSequence,
    budget: u128,
) -> Result<()> {
    module_values(v, "a_", s.a(), budget)?;
    module_values(v, "b_", s.b(), budget)?;
    module_values(v, "c_", s.c(), budget)
}

/// Compares a fixture's `expected` entries, each `{"value": …,
/// "provenance": …}`, with freshly computed values.
pub fn check_fixture(f: &Fixture, budget: u128) -> Result<Report> {
    let mut r = Report::new(&format!("fixture {}", f.name));
    let doc = f.build()?;
    let values = fixture_values(&doc, budget)?;
    let Some(expected) = &f.expected else {
        r.computed = values;
        return Ok(r);
    };
    let entries = expected
        .as_object()
        .ok_or_else(|| crate::io::schema("expected", "must be an object"))?;
    for (key, entry) in entries {
        let loc = format!("expected.{key}");
        let value = entry
            .get("value")
            .ok_or_else(|| crate::io::schema(&loc, "missing `value`"))?;
        let provenance: Provenance = serde_json::from_value(
            entry
                .get("provenance")
                .cloned()
                .ok_or_else(|| crate::io::schema(&loc, "missing `provenance`"))?,
        )
        .map_err(|e| crate::io::schema(&loc, e))?;
        let computed = values.get(key).ok_or_else(|| {
            crate::io::schema(&loc, format!("`{key}` is not computed for this kind"))
        })?;
        r.expect(key, value, computed, provenance);
    }
    r.computed = values;
    Ok(r)
}

fn fixture_regression(budget: u128) -> Result<Report> {
    let mut r = Report::new("fixtures");
    for f in shipped_fixtures()? {
        let sub = check_fixture(&f, budget)?;
        for e in sub.expectations {
            r.push(
                &format!("{}: {}", f.name, e.name),
                e.expected,
                e.computed,
                e.provenance,
                e.passed,
            );
        }
    }
    Ok(r)
}
