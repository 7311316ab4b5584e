use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crossedcoh::braided::h1_abelian_with;
use crossedcoh::cochain::{BUDGET_ENV, DEFAULT_BUDGET};
use crossedcoh::crossed::{
    validate_braiding, validate_crossed_module, Braiding, BraidingMode, CrossedModule,
};
use crossedcoh::hyper::{cr1, h1_pointed_with};
use crossedcoh::io::{read, read_document, Cochain1Doc, Document, PsiDoc};
use crossedcoh::modules::{mod_h0_with, mod_h1_with};
use crossedcoh::obstruction::{delta_coboundary, is_neutral_class_with, kang_criterion_with};
use crossedcoh::scenario::{
    check_fixture, fixture_values, run_scenario, Provenance, Report, ScenarioOptions,
    DEFAULT_RANDOM, DEFAULT_SEED, DEFAULT_UNITARY_N,
};
use crossedcoh::{Error, Result};

#[derive(Parser)]
#[command(
    name = "crossedcoh",
    version,
    about = "Hypercohomology of finite crossed modules and integral Gamma-modules"
)]
struct Cli {
    /// Enumeration budget (search nodes).
    #[arg(long, global = true, env = BUDGET_ENV)]
    budget: Option<u128>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a document, and its expected values if it is a fixture.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Pointed H1 of a crossed module.
    H1 {
        #[arg(long)]
        input: PathBuf,
    },
    /// H1 of a braided crossed module as an abelian group.
    H1Abelian {
        #[arg(long)]
        input: PathBuf,
    },
    /// Class of (1, psi) for a G-valued 1-cocycle psi.
    Cr1 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        psi: PathBuf,
    },
    /// The band-valued 2-cocycle of a hypercocycle and whether it is neutral.
    Delta2 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// H0 and H1 of a Gamma-module.
    ModuleH1 {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run a named scenario: pu2, zmod8, unitary, axioms, kang, exactness, fixtures.
    Scenario {
        name: String,
        #[arg(long, default_value_t = DEFAULT_UNITARY_N)]
        n: usize,
        /// Random braided crossed modules checked by `axioms`.
        #[arg(long, default_value_t = DEFAULT_RANDOM)]
        random: usize,
    },
}

fn crossed(path: &Path) -> Result<(CrossedModule, Option<Braiding>)> {
    match read_document(path)?.1 {
        Document::CrossedModule(cm, b) => Ok((cm, b)),
        _ => Err(Error::Malformed(format!(
            "{} is not a crossed module",
            path.display()
        ))),
    }
}

fn validate(path: &Path, budget: u128) -> Result<Report> {
    let (fixture, doc) = read_document(path)?;
    let mut r = match &fixture {
        Some(f) => check_fixture(f, budget)?,
        None => {
            let mut r = Report::new("validate");
            r.computed = fixture_values(&doc, budget)?;
            r
        }
    };
    r.scenario = "validate".into();
    if let Document::CrossedModule(cm, b) = &doc {
        let rep = validate_crossed_module(cm);
        r.expect(
            "crossed module axioms",
            Vec::<String>::new(),
            rep.failed_names(),
            Provenance::Trivial,
        );
        if let Some(b) = b {
            let rep = validate_braiding(b, BraidingMode::Braided);
            r.expect(
                "braiding axioms",
                Vec::<String>::new(),
                rep.failed_names(),
                Provenance::Trivial,
            );
        }
    }
    Ok(r)
}

fn h1(path: &Path, budget: u128) -> Result<Report> {
    let (cm, _) = crossed(path)?;
    let h = h1_pointed_with(&cm, budget)?;
    let mut r = Report::new("h1");
    r.compute("z1", h.z1().len());
    r.compute("classes", h.len());
    r.compute("distinguished", h.distinguished());
    r.compute("representatives", h.classes());
    Ok(r)
}

fn h1_abelian(path: &Path, budget: u128) -> Result<Report> {
    let (_, b) = crossed(path)?;
    let b = b.ok_or_else(|| Error::Malformed("h1-abelian needs a braiding".into()))?;
    let ab = h1_abelian_with(&b, budget)?;
    let mut r = Report::new("h1-abelian");
    r.compute("order", ab.order());
    r.compute("invariant_factors", &ab.invariant_factors);
    r.compute("identity", ab.identity);
    r.compute("mul_table", &ab.mul_table);
    r.compute("representatives", &ab.classes);
    Ok(r)
}

fn cr1_cmd(path: &Path, psi: &Path, budget: u128) -> Result<Report> {
    let (cm, _) = crossed(path)?;
    let psi: PsiDoc = read(psi)?;
    let h = h1_pointed_with(&cm, budget)?;
    let class = cr1(&cm, &h, &psi.psi)?;
    let mut r = Report::new("cr1");
    r.compute("psi", &psi.psi);
    r.compute("class", class);
    r.compute("trivial", class == h.distinguished());
    r.compute("representative", h.representative(class));
    Ok(r)
}

fn delta2(path: &Path, cocycle: &Path, budget: u128) -> Result<Report> {
    let (cm, _) = crossed(path)?;
    let z = read::<Cochain1Doc>(cocycle)?.to_cochain()?;
    let (band, c) = delta_coboundary(&cm, &z)?;
    let witness = is_neutral_class_with(&band, &c, budget)?;
    let mut r = Report::new("delta2");
    r.compute("band", band.beta());
    r.compute("u", &c.u);
    r.compute("f", &c.f);
    r.compute("neutral", witness.is_some());
    r.compute("witness", &witness);
    // Neutrality of the obstruction must agree with membership in the image of cr1.
    let h = h1_pointed_with(&cm, budget)?;
    let class = h
        .class_of(&z)
        .ok_or_else(|| Error::StructureFailure("cocycle missing from Z1".into()))?;
    let kang = kang_criterion_with(&cm, budget)?;
    let in_image = kang.rows[class].in_image;
    r.compute("class", class);
    r.expect(
        "neutral iff in image of cr1",
        in_image,
        witness.is_some(),
        Provenance::Derived,
    );
    Ok(r)
}

fn module_h1(path: &Path, budget: u128) -> Result<Report> {
    let m = match read_document(path)?.1 {
        Document::Module(m) => m,
        _ => {
            return Err(Error::Malformed(format!(
                "{} is not a module",
                path.display()
            )))
        }
    };
    let h0 = mod_h0_with(&m, budget)?;
    let h1 = mod_h1_with(&m, budget)?;
    let mut r = Report::new("module-h1");
    r.compute("module_invariants", m.module().invariant_factors());
    r.compute("h0_invariants", h0.invariant_factors());
    r.compute("h1_invariants", h1.invariant_factors());
    r.compute("h1_order", h1.order().map(|o| json!(o.to_string())));
    r.compute("h1_generators", &h1.generators);
    Ok(r)
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    match &cli.command {
        Command::Validate { input } => validate(input, budget),
        Command::H1 { input } => h1(input, budget),
        Command::H1Abelian { input } => h1_abelian(input, budget),
        Command::Cr1 { input, psi } => cr1_cmd(input, psi, budget),
        Command::Delta2 { input, cocycle } => delta2(input, cocycle, budget),
        Command::ModuleH1 { input } => module_h1(input, budget),
        Command::Scenario { name, n, random } => run_scenario(
            name,
            &ScenarioOptions {
                n: *n,
                seed: cli.seed,
                budget,
                random: *random,
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{report}"),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({"error": e.to_string()}))
                        .unwrap_or_default()
                ),
                Format::Text => {}
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
