use std::fmt;

use serde::Serialize;

/// Outcome of one axiom checked over all of its instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub instances: u64,
    pub failures: u64,
    /// First failing instance, rendered for humans.
    pub witness: Option<String>,
    /// Same instance as raw indices, for programmatic use.
    pub witness_indices: Option<Vec<usize>>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// A collection of axiom checks. Validators record every failure instead of
/// stopping at the first one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(AxiomCheck::passed)
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name.as_str())
            .collect()
    }

    /// Starts a new named check and returns a recorder for it.
    pub fn check(&mut self, name: &str) -> Recorder<'_> {
        self.checks.push(AxiomCheck {
            name: name.to_string(),
            instances: 0,
            failures: 0,
            witness: None,
            witness_indices: None,
        });
        Recorder {
            entry: self.checks.last_mut().expect("just pushed"),
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    pub fn merge_prefixed(&mut self, prefix: &str, other: ValidationReport) {
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.name = format!("{prefix}{}", c.name);
            c
        }));
    }
}

pub struct Recorder<'a> {
    entry: &'a mut AxiomCheck,
}

impl Recorder<'_> {
    /// Records one instance; `witness` is only evaluated on failure.
    pub fn record(&mut self, ok: bool, indices: &[usize], witness: impl FnOnce() -> String) {
        self.entry.instances += 1;
        if !ok {
            self.entry.failures += 1;
            if self.entry.witness.is_none() {
                self.entry.witness = Some(witness());
                self.entry.witness_indices = Some(indices.to_vec());
            }
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "ok  " } else { "FAIL" };
            write!(f, "{status} {:<28} {:>10} instances", c.name, c.instances)?;
            if let Some(w) = &c.witness {
                write!(f, "  ({} failures; first: {w})", c.failures)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
