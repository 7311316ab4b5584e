//! JSON documents for groups, Γ-groups, crossed modules, Γ-modules, short
//! exact sequences and cochains. Unknown fields are rejected; maps keyed by
//! Γ or `G` use element names (or decimal indices for unnamed groups).

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cochain::{Cochain0, Cochain1};
use crate::crossed::{Braiding, CrossedModule};
use crate::error::{Error, Result};
use crate::gamma::GammaGroup;
use crate::group::FiniteGroup;
use crate::modules::{FgAbelianGroup, GammaModule, IntMatrix, ModuleHom, ShortExactSequence};

pub(crate) fn schema(location: impl Into<String>, message: impl ToString) -> Error {
    Error::Schema {
        location: location.into(),
        message: message.to_string(),
    }
}

/// Re-labels construction errors with the document location they came from.
fn at<T>(location: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Schema { .. } => e,
        other => schema(location, other),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl GroupDoc {
    pub fn from_group(g: &FiniteGroup) -> Self {
        Self {
            order: g.order(),
            table: g.table_rows(),
            names: g.names().map(<[String]>::to_vec),
        }
    }

    pub fn to_group(&self, location: &str) -> Result<FiniteGroup> {
        if self.table.len() != self.order {
            return Err(schema(
                format!("{location}.order"),
                format!(
                    "order {} but the table has {} rows",
                    self.order,
                    self.table.len()
                ),
            ));
        }
        at(
            location,
            FiniteGroup::from_table(self.table.clone(), self.names.clone()),
        )
    }
}

fn keyed<T: Clone>(
    location: &str,
    keys: &FiniteGroup,
    map: &BTreeMap<String, T>,
    default: impl Fn(usize) -> Option<T>,
) -> Result<Vec<T>> {
    for k in map.keys() {
        if keys.index_of(k).is_none() {
            return Err(schema(
                format!("{location}.{k}"),
                "no element with this name",
            ));
        }
    }
    keys.elements()
        .map(|x| {
            let name = keys.name(x);
            map.get(&name)
                .cloned()
                .or_else(|| default(x))
                .ok_or_else(|| schema(format!("{location}.{name}"), "missing entry"))
        })
        .collect()
}

fn unkeyed<T: Clone>(keys: &FiniteGroup, values: &[T]) -> BTreeMap<String, T> {
    keys.elements()
        .map(|x| (keys.name(x), values[x].clone()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaGroupDoc {
    pub gamma: GroupDoc,
    pub group: GroupDoc,
    /// `γ ↦ permutation`; the identity of Γ may be omitted.
    pub action: BTreeMap<String, Vec<usize>>,
}

impl GammaGroupDoc {
    pub fn from_gamma_group(g: &GammaGroup) -> Self {
        Self {
            gamma: GroupDoc::from_group(g.gamma()),
            group: GroupDoc::from_group(g.group()),
            action: unkeyed(g.gamma(), g.action()),
        }
    }

    pub fn to_gamma_group(&self, location: &str) -> Result<GammaGroup> {
        let gamma = self.gamma.to_group(&format!("{location}.gamma"))?;
        let group = self.group.to_group(&format!("{location}.group"))?;
        let e = gamma.identity();
        let n = group.order();
        let action = keyed(&format!("{location}.action"), &gamma, &self.action, |x| {
            (x == e).then(|| (0..n).collect())
        })?;
        at(
            &format!("{location}.action"),
            GammaGroup::new(gamma, group, action),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedModuleDoc {
    pub a: GammaGroupDoc,
    pub g: GammaGroupDoc,
    pub rho: Vec<usize>,
    /// `g ↦ θ_g` as a permutation of `A`.
    pub theta: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braiding: Option<Vec<Vec<usize>>>,
}

impl CrossedModuleDoc {
    pub fn from_crossed_module(cm: &CrossedModule) -> Self {
        Self {
            a: GammaGroupDoc::from_gamma_group(cm.gamma_a()),
            g: GammaGroupDoc::from_gamma_group(cm.gamma_g()),
            rho: cm.rho_table().to_vec(),
            theta: unkeyed(cm.g(), cm.theta_table()),
            braiding: None,
        }
    }

    pub fn from_braiding(b: &Braiding) -> Self {
        Self {
            braiding: Some(b.pairing_rows()),
            ..Self::from_crossed_module(b.cm())
        }
    }

    pub fn to_crossed_module(&self) -> Result<CrossedModule> {
        let a = self.a.to_gamma_group("a")?;
        let g = self.g.to_gamma_group("g")?;
        if a.gamma().table_rows() != g.gamma().table_rows() {
            return Err(schema("g.gamma", "A and G must carry the same Γ"));
        }
        let theta = keyed("theta", g.group(), &self.theta, |_| None)?;
        at(
            "crossed module",
            CrossedModule::new(a, g, self.rho.clone(), theta),
        )
    }

    /// The braiding if one is given.
    pub fn to_braiding(&self) -> Result<Option<Braiding>> {
        let cm = self.to_crossed_module()?;
        match &self.braiding {
            None => Ok(None),
            Some(p) => at("braiding", Braiding::new(cm, p.clone())).map(Some),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub generators: usize,
    pub relations: IntMatrix,
    pub gamma: GroupDoc,
    /// `γ ↦ A_γ`; the identity of Γ may be omitted.
    pub action: BTreeMap<String, IntMatrix>,
}

impl ModuleDoc {
    pub fn from_module(m: &GammaModule) -> Self {
        Self {
            generators: m.rank(),
            relations: m.module().relations().to_vec(),
            gamma: GroupDoc::from_group(m.gamma()),
            action: unkeyed(m.gamma(), m.action()),
        }
    }

    pub fn to_module(&self, location: &str) -> Result<GammaModule> {
        let gamma = self.gamma.to_group(&format!("{location}.gamma"))?;
        let group = at(
            &format!("{location}.relations"),
            FgAbelianGroup::new(self.generators, self.relations.clone()),
        )?;
        let p = self.generators;
        let e = gamma.identity();
        let action = keyed(&format!("{location}.action"), &gamma, &self.action, |x| {
            (x == e).then(|| {
                (0..p)
                    .map(|i| (0..p).map(|j| i64::from(i == j)).collect())
                    .collect()
            })
        })?;
        at(
            &format!("{location}.action"),
            GammaModule::new(group, gamma, action),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDoc {
    pub a: ModuleDoc,
    pub b: ModuleDoc,
    pub c: ModuleDoc,
    pub inclusion: IntMatrix,
    pub projection: IntMatrix,
}

impl SequenceDoc {
    pub fn from_sequence(s: &ShortExactSequence) -> Self {
        Self {
            a: ModuleDoc::from_module(s.a()),
            b: ModuleDoc::from_module(s.b()),
            c: ModuleDoc::from_module(s.c()),
            inclusion: s.inclusion().matrix().to_vec(),
            projection: s.projection().matrix().to_vec(),
        }
    }

    pub fn to_sequence(&self) -> Result<ShortExactSequence> {
        let (a, b, c) = (
            self.a.to_module("a")?,
            self.b.to_module("b")?,
            self.c.to_module("c")?,
        );
        let i = at(
            "inclusion",
            ModuleHom::new(a, b.clone(), self.inclusion.clone()),
        )?;
        let p = at("projection", ModuleHom::new(b, c, self.projection.clone()))?;
        ShortExactSequence::new(i, p)
    }
}

/// A hypercochain of degree 1 with `u` as rows indexed by `(σ, τ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cochain1Doc {
    pub u: Vec<Vec<usize>>,
    pub psi: Vec<usize>,
}

impl Cochain1Doc {
    pub fn from_cochain(c: &Cochain1) -> Self {
        Self {
            u: c.u_rows(),
            psi: c.psi.clone(),
        }
    }

    pub fn to_cochain(&self) -> Result<Cochain1> {
        let n = self.psi.len();
        if self.u.len() != n || self.u.iter().any(|r| r.len() != n) {
            return Err(schema("u", format!("u must be {n}×{n} to match psi")));
        }
        Ok(Cochain1::from_rows(self.u.clone(), self.psi.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cochain0Doc {
    pub phi: Vec<usize>,
    pub g: usize,
}

impl From<&Cochain0> for Cochain0Doc {
    fn from(c: &Cochain0) -> Self {
        Self {
            phi: c.phi.clone(),
            g: c.g,
        }
    }
}

/// A `G`-valued 1-cochain `ψ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiDoc {
    pub psi: Vec<usize>,
}

/// Parses JSON text, reporting syntax and shape errors with line and column.
pub fn from_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        schema(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    from_str(&text).map_err(|e| match e {
        Error::Schema { location, message } => {
            schema(format!("{}: {location}", path.display()), message)
        }
        other => other,
    })
}

pub fn to_string<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixtureKind {
    CrossedModule,
    Module,
    Sequence,
}

/// A named document with optional expected results for regression runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub name: String,
    pub kind: FixtureKind,
    pub payload: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<serde_json::Value>,
}

/// A parsed and validated document of any supported kind.
#[derive(Clone, Debug)]
pub enum Document {
    CrossedModule(CrossedModule, Option<Braiding>),
    Module(GammaModule),
    Sequence(ShortExactSequence),
}

fn payload_doc<T: DeserializeOwned>(v: &serde_json::Value) -> Result<T> {
    T::deserialize(v).map_err(|e| schema("payload", e))
}

impl Fixture {
    pub fn new(name: &str, doc: &Document, expected: Option<serde_json::Value>) -> Self {
        let (kind, payload) = match doc {
            Document::CrossedModule(cm, b) => {
                let d = match b {
                    Some(b) => CrossedModuleDoc::from_braiding(b),
                    None => CrossedModuleDoc::from_crossed_module(cm),
                };
                (FixtureKind::CrossedModule, serde_json::to_value(d))
            }
            Document::Module(m) => (
                FixtureKind::Module,
                serde_json::to_value(ModuleDoc::from_module(m)),
            ),
            Document::Sequence(s) => (
                FixtureKind::Sequence,
                serde_json::to_value(SequenceDoc::from_sequence(s)),
            ),
        };
        Self {
            name: name.to_string(),
            kind,
            payload: payload.expect("documents serialize"),
            expected,
        }
    }

    pub fn build(&self) -> Result<Document> {
        match self.kind {
            FixtureKind::CrossedModule => {
                let d: CrossedModuleDoc = payload_doc(&self.payload)?;
                let cm = d.to_crossed_module()?;
                let b = d.to_braiding()?;
                Ok(Document::CrossedModule(cm, b))
            }
            FixtureKind::Module => payload_doc::<ModuleDoc>(&self.payload)?
                .to_module("payload")
                .map(Document::Module),
            FixtureKind::Sequence => payload_doc::<SequenceDoc>(&self.payload)?
                .to_sequence()
                .map(Document::Sequence),
        }
    }
}

/// Parses a fixture or a bare crossed-module, module or sequence document,
/// telling them apart by their keys.
pub fn parse_document(text: &str) -> Result<(Option<Fixture>, Document)> {
    let v: serde_json::Value = from_str(text)?;
    let has = |k: &str| v.get(k).is_some();
    if has("kind") {
        let f: Fixture = from_str(text)?;
        let doc = f.build()?;
        Ok((Some(f), doc))
    } else if has("rho") {
        let d: CrossedModuleDoc = from_str(text)?;
        Ok((
            None,
            Document::CrossedModule(d.to_crossed_module()?, d.to_braiding()?),
        ))
    } else if has("generators") {
        let d: ModuleDoc = from_str(text)?;
        Ok((None, Document::Module(d.to_module("module")?)))
    } else if has("inclusion") {
        let d: SequenceDoc = from_str(text)?;
        Ok((None, Document::Sequence(d.to_sequence()?)))
    } else {
        Err(schema(
            "document",
            "expected a fixture, crossed module, module or sequence",
        ))
    }
}

pub fn read_document(path: &Path) -> Result<(Option<Fixture>, Document)> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| match e {
        Error::Schema { location, message } => {
            schema(format!("{}: {location}", path.display()), message)
        }
        other => other,
    })
}
