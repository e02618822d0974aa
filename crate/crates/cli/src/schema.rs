//! The JSON definition-file format and its resolution into engine objects.
//!
//! Top-level keys: `quantale`, `theory`, `spaces`, `maps`, `distributors`
//! (plus a `version` tag). Every value in a space, map, or distributor is
//! written as a carrier label, never as a raw index, so files stay
//! readable and diffable. Elements of a lifted carrier are encoded as a
//! point label under identity-like theories and as an array of point
//! labels (a word) under word theories. Structure entries not listed
//! default to the bottom value.
//!
//! Constructed spaces are emitted in this same format, so every `construct`
//! output can be fed back into any other command.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use tvcat_core::{
    build_quantale, builtin_quantale, MonadKind, QValue, Quantale, TCategory, TElem, TRelation,
    Theory, VMatrix,
};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefinitionFile {
    #[serde(default = "schema_version")]
    pub version: u32,
    pub quantale: QuantaleSpec,
    #[serde(default)]
    pub theory: TheorySpec,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub spaces: BTreeMap<String, SpaceDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub distributors: BTreeMap<String, DistDef>,
}

/// Either a builtin name (`"two"`, `"pplus_trunc(8)"`, `"pwedge_trunc(4)"`)
/// or explicit tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuantaleSpec {
    Builtin(String),
    Tables(QuantaleTables),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantaleTables {
    pub name: String,
    pub labels: Vec<String>,
    /// Row-major order table: `le[i][j]` iff element i is below element j.
    pub le: Vec<Vec<bool>>,
    /// Row-major tensor table with cells written as labels.
    pub tensor: Vec<Vec<String>>,
    pub unit: String,
}

/// `"identity"`, `"ufin"`, or `{"kind": "word", "bound": N}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TheorySpec {
    Named(String),
    Word(WordTheorySpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordTheorySpec {
    pub kind: String,
    pub bound: usize,
}

impl Default for TheorySpec {
    fn default() -> TheorySpec {
        TheorySpec::Named("identity".into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDef {
    pub points: Vec<String>,
    /// Sparse structure table: `[element, point, value-label]` triples.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub structure: Vec<(TElemSpec, String, String)>,
}

/// A point label (identity-like theories) or an array of point labels
/// (word theories; `[]` is the empty word).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TElemSpec {
    Point(String),
    Word(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDef {
    pub dom: String,
    pub cod: String,
    /// Total assignment: every point of `dom` to a point of `cod`.
    pub values: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistDef {
    pub dom: String,
    pub cod: String,
    /// Sparse table over lifted `dom` elements against `cod` points.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<(TElemSpec, String, String)>,
}

pub struct ResolvedMap {
    pub dom: String,
    pub cod: String,
    pub f: Vec<usize>,
}

pub struct ResolvedDist {
    pub dom: String,
    pub cod: String,
    pub rel: TRelation,
}

/// A definition file with every reference resolved into engine objects.
/// The parsed file is retained so constructions can be emitted with the
/// original quantale and theory spelling.
pub struct Resolved {
    pub file: DefinitionFile,
    pub quantale: Arc<Quantale>,
    pub theory: Theory,
    pub spaces: BTreeMap<String, TCategory>,
    pub maps: BTreeMap<String, ResolvedMap>,
    pub dists: BTreeMap<String, ResolvedDist>,
}

pub fn parse_definition(path: &Path) -> Result<Resolved> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: shown.clone(), source })?;
    let file: DefinitionFile = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: shown,
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    resolve(file)
}

pub fn resolve(file: DefinitionFile) -> Result<Resolved> {
    if file.version != SCHEMA_VERSION {
        return Err(CliError::Invalid(format!(
            "definition version {} is not supported (this build reads version {SCHEMA_VERSION})",
            file.version
        )));
    }
    let quantale = resolve_quantale(&file.quantale)?;
    let theory = resolve_theory(&file.theory, &quantale)?;

    let mut spaces = BTreeMap::new();
    for (name, def) in &file.spaces {
        spaces.insert(name.clone(), resolve_space(name, def, &theory, &quantale)?);
    }

    let mut maps = BTreeMap::new();
    for (name, def) in &file.maps {
        let dom = lookup_space(&spaces, &def.dom, &format!("map {name}"))?;
        let cod = lookup_space(&spaces, &def.cod, &format!("map {name}"))?;
        for key in def.values.keys() {
            if !dom.labels.contains(key) {
                return Err(CliError::Unresolved(format!(
                    "map {name}: '{key}' is not a point of {}",
                    def.dom
                )));
            }
        }
        let f = dom
            .labels
            .iter()
            .map(|p| {
                let target = def.values.get(p).ok_or_else(|| {
                    CliError::Unresolved(format!("map {name}: no value for point '{p}'"))
                })?;
                cod.labels.iter().position(|c| c == target).ok_or_else(|| {
                    CliError::Unresolved(format!(
                        "map {name}: '{target}' is not a point of {}",
                        def.cod
                    ))
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        maps.insert(name.clone(), ResolvedMap { dom: def.dom.clone(), cod: def.cod.clone(), f });
    }

    let mut dists = BTreeMap::new();
    for (name, def) in &file.distributors {
        let dom = lookup_space(&spaces, &def.dom, &format!("distributor {name}"))?;
        let cod = lookup_space(&spaces, &def.cod, &format!("distributor {name}"))?;
        let bound = theory.word_bound().unwrap_or(0);
        let rows = theory.t_size_checked(dom.n, bound)?;
        let mut mat = VMatrix::constant(quantale.clone(), rows, cod.n, quantale.bottom());
        for (elem, point, value) in &def.entries {
            let ctx = format!("distributor {name}");
            let row = resolve_telem(elem, &dom.labels, &theory, &ctx)?;
            let col = cod.labels.iter().position(|p| p == point).ok_or_else(|| {
                CliError::Unresolved(format!("{ctx}: '{point}' is not a point of {}", def.cod))
            })?;
            mat.set(row, col, resolve_value(value, &quantale, &ctx)?);
        }
        let rel = TRelation::new(theory.clone(), dom.n, cod.n, mat)?;
        dists.insert(name.clone(), ResolvedDist { dom: def.dom.clone(), cod: def.cod.clone(), rel });
    }

    Ok(Resolved { file, quantale, theory, spaces, maps, dists })
}

fn lookup_space<'a>(
    spaces: &'a BTreeMap<String, TCategory>,
    name: &str,
    ctx: &str,
) -> Result<&'a TCategory> {
    spaces
        .get(name)
        .ok_or_else(|| CliError::Unresolved(format!("{ctx}: unknown space '{name}'")))
}

fn resolve_quantale(spec: &QuantaleSpec) -> Result<Arc<Quantale>> {
    match spec {
        QuantaleSpec::Builtin(name) => Ok(builtin_quantale(name)?),
        QuantaleSpec::Tables(t) => {
            let n = t.labels.len();
            let square = |what: &str, rows: usize| {
                if rows == n {
                    Ok(())
                } else {
                    Err(CliError::Invalid(format!(
                        "quantale {}: {what} has {rows} rows for {n} labels",
                        t.name
                    )))
                }
            };
            square("le table", t.le.len())?;
            square("tensor table", t.tensor.len())?;
            let mut le = Vec::with_capacity(n * n);
            for (i, row) in t.le.iter().enumerate() {
                if row.len() != n {
                    return Err(CliError::Invalid(format!(
                        "quantale {}: le row {i} has {} cells for {n} labels",
                        t.name,
                        row.len()
                    )));
                }
                le.extend_from_slice(row);
            }
            let mut tensor = Vec::with_capacity(n * n);
            for row in &t.tensor {
                if row.len() != n {
                    return Err(CliError::Invalid(format!(
                        "quantale {}: tensor rows must have {n} cells",
                        t.name
                    )));
                }
                for cell in row {
                    let idx = t.labels.iter().position(|l| l == cell).ok_or_else(|| {
                        CliError::OutOfCarrier(format!(
                            "quantale {}: tensor cell '{cell}' is not a declared label",
                            t.name
                        ))
                    })?;
                    tensor.push(idx as u8);
                }
            }
            let unit = t.labels.iter().position(|l| l == &t.unit).ok_or_else(|| {
                CliError::OutOfCarrier(format!(
                    "quantale {}: unit '{}' is not a declared label",
                    t.name, t.unit
                ))
            })?;
            Ok(build_quantale(&t.name, t.labels.clone(), le, tensor, QValue(unit as u8))?)
        }
    }
}

fn resolve_theory(spec: &TheorySpec, quantale: &Arc<Quantale>) -> Result<Theory> {
    match spec {
        TheorySpec::Named(kind) if kind == "identity" => Ok(Theory::identity(quantale.clone())),
        TheorySpec::Named(kind) if kind == "ufin" => {
            Ok(Theory::new(MonadKind::UFin, quantale.clone())?)
        }
        TheorySpec::Named(kind) => {
            Err(CliError::Unresolved(format!("unknown theory kind '{kind}'")))
        }
        TheorySpec::Word(w) if w.kind == "word" => {
            Ok(Theory::new(MonadKind::Word { bound: w.bound }, quantale.clone())?)
        }
        TheorySpec::Word(w) => {
            Err(CliError::Unresolved(format!("unknown theory kind '{}'", w.kind)))
        }
    }
}

fn resolve_space(
    name: &str,
    def: &SpaceDef,
    theory: &Theory,
    quantale: &Arc<Quantale>,
) -> Result<TCategory> {
    for (i, p) in def.points.iter().enumerate() {
        if def.points[..i].contains(p) {
            return Err(CliError::Invalid(format!("space {name}: duplicate point '{p}'")));
        }
    }
    let n = def.points.len();
    let bound = theory.word_bound().unwrap_or(0);
    let rows = theory.t_size_checked(n, bound)?;
    let mut mat = VMatrix::constant(quantale.clone(), rows, n, quantale.bottom());
    for (elem, point, value) in &def.structure {
        let ctx = format!("space {name}");
        let row = resolve_telem(elem, &def.points, theory, &ctx)?;
        let col = def.points.iter().position(|p| p == point).ok_or_else(|| {
            CliError::Unresolved(format!("{ctx}: '{point}' is not a point"))
        })?;
        mat.set(row, col, resolve_value(value, quantale, &ctx)?);
    }
    Ok(TCategory::new(theory.clone(), def.points.clone(), mat)?)
}

fn resolve_telem(
    spec: &TElemSpec,
    points: &[String],
    theory: &Theory,
    ctx: &str,
) -> Result<usize> {
    let pos = |lbl: &String| {
        points.iter().position(|p| p == lbl).ok_or_else(|| {
            CliError::Unresolved(format!("{ctx}: '{lbl}' is not a point"))
        })
    };
    let elem = match spec {
        TElemSpec::Point(lbl) => TElem::Base(pos(lbl)?),
        TElemSpec::Word(lbls) => {
            TElem::Word(lbls.iter().map(pos).collect::<Result<Vec<usize>>>()?)
        }
    };
    Ok(theory.t_index(points.len(), &elem)?)
}

fn resolve_value(label: &str, quantale: &Arc<Quantale>, ctx: &str) -> Result<QValue> {
    quantale.lookup(label).ok_or_else(|| {
        CliError::OutOfCarrier(format!(
            "{ctx}: value '{label}' is not an element of quantale '{}'",
            quantale.name
        ))
    })
}

/// Re-encodes a carrier as a definition entry, sparsely (bottom cells are
/// dropped). Inverse to `resolve_space` up to those defaults.
pub fn space_to_def(x: &TCategory) -> SpaceDef {
    let q = x.quantale();
    let bound = x.theory.word_bound().unwrap_or(0);
    let rows = x.theory.t_size(x.n);
    let mut structure = Vec::new();
    for w in 0..rows {
        for p in 0..x.n {
            let v = x.a.at(w, p);
            if v == q.bottom() {
                continue;
            }
            let elem = match x.theory.t_elem(x.n, bound, w) {
                TElem::Base(i) => TElemSpec::Point(x.labels[i].clone()),
                TElem::Word(ws) => {
                    TElemSpec::Word(ws.iter().map(|&i| x.labels[i].clone()).collect())
                }
            };
            structure.push((elem, x.labels[p].clone(), q.label(v).to_string()));
        }
    }
    SpaceDef { points: x.labels.clone(), structure }
}

/// Wraps a constructed space in a definition file that reuses the source
/// file's quantale and theory spelling, so the output re-ingests cleanly.
pub fn construction_file(base: &DefinitionFile, name: &str, x: &TCategory) -> DefinitionFile {
    DefinitionFile {
        version: SCHEMA_VERSION,
        quantale: base.quantale.clone(),
        theory: base.theory.clone(),
        spaces: BTreeMap::from([(name.to_string(), space_to_def(x))]),
        maps: BTreeMap::new(),
        distributors: BTreeMap::new(),
    }
}
