//! Input file schemas (versioned with `"schema": 1`) and their conversion to
//! core values. Parsing failures carry enough location to fix the file.

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use globalize_core::algebra::FinDimAlgebra;
use globalize_core::bialgebra::Bialgebra;
use globalize_core::exact::{Field, Matrix, Scalar};
use globalize_core::fintop::FinTopology;
use globalize_core::monoid::FiniteMonoid;
use globalize_core::setact::{GlobalAction, PartialActionDatum};
use globalize_core::topact::{TopMonoid, TopPartialModule};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation at {location}: {message}")]
    Schema { location: String, message: String },
    #[error("unknown fixture {0:?}; run `globalize fixtures list`")]
    UnknownFixture(String),
    #[error("{context}: {message}")]
    Construction { context: String, message: String },
}

impl InputError {
    pub fn schema(location: &str, message: impl Into<String>) -> InputError {
        InputError::Schema {
            location: location.to_string(),
            message: message.into(),
        }
    }

    pub fn construction(context: &str, err: impl std::fmt::Display) -> InputError {
        InputError::Construction {
            context: context.to_string(),
            message: err.to_string(),
        }
    }
}

pub fn parse_json(bytes: &str) -> Result<serde_json::Value, InputError> {
    serde_json::from_str(bytes).map_err(|e| InputError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn check_schema_version(v: &serde_json::Value) -> Result<(), InputError> {
    match v.get("schema") {
        Some(serde_json::Value::Number(n)) if n.as_u64() == Some(SCHEMA_VERSION) => Ok(()),
        Some(other) => Err(InputError::schema(
            "schema",
            format!("unsupported schema version {other}"),
        )),
        None => Err(InputError::schema("schema", "missing \"schema\": 1 field")),
    }
}

fn from_value<T: serde::de::DeserializeOwned>(
    v: serde_json::Value,
    location: &str,
) -> Result<T, InputError> {
    serde_json::from_value(v).map_err(|e| InputError::schema(location, e.to_string()))
}

/// A monoid: either a builder string (`trivial`, `cyclic:N`, `sym:N`,
/// `bicyclic:N`) or an explicit table.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MonoidSpec {
    Builder(String),
    Table(MonoidTable),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidTable {
    pub elements: Vec<String>,
    pub identity: String,
    pub table: BTreeMap<String, String>,
}

impl MonoidSpec {
    pub fn build(&self) -> Result<FiniteMonoid, InputError> {
        match self {
            MonoidSpec::Builder(name) => build_monoid_from_name(name),
            MonoidSpec::Table(t) => t.build(),
        }
    }
}

pub fn build_monoid_from_name(name: &str) -> Result<FiniteMonoid, InputError> {
    let mk = |r: Result<FiniteMonoid, globalize_core::monoid::MonoidError>| {
        r.map_err(|e| InputError::construction("monoid builder", e))
    };
    if name == "trivial" {
        return Ok(FiniteMonoid::trivial());
    }
    if let Some(n) = name.strip_prefix("cyclic:") {
        let n: usize = n
            .parse()
            .map_err(|_| InputError::schema("monoid", format!("bad builder {name:?}")))?;
        return mk(FiniteMonoid::cyclic(n));
    }
    if let Some(n) = name.strip_prefix("sym:") {
        let n: usize = n
            .parse()
            .map_err(|_| InputError::schema("monoid", format!("bad builder {name:?}")))?;
        return mk(FiniteMonoid::symmetric(n));
    }
    if let Some(n) = name.strip_prefix("bicyclic:") {
        let n: usize = n
            .parse()
            .map_err(|_| InputError::schema("monoid", format!("bad builder {name:?}")))?;
        return mk(FiniteMonoid::bicyclic_truncated(n));
    }
    Err(InputError::schema(
        "monoid",
        format!("unknown builder {name:?}; use trivial, cyclic:N, sym:N, or bicyclic:N"),
    ))
}

impl MonoidTable {
    pub fn build(&self) -> Result<FiniteMonoid, InputError> {
        let n = self.elements.len();
        for l in &self.elements {
            if l.contains(',') {
                return Err(InputError::schema(
                    "monoid.elements",
                    format!("label {l:?} may not contain a comma"),
                ));
            }
        }
        let index = |l: &str, loc: &str| -> Result<usize, InputError> {
            self.elements
                .iter()
                .position(|e| e == l)
                .ok_or_else(|| InputError::schema(loc, format!("unknown element {l:?}")))
        };
        let mut table = vec![vec![usize::MAX; n]; n];
        for (key, out) in &self.table {
            let (a, b) = key.split_once(',').ok_or_else(|| {
                InputError::schema("monoid.table", format!("key {key:?} is not \"a,b\""))
            })?;
            table[index(a, "monoid.table")?][index(b, "monoid.table")?] =
                index(out, "monoid.table")?;
        }
        for (a, row) in table.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v == usize::MAX {
                    return Err(InputError::schema(
                        "monoid.table",
                        format!(
                            "missing product \"{},{}\"",
                            self.elements[a], self.elements[b]
                        ),
                    ));
                }
            }
        }
        let identity = index(&self.identity, "monoid.identity")?;
        FiniteMonoid::new(self.elements.clone(), table, identity)
            .map_err(|e| InputError::construction("monoid", e))
    }
}

/// A partial action input file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetActionFile {
    pub schema: u64,
    pub monoid: MonoidSpec,
    #[serde(rename = "X")]
    pub x: Vec<String>,
    pub domain: Vec<(String, String)>,
    pub rho: BTreeMap<String, String>,
}

pub fn parse_set_action(bytes: &str) -> Result<PartialActionDatum, InputError> {
    let v = parse_json(bytes)?;
    check_schema_version(&v)?;
    let file: SetActionFile = from_value(v, "set-action file")?;
    set_action_from_file(&file)
}

pub fn set_action_from_file(file: &SetActionFile) -> Result<PartialActionDatum, InputError> {
    let monoid = file.monoid.build()?;
    for l in &file.x {
        if l.contains(',') {
            return Err(InputError::schema(
                "X",
                format!("label {l:?} may not contain a comma"),
            ));
        }
    }
    let x_index = |l: &str| {
        file.x
            .iter()
            .position(|e| e == l)
            .ok_or_else(|| InputError::schema("domain", format!("unknown carrier point {l:?}")))
    };
    let m_index = |l: &str| {
        monoid
            .index_of(l)
            .ok_or_else(|| InputError::schema("domain", format!("unknown monoid element {l:?}")))
    };
    let mut pairs = Vec::new();
    for (xl, ml) in &file.domain {
        let key = format!("{xl},{ml}");
        let out = file.rho.get(&key).ok_or_else(|| {
            InputError::schema("rho", format!("missing image for domain pair {key:?}"))
        })?;
        pairs.push(((x_index(xl)?, m_index(ml)?), x_index(out)?));
    }
    if file.rho.len() != file.domain.len() {
        return Err(InputError::schema(
            "rho",
            "rho must have exactly one entry per domain pair",
        ));
    }
    PartialActionDatum::new(monoid, file.x.clone(), &pairs)
        .map_err(|e| InputError::construction("set action", e))
}

/// A global action input file (the target of the universal-property check).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalActionFile {
    pub schema: u64,
    pub monoid: MonoidSpec,
    #[serde(rename = "Y")]
    pub y: Vec<String>,
    pub act: BTreeMap<String, String>,
}

pub fn parse_global_action(bytes: &str) -> Result<GlobalAction, InputError> {
    let v = parse_json(bytes)?;
    check_schema_version(&v)?;
    let file: GlobalActionFile = from_value(v, "global-action file")?;
    let monoid = file.monoid.build()?;
    let y_index = |l: &str| {
        file.y
            .iter()
            .position(|e| e == l)
            .ok_or_else(|| InputError::schema("act", format!("unknown point {l:?}")))
    };
    let nm = monoid.size();
    let mut act = vec![usize::MAX; file.y.len() * nm];
    for (key, out) in &file.act {
        let (yl, ml) = key.split_once(',').ok_or_else(|| {
            InputError::schema("act", format!("key {key:?} is not \"y,m\""))
        })?;
        let m = monoid
            .index_of(ml)
            .ok_or_else(|| InputError::schema("act", format!("unknown monoid element {ml:?}")))?;
        act[y_index(yl)? * nm + m] = y_index(out)?;
    }
    if act.contains(&usize::MAX) {
        return Err(InputError::schema("act", "action table is incomplete"));
    }
    GlobalAction::new(monoid, file.y.clone(), act)
        .map_err(|e| InputError::construction("global action", e))
}

/// A topology block: opens as lists of point labels.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyBlock {
    pub opens: Vec<Vec<String>>,
}

impl TopologyBlock {
    pub fn build(&self, points: &[String], location: &str) -> Result<FinTopology, InputError> {
        let mut opens = Vec::with_capacity(self.opens.len());
        for open in &self.opens {
            let mut mask = 0u64;
            for l in open {
                let i = points.iter().position(|p| p == l).ok_or_else(|| {
                    InputError::schema(location, format!("unknown point {l:?}"))
                })?;
                mask |= 1 << i;
            }
            opens.push(mask);
        }
        FinTopology::new(points.len(), &opens).map_err(|e| InputError::construction(location, e))
    }
}

/// A standalone topology file for the utility subcommands.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyFile {
    pub schema: u64,
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

pub fn parse_topology(bytes: &str) -> Result<(Vec<String>, FinTopology), InputError> {
    let v = parse_json(bytes)?;
    check_schema_version(&v)?;
    let file: TopologyFile = from_value(v, "topology file")?;
    let block = TopologyBlock {
        opens: file.opens.clone(),
    };
    let t = block.build(&file.points, "opens")?;
    Ok((file.points, t))
}

/// A topological partial action file: the set-action fields plus topology
/// blocks. `tD` opens are lists of `[x, m]` pairs; when omitted the domain
/// carries the subspace topology.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopActionFile {
    pub schema: u64,
    pub monoid: MonoidSpec,
    #[serde(rename = "X")]
    pub x: Vec<String>,
    pub domain: Vec<(String, String)>,
    pub rho: BTreeMap<String, String>,
    #[serde(rename = "tX")]
    pub t_x: TopologyBlock,
    #[serde(rename = "tM")]
    pub t_m: TopologyBlock,
    #[serde(rename = "tD", default)]
    pub t_d: Option<TopologyWithPairs>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyWithPairs {
    pub opens: Vec<Vec<(String, String)>>,
}

pub fn parse_top_action(bytes: &str) -> Result<TopPartialModule, InputError> {
    let v = parse_json(bytes)?;
    check_schema_version(&v)?;
    let file: TopActionFile = from_value(v, "top-action file")?;
    let base = set_action_from_file(&SetActionFile {
        schema: file.schema,
        monoid: file.monoid.clone(),
        x: file.x.clone(),
        domain: file.domain.clone(),
        rho: file.rho.clone(),
    })?;
    let t_x = file.t_x.build(&file.x, "tX")?;
    let monoid = base.monoid().clone();
    let t_m = file.t_m.build(monoid.labels(), "tM")?;
    let top_monoid =
        TopMonoid::new(monoid.clone(), t_m).map_err(|e| InputError::construction("tM", e))?;
    let t_d = match &file.t_d {
        None => None,
        Some(block) => {
            let mut opens = Vec::with_capacity(block.opens.len());
            for open in &block.opens {
                let mut mask = 0u64;
                for (xl, ml) in open {
                    let xi = file.x.iter().position(|p| p == xl).ok_or_else(|| {
                        InputError::schema("tD", format!("unknown carrier point {xl:?}"))
                    })?;
                    let mi = monoid.index_of(ml).ok_or_else(|| {
                        InputError::schema("tD", format!("unknown monoid element {ml:?}"))
                    })?;
                    let pos = base.pair_position(xi, mi).ok_or_else(|| {
                        InputError::schema(
                            "tD",
                            format!("pair ({xl}, {ml}) is not in the domain"),
                        )
                    })?;
                    mask |= 1 << pos;
                }
                opens.push(mask);
            }
            Some(
                FinTopology::new(base.domain_size(), &opens)
                    .map_err(|e| InputError::construction("tD", e))?,
            )
        }
    };
    TopPartialModule::new(base, t_x, &top_monoid, t_d)
        .map_err(|e| InputError::construction("top action", e))
}

/// An algebra block with sparse structure constants.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBlock {
    pub dim: usize,
    pub basis: Vec<String>,
    pub constants: BTreeMap<String, BTreeMap<String, String>>,
    pub unit: Vec<String>,
}

impl AlgebraBlock {
    pub fn build(&self, field: Field, location: &str) -> Result<FinDimAlgebra, InputError> {
        let dim = self.dim;
        if self.basis.len() != dim || self.unit.len() != dim {
            return Err(InputError::schema(
                location,
                "dim, basis, and unit lengths must agree",
            ));
        }
        let parse_idx = |s: &str| -> Result<usize, InputError> {
            let i: usize = s
                .parse()
                .map_err(|_| InputError::schema(location, format!("bad index {s:?}")))?;
            if i >= dim {
                return Err(InputError::schema(location, format!("index {i} out of range")));
            }
            Ok(i)
        };
        let parse_scalar = |s: &str| -> Result<Scalar, InputError> {
            field
                .parse_scalar(s)
                .map_err(|e| InputError::construction(location, e))
        };
        let mut constants = vec![field.zero(); dim * dim * dim];
        for (key, row) in &self.constants {
            let (i, j) = key.split_once(',').ok_or_else(|| {
                InputError::schema(location, format!("constants key {key:?} is not \"i,j\""))
            })?;
            let (i, j) = (parse_idx(i)?, parse_idx(j)?);
            for (k, c) in row {
                constants[(i * dim + j) * dim + parse_idx(k)?] = parse_scalar(c)?;
            }
        }
        let unit = self
            .unit
            .iter()
            .map(|s| parse_scalar(s))
            .collect::<Result<Vec<_>, _>>()?;
        FinDimAlgebra::new(field, self.basis.clone(), constants, unit)
            .map_err(|e| InputError::construction(location, e))
    }
}

/// A bialgebra: a builder string (`h4`, `group:<monoid builder>`) or explicit
/// algebra plus comultiplication rows (`comult[i]` = image of basis element
/// `i`, length dim^2) and counit values.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum BialgebraSpec {
    Builder(String),
    Explicit(BialgebraBlock),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BialgebraBlock {
    pub algebra: AlgebraBlock,
    pub comult: Vec<Vec<String>>,
    pub counit: Vec<String>,
}

impl BialgebraSpec {
    pub fn build(&self, field: Field) -> Result<Bialgebra, InputError> {
        match self {
            BialgebraSpec::Builder(name) => {
                if name == "h4" {
                    return Bialgebra::sweedler_h4(field)
                        .map_err(|e| InputError::construction("bialgebra", e));
                }
                if let Some(m) = name.strip_prefix("group:") {
                    let monoid = build_monoid_from_name(m)?;
                    if !monoid.is_group() {
                        return Err(InputError::schema(
                            "bialgebra",
                            format!("{m:?} is not a group; group bialgebras need inverses"),
                        ));
                    }
                    return Ok(Bialgebra::group_bialgebra(&monoid, field));
                }
                Err(InputError::schema(
                    "bialgebra",
                    format!("unknown builder {name:?}; use h4 or group:<builder>"),
                ))
            }
            BialgebraSpec::Explicit(block) => {
                let algebra = block.algebra.build(field, "bialgebra.algebra")?;
                let d = algebra.dim();
                let comult = parse_row_major_map(
                    &block.comult,
                    d,
                    d * d,
                    field,
                    "bialgebra.comult",
                )?;
                if block.counit.len() != d {
                    return Err(InputError::schema("bialgebra.counit", "wrong length"));
                }
                let counit_cols = block
                    .counit
                    .iter()
                    .map(|s| {
                        field
                            .parse_scalar(s)
                            .map(|c| vec![c])
                            .map_err(|e| InputError::construction("bialgebra.counit", e))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let counit = Matrix::from_columns(field, 1, counit_cols);
                Bialgebra::new(algebra, comult, counit)
                    .map_err(|e| InputError::construction("bialgebra", e))
            }
        }
    }
}

/// Rows indexed by source basis element; row `i` holds the image coordinates
/// of basis element `i`, so the matrix (column convention) is the transpose.
fn parse_row_major_map(
    rows: &[Vec<String>],
    src_dim: usize,
    dst_dim: usize,
    field: Field,
    location: &str,
) -> Result<Matrix, InputError> {
    if rows.len() != src_dim || rows.iter().any(|r| r.len() != dst_dim) {
        return Err(InputError::schema(
            location,
            format!("expected {src_dim} rows of length {dst_dim}"),
        ));
    }
    let mut cols = Vec::with_capacity(src_dim);
    for row in rows {
        let col = row
            .iter()
            .map(|s| {
                field
                    .parse_scalar(s)
                    .map_err(|e| InputError::construction(location, e))
            })
            .collect::<Result<Vec<_>, _>>()?;
        cols.push(col);
    }
    Ok(Matrix::from_columns(field, dst_dim, cols))
}

/// A partial comodule algebra file. The coaction is a matrix with
/// `dim A * dim H` rows and `dim A` columns: the image of basis element `i`
/// sits in column `i`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PcaFile {
    pub schema: u64,
    pub field: String,
    pub algebra: AlgebraBlock,
    pub bialgebra: BialgebraSpec,
    pub coaction: Vec<Vec<String>>,
}

pub fn parse_field(s: &str) -> Result<Field, InputError> {
    if s == "Q" {
        return Ok(Field::Q);
    }
    if let Some(p) = s.strip_prefix("Fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| InputError::schema("field", format!("bad prime in {s:?}")))?;
        return Field::prime(p).map_err(|e| InputError::construction("field", e));
    }
    Err(InputError::schema(
        "field",
        format!("unknown field {s:?}; use Q or Fp:<prime>"),
    ))
}

/// Parses the structural parts of a coaction file. Axiom verification is a
/// pipeline verdict, not an input error, so it happens later.
pub fn parse_pca_parts(
    bytes: &str,
) -> Result<(FinDimAlgebra, Bialgebra, Matrix), InputError> {
    let v = parse_json(bytes)?;
    check_schema_version(&v)?;
    let file: PcaFile = from_value(v, "pca file")?;
    let field = parse_field(&file.field)?;
    let algebra = file.algebra.build(field, "algebra")?;
    let bialgebra = file.bialgebra.build(field)?;
    let (da, dh) = (algebra.dim(), bialgebra.dim());
    if file.coaction.len() != da * dh || file.coaction.iter().any(|r| r.len() != da) {
        return Err(InputError::schema(
            "coaction",
            format!("expected {} rows of length {da}", da * dh),
        ));
    }
    let mut data = Vec::with_capacity(da * dh * da);
    for row in &file.coaction {
        for s in row {
            data.push(
                field
                    .parse_scalar(s)
                    .map_err(|e| InputError::construction("coaction", e))?,
            );
        }
    }
    let coaction = Matrix::new(field, da * dh, da, data);
    Ok((algebra, bialgebra, coaction))
}
