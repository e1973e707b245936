//! JSON file formats for SFTs, block maps and homotopies.
//!
//! Symbols appear by name at this boundary and by index everywhere else.
//! Elements are written as an integer (line), an integer array (grid) or a
//! reduced word such as `"abA"` with uppercase letters for inverses (free;
//! the identity is `"1"`). Cell keys of patterns use the same forms as text:
//! `"-1"`, `"1,0"`, `"aB"`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use symdyn_core::glue::{build_retraction, factor_onto_contractible, stitch};
use symdyn_core::homotopy::natural_extension;
use symdyn_core::{BlockMap, Element, FiniteDomain, Group, Homotopy, HomotopyDesc, MapDesc, Pattern, Sft, Sym};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] symdyn_core::Error),
}

pub type Result<T> = std::result::Result<T, FormatError>;

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(FormatError::Invalid(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Line,
    Grid,
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub rank: usize,
}

impl GroupSpec {
    pub fn group(&self) -> Result<Group> {
        match (self.kind, self.rank) {
            (GroupKind::Line, 1) => Ok(Group::Line),
            (GroupKind::Line, r) => invalid(format!("line group has rank 1, not {r}")),
            (GroupKind::Grid, r) if (1..=8).contains(&r) => Ok(Group::Grid(r)),
            (GroupKind::Free, r) if (1..=26).contains(&r) => Ok(Group::Free(r)),
            (k, r) => invalid(format!("unsupported rank {r} for {k:?}")),
        }
    }

    pub fn of(group: Group) -> GroupSpec {
        match group {
            Group::Line => GroupSpec { kind: GroupKind::Line, rank: 1 },
            Group::Grid(d) => GroupSpec { kind: GroupKind::Grid, rank: d },
            Group::Free(k) => GroupSpec { kind: GroupKind::Free, rank: k },
        }
    }
}

fn free_word(s: &str, k: usize) -> Result<Element> {
    if s.is_empty() || s == "1" {
        return Ok(Element::Free(Vec::new()));
    }
    match Element::parse_word(s, k) {
        Some(e) => Ok(e),
        None => invalid(format!("{s:?} is not a reduced word over {k} generators")),
    }
}

pub fn element_from_json(group: Group, v: &Value) -> Result<Element> {
    let e = match (group, v) {
        (Group::Line, Value::Number(n)) => match n.as_i64() {
            Some(a) => Element::Line(a),
            None => return invalid(format!("{n} is not an integer")),
        },
        (Group::Grid(d), Value::Array(xs)) => {
            let coords: Option<Vec<i64>> = xs.iter().map(Value::as_i64).collect();
            match coords {
                Some(c) if c.len() == d => Element::Grid(c),
                _ => return invalid(format!("{v} is not an integer vector of length {d}")),
            }
        }
        (Group::Free(k), Value::String(s)) => free_word(s, k)?,
        _ => return invalid(format!("{v} is not an element of {group}")),
    };
    Ok(e)
}

pub fn element_to_json(e: &Element) -> Value {
    match e {
        Element::Line(a) => Value::from(*a),
        Element::Grid(v) => Value::from(v.clone()),
        Element::Free(_) => Value::from(e.to_string()),
    }
}

/// Parses a cell key (`"3"`, `"1,-2"`, `"abA"`).
pub fn element_from_key(group: Group, s: &str) -> Result<Element> {
    let bad = || FormatError::Invalid(format!("{s:?} is not an element of {group}"));
    match group {
        Group::Line => s.trim().parse().map(Element::Line).map_err(|_| bad()),
        Group::Grid(d) => {
            let c: std::result::Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse()).collect();
            match c {
                Ok(c) if c.len() == d => Ok(Element::Grid(c)),
                _ => Err(bad()),
            }
        }
        Group::Free(k) => free_word(s, k),
    }
}

fn domain_from_json(group: Group, vs: &[Value]) -> Result<FiniteDomain> {
    let elems = vs.iter().map(|v| element_from_json(group, v)).collect::<Result<Vec<_>>>()?;
    let n = elems.len();
    let d = FiniteDomain::new(elems);
    if d.len() != n {
        return invalid("duplicate elements in a domain");
    }
    Ok(d)
}

fn domain_to_json(d: &FiniteDomain) -> Vec<Value> {
    d.iter().map(element_to_json).collect()
}

/// A pattern as a map from cell keys to symbol names.
pub type CellMap = BTreeMap<String, String>;

pub fn pattern_to_cells(p: &Pattern, alphabet: &[String]) -> CellMap {
    p.cells()
        .map(|(e, s)| {
            let name = alphabet.get(s as usize).cloned().unwrap_or_else(|| s.to_string());
            (e.to_string(), name)
        })
        .collect()
}

pub fn pattern_from_cells(group: Group, alphabet: &[String], cells: &CellMap) -> Result<Pattern> {
    let mut out = Vec::with_capacity(cells.len());
    for (k, name) in cells {
        let e = element_from_key(group, k)?;
        let Some(s) = alphabet.iter().position(|a| a == name) else {
            return invalid(format!("unknown symbol {name:?}"));
        };
        out.push((e, s as Sym));
    }
    let p = Pattern::from_cells(out);
    if p.len() != cells.len() {
        return invalid("a pattern names the same cell twice");
    }
    Ok(p)
}

/// The SFT text format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SftFile {
    pub group: GroupSpec,
    pub alphabet: Vec<String>,
    pub window: Vec<Value>,
    pub forbidden: Vec<CellMap>,
}

impl SftFile {
    pub fn of(x: &Sft) -> SftFile {
        SftFile {
            group: GroupSpec::of(x.group),
            alphabet: x.alphabet.clone(),
            window: domain_to_json(&x.window),
            forbidden: x.forbidden.iter().map(|p| pattern_to_cells(p, &x.alphabet)).collect(),
        }
    }

    pub fn build(&self) -> Result<Sft> {
        let group = self.group.group()?;
        let mut names = self.alphabet.clone();
        names.sort();
        names.dedup();
        if names.len() != self.alphabet.len() {
            return invalid("duplicate alphabet names");
        }
        let window = domain_from_json(group, &self.window)?;
        let mut forbidden = Vec::with_capacity(self.forbidden.len());
        for cells in &self.forbidden {
            let p = pattern_from_cells(group, &self.alphabet, cells)?;
            if !p.domain.is_subset(&window) {
                return invalid(format!("forbidden pattern {cells:?} leaves the window"));
            }
            forbidden.push(p);
        }
        Ok(Sft::new(group, self.alphabet.clone(), window, forbidden)?)
    }
}

/// Builtin homotopy constructions by name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum HomotopySpec {
    Naive { sft: SftFile },
    SafeSymbol { sft: SftFile, safe: String },
    BurtonSteif { group: GroupSpec, m: usize },
    Coloring { group: GroupSpec, k: usize },
    Z0 { sft: SftFile, zero: String },
    Mixing { sft: SftFile },
    Lift { inner: Box<HomotopySpec>, m: usize },
    Reduce { inner: Box<HomotopySpec> },
}

fn symbol_of(x: &Sft, name: &str) -> Result<Sym> {
    match x.symbol(name) {
        Some(s) => Ok(s),
        None => invalid(format!("{name:?} is not in the alphabet {:?}", x.alphabet)),
    }
}

impl HomotopySpec {
    pub fn of(desc: &HomotopyDesc) -> Result<HomotopySpec> {
        let name = |x: &Sft, s: Sym| x.alphabet[s as usize].clone();
        Ok(match desc {
            HomotopyDesc::Naive { sft } => HomotopySpec::Naive { sft: SftFile::of(sft) },
            HomotopyDesc::NaiveMaps { .. } => return invalid("naive homotopies of arbitrary maps have no file form"),
            HomotopyDesc::SafeSymbol { sft, safe } => {
                HomotopySpec::SafeSymbol { sft: SftFile::of(sft), safe: name(sft, *safe) }
            }
            HomotopyDesc::BurtonSteif { group, m } => HomotopySpec::BurtonSteif { group: GroupSpec::of(*group), m: *m },
            HomotopyDesc::Coloring { group, k } => HomotopySpec::Coloring { group: GroupSpec::of(*group), k: *k },
            HomotopyDesc::Z0 { sft, zero } => HomotopySpec::Z0 { sft: SftFile::of(sft), zero: name(sft, *zero) },
            HomotopyDesc::Mixing { sft } => HomotopySpec::Mixing { sft: SftFile::of(sft) },
            HomotopyDesc::Lift { inner, m } => HomotopySpec::Lift { inner: Box::new(HomotopySpec::of(inner)?), m: *m },
            HomotopyDesc::Reduce { inner } => HomotopySpec::Reduce { inner: Box::new(HomotopySpec::of(inner)?) },
        })
    }

    pub fn desc(&self) -> Result<HomotopyDesc> {
        Ok(match self {
            HomotopySpec::Naive { sft } => HomotopyDesc::Naive { sft: Box::new(sft.build()?) },
            HomotopySpec::SafeSymbol { sft, safe } => {
                let x = sft.build()?;
                let safe = symbol_of(&x, safe)?;
                HomotopyDesc::SafeSymbol { sft: Box::new(x), safe }
            }
            HomotopySpec::BurtonSteif { group, m } => HomotopyDesc::BurtonSteif { group: group.group()?, m: *m },
            HomotopySpec::Coloring { group, k } => HomotopyDesc::Coloring { group: group.group()?, k: *k },
            HomotopySpec::Z0 { sft, zero } => {
                let x = sft.build()?;
                let zero = symbol_of(&x, zero)?;
                HomotopyDesc::Z0 { sft: Box::new(x), zero }
            }
            HomotopySpec::Mixing { sft } => HomotopyDesc::Mixing { sft: Box::new(sft.build()?) },
            HomotopySpec::Lift { inner, m } => HomotopyDesc::Lift { inner: Box::new(inner.desc()?), m: *m },
            HomotopySpec::Reduce { inner } => HomotopyDesc::Reduce { inner: Box::new(inner.desc()?) },
        })
    }
}

/// Endpoint description: time runs over `{0, ..., time-1}`; `left` and
/// `right` name the configuration track returned at the two constant times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Endpoints {
    pub time: usize,
    pub left: String,
    pub right: String,
}

/// The homotopy descriptor file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopyFile {
    pub builtin: HomotopySpec,
    pub endpoints: Endpoints,
}

fn contraction_endpoints(time: usize) -> Endpoints {
    Endpoints { time, left: "x".into(), right: "y".into() }
}

impl HomotopyFile {
    pub fn of(h: &Homotopy) -> Result<HomotopyFile> {
        Ok(HomotopyFile { builtin: HomotopySpec::of(&h.desc)?, endpoints: contraction_endpoints(h.time) })
    }

    pub fn build(&self) -> Result<Homotopy> {
        let h = Homotopy::from_desc(&self.builtin.desc()?)?;
        let want = contraction_endpoints(h.time);
        if self.endpoints != want {
            return invalid(format!("endpoint spec {:?} does not match the builtin, expected {want:?}", self.endpoints));
        }
        Ok(h)
    }
}

/// Builtin block maps by name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MapSpec {
    Identity { group: GroupSpec, size: usize },
    Project { group: GroupSpec, sources: Vec<usize>, track: usize },
    /// Sum modulo 2 over the radius ball.
    Xor { group: GroupSpec, radius: usize },
    Constant { group: GroupSpec, sources: Vec<usize>, target: usize, symbol: Sym },
    Relabel { group: GroupSpec, source: usize, target: usize, table: Vec<Sym> },
    BallMin { group: GroupSpec, n: usize },
    ZMinMax { n: usize },
    TopSymbol { group: GroupSpec, m: usize },
    Compose { outer: Box<MapFile>, inner: Vec<MapFile> },
    Homotopy { homotopy: HomotopyFile },
    NaturalExtension { homotopy: HomotopyFile },
    Retraction { sft: SftFile, homotopy: HomotopyFile, fixed: String, cap: usize },
    Stitch { parts: Vec<MapFile>, target: SftFile, homotopy: HomotopyFile },
    Factor { f: Box<MapFile>, g: Box<MapFile>, source: SftFile, target: SftFile, homotopy: HomotopyFile },
}

/// The block map file: a rule table or a builtin descriptor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum MapFile {
    /// Rows are indexed by neighborhood contents read track by track, cells
    /// in canonical element order, first digit most significant.
    Table { group: GroupSpec, sources: Vec<usize>, target: usize, nbhd: Vec<Value>, rows: Vec<Sym> },
    Builtin(MapSpec),
}

impl MapFile {
    /// A file form of `f`: the builtin descriptor when one exists, else its table.
    pub fn of(f: &BlockMap) -> Result<MapFile> {
        let group = GroupSpec::of(f.group);
        Ok(match &f.desc {
            MapDesc::Homotopy(d) => MapFile::Builtin(MapSpec::Homotopy {
                homotopy: HomotopyFile::of(&Homotopy::from_desc(d)?)?,
            }),
            MapDesc::NaturalExtension(d) => MapFile::Builtin(MapSpec::NaturalExtension {
                homotopy: HomotopyFile::of(&Homotopy::from_desc(d)?)?,
            }),
            MapDesc::Retraction { sft, homotopy, fixed, radius } => MapFile::Builtin(MapSpec::Retraction {
                sft: SftFile::of(sft),
                homotopy: HomotopyFile::of(&Homotopy::from_desc(homotopy)?)?,
                fixed: sft.alphabet[*fixed as usize].clone(),
                cap: *radius,
            }),
            MapDesc::Project { track } => {
                MapFile::Builtin(MapSpec::Project { group, sources: f.sources.clone(), track: *track })
            }
            MapDesc::Constant { symbol } => MapFile::Builtin(MapSpec::Constant {
                group,
                sources: f.sources.clone(),
                target: f.target,
                symbol: *symbol,
            }),
            MapDesc::Relabel { table } if f.sources.len() == 1 => MapFile::Builtin(MapSpec::Relabel {
                group,
                source: f.sources[0],
                target: f.target,
                table: table.clone(),
            }),
            MapDesc::Table { rows } => {
                MapFile::Table { group, sources: f.sources.clone(), target: f.target, nbhd: domain_to_json(&f.nbhd), rows: rows.clone() }
            }
            _ => return MapFile::of(&f.tabulate()?),
        })
    }

    pub fn build(&self) -> Result<BlockMap> {
        match self {
            MapFile::Table { group, sources, target, nbhd, rows } => {
                let group = group.group()?;
                let nbhd = domain_from_json(group, nbhd)?;
                Ok(BlockMap::table(group, sources.clone(), *target, nbhd, rows.clone())?)
            }
            MapFile::Builtin(spec) => spec.build(),
        }
    }
}

impl MapSpec {
    pub fn build(&self) -> Result<BlockMap> {
        Ok(match self {
            MapSpec::Identity { group, size } => BlockMap::identity(group.group()?, *size),
            MapSpec::Project { group, sources, track } => {
                if *track >= sources.len() {
                    return invalid("projection track out of range");
                }
                BlockMap::project(group.group()?, sources.clone(), *track)
            }
            MapSpec::Xor { group, radius } => {
                let g = group.group()?;
                BlockMap::xor(g, g.ball(*radius))
            }
            MapSpec::Constant { group, sources, target, symbol } => {
                if *symbol as usize >= *target {
                    return invalid("constant symbol outside the target alphabet");
                }
                BlockMap::constant(group.group()?, sources.clone(), *target, *symbol)
            }
            MapSpec::Relabel { group, source, target, table } => {
                BlockMap::relabel(group.group()?, *source, *target, table.clone())?
            }
            MapSpec::BallMin { group, n } => BlockMap::ball_min(group.group()?, *n),
            MapSpec::ZMinMax { n } => BlockMap::z_min_max(*n),
            MapSpec::TopSymbol { group, m } => BlockMap::top_symbol(group.group()?, *m),
            MapSpec::Compose { outer, inner } => {
                let inner = inner.iter().map(MapFile::build).collect::<Result<Vec<_>>>()?;
                BlockMap::compose(&outer.build()?, &inner)?
            }
            MapSpec::Homotopy { homotopy } => homotopy.build()?.map,
            MapSpec::NaturalExtension { homotopy } => natural_extension(&homotopy.build()?)?,
            MapSpec::Retraction { sft, homotopy, fixed, cap } => {
                let x = sft.build()?;
                let fixed = symbol_of(&x, fixed)?;
                build_retraction(&x, &homotopy.build()?, fixed, *cap)?.map
            }
            MapSpec::Stitch { parts, target, homotopy } => {
                let parts = parts.iter().map(MapFile::build).collect::<Result<Vec<_>>>()?;
                stitch(&parts, &target.build()?, &homotopy.build()?)?
            }
            MapSpec::Factor { f, g, source, target, homotopy } => factor_onto_contractible(
                &f.build()?,
                &g.build()?,
                &source.build()?,
                &target.build()?,
                &homotopy.build()?,
            )?,
        })
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&read(path)?)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    std::fs::write(path, s).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn read_sft(path: &Path) -> Result<Sft> {
    read_json::<SftFile>(path)?.build()
}

pub fn read_map(path: &Path) -> Result<BlockMap> {
    read_json::<MapFile>(path)?.build()
}

pub fn read_homotopy(path: &Path) -> Result<Homotopy> {
    read_json::<HomotopyFile>(path)?.build()
}
