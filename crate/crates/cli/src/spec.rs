//! Job specifications, from command-line flags or TOML files.
//!
//! A spec is syntax only. Selectors are resolved against the group later,
//! in [`crate::resolve`].

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use tenfold::clifford::Field;

use crate::{Failure, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Cohomology,
    Twists,
    Clifford,
    Blocks,
    Kgroup,
    Verify,
    Oracle,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Cohomology,
        Command::Twists,
        Command::Clifford,
        Command::Blocks,
        Command::Kgroup,
        Command::Verify,
        Command::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Cohomology => "cohomology",
            Command::Twists => "twists",
            Command::Clifford => "clifford",
            Command::Blocks => "blocks",
            Command::Kgroup => "kgroup",
            Command::Verify => "verify",
            Command::Oracle => "oracle",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Preset(String),
    /// Generators in 1-based cycle notation.
    Perm(Vec<String>),
    /// Cayley table on 0..n with identity 0.
    Table(Vec<Vec<usize>>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Preset(p) => f.write_str(p),
            GroupSpec::Perm(gens) => write!(f, "perm[{}]", gens.join(", ")),
            GroupSpec::Table(t) => write!(f, "table[{}]", t.len()),
        }
    }
}

/// A homomorphism G → Z₂ by name (`trivial`, `id`, `p1`, `p2`, `p1p2`,
/// `hom:k`) or by its sign table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomSpec {
    Named(String),
    Signs(Vec<i8>),
}

impl HomSpec {
    pub fn parse(s: &str) -> Result<HomSpec, String> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty homomorphism selector".into());
        }
        if s.chars().all(|c| c == '+' || c == '-') {
            return Ok(HomSpec::Signs(s.chars().map(|c| if c == '+' { 1 } else { -1 }).collect()));
        }
        if s.contains(',') {
            return s
                .split(',')
                .map(|t| match t.trim() {
                    "1" | "+1" => Ok(1),
                    "-1" => Ok(-1),
                    other => Err(format!("sign {other:?} is not ±1")),
                })
                .collect::<Result<_, _>>()
                .map(HomSpec::Signs);
        }
        Ok(HomSpec::Named(s.to_string()))
    }
}

/// The twist τ: a named cocycle, a cocycle file, or class coordinates in
/// the computed generators of H²(G; U(1)_φ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TauSpec {
    Named(String),
    File(PathBuf),
    Class(Vec<u64>),
}

impl TauSpec {
    pub fn parse(s: &str) -> Result<TauSpec, String> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("class:") {
            return parse_class(rest).map(TauSpec::Class);
        }
        if let Some(rest) = s.strip_prefix("file:") {
            return Ok(TauSpec::File(PathBuf::from(rest)));
        }
        if s.is_empty() {
            return Err("empty τ selector".into());
        }
        Ok(TauSpec::Named(s.to_string()))
    }
}

fn parse_class(s: &str) -> Result<Vec<u64>, String> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| format!("bad class coordinate {t:?}")))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffSpec {
    Integers,
    Cyclic(u64),
    U1,
}

impl FromStr for CoeffSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "Z" => Ok(CoeffSpec::Integers),
            "U1" | "U(1)" => Ok(CoeffSpec::U1),
            t => t
                .strip_prefix("Z/")
                .and_then(|m| m.parse::<u64>().ok())
                .filter(|&m| m >= 2)
                .map(CoeffSpec::Cyclic)
                .ok_or_else(|| format!("coefficients {t:?}: expected Z, Z/m or U1")),
        }
    }
}

impl fmt::Display for CoeffSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffSpec::Integers => f.write_str("Z"),
            CoeffSpec::Cyclic(m) => write!(f, "Z/{m}"),
            CoeffSpec::U1 => f.write_str("U1"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "text" => Ok(Format::Text),
            "machine" => Ok(Format::Machine),
            t => Err(format!("format {t:?}: expected text or machine")),
        }
    }
}

/// Degrees as `n`, `a..b` (inclusive, either direction) or `a,b,c`.
pub fn parse_degrees(s: &str) -> Result<Vec<i64>, String> {
    let s = s.trim();
    let int = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad degree {t:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (int(a)?, int(b)?);
        return Ok(if a <= b { (a..=b).collect() } else { (b..=a).rev().collect() });
    }
    s.split(',').map(int).collect()
}

pub fn parse_field(s: &str) -> Result<Field, String> {
    match s.trim() {
        "R" | "r" | "real" => Ok(Field::R),
        "C" | "c" | "complex" => Ok(Field::C),
        t => Err(format!("field {t:?}: expected R or C")),
    }
}

/// Signature `p,q`.
pub fn parse_signature(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s.split_once(',').ok_or_else(|| format!("signature {s:?}: expected p,q"))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad signature entry {t:?}"));
    Ok((n(p)?, n(q)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub group: GroupSpec,
    pub phi: HomSpec,
    pub c: HomSpec,
    pub tau: Option<TauSpec>,
    /// `point`, `regular`, `cosets:a,b` or `subgroup:k`.
    pub gset: Option<String>,
    /// `None` selects the command's default range.
    pub degrees: Option<Vec<i64>>,
    pub coefficients: CoeffSpec,
    pub signature: Option<(usize, usize)>,
    pub field: Field,
    pub format: Format,
    pub suite: Option<String>,
    /// Worker threads for `verify`; 0 means one per core.
    pub jobs: usize,
    /// Largest group order in sweeps; `None` selects each suite's default.
    pub max_order: Option<usize>,
    pub seed: Option<u64>,
}

impl Default for JobSpec {
    fn default() -> Self {
        JobSpec {
            command: Command::Kgroup,
            group: GroupSpec::Preset("1".into()),
            phi: HomSpec::Named("trivial".into()),
            c: HomSpec::Named("trivial".into()),
            tau: None,
            gset: None,
            degrees: None,
            coefficients: CoeffSpec::Integers,
            signature: None,
            field: Field::R,
            format: Format::Text,
            suite: None,
            jobs: 0,
            max_order: None,
            seed: None,
        }
    }
}

const KEYS: [&str; 19] = [
    "command", "group", "perm", "table", "phi", "c", "tau", "tau_file", "tau_class", "gset", "degree",
    "coefficients", "signature", "field", "format", "suite", "jobs", "max_order", "seed",
];

/// 1-based line and column of a byte offset.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Position of the first top-level `key = …` line.
fn key_position(text: &str, key: &str) -> (usize, usize) {
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim_start();
        let rest = trimmed
            .strip_prefix(key)
            .or_else(|| trimmed.strip_prefix(&format!("\"{key}\"")));
        if rest.is_some_and(|r| r.trim_start().starts_with('=')) {
            return position(text, offset + line.len() - trimmed.len());
        }
        offset += line.len();
    }
    (1, 1)
}

/// Parses a TOML job spec. Errors carry the line and column of the
/// offending key or token.
pub fn parse_spec(text: &str) -> Result<JobSpec, Failure> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| {
        let (line, col) = e.span().map_or((1, 1), |s| position(text, s.start));
        Failure::at(Kind::Parse, line, col, e.message().trim())
    })?;
    if table.is_empty() {
        return Err(Failure::at(Kind::Parse, 1, 1, "empty job spec"));
    }
    let at = |key: &str, kind: Kind, msg: String| {
        let (line, col) = key_position(text, key);
        Failure::at(kind, line, col, &format!("{key}: {msg}"))
    };
    for key in table.keys() {
        if !KEYS.contains(&key.as_str()) {
            return Err(at(key, Kind::Parse, "unknown key".into()));
        }
    }
    for group in [["group", "perm", "table"], ["tau", "tau_file", "tau_class"]] {
        let present: Vec<&str> = group.iter().copied().filter(|k| table.contains_key(*k)).collect();
        if present.len() > 1 {
            return Err(at(
                present[1],
                Kind::Validation,
                format!("conflicts with {}; give only one selector", present[0]),
            ));
        }
    }
    let string = |key: &str| -> Result<Option<&str>, Failure> {
        match table.get(key) {
            None => Ok(None),
            Some(toml::Value::String(s)) => Ok(Some(s)),
            Some(_) => Err(at(key, Kind::Parse, "expected a string".into())),
        }
    };
    let integer = |key: &str| -> Result<Option<i64>, Failure> {
        match table.get(key) {
            None => Ok(None),
            Some(toml::Value::Integer(i)) => Ok(Some(*i)),
            Some(_) => Err(at(key, Kind::Parse, "expected an integer".into())),
        }
    };
    let ints = |key: &str, v: &toml::Value| -> Result<Vec<i64>, Failure> {
        v.as_array()
            .ok_or_else(|| at(key, Kind::Parse, "expected an array".into()))?
            .iter()
            .map(|x| x.as_integer().ok_or_else(|| at(key, Kind::Parse, "expected integers".into())))
            .collect()
    };
    let lift = |key: &'static str| move |msg: String| at(key, Kind::Parse, msg);

    let mut spec = JobSpec::default();
    if let Some(s) = string("command")? {
        spec.command = s.parse().map_err(lift("command"))?;
    }
    if let Some(s) = string("group")? {
        spec.group = GroupSpec::Preset(s.to_string());
    }
    if let Some(v) = table.get("perm") {
        let gens = v
            .as_array()
            .and_then(|a| a.iter().map(|x| x.as_str().map(str::to_string)).collect::<Option<Vec<_>>>())
            .ok_or_else(|| at("perm", Kind::Parse, "expected an array of cycle strings".into()))?;
        spec.group = GroupSpec::Perm(gens);
    }
    if let Some(v) = table.get("table") {
        let rows = v
            .as_array()
            .ok_or_else(|| at("table", Kind::Parse, "expected an array of rows".into()))?
            .iter()
            .map(|r| {
                ints("table", r)?
                    .into_iter()
                    .map(|x| usize::try_from(x).map_err(|_| at("table", Kind::Parse, "negative entry".into())))
                    .collect::<Result<Vec<usize>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        spec.group = GroupSpec::Table(rows);
    }
    for (key, slot) in [("phi", &mut spec.phi), ("c", &mut spec.c)] {
        match table.get(key) {
            None => {}
            Some(toml::Value::String(s)) => *slot = HomSpec::parse(s).map_err(lift(key))?,
            Some(v) => {
                let signs = ints(key, v)?;
                if signs.iter().any(|&x| x != 1 && x != -1) {
                    return Err(at(key, Kind::Parse, "signs must be ±1".into()));
                }
                *slot = HomSpec::Signs(signs.into_iter().map(|x| x as i8).collect());
            }
        }
    }
    if let Some(s) = string("tau")? {
        spec.tau = Some(TauSpec::parse(s).map_err(lift("tau"))?);
    }
    if let Some(s) = string("tau_file")? {
        spec.tau = Some(TauSpec::File(PathBuf::from(s)));
    }
    if let Some(v) = table.get("tau_class") {
        let coords = ints("tau_class", v)?
            .into_iter()
            .map(|x| u64::try_from(x).map_err(|_| at("tau_class", Kind::Parse, "negative coordinate".into())))
            .collect::<Result<_, _>>()?;
        spec.tau = Some(TauSpec::Class(coords));
    }
    spec.gset = string("gset")?.map(str::to_string);
    spec.degrees = match table.get("degree") {
        None => None,
        Some(toml::Value::Integer(n)) => Some(vec![*n]),
        Some(toml::Value::String(s)) => Some(parse_degrees(s).map_err(lift("degree"))?),
        Some(v) => Some(ints("degree", v)?),
    };
    if let Some(s) = string("coefficients")? {
        spec.coefficients = s.parse().map_err(lift("coefficients"))?;
    }
    if let Some(v) = table.get("signature") {
        let pq = match v {
            toml::Value::String(s) => parse_signature(s).map_err(lift("signature"))?,
            v => match ints("signature", v)?.as_slice() {
                &[p, q] if p >= 0 && q >= 0 => (p as usize, q as usize),
                _ => return Err(at("signature", Kind::Parse, "expected [p, q]".into())),
            },
        };
        spec.signature = Some(pq);
    }
    if let Some(s) = string("field")? {
        spec.field = parse_field(s).map_err(lift("field"))?;
    }
    if let Some(s) = string("format")? {
        spec.format = s.parse().map_err(lift("format"))?;
    }
    spec.suite = string("suite")?.map(str::to_string);
    let nonneg = |key: &str| -> Result<Option<u64>, Failure> {
        integer(key)?
            .map(|n| u64::try_from(n).map_err(|_| at(key, Kind::Parse, "must be nonnegative".into())))
            .transpose()
    };
    spec.jobs = nonneg("jobs")?.unwrap_or(0) as usize;
    spec.max_order = nonneg("max_order")?.map(|n| n as usize);
    spec.seed = nonneg("seed")?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_an_error_at_the_start() {
        let e = parse_spec("").unwrap_err();
        assert_eq!((e.kind, e.position), (Kind::Parse, Some((1, 1))));
        assert!(parse_spec("  \n# only a comment\n").is_err());
    }

    #[test]
    fn preset_only_spec_fills_defaults() {
        let s = parse_spec("group = \"Z2\"\n").unwrap();
        assert_eq!(s, JobSpec { group: GroupSpec::Preset("Z2".into()), ..JobSpec::default() });
    }

    #[test]
    fn conflicting_tau_selectors_are_a_validation_error() {
        let e = parse_spec("group = \"Z2\"\ntau = \"tau_id\"\ntau_class = [1]\n").unwrap_err();
        assert_eq!((e.kind, e.position), (Kind::Validation, Some((3, 1))));
    }

    #[test]
    fn syntax_errors_are_positioned() {
        let e = parse_spec("group = \"Z2\"\nphi = = 3\n").unwrap_err();
        assert_eq!(e.kind, Kind::Parse);
        assert_eq!(e.position.map(|p| p.0), Some(2));
        let e = parse_spec("group = \"Z2\"\n  colour = 1\n").unwrap_err();
        assert_eq!(e.position, Some((2, 3)));
    }

    #[test]
    fn full_spec() {
        let text = r#"
command = "blocks"
group = "Z2xZ2"
phi = "p1"
c = [1, -1, 1, -1]
tau_class = [1, 0]
degree = "0..-3"
format = "machine"
"#;
        let s = parse_spec(text).unwrap();
        assert_eq!(s.command, Command::Blocks);
        assert_eq!(s.c, HomSpec::Signs(vec![1, -1, 1, -1]));
        assert_eq!(s.tau, Some(TauSpec::Class(vec![1, 0])));
        assert_eq!(s.degrees, Some(vec![0, -1, -2, -3]));
        assert_eq!(s.format, Format::Machine);
    }

    #[test]
    fn selectors() {
        assert_eq!(HomSpec::parse("+-").unwrap(), HomSpec::Signs(vec![1, -1]));
        assert_eq!(HomSpec::parse("1,-1").unwrap(), HomSpec::Signs(vec![1, -1]));
        assert_eq!(HomSpec::parse("id").unwrap(), HomSpec::Named("id".into()));
        assert_eq!(TauSpec::parse("class:1,0").unwrap(), TauSpec::Class(vec![1, 0]));
        assert_eq!(parse_degrees("2").unwrap(), vec![2]);
        assert_eq!(parse_degrees("1..3").unwrap(), vec![1, 2, 3]);
        assert!("Z/1".parse::<CoeffSpec>().is_err());
    }
}
