//! Sectioned plain-text problem format.
//!
//! ```text
//! [units]
//! length m
//! ...
//! [nodes]
//! # id x y z
//! 1 0 0 0
//! [members]
//! # id start end group
//! [supports]
//! # node axes
//! 7 xyz
//! [loads]
//! # case node fx fy fz   (a bare case id declares an empty case)
//! [variables]
//! sizing X1 group 1 discrete 65 130 195
//! shape Y1 links 4:x+ 5:x+ 3:x- 6:x- range 0.51 1.52
//! ```
//!
//! Numbers are written with the shortest representation that parses back
//! to the same value, so serialize then parse is exact.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::path::Path;

use thiserror::Error;

use crate::error::{Error, ModelError};
use crate::model::{
    Axis, CoordinateLink, Domain, Limits, LoadCase, Material, Member, NodalLoad, Node, Role, Sign, Support, TrussData,
    TrussProblem, VariableSet, VariableSpec,
};

/// Units accepted in the `[units]` block; nothing else is supported.
const UNITS: [(&str, &str); 7] = [
    ("length", "m"),
    ("force", "kN"),
    ("modulus", "GPa"),
    ("stress", "MPa"),
    ("displacement", "mm"),
    ("density", "kg/m3"),
    ("area", "mm2"),
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A diagnostic with an optional 1-based line and column.
#[derive(Debug, Clone, PartialEq, Error)]
pub struct ParseError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.kind),
            (Some(l), None) => write!(f, "line {l}: {}", self.kind),
            _ => write!(f, "{}", self.kind),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Section {
    Units,
    Problem,
    Material,
    Limits,
    Nodes,
    Members,
    Supports,
    Loads,
    Variables,
}

impl Section {
    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "units" => Section::Units,
            "problem" => Section::Problem,
            "material" => Section::Material,
            "limits" => Section::Limits,
            "nodes" => Section::Nodes,
            "members" => Section::Members,
            "supports" => Section::Supports,
            "loads" => Section::Loads,
            "variables" => Section::Variables,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokenize(line: &str, number: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &line[s..i], line: number, column: line[..s].chars().count() + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], line: number, column: line[..s].chars().count() + 1 });
    }
    out
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line: Some(line), column: Some(column), kind: ParseErrorKind::Syntax(msg.into()) }
}

fn num(t: Token<'_>) -> Result<f64, ParseError> {
    match t.text.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(syntax(t.line, t.column, format!("expected a number, found `{}`", t.text))),
    }
}

fn id(t: Token<'_>) -> Result<u32, ParseError> {
    t.text
        .parse::<u32>()
        .map_err(|_| syntax(t.line, t.column, format!("expected a non-negative integer id, found `{}`", t.text)))
}

fn expect_len(tokens: &[Token<'_>], n: usize, what: &str) -> Result<(), ParseError> {
    if tokens.len() != n {
        let t = tokens.get(n.min(tokens.len().saturating_sub(1))).copied().unwrap_or(tokens[0]);
        return Err(syntax(t.line, t.column, format!("{what}: expected {n} fields, found {}", tokens.len())));
    }
    Ok(())
}

fn parse_axes(t: Token<'_>) -> Result<[bool; 3], ParseError> {
    let mut fixed = [false; 3];
    if t.text == "-" {
        return Ok(fixed);
    }
    for c in t.text.chars() {
        let axis = Axis::from_char(c).ok_or_else(|| syntax(t.line, t.column, format!("unknown axis `{c}`")))?;
        fixed[axis.index()] = true;
    }
    Ok(fixed)
}

fn parse_link(t: Token<'_>) -> Result<CoordinateLink, ParseError> {
    let bad = || syntax(t.line, t.column, format!("expected node:axis± link, found `{}`", t.text));
    let (node, rest) = t.text.split_once(':').ok_or_else(bad)?;
    let node: u32 = node.parse().map_err(|_| bad())?;
    let mut chars = rest.chars();
    let axis = chars.next().and_then(Axis::from_char).ok_or_else(bad)?;
    let sign = match chars.next() {
        Some('+') => Sign::Plus,
        Some('-') => Sign::Minus,
        _ => return Err(bad()),
    };
    if chars.next().is_some() {
        return Err(bad());
    }
    Ok(CoordinateLink::new(node, axis, sign))
}

/// Parses a problem file and validates it.
pub fn parse_problem_file(text: &str) -> Result<(TrussProblem, VariableSet), ParseError> {
    let mut section: Option<Section> = None;
    let mut seen: HashMap<Section, usize> = HashMap::new();
    let mut units: HashMap<String, String> = HashMap::new();
    let mut name = String::new();
    let mut notes = Vec::new();
    let mut density = None;
    let mut modulus = None;
    let mut stress = None;
    let mut displacement = None;
    let mut nodes = Vec::new();
    let mut members = Vec::new();
    let mut supports = Vec::new();
    let mut cases: Vec<LoadCase> = Vec::new();
    let mut specs = Vec::new();
    let mut node_lines: HashMap<u32, usize> = HashMap::new();
    let mut member_lines: HashMap<u32, usize> = HashMap::new();
    let mut var_lines: HashMap<String, usize> = HashMap::new();
    let mut support_lines: HashMap<u32, usize> = HashMap::new();
    let mut load_lines: Vec<(u32, usize)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(content, line_no);
        if tokens.is_empty() {
            continue;
        }
        let first = tokens[0];
        if first.text.starts_with('[') {
            let header = content.trim();
            if !header.ends_with(']') || tokens.len() != 1 {
                return Err(syntax(line_no, first.column, "malformed section header"));
            }
            let s = Section::from_name(&header[1..header.len() - 1])
                .ok_or_else(|| syntax(line_no, first.column, format!("unknown section `{header}`")))?;
            if seen.insert(s, line_no).is_some() {
                return Err(syntax(line_no, first.column, format!("section `{header}` appears twice")));
            }
            section = Some(s);
            continue;
        }
        let Some(s) = section else {
            return Err(syntax(line_no, first.column, "content before the first section header"));
        };
        match s {
            Section::Units => {
                expect_len(&tokens, 2, "unit")?;
                let expected = UNITS.iter().find(|(q, _)| *q == first.text).ok_or_else(|| {
                    syntax(line_no, first.column, format!("unknown quantity `{}`", first.text))
                })?;
                if tokens[1].text != expected.1 {
                    return Err(syntax(
                        line_no,
                        tokens[1].column,
                        format!("unsupported unit `{}` for {} (expected {})", tokens[1].text, expected.0, expected.1),
                    ));
                }
                units.insert(first.text.to_string(), tokens[1].text.to_string());
            }
            Section::Problem => {
                let rest = content.trim_start()[first.text.len()..].trim().to_string();
                match first.text {
                    "name" => name = rest,
                    "note" => notes.push(rest),
                    other => return Err(syntax(line_no, first.column, format!("unknown problem key `{other}`"))),
                }
            }
            Section::Material => {
                expect_len(&tokens, 2, "material")?;
                let v = num(tokens[1])?;
                match first.text {
                    "density" => density = Some(v),
                    "elastic_modulus" => modulus = Some(v),
                    other => return Err(syntax(line_no, first.column, format!("unknown material key `{other}`"))),
                }
            }
            Section::Limits => {
                expect_len(&tokens, 3, "limit")?;
                let pair = (num(tokens[1])?, num(tokens[2])?);
                match first.text {
                    "stress" => stress = Some(pair),
                    "displacement" => displacement = Some(pair),
                    other => return Err(syntax(line_no, first.column, format!("unknown limit `{other}`"))),
                }
            }
            Section::Nodes => {
                expect_len(&tokens, 4, "node")?;
                let nid = id(first)?;
                node_lines.entry(nid).or_insert(line_no);
                nodes.push(Node { id: nid, position: [num(tokens[1])?, num(tokens[2])?, num(tokens[3])?] });
            }
            Section::Members => {
                expect_len(&tokens, 4, "member")?;
                let mid = id(first)?;
                member_lines.entry(mid).or_insert(line_no);
                members.push(Member { id: mid, start: id(tokens[1])?, end: id(tokens[2])?, group: id(tokens[3])? });
            }
            Section::Supports => {
                expect_len(&tokens, 2, "support")?;
                let nid = id(first)?;
                support_lines.entry(nid).or_insert(line_no);
                supports.push(Support { node: nid, fixed: parse_axes(tokens[1])? });
            }
            Section::Loads => {
                if tokens.len() != 1 && tokens.len() != 5 {
                    return Err(syntax(line_no, first.column, "load: expected `case` or `case node fx fy fz`"));
                }
                let case = id(first)?;
                let idx = match cases.iter().position(|c| c.id == case) {
                    Some(i) => i,
                    None => {
                        cases.push(LoadCase { id: case, loads: Vec::new() });
                        cases.len() - 1
                    }
                };
                if tokens.len() == 5 {
                    let nid = id(tokens[1])?;
                    load_lines.push((nid, line_no));
                    cases[idx].loads.push(NodalLoad {
                        node: nid,
                        force: [num(tokens[2])?, num(tokens[3])?, num(tokens[4])?],
                    });
                }
            }
            Section::Variables => {
                let spec = parse_variable(&tokens)?;
                var_lines.entry(spec.name.clone()).or_insert(line_no);
                specs.push(spec);
            }
        }
    }

    for (quantity, _) in UNITS {
        if !units.contains_key(quantity) {
            let line = seen.get(&Section::Units).copied();
            return Err(ParseError {
                line,
                column: None,
                kind: ParseErrorKind::Syntax(format!("[units] must declare `{quantity}`")),
            });
        }
    }
    let missing = |what: &str| ParseError { line: None, column: None, kind: ParseErrorKind::Syntax(format!("missing {what}")) };
    let (stress_min, stress_max) = stress.ok_or_else(|| missing("stress limits"))?;
    let (displacement_min, displacement_max) = displacement.ok_or_else(|| missing("displacement limits"))?;
    let data = TrussData {
        name,
        notes,
        nodes,
        members,
        supports,
        load_cases: cases,
        material: Material {
            density: density.ok_or_else(|| missing("material density"))?,
            elastic_modulus: modulus.ok_or_else(|| missing("elastic modulus"))?,
        },
        limits: Limits { stress_min, stress_max, displacement_min, displacement_max },
    };

    let locate = |e: &ModelError| -> Option<usize> {
        match e {
            ModelError::DuplicateNode(n) => node_lines.get(n).copied(),
            ModelError::DuplicateMember(m)
            | ModelError::UnknownNode { member: m, .. }
            | ModelError::SelfLoop(m)
            | ModelError::DegenerateMember(m) => member_lines.get(m).copied(),
            ModelError::DanglingNode { context, node } if context.starts_with("support") => support_lines.get(node).copied(),
            ModelError::DanglingNode { context, node } if context.starts_with("load") => {
                load_lines.iter().find(|(n, _)| n == node).map(|(_, l)| *l)
            }
            ModelError::DanglingNode { context, .. } => {
                context.strip_prefix("shape variable ").and_then(|v| var_lines.get(v).copied())
            }
            ModelError::UnknownGroup { name, .. } | ModelError::InvalidDomain { name, .. } | ModelError::EmptyLinkSet(name) => {
                var_lines.get(name).copied()
            }
            ModelError::NoVariables => seen.get(&Section::Variables).copied(),
            ModelError::NoLoadCases => seen.get(&Section::Loads).copied(),
            ModelError::NoMembers => seen.get(&Section::Members).copied(),
            _ => None,
        }
    };
    let wrap = |e: ModelError| ParseError { line: locate(&e), column: None, kind: ParseErrorKind::Model(e) };
    let problem = TrussProblem::new(data).map_err(wrap)?;
    let vars = VariableSet::bind(&problem, specs).map_err(wrap)?;
    Ok((problem, vars))
}

fn parse_variable(tokens: &[Token<'_>]) -> Result<VariableSpec, ParseError> {
    let first = tokens[0];
    if tokens.len() < 4 {
        return Err(syntax(first.line, first.column, "variable: expected `sizing|shape <name> ...`"));
    }
    let name = tokens[1].text.to_string();
    let (role, rest) = match first.text {
        "sizing" => {
            if tokens[2].text != "group" {
                return Err(syntax(tokens[2].line, tokens[2].column, "expected `group`"));
            }
            (Role::Sizing { group: id(tokens[3])? }, &tokens[4..])
        }
        "shape" => {
            if tokens[2].text != "links" {
                return Err(syntax(tokens[2].line, tokens[2].column, "expected `links`"));
            }
            let end = tokens[3..]
                .iter()
                .position(|t| t.text == "range" || t.text == "discrete")
                .map(|p| p + 3)
                .unwrap_or(tokens.len());
            let links = tokens[3..end].iter().map(|t| parse_link(*t)).collect::<Result<Vec<_>, _>>()?;
            (Role::Shape { links }, &tokens[end..])
        }
        other => return Err(syntax(first.line, first.column, format!("unknown variable kind `{other}`"))),
    };
    let Some(kind) = rest.first() else {
        let last = tokens[tokens.len() - 1];
        return Err(syntax(last.line, last.column + last.text.len(), "missing `range` or `discrete` domain"));
    };
    let values = rest[1..].iter().map(|t| num(*t)).collect::<Result<Vec<_>, _>>()?;
    let domain = match kind.text {
        "range" => {
            if values.len() != 2 {
                return Err(syntax(kind.line, kind.column, "range: expected `lo hi`"));
            }
            Domain::Continuous { lo: values[0], hi: values[1] }
        }
        "discrete" => Domain::Discrete(values),
        other => return Err(syntax(kind.line, kind.column, format!("unknown domain `{other}`"))),
    };
    Ok(VariableSpec { name, role, domain })
}

/// Reads and parses a problem file from disk.
pub fn read_problem_file(path: &Path) -> Result<(TrussProblem, VariableSet), Error> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    Ok(parse_problem_file(&text)?)
}

fn axes(fixed: [bool; 3]) -> String {
    let s: String = Axis::ALL.iter().filter(|a| fixed[a.index()]).map(|a| a.as_char()).collect();
    if s.is_empty() {
        "-".into()
    } else {
        s
    }
}

/// Writes a problem in the text format; parsing the output gives back an equal problem.
pub fn serialize_problem_file(problem: &TrussProblem, vars: &VariableSet) -> String {
    let d = problem.data();
    let mut out = String::new();
    out.push_str("[units]\n");
    for (q, u) in UNITS {
        let _ = writeln!(out, "{q} {u}");
    }
    out.push_str("\n[problem]\n");
    let _ = writeln!(out, "name {}", d.name);
    for n in &d.notes {
        let _ = writeln!(out, "note {n}");
    }
    out.push_str("\n[material]\n");
    let _ = writeln!(out, "density {}", d.material.density);
    let _ = writeln!(out, "elastic_modulus {}", d.material.elastic_modulus);
    out.push_str("\n[limits]\n");
    let _ = writeln!(out, "stress {} {}", d.limits.stress_min, d.limits.stress_max);
    let _ = writeln!(out, "displacement {} {}", d.limits.displacement_min, d.limits.displacement_max);
    out.push_str("\n[nodes]\n# id x y z\n");
    for n in &d.nodes {
        let [x, y, z] = n.position;
        let _ = writeln!(out, "{} {x} {y} {z}", n.id);
    }
    out.push_str("\n[members]\n# id start end group\n");
    for m in &d.members {
        let _ = writeln!(out, "{} {} {} {}", m.id, m.start, m.end, m.group);
    }
    out.push_str("\n[supports]\n# node fixed-axes\n");
    for s in &d.supports {
        let _ = writeln!(out, "{} {}", s.node, axes(s.fixed));
    }
    out.push_str("\n[loads]\n# case node fx fy fz\n");
    for c in &d.load_cases {
        if c.loads.is_empty() {
            let _ = writeln!(out, "{}", c.id);
        }
        for l in &c.loads {
            let [x, y, z] = l.force;
            let _ = writeln!(out, "{} {} {x} {y} {z}", c.id, l.node);
        }
    }
    out.push_str("\n[variables]\n");
    for s in vars.specs() {
        match &s.role {
            Role::Sizing { group } => {
                let _ = write!(out, "sizing {} group {group}", s.name);
            }
            Role::Shape { links } => {
                let _ = write!(out, "shape {} links", s.name);
                for l in links {
                    let sign = if l.sign == Sign::Plus { '+' } else { '-' };
                    let _ = write!(out, " {}:{}{sign}", l.node, l.axis.as_char());
                }
            }
        }
        match &s.domain {
            Domain::Continuous { lo, hi } => {
                let _ = writeln!(out, " range {lo} {hi}");
            }
            Domain::Discrete(list) => {
                out.push_str(" discrete");
                for v in list {
                    let _ = write!(out, " {v}");
                }
                out.push('\n');
            }
        }
    }
    out
}
