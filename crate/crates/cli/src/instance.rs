use std::fmt;
use std::path::Path;

use levelpeaks_core::geom::{canonicalize, Canonical, Interval, Line, LineSpec};
use levelpeaks_core::pmst::ParamGraph;
use levelpeaks_core::rational::{int, parse_rational, Rational};
use serde::Deserialize;

/// A number written either as a JSON integer or as a `"p/q"` string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    fn value(&self, field: &str) -> Result<Rational, InstanceError> {
        match self {
            Num::Int(n) => Ok(int(*n)),
            Num::Text(s) => parse_rational(s).map_err(|e| InstanceError(format!("{field}: cannot parse {s:?}: {e}"))),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum LineEntry {
    Sloped { a: Num, b: Num },
    Vertical { x: Num },
}

#[derive(Debug, Clone, Deserialize)]
pub struct EdgeEntry {
    pub u: usize,
    pub v: usize,
    pub a: Num,
    pub b: Num,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum InstanceFile {
    Lines {
        lines: Vec<LineEntry>,
        #[serde(default)]
        k: Option<usize>,
    },
    Graph {
        nodes: usize,
        edges: Vec<EdgeEntry>,
    },
}

/// Input rejected before any query runs; the message names the violated rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceError(pub String);

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub struct LinesInstance {
    pub canonical: Canonical,
    pub k: Option<usize>,
}

impl LinesInstance {
    pub fn lines(&self) -> &[Line] {
        &self.canonical.lines
    }
}

pub enum Instance {
    Lines(LinesInstance),
    Graph(ParamGraph),
}

pub fn load(path: &Path) -> Result<Instance, InstanceError> {
    let text = std::fs::read_to_string(path).map_err(|e| InstanceError(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Instance, InstanceError> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| InstanceError(format!("not a lines or graph instance: {e}")))?;
    match file {
        InstanceFile::Lines { lines, k } => {
            let specs = lines
                .iter()
                .enumerate()
                .map(|(i, entry)| match entry {
                    LineEntry::Sloped { a, b } => Ok(LineSpec::sloped(a.value(&format!("lines[{i}].a"))?, b.value(&format!("lines[{i}].b"))?)),
                    LineEntry::Vertical { x } => Ok(LineSpec::Vertical { x: x.value(&format!("lines[{i}].x"))? }),
                })
                .collect::<Result<Vec<_>, InstanceError>>()?;
            let canonical = canonicalize(&specs).map_err(|e| InstanceError(e.to_string()))?;
            Ok(Instance::Lines(LinesInstance { canonical, k }))
        }
        InstanceFile::Graph { nodes, edges } => {
            let tuples = edges
                .iter()
                .enumerate()
                .map(|(i, e)| Ok((e.u, e.v, e.a.value(&format!("edges[{i}].a"))?, e.b.value(&format!("edges[{i}].b"))?)))
                .collect::<Result<Vec<_>, InstanceError>>()?;
            ParamGraph::new(nodes, &tuples).map(Instance::Graph).map_err(|e| InstanceError(e.to_string()))
        }
    }
}

/// Interval covering every crossing of `lines` with a margin of one, used
/// when no bounds are given.
pub fn default_range(lines: &[Line]) -> Interval {
    let all = all_crossings(lines);
    match (all.first(), all.last()) {
        (Some(lo), Some(hi)) => Interval { lo: lo - int(1), hi: hi + int(1) },
        _ => Interval { lo: int(-1), hi: int(1) },
    }
}

fn all_crossings(lines: &[Line]) -> Vec<Rational> {
    let mut xs = Vec::new();
    for (i, l1) in lines.iter().enumerate() {
        for l2 in &lines[i + 1..] {
            if l1.a != l2.a {
                xs.push((&l2.b - &l1.b) / (&l1.a - &l2.a));
            }
        }
    }
    xs.sort();
    xs
}
