//! Canonical text format for closure spaces and state property systems.
//!
//! ```text
//! {
//!   "version": 1,
//!   "kind": "closure-space",
//!   "points": ["x1","x2"],
//!   "closed_sets": [[],["x1"],["x1","x2"]]
//! }
//! ```
//!
//! Systems use `"kind": "sps"` with `states`, `properties` (in lattice
//! order), `leq` (the full order relation) and `xi` (one line per state).

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Deserialize;
use thiserror::Error;

use crate::closure::FiniteClosureSpace;
use crate::error::Error;
use crate::oracle::Instance;
use crate::order::{FiniteLattice, PointUniverse, SetFamily};
use crate::report::ValidationReport;
use crate::sps::StatePropertySystem;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("axiom error: {0}")]
    Axiom(ValidationReport),
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "syntax",
            ParseError::Schema(_) => "schema",
            ParseError::Axiom(_) => "axiom",
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceDoc {
    #[allow(dead_code)]
    version: u64,
    #[allow(dead_code)]
    kind: String,
    points: Vec<String>,
    closed_sets: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpsDoc {
    #[allow(dead_code)]
    version: u64,
    #[allow(dead_code)]
    kind: String,
    states: Vec<String>,
    properties: Vec<String>,
    leq: Vec<(String, String)>,
    xi: BTreeMap<String, Vec<String>>,
}

fn schema(field: &str, e: impl std::fmt::Display) -> ParseError {
    ParseError::Schema(format!("{field}: {e}"))
}

/// Maps library errors raised while building an object from a
/// well-formed document.
fn build_error(e: Error) -> ParseError {
    match e {
        Error::Invalid(report) => ParseError::Axiom(report),
        other => ParseError::Schema(other.to_string()),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| ParseError::Schema("document must be an object".into()))?;
    match obj.get("version").and_then(|v| v.as_u64()) {
        Some(FORMAT_VERSION) => {}
        Some(v) => return Err(schema("version", format!("unsupported version {v}"))),
        None => return Err(schema("version", "missing or not an integer")),
    }
    match obj.get("kind").and_then(|v| v.as_str()) {
        Some("closure-space") => {
            let doc: SpaceDoc =
                serde_json::from_value(value).map_err(|e| schema("closure-space", e))?;
            parse_space(doc).map(Instance::Space)
        }
        Some("sps") => {
            let doc: SpsDoc = serde_json::from_value(value).map_err(|e| schema("sps", e))?;
            parse_sps(doc).map(Instance::Sps)
        }
        Some(other) => Err(schema("kind", format!("unknown kind `{other}`"))),
        None => Err(schema("kind", "missing")),
    }
}

fn parse_space(doc: SpaceDoc) -> Result<FiniteClosureSpace, ParseError> {
    let universe = PointUniverse::new(doc.points).map_err(|e| schema("points", e))?;
    let sets = doc
        .closed_sets
        .iter()
        .enumerate()
        .map(|(i, s)| {
            universe
                .subset(s)
                .map_err(|e| schema(&format!("closed_sets[{i}]"), e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let family = SetFamily::new(universe.len(), sets).map_err(|e| schema("closed_sets", e))?;
    FiniteClosureSpace::new(universe, family).map_err(build_error)
}

fn parse_sps(doc: SpsDoc) -> Result<StatePropertySystem, ParseError> {
    let lattice = FiniteLattice::new(&doc.properties, &doc.leq).map_err(ParseError::Axiom)?;
    let states = PointUniverse::new(doc.states).map_err(|e| schema("states", e))?;
    if let Some(extra) = doc.xi.keys().find(|k| states.index_of(k).is_err()) {
        return Err(schema("xi", format!("unknown state `{extra}`")));
    }
    let xi = states
        .labels()
        .iter()
        .map(|s| {
            let props = doc
                .xi
                .get(s)
                .ok_or_else(|| schema("xi", format!("no entry for state `{s}`")))?;
            props
                .iter()
                .map(|a| {
                    lattice
                        .index_of(a)
                        .map_err(|e| schema(&format!("xi.{s}"), e))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    StatePropertySystem::new(states, lattice, xi).map_err(build_error)
}

fn json<T: serde::Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

pub fn serialize_space(space: &FiniteClosureSpace) -> String {
    let u = space.universe();
    let closed: Vec<Vec<&str>> = space.closed().iter().map(|s| u.labels_of(s)).collect();
    let mut out = String::new();
    out.push_str("{\n");
    writeln!(out, "  \"version\": {FORMAT_VERSION},").unwrap();
    out.push_str("  \"kind\": \"closure-space\",\n");
    writeln!(out, "  \"points\": {},", json(u.labels())).unwrap();
    writeln!(out, "  \"closed_sets\": {}", json(&closed)).unwrap();
    out.push_str("}\n");
    out
}

pub fn serialize_sps(sps: &StatePropertySystem) -> String {
    let l = sps.lattice();
    let leq: Vec<(&str, &str)> = l
        .leq_pairs()
        .into_iter()
        .map(|(a, b)| (l.name(a), l.name(b)))
        .collect();
    let mut out = String::new();
    out.push_str("{\n");
    writeln!(out, "  \"version\": {FORMAT_VERSION},").unwrap();
    out.push_str("  \"kind\": \"sps\",\n");
    writeln!(out, "  \"states\": {},", json(sps.states().labels())).unwrap();
    writeln!(out, "  \"properties\": {},", json(l.names())).unwrap();
    writeln!(out, "  \"leq\": {},", json(&leq)).unwrap();
    out.push_str("  \"xi\": {\n");
    let n = sps.state_count();
    for p in 0..n {
        let props: Vec<&str> = sps.xi(p).into_iter().map(|a| l.name(a)).collect();
        let sep = if p + 1 < n { "," } else { "" };
        writeln!(
            out,
            "    {}: {}{sep}",
            json(sps.states().label(p)),
            json(&props)
        )
        .unwrap();
    }
    out.push_str("  }\n}\n");
    out
}

pub fn serialize_instance(instance: &Instance) -> String {
    match instance {
        Instance::Space(s) => serialize_space(s),
        Instance::Sps(s) => serialize_sps(s),
    }
}
