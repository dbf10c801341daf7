//! Line-oriented diagram text format.
//!
//! ```text
//! # comment
//! X a b c d          crossing, arcs counterclockwise from incoming under-arc
//! U k                crossingless split unknot with arc id k
//! F comp n           framing n of component comp
//! R comp fiber       role of component comp (fiber | singular)
//! ```
//!
//! Records are separated by newlines or `/`. Components are labelled
//! `1, 2, ...` in order of their smallest arc id.
//!
//! PD codes are not checked for planarity beyond one parity condition (two
//! components must cross an even number of times). A code that passes every
//! check but cannot be drawn in the plane is accepted, and the invariants
//! computed from it are meaningless.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::diagram::{ComponentId, LinkDiagram, PdCode, Violation};
use crate::framed::Role;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid diagram: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("line {line}: duplicate framing for component {component}")]
    DuplicateFraming { line: usize, component: u32 },
    #[error("line {line}: duplicate role for component {component}")]
    DuplicateRole { line: usize, component: u32 },
    #[error("line {line}: no component labelled {component}")]
    UnknownComponent { line: usize, component: u32 },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

/// A parsed file: the diagram plus any framing and role annotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub diagram: LinkDiagram,
    pub framings: BTreeMap<ComponentId, i64>,
    pub roles: BTreeMap<ComponentId, Role>,
}

impl Document {
    pub fn new(diagram: LinkDiagram) -> Self {
        Document {
            diagram,
            framings: BTreeMap::new(),
            roles: BTreeMap::new(),
        }
    }

    /// Canonical text: crossings sorted by incoming under-arc, then unknots,
    /// framings and roles by component.
    pub fn to_text(&self) -> String {
        let mut out = write_pd(&self.diagram);
        for (c, n) in &self.framings {
            let _ = writeln!(out, "F {c} {n}");
        }
        for (c, r) in &self.roles {
            let _ = writeln!(out, "R {c} {r}");
        }
        out
    }
}

pub fn write_pd(d: &LinkDiagram) -> String {
    let mut out = String::new();
    for c in d.crossings() {
        let [a, b, c, e] = c.arcs();
        let _ = writeln!(out, "X {a} {b} {c} {e}");
    }
    for comp in d.component_ids() {
        if d.is_crossingless(comp) {
            let _ = writeln!(out, "U {}", d.component_arcs(comp)[0]);
        }
    }
    out
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Record<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
}

fn records(text: &str) -> Vec<Record<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for chunk in line.split('/') {
            let mut tokens = Vec::new();
            let mut rest = chunk;
            let mut col = offset;
            while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
                let tail = &rest[start..];
                let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
                tokens.push(Token {
                    text: &tail[..len],
                    column: col + start + 1,
                });
                col += start + len;
                rest = &tail[len..];
            }
            if !tokens.is_empty() {
                out.push(Record { line: i + 1, tokens });
            }
            offset += chunk.len() + 1;
        }
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn positive(line: usize, t: &Token<'_>) -> Result<u32, ParseError> {
    match t.text.parse::<u32>() {
        Ok(0) => Err(syntax(line, t.column, "arc ids must be positive")),
        Ok(v) => Ok(v),
        Err(_) => Err(syntax(
            line,
            t.column,
            format!("expected a positive integer, found `{}`", t.text),
        )),
    }
}

fn integer(line: usize, t: &Token<'_>) -> Result<i64, ParseError> {
    t.text
        .parse::<i64>()
        .map_err(|_| syntax(line, t.column, format!("expected an integer, found `{}`", t.text)))
}

fn arity(r: &Record<'_>, expected: usize) -> Result<(), ParseError> {
    let found = r.tokens.len() - 1;
    if found != expected {
        return Err(syntax(
            r.line,
            r.tokens[0].column,
            format!("`{}` takes {expected} argument(s), found {found}", r.tokens[0].text),
        ));
    }
    Ok(())
}

/// Parses a full document.
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut code = PdCode::default();
    let mut framing_lines: Vec<(usize, u32, i64)> = Vec::new();
    let mut role_lines: Vec<(usize, u32, Role)> = Vec::new();

    for r in records(text) {
        let head = &r.tokens[0];
        match head.text {
            "X" => {
                arity(&r, 4)?;
                let mut q = [0u32; 4];
                for (slot, t) in q.iter_mut().zip(&r.tokens[1..]) {
                    *slot = positive(r.line, t)?;
                }
                code.crossings.push(q);
            }
            "U" => {
                arity(&r, 1)?;
                code.unknots.push(positive(r.line, &r.tokens[1])?);
            }
            "F" => {
                arity(&r, 2)?;
                let comp = positive(r.line, &r.tokens[1])?;
                let n = integer(r.line, &r.tokens[2])?;
                framing_lines.push((r.line, comp, n));
            }
            "R" => {
                arity(&r, 2)?;
                let comp = positive(r.line, &r.tokens[1])?;
                let role = match r.tokens[2].text {
                    "fiber" => Role::Fiber,
                    "singular" => Role::Singular,
                    other => {
                        return Err(syntax(
                            r.line,
                            r.tokens[2].column,
                            format!("expected `fiber` or `singular`, found `{other}`"),
                        ))
                    }
                };
                role_lines.push((r.line, comp, role));
            }
            other => return Err(syntax(r.line, head.column, format!("unknown record `{other}`"))),
        }
    }

    let diagram = LinkDiagram::from_pd(&code).map_err(ParseError::Invalid)?;
    let mut doc = Document::new(diagram);
    for (line, comp, n) in framing_lines {
        let id = ComponentId(comp);
        if !doc.diagram.has_component(id) {
            return Err(ParseError::UnknownComponent { line, component: comp });
        }
        if doc.framings.insert(id, n).is_some() {
            return Err(ParseError::DuplicateFraming { line, component: comp });
        }
    }
    for (line, comp, role) in role_lines {
        let id = ComponentId(comp);
        if !doc.diagram.has_component(id) {
            return Err(ParseError::UnknownComponent { line, component: comp });
        }
        if doc.roles.insert(id, role).is_some() {
            return Err(ParseError::DuplicateRole { line, component: comp });
        }
    }
    Ok(doc)
}

/// Parses the diagram part of a document; annotations are syntax-checked
/// and then dropped.
pub fn parse_diagram(text: &str) -> Result<LinkDiagram, ParseError> {
    parse_document(text).map(|d| d.diagram)
}
