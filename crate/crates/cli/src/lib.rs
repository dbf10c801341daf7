//! Command implementations behind the `fiberlink` binary.
//!
//! Every command turns the text of one input file into an [`Evaluation`]:
//! an exit code, a JSON result and a human-readable rendering. The binary
//! only reads files and prints.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use fiberlink::diagram::{ComponentId, Violation};
use fiberlink::format::{parse_document, Document, ParseError};
use fiberlink::framed::{FramedLink, FramingError, LabeledScene};
use fiberlink::invariants::{hopf_invariant, linking_matrix, seifert, self_crossing_count};
use fiberlink::obstruction::{obstruction_vector, parity_identity_check, ParityCheck};
use fiberlink::realizability::{
    chillingworth_report, realize_singular, split_possible, witness_singular, Note, RealizeError, Target, Verdict,
};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_POSITIVE: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Parse,
    Invariants,
    Obstruction,
    Realize,
    Hp,
    Witness,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Parse => "parse",
            Command::Invariants => "invariants",
            Command::Obstruction => "obstruction",
            Command::Realize => "realize",
            Command::Hp => "hp",
            Command::Witness => "witness",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Plane,
    Sphere,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Target {
        match t {
            TargetArg::Plane => Target::Plane,
            TargetArg::Sphere => Target::Sphere,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub command: Command,
    pub target: Target,
    pub json: bool,
}

/// Result of running one command on one input.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub code: u8,
    /// SHA-256 of the canonical text, when the input parsed.
    pub digest: Option<String>,
    pub result: Value,
    pub text: String,
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn digest(doc: &Document) -> String {
    let hash = Sha256::digest(doc.to_text().as_bytes());
    let mut out = String::from("sha256:");
    for b in hash {
        let _ = write!(out, "{b:02x}");
    }
    out
}

pub fn envelope(command: Command, eval: &Evaluation) -> Value {
    json!({
        "version": VERSION,
        "input_digest": eval.digest,
        "command": command.name(),
        "result": eval.result,
    })
}

fn failure(code: u8, kind: &str, message: String, extra: Value) -> Evaluation {
    let mut error = json!({ "kind": kind, "message": message });
    if let (Value::Object(e), Value::Object(x)) = (&mut error, extra) {
        e.extend(x);
    }
    Evaluation {
        code,
        digest: None,
        result: json!({ "error": error }),
        text: format!("error: {message}\n"),
    }
}

fn parse_failure(err: &ParseError) -> Evaluation {
    let extra = match err {
        ParseError::Syntax { line, column, .. } => json!({ "line": line, "column": column }),
        ParseError::Invalid(v) => json!({ "violations": violations(v) }),
        ParseError::DuplicateFraming { line, component }
        | ParseError::DuplicateRole { line, component }
        | ParseError::UnknownComponent { line, component } => json!({ "line": line, "component": component }),
    };
    let kind = match err {
        ParseError::Syntax { .. } => "syntax",
        ParseError::Invalid(_) => "invalid_diagram",
        ParseError::DuplicateFraming { .. } => "duplicate_framing",
        ParseError::DuplicateRole { .. } => "duplicate_role",
        ParseError::UnknownComponent { .. } => "unknown_component",
    };
    let mut eval = failure(EXIT_INVALID, kind, err.to_string(), extra);
    if let ParseError::Invalid(v) = err {
        eval.text = String::from("invalid diagram:\n");
        for violation in v {
            let _ = writeln!(eval.text, "  {violation}");
        }
    }
    eval
}

fn violations(v: &[Violation]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| {
                let mut value = serde_json::to_value(x).expect("violations serialize");
                if let Value::Object(m) = &mut value {
                    m.insert("message".into(), Value::String(x.to_string()));
                }
                value
            })
            .collect(),
    )
}

fn framing_failure(err: &FramingError) -> Evaluation {
    let (kind, component) = match err {
        FramingError::MissingFraming(c) => ("missing_framing", Some(*c)),
        FramingError::MissingRole(c) => ("missing_role", Some(*c)),
        FramingError::FramedSingular(c) => ("framed_singular", Some(*c)),
        FramingError::UnknownComponent(c) => ("unknown_component", Some(*c)),
        FramingError::FramingCount { .. } => ("framing_count", None),
    };
    failure(EXIT_INVALID, kind, err.to_string(), json!({ "component": component }))
}

/// Runs `opts.command` on the contents of a file.
pub fn evaluate(opts: Options, input: io::Result<String>) -> Evaluation {
    let text = match input {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::InvalidData => {
            return failure(EXIT_INVALID, "encoding", format!("input is not UTF-8: {e}"), json!({}))
        }
        Err(e) => return failure(EXIT_IO, "io", e.to_string(), json!({})),
    };
    let doc = match parse_document(&text) {
        Ok(d) => d,
        Err(e) => return parse_failure(&e),
    };
    let mut eval = match opts.command {
        Command::Parse => cmd_parse(&doc),
        Command::Invariants => cmd_invariants(&doc),
        Command::Obstruction => cmd_obstruction(&doc),
        Command::Realize => cmd_realize(&doc, opts.target),
        Command::Hp => cmd_hp(&doc),
        Command::Witness => cmd_witness(&doc),
    };
    eval.digest = Some(digest(&doc));
    eval
}

fn render(opts: Options, eval: &Evaluation) -> Output {
    if opts.json {
        let mut stdout = serde_json::to_string_pretty(&envelope(opts.command, eval)).expect("json");
        stdout.push('\n');
        Output {
            code: eval.code,
            stdout,
            stderr: String::new(),
        }
    } else if eval.result.get("error").is_some() {
        Output {
            code: eval.code,
            stdout: String::new(),
            stderr: eval.text.clone(),
        }
    } else {
        Output {
            code: eval.code,
            stdout: eval.text.clone(),
            stderr: String::new(),
        }
    }
}

pub fn run_file(opts: Options, path: &Path) -> Output {
    render(opts, &evaluate(opts, fs::read_to_string(path)))
}

pub fn run_text(opts: Options, text: &str) -> Output {
    render(opts, &evaluate(opts, Ok(text.to_string())))
}

/// Every `*.pd` file directly inside `dir`, sorted by name.
pub fn batch_files(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "pd") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Evaluates every file of a directory in parallel. The exit code is the
/// largest per-file code.
pub fn run_batch(opts: Options, dir: &Path) -> Output {
    let files = match batch_files(dir) {
        Ok(f) => f,
        Err(e) => {
            return render(
                opts,
                &failure(EXIT_IO, "io", format!("{}: {e}", dir.display()), json!({})),
            );
        }
    };
    let evals: Vec<Evaluation> = files
        .par_iter()
        .map(|p| evaluate(opts, fs::read_to_string(p)))
        .collect();
    let code = evals.iter().map(|e| e.code).max().unwrap_or(EXIT_POSITIVE);
    let names: Vec<String> = files
        .iter()
        .map(|p| {
            p.file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default()
        })
        .collect();
    if opts.json {
        let entries: Vec<Value> = names
            .iter()
            .zip(&evals)
            .map(|(name, e)| json!({ "file": name, "exit_code": e.code, "report": envelope(opts.command, e) }))
            .collect();
        let doc = json!({
            "version": VERSION,
            "command": opts.command.name(),
            "files": entries,
        });
        let mut stdout = serde_json::to_string_pretty(&doc).expect("json");
        stdout.push('\n');
        return Output {
            code,
            stdout,
            stderr: String::new(),
        };
    }
    let mut stdout = String::new();
    for (name, e) in names.iter().zip(&evals) {
        let _ = writeln!(stdout, "== {name} (exit {})", e.code);
        stdout.push_str(&e.text);
    }
    Output {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn cmd_parse(doc: &Document) -> Evaluation {
    let d = &doc.diagram;
    let components: Vec<Value> = d
        .component_ids()
        .map(|c| {
            json!({
                "component": c,
                "arcs": d.component_arcs(c),
                "crossingless": d.is_crossingless(c),
                "framing": doc.framings.get(&c),
                "role": doc.roles.get(&c),
            })
        })
        .collect();
    let mut text = format!(
        "components: {}\ncrossings: {}\n",
        d.component_count(),
        d.crossing_count()
    );
    for c in d.component_ids() {
        let arcs: Vec<String> = d.component_arcs(c).iter().map(|a| a.to_string()).collect();
        let _ = write!(text, "component {c}: arcs ({})", arcs.join(" "));
        if d.is_crossingless(c) {
            text.push_str(" crossingless");
        }
        if let Some(f) = doc.framings.get(&c) {
            let _ = write!(text, ", framing {f}");
        }
        if let Some(r) = doc.roles.get(&c) {
            let _ = write!(text, ", {r}");
        }
        text.push('\n');
    }
    Evaluation {
        code: EXIT_POSITIVE,
        digest: None,
        result: json!({
            "component_count": d.component_count(),
            "crossing_count": d.crossing_count(),
            "components": components,
            "canonical": doc.to_text(),
        }),
        text,
    }
}

fn cmd_invariants(doc: &Document) -> Evaluation {
    let d = &doc.diagram;
    let lk = linking_matrix(d);
    let s = seifert(d);
    let self_crossings: Vec<usize> = d
        .component_ids()
        .map(|c| self_crossing_count(d, c).expect("component exists"))
        .collect();
    let framed = FramedLink::from_document(doc).ok();
    let framed_value = framed.as_ref().map(|fl| {
        let h = hopf_invariant(fl);
        json!({ "framings": fl.framings(), "hopf_invariant": h, "null_cobordant": h == 0 })
    });

    let mut text = String::from("linking matrix:\n");
    for row in lk.rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(text, " {}", cells.join(" "));
    }
    let counts: Vec<String> = self_crossings.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(text, "self-crossings: {}", counts.join(" "));
    let _ = writeln!(text, "writhe: {}", d.writhe());
    let _ = writeln!(
        text,
        "seifert: circles {}, crossings {}, euler characteristic {}",
        s.circle_count, s.crossing_count, s.euler_characteristic
    );
    if let Some(fl) = &framed {
        let h = hopf_invariant(fl);
        let _ = writeln!(text, "hopf invariant: {h}");
        let _ = writeln!(text, "framed null-cobordant: {}", if h == 0 { "yes" } else { "no" });
    }
    Evaluation {
        code: EXIT_POSITIVE,
        digest: None,
        result: json!({
            "linking_matrix": lk.rows(),
            "self_crossings": self_crossings,
            "writhe": d.writhe(),
            "seifert": {
                "circles": s.circle_count,
                "crossings": s.crossing_count,
                "euler_characteristic": s.euler_characteristic,
            },
            "framed": framed_value,
        }),
        text,
    }
}

fn parity_name(p: ParityCheck) -> &'static str {
    match p {
        ParityCheck::Holds => "holds",
        ParityCheck::Violated => "violated",
        ParityCheck::NotApplicable => "not_applicable",
    }
}

/// The framed link of a document: its fiber components when roles are
/// given, otherwise every component. Also returns the original labels.
fn framed_link(doc: &Document) -> Result<(FramedLink, Vec<ComponentId>), Evaluation> {
    if doc.roles.is_empty() {
        let fl = FramedLink::from_document(doc).map_err(|e| framing_failure(&e))?;
        let labels = doc.diagram.component_ids().collect();
        return Ok((fl, labels));
    }
    let scene = LabeledScene::from_document(doc).map_err(|e| framing_failure(&e))?;
    let fl = scene
        .fiber()
        .ok_or_else(|| realize_failure(&RealizeError::NoFiberComponents))?;
    Ok((fl, scene.fiber_components()))
}

fn cmd_obstruction(doc: &Document) -> Evaluation {
    let (fl, labels) = match framed_link(doc) {
        Ok(x) => x,
        Err(e) => return e,
    };
    let a = obstruction_vector(&fl);
    let check = parity_identity_check(&fl);
    let h = hopf_invariant(&fl);
    let entries: Vec<String> = a.entries().iter().map(|x| x.to_string()).collect();
    let mut text = format!("fiber components: {}\n", join_ids(&labels));
    let _ = writeln!(text, "obstruction: ({})", entries.join(", "));
    let _ = writeln!(text, "sum mod 2: {}", a.parity());
    let _ = writeln!(text, "components: {}", fl.component_count());
    let _ = writeln!(text, "hopf invariant: {h}");
    let _ = writeln!(text, "parity identity: {}", parity_name(check).replace('_', " "));
    Evaluation {
        code: if check == ParityCheck::Violated {
            EXIT_NEGATIVE
        } else {
            EXIT_POSITIVE
        },
        digest: None,
        result: json!({
            "obstruction": a,
            "components": labels,
            "parity": a.parity(),
            "component_count": fl.component_count(),
            "hopf_invariant": h,
            "null_cobordant": h == 0,
            "parity_identity": parity_name(check),
        }),
        text,
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Realizable => "realizable",
        Verdict::NotRealizable => "not_realizable",
        Verdict::NotApplicable => "not_applicable",
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Realizable => EXIT_POSITIVE,
        Verdict::NotRealizable => EXIT_NEGATIVE,
        Verdict::NotApplicable => EXIT_INVALID,
    }
}

fn note_text(n: &Note) -> String {
    match n {
        Note::EmptySingularSetOnPlane => {
            "a map from a closed 3-manifold to the plane has singular points; the singular set cannot be empty".into()
        }
        Note::NotFramedNullCobordant { hopf_invariant } => {
            format!("fiber is not framed null-cobordant (Hopf invariant {hopf_invariant})")
        }
        Note::FoldTypesPrescribable => {
            "the singular set has several components; each may be prescribed as definite or indefinite folds".into()
        }
        Note::DisjointSurfacesAssumed { groups } => {
            format!("{groups} fiber groups checked as a union; disjoint bounding surfaces are assumed")
        }
    }
}

fn join_ids<T: ToString>(ids: &[T]) -> String {
    if ids.is_empty() {
        "none".into()
    } else {
        ids.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
    }
}

fn cmd_realize(doc: &Document, target: Target) -> Evaluation {
    let scene = match LabeledScene::from_document(doc) {
        Ok(s) => s,
        Err(e) => return framing_failure(&e),
    };
    let report = match realize_singular(&scene, target) {
        Ok(r) => r,
        Err(e) => return realize_failure(&e),
    };
    let fiber = scene.fiber().expect("report implies fiber components");
    let split = split_possible(&fiber, target);

    let mut text = format!("verdict: {}\n", verdict_name(report.verdict).replace('_', " "));
    let _ = writeln!(
        text,
        "target: {}",
        match target {
            Target::Plane => "plane",
            Target::Sphere => "sphere",
        }
    );
    for f in &report.fibers {
        let _ = writeln!(
            text,
            "fiber {}: framing {}, obstruction {}, singular linking mod 2 {}",
            f.component, f.framing, f.obstruction, f.linking
        );
    }
    let _ = writeln!(text, "singular components: {}", join_ids(&report.singular));
    let _ = writeln!(text, "mismatches: {}", join_ids(&report.mismatches));
    let _ = writeln!(text, "hopf invariant: {}", report.hopf_invariant);
    let _ = writeln!(
        text,
        "split singular set possible: {}",
        if split.possible { "yes" } else { "no" }
    );
    for n in &report.notes {
        let _ = writeln!(text, "note: {}", note_text(n));
    }

    let mut result = serde_json::to_value(&report).expect("report serializes");
    if let Value::Object(m) = &mut result {
        m.insert("split".into(), serde_json::to_value(&split).expect("split serializes"));
    }
    Evaluation {
        code: verdict_code(report.verdict),
        digest: None,
        result,
        text,
    }
}

fn realize_failure(e: &RealizeError) -> Evaluation {
    let (kind, extra) = match e {
        RealizeError::NoFiberComponents => ("no_fiber_components", json!({})),
        RealizeError::BadGroups => ("bad_groups", json!({})),
        RealizeError::NotFramedNullCobordant(h) => ("not_framed_null_cobordant", json!({ "hopf_invariant": h })),
    };
    failure(EXIT_INVALID, kind, e.to_string(), extra)
}

fn cmd_hp(doc: &Document) -> Evaluation {
    let report = chillingworth_report(&doc.diagram);
    let hp = &report.submersion;
    let mut text = format!("verdict: {}\n", verdict_name(hp.verdict).replace('_', " "));
    for e in &hp.components {
        let _ = writeln!(
            text,
            "component {}: linking row sum {} ({})",
            e.component,
            e.row_sum,
            if e.odd { "odd" } else { "even" }
        );
    }
    let _ = writeln!(text, "failing: {}", join_ids(&hp.failing));
    let _ = writeln!(text, "certificate: {}", report.message);
    Evaluation {
        code: verdict_code(hp.verdict),
        digest: None,
        result: serde_json::to_value(&report).expect("report serializes"),
        text,
    }
}

fn cmd_witness(doc: &Document) -> Evaluation {
    let fl = match framed_link(doc) {
        Ok((fl, _)) => fl,
        Err(e) => return e,
    };
    let w = match witness_singular(&fl) {
        Ok(w) => w,
        Err(e) => return realize_failure(&e),
    };
    let scene = w.scene.to_document().to_text();
    let mut result = serde_json::to_value(&w.link).expect("witness serializes");
    if let Value::Object(m) = &mut result {
        m.insert("scene".into(), Value::String(scene.clone()));
    }
    Evaluation {
        code: EXIT_POSITIVE,
        digest: None,
        result,
        text: scene,
    }
}
