//! Line-oriented update-stream format.
//!
//! ```text
//! n=<int> <directed|undirected> <incremental|decremental|fully-dynamic>
//! e <u> <v>      initial edge
//! + <u> <v>      insertion
//! - <u> <v>      deletion
//! q              query point
//! # <label>      stage marker
//! ; comment
//! ```

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::graph::{DynamicGraph, EdgeUpdate, GraphError, UpdateKind, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StreamMode {
    Incremental,
    Decremental,
    FullyDynamic,
}

impl StreamMode {
    pub fn name(self) -> &'static str {
        match self {
            StreamMode::Incremental => "incremental",
            StreamMode::Decremental => "decremental",
            StreamMode::FullyDynamic => "fully-dynamic",
        }
    }

    pub fn allows(self, kind: UpdateKind) -> bool {
        !matches!(
            (self, kind),
            (StreamMode::Incremental, UpdateKind::Delete) | (StreamMode::Decremental, UpdateKind::Insert)
        )
    }
}

impl fmt::Display for StreamMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Event {
    Update(EdgeUpdate),
    Query,
    Stage(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateStream {
    pub n: usize,
    pub directed: bool,
    pub mode: StreamMode,
    pub initial_edges: Vec<(VertexId, VertexId)>,
    pub events: Vec<Event>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StreamError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {kind:?} not allowed in a {mode} stream")]
    ModeViolation { line: usize, kind: UpdateKind, mode: StreamMode },
}

fn parse_err(line: usize, msg: impl Into<String>) -> StreamError {
    StreamError::Parse { line, msg: msg.into() }
}

fn parse_pair(line: usize, rest: &[&str]) -> Result<(VertexId, VertexId), StreamError> {
    let [u, v] = rest else {
        return Err(parse_err(line, "expected two vertex ids"));
    };
    let id = |s: &str| s.parse::<VertexId>().map_err(|_| parse_err(line, format!("bad vertex id `{s}`")));
    Ok((id(u)?, id(v)?))
}

fn parse_header(line: usize, text: &str) -> Result<(usize, bool, StreamMode), StreamError> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let [n_tok, dir_tok, mode_tok] = toks[..] else {
        return Err(parse_err(line, "header must be `n=<int> <directed|undirected> <mode>`"));
    };
    let n = n_tok
        .strip_prefix("n=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_err(line, format!("bad vertex count `{n_tok}`")))?;
    let directed = match dir_tok {
        "directed" => true,
        "undirected" => false,
        other => return Err(parse_err(line, format!("unknown orientation `{other}`"))),
    };
    let mode = match mode_tok {
        "incremental" => StreamMode::Incremental,
        "decremental" => StreamMode::Decremental,
        "fully-dynamic" => StreamMode::FullyDynamic,
        other => return Err(parse_err(line, format!("unknown mode `{other}`"))),
    };
    Ok((n, directed, mode))
}

/// Parses a stream and checks every update against the evolving graph, so a
/// successfully parsed stream always replays without graph errors.
pub fn parse_stream(text: &str) -> Result<UpdateStream, StreamError> {
    let mut stream: Option<UpdateStream> = None;
    let mut graph: Option<DynamicGraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find(';') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        let Some(st) = stream.as_mut() else {
            let (n, directed, mode) = parse_header(line, content)?;
            graph = Some(DynamicGraph::new(n, directed));
            stream = Some(UpdateStream { n, directed, mode, initial_edges: Vec::new(), events: Vec::new() });
            continue;
        };
        let g = graph.as_mut().expect("graph exists once the header is parsed");
        if let Some(label) = content.strip_prefix('#') {
            st.events.push(Event::Stage(label.trim().to_string()));
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let graph_err = |e: GraphError| parse_err(line, e.to_string());
        match toks[0] {
            "q" if toks.len() == 1 => st.events.push(Event::Query),
            "e" => {
                if !st.events.is_empty() {
                    return Err(parse_err(line, "initial edges must precede all events"));
                }
                let (u, v) = parse_pair(line, &toks[1..])?;
                g.insert_edge(u, v).map_err(graph_err)?;
                st.initial_edges.push((u, v));
            }
            "+" | "-" => {
                let (u, v) = parse_pair(line, &toks[1..])?;
                let e = if toks[0] == "+" { EdgeUpdate::insert(u, v) } else { EdgeUpdate::delete(u, v) };
                if !st.mode.allows(e.kind) {
                    return Err(StreamError::ModeViolation { line, kind: e.kind, mode: st.mode });
                }
                g.apply(&e).map_err(graph_err)?;
                st.events.push(Event::Update(e));
            }
            other => return Err(parse_err(line, format!("unrecognized line starting with `{other}`"))),
        }
    }
    stream.ok_or_else(|| parse_err(1, "missing header"))
}

impl UpdateStream {
    pub fn new(n: usize, directed: bool, mode: StreamMode) -> Self {
        UpdateStream { n, directed, mode, initial_edges: Vec::new(), events: Vec::new() }
    }

    pub fn initial_graph(&self) -> Result<DynamicGraph, GraphError> {
        DynamicGraph::from_edges(self.n, self.directed, self.initial_edges.iter().copied())
    }

    pub fn updates(&self) -> impl Iterator<Item = &EdgeUpdate> {
        self.events.iter().filter_map(|e| match e {
            Event::Update(u) => Some(u),
            _ => None,
        })
    }

    /// Canonical text form; `parse_stream(s.to_text()) == s`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let orient = if self.directed { "directed" } else { "undirected" };
        writeln!(out, "n={} {} {}", self.n, orient, self.mode).unwrap();
        for (u, v) in &self.initial_edges {
            writeln!(out, "e {u} {v}").unwrap();
        }
        for ev in &self.events {
            match ev {
                Event::Update(e) => {
                    let sign = if e.kind == UpdateKind::Insert { '+' } else { '-' };
                    writeln!(out, "{sign} {} {}", e.u, e.v).unwrap();
                }
                Event::Query => out.push_str("q\n"),
                Event::Stage(label) => writeln!(out, "# {label}").unwrap(),
            }
        }
        out
    }
}
