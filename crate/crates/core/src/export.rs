//! DOT, GraphML and JSON renderings of constructed graphs. All outputs list
//! vertices and edges in label order, so equal graphs give equal bytes.
//! Edges point from subtype to supertype.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::construction::IterationReport;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Label};
use crate::intervals::ArgumentMode;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitFormat {
    Dot,
    GraphMl,
    Json,
}

impl FromStr for EmitFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(EmitFormat::Dot),
            "graphml" => Ok(EmitFormat::GraphMl),
            "json" => Ok(EmitFormat::Json),
            other => Err(Error::Config(format!(
                "unknown format `{other}` (expected dot, graphml or json)"
            ))),
        }
    }
}

/// On-disk JSON form of a constructed graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub format_version: u32,
    pub mode: String,
    pub iteration: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub stats: IterationReport,
}

impl GraphDocument {
    pub fn new(g: &DirectedGraph, report: &IterationReport) -> Self {
        let (mode, iteration) = report
            .last()
            .map_or((ArgumentMode::Interval, 0), |r| (r.mode, r.iteration));
        GraphDocument {
            format_version: FORMAT_VERSION,
            mode: mode.to_string(),
            iteration,
            vertices: g.vertices().map(|v| v.to_string()).collect(),
            edges: g
                .edges()
                .map(|(u, v)| [u.to_string(), v.to_string()])
                .collect(),
            stats: report.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    /// Parses and checks a document: supported version, sorted vertices and
    /// edges, and every edge endpoint listed as a vertex.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
            offset: 0,
            message: format!("line {}, column {}: {e}", e.line(), e.column()),
        })?;
        if doc.format_version != FORMAT_VERSION {
            return Err(Error::Config(format!(
                "unsupported format_version {}",
                doc.format_version
            )));
        }
        if !doc.vertices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Config("vertices must be sorted and unique".into()));
        }
        if !doc.edges.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Config("edges must be sorted and unique".into()));
        }
        if let Some(e) = doc
            .edges
            .iter()
            .flatten()
            .find(|v| doc.vertices.binary_search(v).is_err())
        {
            return Err(Error::UnknownVertex(e.clone()));
        }
        Ok(doc)
    }

    pub fn to_graph(&self) -> Result<DirectedGraph> {
        let mut g = DirectedGraph::new();
        for v in &self.vertices {
            g.add_vertex(Label::new(v.clone())?);
        }
        for [u, v] in &self.edges {
            g.add_edge(Label::new(u.clone())?, Label::new(v.clone())?);
        }
        Ok(g)
    }
}

pub fn emit(g: &DirectedGraph, report: &IterationReport, format: EmitFormat) -> String {
    match format {
        EmitFormat::Dot => emit_dot(g, None),
        EmitFormat::GraphMl => emit_graphml(g),
        EmitFormat::Json => GraphDocument::new(g, report).to_json(),
    }
}

fn dot_quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// DOT text for `g`. With `previous`, edges whose endpoints both exist in
/// `previous` are colored to show the earlier approximation inside this one.
pub fn emit_dot(g: &DirectedGraph, previous: Option<&DirectedGraph>) -> String {
    let mut out = String::from("digraph subtyping {\n  rankdir=BT;\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {};", dot_quote(v.as_str()));
    }
    for (u, v) in g.edges() {
        let old = previous.is_some_and(|p| p.contains_vertex(u) && p.contains_vertex(v));
        let _ = writeln!(
            out,
            "  {} -> {}{};",
            dot_quote(u.as_str()),
            dot_quote(v.as_str()),
            if old { " [color=blue]" } else { "" }
        );
    }
    out.push_str("}\n");
    out
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '&' => out.push_str("&amp;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

pub fn emit_graphml(g: &DirectedGraph) -> String {
    let mut out = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n  \
         <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n  \
         <graph id=\"subtyping\" edgedefault=\"directed\">\n",
    );
    for v in g.vertices() {
        let name = xml_escape(v.as_str());
        let _ = writeln!(
            out,
            "    <node id=\"{name}\"><data key=\"label\">{name}</data></node>"
        );
    }
    for (u, v) in g.edges() {
        let _ = writeln!(
            out,
            "    <edge source=\"{}\" target=\"{}\"/>",
            xml_escape(u.as_str()),
            xml_escape(v.as_str())
        );
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}
