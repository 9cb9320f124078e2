//! Edge list, node table, DOT and GraphML writers.
//!
//! Writers work from plain row structs so a saved report can be re-emitted
//! without rebuilding the graph.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::SemanticGraph;
use crate::ngram::csv_field;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRow {
    pub source: String,
    pub target: String,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeRow {
    pub label: String,
    pub degree: usize,
    pub core: usize,
    pub eigen: f64,
    pub betweenness: f64,
    pub community: Option<usize>,
}

pub fn edge_rows(g: &SemanticGraph) -> Vec<EdgeRow> {
    g.edges()
        .map(|(u, v, w)| EdgeRow {
            source: g.label(u).to_string(),
            target: g.label(v).to_string(),
            weight: w,
        })
        .collect()
}

/// Rounds to 6 significant digits and prints the shortest decimal that
/// round-trips the rounded value.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded = round_sig(x);
    if rounded == 0.0 {
        return "0".into();
    }
    format!("{rounded}")
}

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

fn opt(x: Option<usize>) -> String {
    x.map_or_else(String::new, |c| c.to_string())
}

pub fn write_edges_csv(rows: &[EdgeRow], mut out: impl Write) -> io::Result<()> {
    writeln!(out, "source,target,weight")?;
    for r in rows {
        writeln!(out, "{},{},{}", csv_field(&r.source), csv_field(&r.target), r.weight)?;
    }
    Ok(())
}

pub fn write_nodes_csv(rows: &[NodeRow], mut out: impl Write) -> io::Result<()> {
    writeln!(out, "label,degree,core,eigen,betweenness,community")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            csv_field(&r.label),
            r.degree,
            r.core,
            format_float(r.eigen),
            format_float(r.betweenness),
            opt(r.community)
        )?;
    }
    Ok(())
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn write_dot(name: &str, nodes: &[NodeRow], edges: &[EdgeRow], mut out: impl Write) -> io::Result<()> {
    writeln!(out, "graph {} {{", dot_id(name))?;
    for r in nodes {
        write!(
            out,
            "  {} [degree={}, core={}, eigen={}, betweenness={}",
            dot_id(&r.label),
            r.degree,
            r.core,
            format_float(r.eigen),
            format_float(r.betweenness)
        )?;
        if let Some(c) = r.community {
            write!(out, ", community={c}")?;
        }
        writeln!(out, "];")?;
    }
    for e in edges {
        writeln!(out, "  {} -- {} [weight={}];", dot_id(&e.source), dot_id(&e.target), e.weight)?;
    }
    writeln!(out, "}}")
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(ch),
        }
    }
    out
}

pub fn write_graphml(name: &str, nodes: &[NodeRow], edges: &[EdgeRow], mut out: impl Write) -> io::Result<()> {
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(out, r#"<graphml xmlns="http://graphml.graphdrawing.org/xmlns">"#)?;
    for (id, ty) in [
        ("degree", "int"),
        ("core", "int"),
        ("eigen", "double"),
        ("betweenness", "double"),
        ("community", "int"),
    ] {
        writeln!(out, r#"  <key id="{id}" for="node" attr.name="{id}" attr.type="{ty}"/>"#)?;
    }
    writeln!(out, r#"  <key id="weight" for="edge" attr.name="weight" attr.type="long"/>"#)?;
    writeln!(out, r#"  <graph id="{}" edgedefault="undirected">"#, xml_escape(name))?;
    for r in nodes {
        writeln!(out, r#"    <node id="{}">"#, xml_escape(&r.label))?;
        writeln!(out, r#"      <data key="degree">{}</data>"#, r.degree)?;
        writeln!(out, r#"      <data key="core">{}</data>"#, r.core)?;
        writeln!(out, r#"      <data key="eigen">{}</data>"#, format_float(r.eigen))?;
        writeln!(out, r#"      <data key="betweenness">{}</data>"#, format_float(r.betweenness))?;
        if let Some(c) = r.community {
            writeln!(out, r#"      <data key="community">{c}</data>"#)?;
        }
        writeln!(out, "    </node>")?;
    }
    for e in edges {
        writeln!(
            out,
            r#"    <edge source="{}" target="{}"><data key="weight">{}</data></edge>"#,
            xml_escape(&e.source),
            xml_escape(&e.target),
            e.weight
        )?;
    }
    writeln!(out, "  </graph>")?;
    writeln!(out, "</graphml>")
}
