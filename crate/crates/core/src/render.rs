//! DOT and ASCII renderings of weighted graphs, zigzags and extended graphs.

use std::fmt::Write as _;

use crate::classify::ExtendedGraph;
use crate::graph::{VertexKind, WeightedGraph};
use crate::zigzag::Zigzag;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

/// A two-line label `id` over `weight`.
fn label(top: &str, bottom: &str) -> String {
    format!("\"{}\\n{}\"", escape(top), escape(bottom))
}

fn kind_shape(kind: VertexKind) -> &'static str {
    match kind {
        VertexKind::Section => "doublecircle",
        VertexKind::FeatherBridge | VertexKind::FeatherTail => "box",
        VertexKind::Fiber => "diamond",
        VertexKind::Boundary | VertexKind::Exceptional => "circle",
    }
}

/// An undirected DOT graph; each vertex is labelled with its id and weight.
pub fn to_dot(g: &WeightedGraph, name: &str) -> String {
    let mut out = format!("graph {} {{\n", quote(name));
    for v in g.vertices() {
        let mut weight = v.weight.to_string();
        if v.genus > 0 {
            let _ = write!(weight, " (g={})", v.genus);
        }
        let _ = writeln!(
            out,
            "  {} [label={}, shape={}];",
            quote(&v.id),
            label(&v.id, &weight),
            kind_shape(v.kind)
        );
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  {} -- {};", quote(a), quote(b));
    }
    out.push_str("}\n");
    out
}

/// DOT for a zigzag by position; unlike [`to_dot`] this also handles the
/// one- and two-vertex cycles (a self-loop and a double edge).
pub fn zigzag_dot(z: &Zigzag, name: &str) -> String {
    let mut out = format!("graph {} {{\n", quote(name));
    let n = z.len();
    for (i, w) in z.weights.iter().enumerate() {
        let _ = writeln!(out, "  {} [label={}, shape=circle];", quote(&format!("C{i}")), quote(&w.to_string()));
    }
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    if z.circular && n > 0 {
        edges.push((n - 1, 0));
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  {} -- {};", quote(&format!("C{a}")), quote(&format!("C{b}")));
    }
    out.push_str("}\n");
    out
}

/// Weights above a row of `o` joined by dashes:
///
/// ```text
///  0   0   -2
///  o---o---o
/// ```
pub fn chain_ascii(weights: &[String], circular: bool) -> String {
    if weights.is_empty() {
        return "(empty)\n".into();
    }
    let cell = weights.iter().map(String::len).max().unwrap_or(1).max(1) + 2;
    let mut top = String::new();
    let mut bottom = String::new();
    for (i, w) in weights.iter().enumerate() {
        let _ = write!(top, "{w:^cell$}");
        let left = (cell - 1) / 2;
        let right = cell - 1 - left;
        let lfill = if i == 0 { " " } else { "-" };
        let rfill = if i + 1 == weights.len() { " " } else { "-" };
        bottom.push_str(&lfill.repeat(left));
        bottom.push('o');
        bottom.push_str(&rfill.repeat(right));
    }
    let mut out = format!("{}\n{}\n", top.trim_end(), bottom.trim_end());
    if circular {
        out.push_str("(the last vertex is joined to the first)\n");
    }
    out
}

pub fn zigzag_ascii(z: &Zigzag) -> String {
    let w: Vec<String> = z.weights.iter().map(ToString::to_string).collect();
    chain_ascii(&w, z.circular)
}

/// A chain or cycle is drawn as a chain; other graphs as an adjacency list.
pub fn graph_ascii(g: &WeightedGraph) -> String {
    if let Some(z) = Zigzag::from_graph(g) {
        if !g.is_empty() {
            return zigzag_ascii(&z);
        }
    }
    let mut out = String::new();
    for v in g.vertices() {
        let _ = writeln!(out, "{} ({}): {}", v.id, v.weight, g.neighbors(&v.id).join(" "));
    }
    out
}

/// The zigzag as a chain, then one line per feather naming its anchor.
pub fn extended_ascii(e: &ExtendedGraph) -> String {
    let mut out = zigzag_ascii(&e.zigzag);
    let render = |w: Vec<i64>| {
        w.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    };
    for (idx, fs) in &e.feathers {
        for f in fs {
            let _ = writeln!(out, "C{idx} <- [[{}]]", render(f.weights()));
        }
    }
    if let Some(f) = &e.tail_feather {
        let last = e.zigzag.len().saturating_sub(1);
        let _ = writeln!(out, "C{last} <- [[{}]] (tail)", render(f.weights()));
    }
    out
}
