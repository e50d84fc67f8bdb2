//! Text exports of a built graph: JSON, Graphviz DOT and a plain edge list.

use std::fmt::Write;

use serde::Serialize;

use crate::graph::{EdgeKind, GiGraph};

#[derive(Serialize)]
struct JsonGraph<'a> {
    n: u32,
    #[serde(rename = "J")]
    steps: &'a [u32],
    vertices: Vec<[u64; 2]>,
    edges: Vec<JsonEdge>,
}

#[derive(Serialize)]
struct JsonEdge {
    u: usize,
    v: usize,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    layer: Option<usize>,
}

fn kind_parts(kind: EdgeKind) -> (&'static str, Option<usize>) {
    match kind {
        EdgeKind::Spoke => ("spoke", None),
        EdgeKind::Layer(s) => ("layer", Some(s)),
    }
}

pub fn to_json(graph: &GiGraph) -> String {
    let spec = graph.spec();
    let doc = JsonGraph {
        n: spec.n(),
        steps: spec.steps(),
        vertices: (0..graph.vertex_count())
            .map(|i| {
                let id = spec.vertex(i);
                [id.s as u64, id.v as u64]
            })
            .collect(),
        edges: graph
            .edges()
            .iter()
            .map(|e| {
                let (kind, layer) = kind_parts(e.kind);
                JsonEdge {
                    u: e.u,
                    v: e.v,
                    kind,
                    layer,
                }
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("graph JSON serializes")
}

pub fn to_dot(graph: &GiGraph) -> String {
    let spec = graph.spec();
    let name = |i: usize| {
        let id = spec.vertex(i);
        format!("\"{}_{}\"", id.s, id.v)
    };
    let mut out = String::new();
    writeln!(out, "graph \"{spec}\" {{").unwrap();
    for i in 0..graph.vertex_count() {
        writeln!(out, "  {};", name(i)).unwrap();
    }
    for e in graph.edges() {
        let (kind, layer) = kind_parts(e.kind);
        match layer {
            Some(s) => writeln!(out, "  {} -- {} [kind={kind}, layer={s}];", name(e.u), name(e.v)),
            None => writeln!(out, "  {} -- {} [kind={kind}];", name(e.u), name(e.v)),
        }
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn to_edge_list(graph: &GiGraph) -> String {
    graph
        .edges()
        .iter()
        .map(|e| format!("{} {}\n", e.u, e.v))
        .collect()
}
