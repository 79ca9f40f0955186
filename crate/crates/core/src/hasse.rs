//! Hasse diagrams on `W^theta`, their parabolic embeddings, and the
//! Chevalley-weighted diagrams that encode multiplication by the divisor.
//!
//! Edges are `v -> s_i v` with `l(s_i v) = l(v) + 1`, both ends in `W^theta`.
//! Along an edge the Schubert codimension grows by one.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::schubert::{ChowElement, ChowRing};
use crate::weyl::{ParabolicSubset, WeylElement, WeylGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDiagram {
    pub theta: ParabolicSubset,
    pub vertices: Vec<WeylElement>,
    /// `(source, target, node)` with `target = s_node * source`.
    pub edges: Vec<(usize, usize, usize)>,
    words: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieriDiagram {
    pub theta: ParabolicSubset,
    /// Node of the divisor `[X_{w0 s_node}]` the weights refer to.
    pub node: usize,
    pub vertices: Vec<WeylElement>,
    /// `(source, target, multiplicity)`.
    pub edges: Vec<(usize, usize, i64)>,
    words: Vec<String>,
}

pub fn build_hasse(group: &WeylGroup, theta: &ParabolicSubset) -> HasseDiagram {
    let vertices = group.minimal_coset_reps(theta);
    let index: std::collections::HashMap<&WeylElement, usize> = vertices.iter().enumerate().map(|(k, v)| (v, k)).collect();
    let mut edges = Vec::new();
    for (k, v) in vertices.iter().enumerate() {
        for i in 0..group.rank() {
            let w = group.simple_mul(i, v);
            if w.length() == v.length() + 1 {
                if let Some(&t) = index.get(&w) {
                    edges.push((k, t, i));
                }
            }
        }
    }
    edges.sort_unstable();
    let words = vertices.iter().map(|v| group.compact_word(v)).collect();
    HasseDiagram { theta: theta.clone(), vertices, edges, words }
}

/// Vertex map `H(theta_big) -> H(theta_small)` sending `v` to `v x`, where
/// `x = w_big w_small` is the longest element of `W_big` that is minimal in
/// its `W_small` coset. Lengths shift by `l(x)`; `s_i v -> s_i v x` keeps
/// edges. For `theta_small = {}` the image is `v w_big` in `^theta W`.
pub fn embed_diagram(group: &WeylGroup, theta_big: &ParabolicSubset, theta_small: &ParabolicSubset) -> Result<Vec<WeylElement>> {
    if !theta_small.is_subset(theta_big) {
        return Err(Error::NotNested);
    }
    let x = group.multiply(&group.longest_element(theta_big), &group.longest_element(theta_small))?;
    group.minimal_coset_reps(theta_big).iter().map(|v| group.multiply(v, &x)).collect()
}

/// Weighted diagram of multiplication by the divisor of `node`; `None`
/// picks the smallest node outside theta.
pub fn build_pieri_diagram(ring: &ChowRing, node: Option<usize>) -> Result<PieriDiagram> {
    let group = ring.group();
    let node = match node {
        Some(n) => n,
        None => (0..group.rank())
            .find(|&i| !ring.theta().contains(i))
            .ok_or_else(|| Error::ShapeMismatch("theta is the full node set; no divisor".into()))?,
    };
    let mut edges = Vec::new();
    for k in 0..ring.rank() {
        for (t, m) in ring.chevalley_mult(node, &ChowElement::basis(k))?.terms() {
            edges.push((k, t, m));
        }
    }
    let vertices: Vec<WeylElement> = ring.classes().iter().map(|c| c.min_rep.clone()).collect();
    let words = vertices.iter().map(|v| group.compact_word(v)).collect();
    Ok(PieriDiagram { theta: ring.theta().clone(), node, vertices, edges, words })
}

impl HasseDiagram {
    pub fn word(&self, k: usize) -> &str {
        &self.words[k]
    }

    pub fn counts_by_length(&self) -> Vec<usize> {
        let max = self.vertices.iter().map(WeylElement::length).max().unwrap_or(0);
        let mut out = vec![0; max + 1];
        for v in &self.vertices {
            out[v.length()] += 1;
        }
        out
    }

    pub fn to_dot(&self, by_codim: bool) -> String {
        let edges = self.edges.iter().map(|&(s, t, i)| (s, t, format!("{}", i + 1), false));
        dot("hasse", &self.vertices, &self.words, edges, by_codim)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges = self.edges.iter().map(|&(s, t, i)| JsonEdge { source: s, target: t, label: Some(i + 1), weight: None }).collect();
        graph_json(&self.theta, &self.vertices, &self.words, edges)
    }
}

impl PieriDiagram {
    pub fn word(&self, k: usize) -> &str {
        &self.words[k]
    }

    /// Rebuilds `H * u` from the weighted edges.
    pub fn apply(&self, source: usize) -> ChowElement {
        ChowElement::from_terms(self.edges.iter().filter(|e| e.0 == source).map(|&(_, t, m)| (t, m)))
    }

    pub fn to_dot(&self, by_codim: bool) -> String {
        let edges = self.edges.iter().map(|&(s, t, m)| (s, t, m.to_string(), m > 1));
        dot("pieri", &self.vertices, &self.words, edges, by_codim)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges = self.edges.iter().map(|&(s, t, m)| JsonEdge { source: s, target: t, label: None, weight: Some(m) }).collect();
        graph_json(&self.theta, &self.vertices, &self.words, edges)
    }
}

/// With `by_codim` edges point towards higher codimension (left to right in
/// the usual pictures); otherwise towards longer `^theta W` representatives.
fn dot(
    name: &str,
    vertices: &[WeylElement],
    words: &[String],
    edges: impl Iterator<Item = (usize, usize, String, bool)>,
    by_codim: bool,
) -> String {
    let mut out = format!("digraph {name} {{\n  rankdir=LR;\n  node [shape=circle];\n");
    for (k, v) in vertices.iter().enumerate() {
        writeln!(out, "  v{k} [label=\"{}\\ncodim {}\"];", words[k], v.length()).unwrap();
    }
    for (s, t, label, bold) in edges {
        let (a, b) = if by_codim { (s, t) } else { (t, s) };
        let style = if bold { ", style=bold" } else { "" };
        writeln!(out, "  v{a} -> v{b} [label=\"{label}\"{style}];").unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct JsonVertex<'a> {
    index: usize,
    word: &'a str,
    length: usize,
}

#[derive(Serialize)]
struct JsonEdge {
    source: usize,
    target: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<i64>,
}

fn graph_json(theta: &ParabolicSubset, vertices: &[WeylElement], words: &[String], edges: Vec<JsonEdge>) -> serde_json::Value {
    let vertices: Vec<JsonVertex> =
        vertices.iter().enumerate().map(|(k, v)| JsonVertex { index: k, word: &words[k], length: v.length() }).collect();
    serde_json::json!({ "theta": theta.labels(), "vertices": vertices, "edges": edges })
}
