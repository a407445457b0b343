//! Plain-text hypergraph files.
//!
//! One edge per line, vertex labels separated by whitespace. Lines whose
//! first non-blank character is `#` are comments; blank lines are skipped.
//! Labels are arbitrary tokens. When every label is an integer the dense
//! indices follow numeric order, otherwise the order of first appearance.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: label `{label}` appears twice in one edge")]
    RepeatedLabel { line: usize, label: String },
    #[error("line {line}: duplicates the edge on line {first}")]
    DuplicateEdge { line: usize, first: usize },
    #[error("no edges found")]
    NoEdges,
}

/// A parsed hypergraph together with its label map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledHypergraph {
    pub graph: Hypergraph,
    /// `labels[v]` is the file label of dense vertex `v`.
    pub labels: Vec<String>,
    /// Source line of every edge (1-based).
    pub lines: Vec<usize>,
}

impl LabeledHypergraph {
    /// Labels `1..=n`, as written by [`write`].
    pub fn one_based(graph: Hypergraph) -> Self {
        Self {
            labels: (1..=graph.n()).map(|v| v.to_string()).collect(),
            lines: (1..=graph.m()).collect(),
            graph,
        }
    }

    pub fn label_of(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels_of(&self, vertices: &[usize]) -> Vec<String> {
        vertices.iter().map(|&v| self.labels[v].clone()).collect()
    }
}

pub fn parse(text: &str) -> Result<LabeledHypergraph, ParseError> {
    let mut raw: Vec<(usize, Vec<&str>)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        raw.push((i + 1, trimmed.split_whitespace().collect()));
    }
    if raw.is_empty() {
        return Err(ParseError::NoEdges);
    }

    let mut labels: Vec<&str> = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (_, tokens) in &raw {
        for &t in tokens {
            index.entry(t).or_insert_with(|| {
                labels.push(t);
                labels.len() - 1
            });
        }
    }
    let numeric: Option<Vec<i64>> = labels.iter().map(|l| l.parse::<i64>().ok()).collect();
    if let Some(values) = numeric {
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by_key(|&i| values[i]);
        labels = order.iter().map(|&i| labels[i]).collect();
        index = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    }

    let mut edges = Vec::with_capacity(raw.len());
    let mut lines = Vec::with_capacity(raw.len());
    for (line, tokens) in &raw {
        let edge: Vec<usize> = tokens.iter().map(|t| index[t]).collect();
        edges.push(edge);
        lines.push(*line);
    }
    let graph = Hypergraph::new(labels.len(), edges).map_err(|e| match e {
        HypergraphError::RepeatedVertex { edge, vertex } => ParseError::RepeatedLabel {
            line: lines[edge],
            label: labels[vertex].to_string(),
        },
        HypergraphError::DuplicateEdge { first, second } => ParseError::DuplicateEdge {
            line: lines[second],
            first: lines[first],
        },
        other => unreachable!("labels cover every vertex and edges are non-empty: {other}"),
    })?;
    Ok(LabeledHypergraph {
        graph,
        labels: labels.into_iter().map(String::from).collect(),
        lines,
    })
}

/// Writes one edge per line using labels `1..=n`.
pub fn write(graph: &Hypergraph, header: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        for line in h.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    for e in graph.edges() {
        let labels: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
        let _ = writeln!(out, "{}", labels.join(" "));
    }
    out
}
