// SPDX-License-Identifier: Apache-2.0

use std::io::BufRead;

use super::{build, parse_weight, LabelMap, LoadError, LoadedGraph};

/// Reads `u v` or `u v w` lines; `#` and `%` start comment lines.
///
/// Labels are arbitrary non-negative integers, remapped densely in
/// first-seen order. Undirected input inserts both directions.
pub fn read_edge_list<R: BufRead>(reader: R, directed: bool, default_weight: f64) -> Result<LoadedGraph, LoadError> {
    let mut labels = LabelMap::new();
    let mut triples = Vec::new();
    for (k, text) in reader.lines().enumerate() {
        let line = k + 1;
        let text = text.map_err(|e| LoadError::parse(line, e.to_string()))?;
        let text = text.trim();
        if text.is_empty() || text.starts_with('#') || text.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if !(2..=3).contains(&tokens.len()) {
            return Err(LoadError::parse(line, format!("expected 'u v [w]', found {} fields", tokens.len())));
        }
        let label = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| LoadError::parse(line, format!("invalid vertex label {t:?}")))
        };
        let (u, v) = (label(tokens[0])?, label(tokens[1])?);
        let weight = match tokens.get(2) {
            Some(t) => parse_weight(t, line)?,
            None => default_weight,
        };
        let (u, v) = (labels.intern(u), labels.intern(v));
        triples.push((u, v, weight));
        if !directed && u != v {
            triples.push((v, u, weight));
        }
    }
    if labels.is_empty() {
        return Err(LoadError::validation(0, "edge list contains no edges"));
    }
    build(labels.len(), triples, labels)
}
