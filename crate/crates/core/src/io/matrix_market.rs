// SPDX-License-Identifier: Apache-2.0

use std::io::BufRead;

use super::{build, parse_weight, LabelMap, LoadError, LoadedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Integer,
    Pattern,
}

/// Reads a `%%MatrixMarket matrix coordinate` file with a `real`, `integer`
/// or `pattern` field and `general` or `symmetric` storage.
///
/// Coordinates are 1-based in the file and 0-based in the result, and the
/// label map is the identity on the shifted ids. Pattern entries take
/// `default_weight`. Symmetric entries are stored in both directions.
pub fn read_matrix_market<R: BufRead>(reader: R, default_weight: f64) -> Result<LoadedGraph, LoadError> {
    let mut lines = reader.lines().enumerate().map(|(k, l)| (k + 1, l));

    let (field, symmetric) = match lines.next() {
        Some((line, text)) => parse_header(line, &text.map_err(|e| LoadError::parse(line, e.to_string()))?)?,
        None => return Err(LoadError::parse(1, "empty file, expected a %%MatrixMarket header")),
    };

    let mut size: Option<(usize, usize)> = None;
    let mut triples = Vec::new();
    let mut entries = 0usize;
    let mut last_line = 1;
    for (line, text) in lines {
        let text = text.map_err(|e| LoadError::parse(line, e.to_string()))?;
        last_line = line;
        let text = text.trim();
        if text.is_empty() || text.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();

        let Some((n, expected)) = size else {
            size = Some(parse_size(line, &tokens)?);
            continue;
        };

        if entries == expected {
            return Err(LoadError::parse(line, format!("more entries than the {expected} declared")));
        }
        let want = if field == Field::Pattern { 2 } else { 3 };
        if tokens.len() != want {
            return Err(LoadError::parse(line, format!("expected {want} fields, found {}", tokens.len())));
        }
        let row = parse_index(tokens[0], n, line)?;
        let col = parse_index(tokens[1], n, line)?;
        let weight = match field {
            Field::Pattern => default_weight,
            Field::Integer => {
                tokens[2]
                    .parse::<i64>()
                    .map_err(|_| LoadError::parse(line, format!("invalid integer {:?}", tokens[2])))?;
                parse_weight(tokens[2], line)?
            }
            Field::Real => parse_weight(tokens[2], line)?,
        };
        triples.push((row, col, weight));
        if symmetric && row != col {
            triples.push((col, row, weight));
        }
        entries += 1;
    }

    let Some((n, expected)) = size else {
        return Err(LoadError::parse(last_line + 1, "missing size line"));
    };
    if entries != expected {
        return Err(LoadError::parse(
            last_line + 1,
            format!("expected {expected} entries, found {entries}"),
        ));
    }
    build(n, triples, LabelMap::identity(n))
}

fn parse_header(line: usize, text: &str) -> Result<(Field, bool), LoadError> {
    let tokens: Vec<String> = text.split_whitespace().map(str::to_ascii_lowercase).collect();
    let tokens: Vec<&str> = tokens.iter().map(String::as_str).collect();
    let [banner, "matrix", "coordinate", field, symmetry] = tokens[..] else {
        return Err(LoadError::parse(line, "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'"));
    };
    if banner != "%%matrixmarket" {
        return Err(LoadError::parse(line, "missing %%MatrixMarket banner"));
    }
    let field = match field {
        "real" => Field::Real,
        "integer" => Field::Integer,
        "pattern" => Field::Pattern,
        other => return Err(LoadError::parse(line, format!("unsupported field type {other:?}"))),
    };
    let symmetric = match symmetry {
        "general" => false,
        "symmetric" => true,
        other => return Err(LoadError::parse(line, format!("unsupported symmetry {other:?}"))),
    };
    Ok((field, symmetric))
}

fn parse_size(line: usize, tokens: &[&str]) -> Result<(usize, usize), LoadError> {
    let [rows, cols, nnz] = tokens else {
        return Err(LoadError::parse(line, "expected size line 'rows cols entries'"));
    };
    let number = |t: &str| {
        t.parse::<usize>()
            .map_err(|_| LoadError::parse(line, format!("invalid size {t:?}")))
    };
    let (rows, cols, nnz) = (number(rows)?, number(cols)?, number(nnz)?);
    if rows != cols {
        return Err(LoadError::validation(line, format!("adjacency matrix must be square, got {rows}x{cols}")));
    }
    if rows == 0 {
        return Err(LoadError::validation(line, "matrix has no rows"));
    }
    Ok((rows, nnz))
}

fn parse_index(token: &str, n: usize, line: usize) -> Result<usize, LoadError> {
    let k: usize = token
        .parse()
        .map_err(|_| LoadError::parse(line, format!("invalid index {token:?}")))?;
    if k == 0 || k > n {
        return Err(LoadError::validation(line, format!("index {k} outside 1..={n}")));
    }
    Ok(k - 1)
}
