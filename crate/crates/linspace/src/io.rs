//! Instance file formats and fingerprints.
//!
//! JSON: {"points": n, "lines": [[i, ...], ...]} with 0-based indices.
//! Plain text: first non-comment line is n; each later non-empty line lists
//! the point indices of one line; '#' starts a comment.

use crate::incidence::{IncidenceStructure, ValidationError};

pub fn parse_json(input: &str) -> Result<IncidenceStructure, ValidationError> {
    serde_json::from_str(input).map_err(|e| ValidationError::IndexOutOfRange {
        what: format!("bad JSON instance: {e}"),
    })
}

pub fn parse_text(input: &str) -> Result<IncidenceStructure, ValidationError> {
    let mut point_count: Option<usize> = None;
    let mut lines = Vec::new();
    for raw in input.lines() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if point_count.is_none() {
            point_count = Some(body.parse().map_err(|_| ValidationError::IndexOutOfRange {
                what: format!("bad point count line: {body:?}"),
            })?);
            continue;
        }
        let line: Result<Vec<usize>, _> = body.split_whitespace().map(str::parse).collect();
        lines.push(line.map_err(|_| ValidationError::IndexOutOfRange {
            what: format!("bad line: {body:?}"),
        })?);
    }
    match point_count {
        Some(point_count) => Ok(IncidenceStructure { point_count, lines }),
        None => Err(ValidationError::IndexOutOfRange {
            what: "empty instance file".into(),
        }),
    }
}

/// Detect the format from the first non-whitespace character.
pub fn parse_auto(input: &str) -> Result<IncidenceStructure, ValidationError> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

pub fn to_text(s: &IncidenceStructure) -> String {
    let mut out = format!("{}\n", s.point_count);
    for l in &s.lines {
        let words: Vec<String> = l.iter().map(|z| z.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

pub fn to_json(s: &IncidenceStructure) -> String {
    serde_json::to_string(s).expect("instance serialization cannot fail")
}

/// FNV-1a content hash of the structure, for report fingerprints.
pub fn fingerprint(s: &IncidenceStructure) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |v: u64| {
        for byte in v.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(s.point_count as u64);
    for l in &s.lines {
        eat(u64::MAX); // line separator
        for &z in l {
            eat(z as u64);
        }
    }
    format!("{h:016x}")
}
