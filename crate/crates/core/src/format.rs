//! The `semmap 1` text format.
//!
//! ```text
//! semmap 1
//! vertices 4
//! # tag: family sphere
//! face 0 1 2
//! ```

use thiserror::Error;

use crate::map::{face_key, validate, MapError, PolyhedralMap};

const TAG_PREFIX: &str = "# tag:";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] MapError),
}

/// Raw contents of a semmap file, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawMap {
    pub n: usize,
    pub faces: Vec<Vec<usize>>,
    pub tags: Vec<String>,
}

pub fn parse_raw(text: &str) -> Result<RawMap, ParseError> {
    let err = |line: usize, msg: &str| ParseError::Syntax { line, msg: msg.to_string() };
    let mut header = false;
    let mut n = None;
    let mut raw = RawMap::default();
    for (i, line) in text.lines().enumerate() {
        let lno = i + 1;
        let line = line.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        if let Some(tag) = line.strip_prefix(TAG_PREFIX) {
            raw.tags.push(tag.trim().to_string());
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or_default();
        if !header {
            if head != "semmap" || words.next() != Some("1") || words.next().is_some() {
                return Err(err(lno, "expected header `semmap 1`"));
            }
            header = true;
            continue;
        }
        match head {
            "vertices" => {
                if n.is_some() {
                    return Err(err(lno, "duplicate `vertices` line"));
                }
                let v = words.next().and_then(|w| w.parse().ok()).ok_or_else(|| err(lno, "bad vertex count"))?;
                if words.next().is_some() {
                    return Err(err(lno, "trailing tokens after vertex count"));
                }
                n = Some(v);
            }
            "face" => {
                if n.is_none() {
                    return Err(err(lno, "`face` before `vertices`"));
                }
                let f = words
                    .map(|w| w.parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| err(lno, "bad vertex label"))?;
                raw.faces.push(f);
            }
            other => return Err(err(lno, &format!("unknown directive `{other}`"))),
        }
    }
    if !header {
        return Err(err(1, "missing header `semmap 1`"));
    }
    raw.n = n.ok_or_else(|| err(1, "missing `vertices` line"))?;
    Ok(raw)
}

/// Parses and validates a semmap document. Tags are kept on the map.
pub fn parse_map(text: &str) -> Result<PolyhedralMap, ParseError> {
    let raw = parse_raw(text)?;
    Ok(validate(&raw.faces, raw.n)?.with_tags(raw.tags))
}

/// Canonical text: faces in canonical rotation, sorted; tags first.
pub fn serialize(m: &PolyhedralMap) -> String {
    let mut out = format!("semmap 1\nvertices {}\n", m.n_vertices());
    for t in m.tags() {
        out.push_str(TAG_PREFIX);
        out.push(' ');
        out.push_str(t);
        out.push('\n');
    }
    write_faces(&mut out, &m.canonical_faces());
    out
}

/// Canonical text of a bare face list.
pub fn serialize_faces(n: usize, faces: &[Vec<usize>]) -> String {
    let mut keys: Vec<Vec<usize>> = faces.iter().map(|f| face_key(f)).collect();
    keys.sort();
    let mut out = format!("semmap 1\nvertices {n}\n");
    write_faces(&mut out, &keys);
    out
}

fn write_faces(out: &mut String, faces: &[Vec<usize>]) {
    for f in faces {
        out.push_str("face");
        for v in f {
            out.push(' ');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
}
