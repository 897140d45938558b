//! The `poset v1` text format.
//!
//! ```text
//! poset v1 n=3
//! elements:
//! a
//! b
//! c
//! covers:
//! a < b
//! b < c
//! ```
//!
//! Serialization emits elements in declaration order and the transitive
//! reduction as covers, so parse(serialize(p)) = p exactly.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Serializes to the `poset v1` format with the cover relation reduced.
pub fn serialize(p: &Poset) -> String {
    let mut out = format!("poset v1 n={}\nelements:\n", p.n());
    for id in p.ids() {
        out.push_str(id);
        out.push('\n');
    }
    out.push_str("covers:\n");
    for (u, v) in p.covers() {
        out.push_str(&format!("{} < {}\n", p.id(u), p.id(v)));
    }
    out
}

/// Parses the `poset v1` format. Blank lines are ignored; section order is
/// fixed: header, `elements:`, `covers:`.
pub fn parse(text: &str) -> Result<Poset> {
    let mut elements: Vec<String> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut declared_n: Option<usize> = None;
    // 0 = expect header, 1 = expect "elements:", 2 = element ids, 3 = covers.
    let mut state = 0u8;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let fail = |msg: &str| Error::Parse { line: lineno + 1, msg: msg.to_owned() };
        if line.is_empty() {
            continue;
        }
        match state {
            0 => {
                let n = line
                    .strip_prefix("poset v1 n=")
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| fail("expected header `poset v1 n=<N>`"))?;
                declared_n = Some(n);
                state = 1;
            }
            1 => {
                if line != "elements:" {
                    return Err(fail("expected `elements:`"));
                }
                state = 2;
            }
            2 if line == "covers:" => state = 3,
            2 => elements.push(line.to_owned()),
            _ => {
                let (u, v) = line
                    .split_once('<')
                    .map(|(u, v)| (u.trim(), v.trim()))
                    .filter(|(u, v)| !u.is_empty() && !v.is_empty())
                    .ok_or_else(|| fail("expected cover line `u < v`"))?;
                covers.push((u.to_owned(), v.to_owned()));
            }
        }
    }
    if state < 3 {
        return Err(Error::Parse { line: text.lines().count(), msg: "missing `covers:` section".into() });
    }
    let n = declared_n.expect("header parsed");
    if n != elements.len() {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header declares n={n} but {} elements listed", elements.len()),
        });
    }
    Poset::from_covers(&elements, &covers)
}

pub fn read_poset(path: &Path) -> Result<Poset> {
    parse(&fs::read_to_string(path)?)
}

pub fn write_poset(path: &Path, p: &Poset) -> Result<()> {
    Ok(fs::write(path, serialize(p))?)
}
