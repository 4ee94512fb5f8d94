//! Plain-text formats for paths and reconfiguration sequences.
//!
//! ```text
//! sp-sequence <length>
//! <v_0> <v_1> … <v_k>            (length + 1 lines)
//!
//! is-sequence <model> [<k>] <length>
//! <token ids, or ->              (length + 1 lines)
//! ```
//!
//! `<k>` appears only for `tar`. A paths file is two lines: the source path and
//! the target path.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::is_reconfig::{IsSequence, Model, TokenSet};
use crate::sp::{SpSequence, SpState};

fn join(vs: &[usize]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn write_sp_state(p: &SpState) -> String {
    join(p.vertices())
}

pub fn write_sp_sequence(seq: &SpSequence) -> String {
    let mut out = format!("sp-sequence {}\n", seq.len());
    for st in &seq.states {
        writeln!(out, "{}", write_sp_state(st)).unwrap();
    }
    out
}

pub fn write_is_sequence(seq: &IsSequence) -> String {
    let mut out = match seq.model {
        Model::Tar { k } => format!("is-sequence tar {k} {}\n", seq.len()),
        m => format!("is-sequence {m} {}\n", seq.len()),
    };
    for st in &seq.states {
        writeln!(out, "{st}").unwrap();
    }
    out
}

/// Content lines with their 1-based line numbers; `#` comments skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#'))
}

fn parse_ids(line: usize, text: &str) -> Result<Vec<usize>> {
    if text == "-" || text.is_empty() {
        return Ok(Vec::new());
    }
    text.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse { line, msg: format!("bad vertex id `{t}`") }))
        .collect()
}

fn header_and_body(text: &str, magic: &str) -> Result<(usize, Vec<String>, Vec<(usize, String)>)> {
    let mut lines = content_lines(text).skip_while(|(_, l)| l.is_empty());
    let (line, header) = lines.next().ok_or(Error::Parse { line: 0, msg: "empty input".into() })?;
    let fields: Vec<String> = header.split_whitespace().map(str::to_string).collect();
    if fields.first().map(String::as_str) != Some(magic) {
        return Err(Error::Parse { line, msg: format!("expected `{magic}` header, got `{header}`") });
    }
    let body = lines.map(|(l, s)| (l, s.to_string())).collect();
    Ok((line, fields[1..].to_vec(), body))
}

fn take_states(header_line: usize, len: usize, body: &[(usize, String)]) -> Result<Vec<(usize, Vec<usize>)>> {
    // Trailing blank lines are not states; a blank line inside the block is an empty set.
    let mut body = body.to_vec();
    while body.len() > len + 1 && body.last().is_some_and(|(_, s)| s.is_empty()) {
        body.pop();
    }
    if body.len() != len + 1 {
        return Err(Error::Parse {
            line: header_line,
            msg: format!("header declares {} states, found {}", len + 1, body.len()),
        });
    }
    body.iter().map(|(l, s)| Ok((*l, parse_ids(*l, s)?))).collect()
}

pub fn parse_sp_sequence(text: &str) -> Result<SpSequence> {
    let (line, fields, body) = header_and_body(text, "sp-sequence")?;
    let len: usize = match fields.as_slice() {
        [n] => n.parse().map_err(|_| Error::Parse { line, msg: format!("bad length `{n}`") })?,
        _ => return Err(Error::Parse { line, msg: "expected `sp-sequence <length>`".into() }),
    };
    let states = take_states(line, len, &body)?.into_iter().map(|(_, v)| SpState(v)).collect();
    SpSequence::from_states(states)
}

pub fn parse_is_sequence(text: &str) -> Result<IsSequence> {
    let (line, fields, body) = header_and_body(text, "is-sequence")?;
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse { line, msg: format!("bad number `{s}`") });
    let (model, len) = match fields.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
        ["ts", n] => (Model::Ts, num(n)?),
        ["tj", n] => (Model::Tj, num(n)?),
        ["tar", k, n] => (Model::Tar { k: num(k)? }, num(n)?),
        _ => return Err(Error::Parse { line, msg: "expected `is-sequence <ts|tj|tar k> <length>`".into() }),
    };
    let states = take_states(line, len, &body)?.into_iter().map(|(_, v)| TokenSet::new(v)).collect();
    Ok(IsSequence { model, states })
}

/// Parses a paths file: the first two non-empty lines are the source and target.
pub fn parse_paths(text: &str) -> Result<(SpState, SpState)> {
    let mut lines = content_lines(text).filter(|(_, l)| !l.is_empty());
    let mut next = || -> Result<SpState> {
        let (line, l) = lines.next().ok_or(Error::Parse { line: 0, msg: "paths file needs two lines".into() })?;
        Ok(SpState(parse_ids(line, l)?))
    };
    let from = next()?;
    let to = next()?;
    Ok((from, to))
}

pub fn write_paths(from: &SpState, to: &SpState) -> String {
    format!("{}\n{}\n", write_sp_state(from), write_sp_state(to))
}
