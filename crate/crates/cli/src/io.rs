use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use reconf_core::graph::{parse_graph, parse_vertex_set, Graph};
use reconf_core::TokenSet;

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

pub fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Writes to `out` if given, stdout otherwise.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// A vertex set given inline (`0,2,5`, `0 2 5`, `-` for empty) or as `@file`.
pub fn parse_set_arg(arg: &str) -> Result<TokenSet> {
    let text = match arg.strip_prefix('@') {
        Some(path) => read(Path::new(path))?,
        None => arg.replace(',', " "),
    };
    Ok(TokenSet::new(parse_vertex_set(&text).with_context(|| format!("bad vertex set `{arg}`"))?))
}

pub fn check_vertex(g: &Graph, v: usize, what: &str) -> Result<()> {
    if v >= g.n() {
        bail!("{what} {v} out of range (graph has {} vertices)", g.n());
    }
    Ok(())
}

pub fn check_set(g: &Graph, set: &TokenSet, what: &str) -> Result<()> {
    for &v in set.vertices() {
        check_vertex(g, v, what)?;
    }
    Ok(())
}
