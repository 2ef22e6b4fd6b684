//! Edge-list and manifest text formats.
//!
//! Edge lists hold one edge per line as two whitespace-separated tokens;
//! lines starting with `#` and blank lines are skipped. A manifest lists
//! one graph per line as `<graph-id> <path> [label]`.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdPolicy {
    /// Arbitrary tokens, numbered densely in order of first appearance.
    #[default]
    Remap,
    /// Tokens must be non-negative integers; the node count is the largest
    /// id plus one, and ids that never appear become isolated nodes.
    DenseIntegers,
}

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// Original token for each dense node id.
    pub names: Vec<String>,
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
}

pub fn load_edge_list<R: BufRead>(reader: R, policy: IdPolicy) -> Result<LoadedGraph> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut raw = Vec::new();
    let mut max_id: Option<usize> = None;
    let mut self_loops = 0;
    let mut saw_line = false;

    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        saw_line = true;
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected 2 tokens, found {}", tokens.len()),
            });
        }
        let (u, v) = match policy {
            IdPolicy::Remap => {
                let mut id = |tok: &str| {
                    *index.entry(tok.to_string()).or_insert_with(|| {
                        names.push(tok.to_string());
                        names.len() - 1
                    })
                };
                (id(tokens[0]), id(tokens[1]))
            }
            IdPolicy::DenseIntegers => {
                let parse = |tok: &str| {
                    tok.parse::<usize>().map_err(|_| Error::Parse {
                        line: lineno,
                        message: format!("`{tok}` is not a non-negative integer id"),
                    })
                };
                let (u, v) = (parse(tokens[0])?, parse(tokens[1])?);
                max_id = Some(max_id.unwrap_or(0).max(u).max(v));
                (u, v)
            }
        };
        if u == v {
            self_loops += 1;
        } else {
            raw.push((u, v));
        }
    }

    if !saw_line {
        return Err(Error::EmptyInput);
    }
    let n = match policy {
        IdPolicy::Remap => names.len(),
        IdPolicy::DenseIntegers => {
            let n = max_id.map_or(0, |m| m + 1);
            names = (0..n).map(|i| i.to_string()).collect();
            n
        }
    };
    let graph = Graph::from_edges(n, raw.iter().copied())?;
    let duplicates_collapsed = raw.len() - graph.edge_count();
    Ok(LoadedGraph {
        graph,
        names,
        self_loops_dropped: self_loops,
        duplicates_collapsed,
    })
}

/// Writes `u v` lines in ascending edge order, using `names` when given.
pub fn write_edge_list<W: Write>(mut w: W, g: &Graph, names: Option<&[String]>) -> Result<()> {
    for (u, v) in g.edges() {
        match names {
            Some(names) => writeln!(w, "{} {}", names[u], names[v])?,
            None => writeln!(w, "{u} {v}")?,
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub id: String,
    pub path: PathBuf,
    pub label: Option<i64>,
}

/// Parses a manifest. Relative paths are resolved against `base`.
pub fn parse_manifest<R: BufRead>(reader: R, base: &Path) -> Result<Vec<ManifestEntry>> {
    let mut out = Vec::new();
    let mut seen = HashMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if !(2..=3).contains(&tokens.len()) {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected `<graph-id> <path> [label]`, found {} tokens", tokens.len()),
            });
        }
        let id = tokens[0].to_string();
        if id.contains(',') {
            return Err(Error::Parse {
                line: lineno,
                message: format!("graph id `{id}` contains a comma"),
            });
        }
        if let Some(prev) = seen.insert(id.clone(), lineno) {
            return Err(Error::Parse {
                line: lineno,
                message: format!("graph id `{id}` already used on line {prev}"),
            });
        }
        let label = match tokens.get(2) {
            Some(tok) => Some(tok.parse::<i64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("label `{tok}` is not an integer"),
            })?),
            None => None,
        };
        let path = Path::new(tokens[1]);
        let path = if path.is_absolute() { path.to_path_buf() } else { base.join(path) };
        out.push(ManifestEntry { id, path, label });
    }
    Ok(out)
}
