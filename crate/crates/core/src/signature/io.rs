//! Text format for signature tables.
//!
//! ```text
//! #netlsd v1 kernel=heat norm=empty grid=250,0.01,100,log
//! # any further comment lines are ignored
//! graph-a,9.9004983374916811e-1,...
//! ```
//!
//! Values are written with 17 significant digits, which round-trips every
//! `f64` exactly.

use std::io::{BufRead, Write};

use super::compute::SignatureMeta;
use crate::error::{Error, Result};

const MAGIC: &str = "#netlsd v1";

#[derive(Debug, Clone, PartialEq)]
pub struct SignatureFile {
    pub meta: SignatureMeta,
    pub rows: Vec<(String, Vec<f64>)>,
}

pub fn format_header(meta: &SignatureMeta) -> String {
    format!(
        "{MAGIC} kernel={} norm={} grid={}",
        meta.kernel, meta.normalization, meta.grid
    )
}

pub fn parse_header(line: &str) -> Result<SignatureMeta> {
    let bad = |message: String| Error::Parse { line: 1, message };
    let rest = line
        .strip_prefix(MAGIC)
        .ok_or_else(|| bad(format!("missing `{MAGIC}` header")))?;
    let (mut kernel, mut norm, mut grid) = (None, None, None);
    for field in rest.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| bad(format!("header field `{field}` is not key=value")))?;
        match key {
            "kernel" => kernel = Some(value.parse().map_err(|e: Error| bad(e.to_string()))?),
            "norm" => norm = Some(value.parse().map_err(|e: Error| bad(e.to_string()))?),
            "grid" => grid = Some(value.parse().map_err(|e: Error| bad(e.to_string()))?),
            other => return Err(bad(format!("unknown header field `{other}`"))),
        }
    }
    match (kernel, norm, grid) {
        (Some(kernel), Some(normalization), Some(grid)) => Ok(SignatureMeta {
            kernel,
            normalization,
            grid,
        }),
        _ => Err(bad("header must set kernel, norm and grid".into())),
    }
}

/// Formats one table row: the id followed by 17-significant-digit values.
pub fn format_row(id: &str, values: &[f64]) -> String {
    let mut line = String::with_capacity(id.len() + values.len() * 24);
    line.push_str(id);
    for v in values {
        line.push(',');
        line.push_str(&format!("{v:.16e}"));
    }
    line
}

impl SignatureFile {
    pub fn write<W: Write>(&self, mut w: W, comments: &[String]) -> Result<()> {
        writeln!(w, "{}", format_header(&self.meta))?;
        for c in comments {
            writeln!(w, "# {c}")?;
        }
        for (id, values) in &self.rows {
            writeln!(w, "{}", format_row(id, values))?;
        }
        Ok(())
    }

    pub fn read<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines().enumerate();
        let meta = match lines.next() {
            Some((_, line)) => parse_header(line?.trim_end())?,
            None => {
                return Err(Error::Parse {
                    line: 1,
                    message: "empty signature file".into(),
                })
            }
        };
        let count = meta.grid.count;
        let mut rows = Vec::new();
        for (i, line) in lines {
            let line = line?;
            let lineno = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = trimmed.split(',');
            let id = fields.next().unwrap_or_default().to_string();
            let values = fields
                .map(|f| {
                    f.trim().parse::<f64>().map_err(|_| Error::Parse {
                        line: lineno,
                        message: format!("`{f}` is not a number"),
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            if values.len() != count {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected {count} values, found {}", values.len()),
                });
            }
            rows.push((id, values));
        }
        Ok(SignatureFile { meta, rows })
    }
}
