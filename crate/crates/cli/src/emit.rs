//! Report emission: one report per run, rendered as text, JSON, or CSV.
//!
//! Every format carries the resolved configuration so a run can be
//! reproduced from its output alone. In text mode the echo goes to stderr,
//! keeping stdout clean for the result itself; JSON embeds the config in the
//! envelope; CSV prefixes a single `#` comment line.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use csgamma::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One CSV table: a header line and pre-rendered data rows.
pub struct Csv {
    pub header: &'static str,
    pub rows: Vec<String>,
}

impl Csv {
    pub fn one(header: &'static str, row: String) -> Self {
        Csv {
            header,
            rows: vec![row],
        }
    }
}

pub struct Emitter {
    format: Format,
    out: Out,
}

enum Out {
    Stdout(io::Stdout),
    File(BufWriter<File>, PathBuf),
}

impl Write for Out {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        match self {
            Out::Stdout(s) => s.write(buf),
            Out::File(f, _) => f.write(buf),
        }
    }

    fn flush(&mut self) -> io::Result<()> {
        match self {
            Out::Stdout(s) => s.flush(),
            Out::File(f, _) => f.flush(),
        }
    }
}

impl Emitter {
    pub fn new(format: Format, out: Option<&Path>) -> Result<Self> {
        let out = match out {
            None => Out::Stdout(io::stdout()),
            Some(p) => Out::File(BufWriter::new(File::create(p)?), p.to_path_buf()),
        };
        Ok(Emitter { format, out })
    }

    /// Write one complete report. `text` is the text-mode body (already
    /// newline-terminated); `csv` the tabular rendering; JSON comes from the
    /// `Serialize` impls. The config echo never lands on stdout in text mode.
    pub fn emit<C: Serialize, R: Serialize>(
        &mut self,
        command: &str,
        config: &C,
        report: &R,
        text: String,
        csv: Csv,
    ) -> Result<()> {
        match self.format {
            Format::Text => {
                eprintln!("config: {}", flatten(config)?);
                self.out.write_all(text.as_bytes())?;
            }
            Format::Json => {
                let envelope = Envelope {
                    schema_version: 1,
                    command,
                    config,
                    report,
                };
                let body = serde_json::to_string_pretty(&envelope)
                    .map_err(|e| Error::Parse(e.to_string()))?;
                self.out.write_all(body.as_bytes())?;
                self.out.write_all(b"\n")?;
            }
            Format::Csv => {
                writeln!(self.out, "# {}", flatten(config)?)?;
                writeln!(self.out, "{}", csv.header)?;
                for row in &csv.rows {
                    writeln!(self.out, "{row}")?;
                }
            }
        }
        self.out.flush()?;
        if let Out::File(_, path) = &self.out {
            eprintln!("wrote {}", path.display());
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct Envelope<'a, C: Serialize, R: Serialize> {
    schema_version: u32,
    command: &'a str,
    config: &'a C,
    report: &'a R,
}

/// `key=value` pairs of the config's top-level fields, sorted by key (the
/// JSON map is ordered). Scalars print bare; anything nested prints as
/// compact JSON.
fn flatten<C: Serialize>(config: &C) -> Result<String> {
    let value = serde_json::to_value(config).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("config must serialize to an object".into()))?;
    let mut parts = Vec::with_capacity(obj.len());
    for (key, val) in obj {
        let rendered = match val {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Null => "none".into(),
            other => other.to_string(),
        };
        parts.push(format!("{key}={rendered}"));
    }
    Ok(parts.join(" "))
}

/// Render a float so the cell is unambiguous and finite. The full shortest
/// round-trip representation, not a fixed precision.
pub fn cell(x: f64) -> String {
    debug_assert!(x.is_finite());
    let mut s = format!("{x}");
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("nan") {
        s.push_str(".0");
    }
    s
}
