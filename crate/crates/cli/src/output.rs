//! Document writers. Output is deterministic: struct field order fixes the
//! JSON key order and CSV rows are emitted in computation order.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

fn write_bytes(bytes: &[u8], out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(bytes)?;
            Ok(())
        }
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn write_document<T: Serialize>(doc: &T, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    write_bytes(text.as_bytes(), out)
}

/// CSV with the first row as header.
pub fn write_csv(rows: &[Vec<String>], out: Option<&Path>) -> Result<()> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.write_record(row)?;
    }
    let bytes = writer.into_inner()?;
    write_bytes(&bytes, out)
}
