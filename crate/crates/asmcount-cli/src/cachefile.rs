//! On-disk persistence for the memoized counting cache.
//!
//! The format is a plain text file: a versioned header line followed by one
//! entry per line, `key;value`, where the key is the comma-separated bottom
//! row and the value is the decimal count. A file whose header does not
//! match is ignored (and later overwritten), so a format change never
//! poisons results; at worst it costs a rebuild.

use asmcount::BigInt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

/// Header line identifying the cache format.
pub const HEADER: &str = "# asmcount alpha cache v1";

/// Result of reading a cache file.
#[derive(Debug, Default)]
pub struct Loaded {
    /// Parsed entries, ready to preload.
    pub entries: Vec<(Vec<i64>, BigInt)>,
    /// Lines that failed to parse and were dropped.
    pub skipped: usize,
    /// True when the file existed but carried an unrecognized header.
    pub stale_header: bool,
}

/// Reads a cache file. A missing file yields an empty load; an
/// unrecognized header yields an empty load flagged as stale.
pub fn load(path: &Path) -> io::Result<Loaded> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(err) if err.kind() == io::ErrorKind::NotFound => return Ok(Loaded::default()),
        Err(err) => return Err(err),
    };
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(HEADER) {
        return Ok(Loaded {
            stale_header: true,
            ..Loaded::default()
        });
    }
    let mut loaded = Loaded::default();
    for line in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match parse_entry(line) {
            Some(entry) => loaded.entries.push(entry),
            None => loaded.skipped += 1,
        }
    }
    Ok(loaded)
}

fn parse_entry(line: &str) -> Option<(Vec<i64>, BigInt)> {
    let (key, value) = line.split_once(';')?;
    let row = key
        .split(',')
        .map(|part| part.trim().parse::<i64>().ok())
        .collect::<Option<Vec<i64>>>()?;
    let count = BigInt::from_str(value.trim()).ok()?;
    Some((row, count))
}

/// Writes the full cache snapshot, replacing any previous file.
pub fn save(path: &Path, entries: &[(Vec<i64>, BigInt)]) -> io::Result<()> {
    let mut out = fs::File::create(path)?;
    writeln!(out, "{HEADER}")?;
    for (row, count) in entries {
        let key: Vec<String> = row.iter().map(i64::to_string).collect();
        writeln!(out, "{};{}", key.join(","), count)?;
    }
    Ok(())
}
