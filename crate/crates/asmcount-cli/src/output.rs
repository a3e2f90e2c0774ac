//! Rendering of counts and tables as text, CSV, and JSON.
//!
//! All three formats are deterministic: entries are emitted in index order
//! and big integers are always rendered as decimal strings, never as
//! floating-point numbers.

use asmcount::BigInt;
use clap::ValueEnum;
use serde::Serialize;

/// Output format for tables printed to stdout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    /// Bare values, whitespace separated.
    #[default]
    Text,
    /// Comma-separated with a header row.
    Csv,
    /// One pretty-printed JSON document.
    Json,
}

/// Output format for exported files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum FileFormat {
    /// Comma-separated with a header row.
    #[default]
    Csv,
    /// One pretty-printed JSON document.
    Json,
}

/// Where table values come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Mode {
    /// Closed-form product formulas.
    #[default]
    Formula,
    /// Brute-force counting (dynamic programming or enumeration).
    Brute,
    /// Both, with a per-entry comparison.
    Both,
}

/// How a table is indexed; fixes the text layout and the CSV header even
/// when a filter leaves no entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexShape {
    /// One value, no indices.
    Scalar,
    /// Keyed by a single index `i`.
    Single,
    /// Keyed by an index pair `(i, j)`.
    Pairs,
}

/// A table entry ready for rendering: optional indices plus a decimal
/// value.
#[derive(Debug, Serialize)]
pub struct Entry {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<i64>,
    pub value: String,
}

impl Entry {
    pub fn scalar(value: &BigInt) -> Self {
        Entry {
            i: None,
            j: None,
            value: value.to_string(),
        }
    }

    pub fn single(i: i64, value: &BigInt) -> Self {
        Entry {
            i: Some(i),
            j: None,
            value: value.to_string(),
        }
    }

    pub fn pair(i: i64, j: i64, value: &BigInt) -> Self {
        Entry {
            i: Some(i),
            j: Some(j),
            value: value.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
struct TableDoc<'a> {
    n: usize,
    kind: &'a str,
    entries: &'a [Entry],
}

/// Renders a table of entries in the requested format. `kind` is the
/// stable table-kind name; every entry must match the index shape.
pub fn render_table(
    n: usize,
    kind: &str,
    shape: IndexShape,
    entries: &[Entry],
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            match shape {
                IndexShape::Scalar => {
                    for e in entries {
                        out.push_str(&e.value);
                        out.push('\n');
                    }
                }
                IndexShape::Single => {
                    let row: Vec<&str> = entries.iter().map(|e| e.value.as_str()).collect();
                    out.push_str(&row.join(" "));
                    out.push('\n');
                }
                IndexShape::Pairs => {
                    for e in entries {
                        out.push_str(&format!(
                            "{} {} {}\n",
                            e.i.expect("pair entries carry i"),
                            e.j.expect("pair entries carry j"),
                            e.value
                        ));
                    }
                }
            }
            out
        }
        OutputFormat::Csv => render_table_csv(n, shape, entries),
        OutputFormat::Json => {
            let doc = TableDoc { n, kind, entries };
            let mut out = serde_json::to_string_pretty(&doc).expect("table documents serialize");
            out.push('\n');
            out
        }
    }
}

/// CSV body shared by stdout rendering and file export.
pub fn render_table_csv(n: usize, shape: IndexShape, entries: &[Entry]) -> String {
    let mut out = String::new();
    match shape {
        IndexShape::Scalar => {
            out.push_str("n,value\n");
            for e in entries {
                out.push_str(&format!("{n},{}\n", e.value));
            }
        }
        IndexShape::Single => {
            out.push_str("n,i,value\n");
            for e in entries {
                out.push_str(&format!(
                    "{n},{},{}\n",
                    e.i.expect("entry carries i"),
                    e.value
                ));
            }
        }
        IndexShape::Pairs => {
            out.push_str("n,i,j,value\n");
            for e in entries {
                out.push_str(&format!(
                    "{n},{},{},{}\n",
                    e.i.expect("entry carries i"),
                    e.j.expect("entry carries j"),
                    e.value
                ));
            }
        }
    }
    out
}

/// Renders a table of entries for a file export.
pub fn render_file(
    n: usize,
    kind: &str,
    shape: IndexShape,
    entries: &[Entry],
    format: FileFormat,
) -> String {
    match format {
        FileFormat::Csv => render_table_csv(n, shape, entries),
        FileFormat::Json => render_table(n, kind, shape, entries, OutputFormat::Json),
    }
}

/// One compared entry of a formula-vs-brute diff.
#[derive(Debug, Serialize)]
pub struct DiffEntry {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<i64>,
    pub formula: String,
    pub brute: String,
    pub equal: bool,
}

impl DiffEntry {
    pub fn new(i: Option<i64>, j: Option<i64>, formula: &BigInt, brute: &BigInt) -> Self {
        DiffEntry {
            i,
            j,
            formula: formula.to_string(),
            brute: brute.to_string(),
            equal: formula == brute,
        }
    }
}

#[derive(Debug, Serialize)]
struct DiffDoc<'a> {
    n: usize,
    kind: &'a str,
    mode: &'static str,
    entries: &'a [DiffEntry],
    equal: bool,
}

/// Renders a formula-vs-brute comparison; the second return value is true
/// when every entry agreed.
pub fn render_diff(
    n: usize,
    kind: &str,
    entries: &[DiffEntry],
    format: OutputFormat,
) -> (String, bool) {
    let equal = entries.iter().all(|e| e.equal);
    let out = match format {
        OutputFormat::Text => {
            let mut out = String::new();
            for e in entries {
                let mut line = String::new();
                if let Some(i) = e.i {
                    line.push_str(&format!("{i} "));
                }
                if let Some(j) = e.j {
                    line.push_str(&format!("{j} "));
                }
                line.push_str(&format!(
                    "{} {} {}\n",
                    e.formula,
                    e.brute,
                    if e.equal { "ok" } else { "MISMATCH" }
                ));
                out.push_str(&line);
            }
            out.push_str(if equal { "EQUAL\n" } else { "UNEQUAL\n" });
            out
        }
        OutputFormat::Csv => {
            let mut out = String::new();
            let has_i = entries.iter().any(|e| e.i.is_some());
            let has_j = entries.iter().any(|e| e.j.is_some());
            match (has_i, has_j) {
                (true, true) => out.push_str("n,i,j,formula,brute,equal\n"),
                (true, false) => out.push_str("n,i,formula,brute,equal\n"),
                _ => out.push_str("n,formula,brute,equal\n"),
            }
            for e in entries {
                out.push_str(&n.to_string());
                if let Some(i) = e.i {
                    out.push_str(&format!(",{i}"));
                }
                if let Some(j) = e.j {
                    out.push_str(&format!(",{j}"));
                }
                out.push_str(&format!(",{},{},{}\n", e.formula, e.brute, e.equal));
            }
            out
        }
        OutputFormat::Json => {
            let doc = DiffDoc {
                n,
                kind,
                mode: "both",
                entries,
                equal,
            };
            let mut out = serde_json::to_string_pretty(&doc).expect("diff documents serialize");
            out.push('\n');
            out
        }
    };
    (out, equal)
}

#[derive(Debug, Serialize)]
struct SourcedEntry<'a> {
    source: &'a str,
    value: String,
}

#[derive(Debug, Serialize)]
struct CountCompareDoc<'a> {
    n: usize,
    kind: &'static str,
    entries: Vec<SourcedEntry<'a>>,
    equal: bool,
}

/// Renders a formula-vs-brute comparison of the total count; the second
/// return value is true when the two agree.
pub fn render_count_comparison(
    n: usize,
    formula: &BigInt,
    brute: &BigInt,
    format: OutputFormat,
) -> (String, bool) {
    let equal = formula == brute;
    let out = match format {
        OutputFormat::Text => format!(
            "formula: {formula}\nbrute: {brute}\n{}\n",
            if equal { "EQUAL" } else { "UNEQUAL" }
        ),
        OutputFormat::Csv => {
            format!("n,source,value\n{n},formula,{formula}\n{n},brute,{brute}\n")
        }
        OutputFormat::Json => {
            let doc = CountCompareDoc {
                n,
                kind: "total",
                entries: vec![
                    SourcedEntry {
                        source: "formula",
                        value: formula.to_string(),
                    },
                    SourcedEntry {
                        source: "brute",
                        value: brute.to_string(),
                    },
                ],
                equal,
            };
            let mut out = serde_json::to_string_pretty(&doc).expect("count documents serialize");
            out.push('\n');
            out
        }
    };
    (out, equal)
}

/// Formats `v` with the given number of significant digits in plain
/// positional notation.
pub fn format_significant(v: f64, digits: i32) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return format!("{:.*}", (digits - 1) as usize, 0.0);
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (digits - 1 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn text_layouts() {
        let scalar = [Entry::scalar(&big(42))];
        assert_eq!(
            render_table(4, "total", IndexShape::Scalar, &scalar, OutputFormat::Text),
            "42\n"
        );
        let single = [Entry::single(1, &big(7)), Entry::single(2, &big(14))];
        assert_eq!(
            render_table(
                4,
                "refined",
                IndexShape::Single,
                &single,
                OutputFormat::Text
            ),
            "7 14\n"
        );
        let pairs = [Entry::pair(1, 2, &big(2)), Entry::pair(1, 3, &big(3))];
        assert_eq!(
            render_table(4, "top-two", IndexShape::Pairs, &pairs, OutputFormat::Text),
            "1 2 2\n1 3 3\n"
        );
    }

    #[test]
    fn csv_headers_follow_the_declared_shape() {
        let scalar = [Entry::scalar(&big(42))];
        assert_eq!(
            render_table_csv(4, IndexShape::Scalar, &scalar),
            "n,value\n4,42\n"
        );
        let single = [Entry::single(2, &big(14))];
        assert_eq!(
            render_table_csv(4, IndexShape::Single, &single),
            "n,i,value\n4,2,14\n"
        );
        let pairs = [Entry::pair(1, 2, &big(2))];
        assert_eq!(
            render_table_csv(4, IndexShape::Pairs, &pairs),
            "n,i,j,value\n4,1,2,2\n"
        );
        assert_eq!(render_table_csv(4, IndexShape::Pairs, &[]), "n,i,j,value\n");
    }

    #[test]
    fn json_serializes_values_as_strings() {
        let pairs = [Entry::pair(1, 2, &big(2))];
        let out = render_table(4, "top-two", IndexShape::Pairs, &pairs, OutputFormat::Json);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["n"], 4);
        assert_eq!(doc["kind"], "top-two");
        assert_eq!(doc["entries"][0]["value"], "2");
        assert!(doc["entries"][0]["value"].is_string());
    }

    #[test]
    fn diff_rendering_and_verdict() {
        let entries = [
            DiffEntry::new(Some(1), None, &big(7), &big(7)),
            DiffEntry::new(Some(2), None, &big(14), &big(13)),
        ];
        let (text, equal) = render_diff(4, "refined", &entries, OutputFormat::Text);
        assert!(!equal);
        assert!(text.ends_with("UNEQUAL\n"));
        assert!(text.contains("2 14 13 MISMATCH\n"));
        let (csv, _) = render_diff(4, "refined", &entries, OutputFormat::Csv);
        assert!(csv.starts_with("n,i,formula,brute,equal\n"));
        assert!(csv.contains("4,2,14,13,false\n"));
    }

    #[test]
    fn count_comparison_formats() {
        let (text, equal) = render_count_comparison(4, &big(42), &big(42), OutputFormat::Text);
        assert!(equal);
        assert_eq!(text, "formula: 42\nbrute: 42\nEQUAL\n");
        let (csv, _) = render_count_comparison(4, &big(42), &big(41), OutputFormat::Csv);
        assert_eq!(csv, "n,source,value\n4,formula,42\n4,brute,41\n");
        let (json, equal) = render_count_comparison(4, &big(42), &big(41), OutputFormat::Json);
        assert!(!equal);
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(doc["equal"], false);
        assert_eq!(doc["entries"][1]["source"], "brute");
        assert_eq!(doc["entries"][1]["value"], "41");
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(7.0, 12), "7.00000000000");
        assert_eq!(format_significant(1.0, 12), "1.00000000000");
        assert_eq!(format_significant(429.0000000001, 12), "429.000000000");
        assert_eq!(format_significant(0.5, 12), "0.500000000000");
        assert_eq!(format_significant(-2.25, 4), "-2.250");
        assert_eq!(format_significant(123456789012345.0, 12), "123456789012345");
        assert_eq!(format_significant(0.0, 12), "0.00000000000");
    }
}
