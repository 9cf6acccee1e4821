//! The line-oriented table dataset.
//!
//! ```text
//! q=<int> g=<int|?> N=<int> flags=<csv> f=<expr>;<expr>[;...] [eq=<text>] [range=a-b]
//! ```
//!
//! `#` starts a comment line. Comment lines directly above a row are kept
//! as that row's notes; a note `reconstructed: f=<expr>;...` records
//! generators inferred from the printed equation of a suspect row.

use std::fmt;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

/// The dataset shipped with the crate.
pub const EMBEDDED: &str = include_str!("../../data/tables.txt");

/// Environment variable naming a dataset file that replaces the embedded one.
pub const DATASET_ENV: &str = "MANYPOINTS_DATASET";

/// Field orders that occur in the tables.
pub const TABLE_ORDERS: [u32; 11] = [2, 4, 8, 16, 32, 64, 128, 3, 9, 27, 81];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowFlag {
    Clean,
    TranscriptionSuspect,
    Incomplete,
}

impl RowFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            RowFlag::Clean => "clean",
            RowFlag::TranscriptionSuspect => "transcription-suspect",
            RowFlag::Incomplete => "incomplete",
        }
    }
}

impl std::str::FromStr for RowFlag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "clean" => Ok(RowFlag::Clean),
            "transcription-suspect" => Ok(RowFlag::TranscriptionSuspect),
            "incomplete" => Ok(RowFlag::Incomplete),
            _ => Err(format!("unknown flag {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    /// 1-based line in the source text.
    pub line: usize,
    pub q: u32,
    pub expected_g: Option<u64>,
    pub expected_n: u64,
    pub f_exprs: Vec<String>,
    pub printed_equation: Option<String>,
    pub nq_range: Option<(u64, u64)>,
    pub flags: Vec<RowFlag>,
    pub notes: Vec<String>,
    pub reconstructed_f: Option<Vec<String>>,
}

impl TableRow {
    pub fn has_flag(&self, flag: RowFlag) -> bool {
        self.flags.contains(&flag)
    }

    pub fn is_clean(&self) -> bool {
        !self.has_flag(RowFlag::Incomplete) && !self.has_flag(RowFlag::TranscriptionSuspect)
    }

    /// Short label such as `q=8 g=2`.
    pub fn label(&self) -> String {
        match self.expected_g {
            Some(g) => format!("q={} g={}", self.q, g),
            None => format!("q={} g=?", self.q),
        }
    }

    pub fn uses_w(&self) -> bool {
        self.f_exprs.iter().any(|f| f.contains('w'))
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.expected_g.map_or("?".to_string(), |g| g.to_string());
        let flags: Vec<&str> = self.flags.iter().map(|x| x.as_str()).collect();
        for n in &self.notes {
            writeln!(f, "# {n}")?;
        }
        write!(f, "q={} g={} N={} flags={} f={}", self.q, g, self.expected_n, flags.join(","), self.f_exprs.join(";"))?;
        if let Some(eq) = &self.printed_equation {
            write!(f, " eq={eq}")?;
        }
        if let Some((a, b)) = self.nq_range {
            write!(f, " range={a}-{b}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

const KEYS: [&str; 7] = ["q", "g", "N", "flags", "f", "eq", "range"];

/// Splits a record into `key=value` pairs. A key starts at the beginning
/// of the line or after whitespace; values run until the next key.
fn fields(text: &str) -> Vec<(&str, &str)> {
    let mut starts = Vec::new();
    let bytes = text.as_bytes();
    for (i, _) in text.char_indices() {
        if i > 0 && !bytes[i - 1].is_ascii_whitespace() {
            continue;
        }
        for k in KEYS {
            if text[i..].starts_with(k) && text[i + k.len()..].starts_with('=') {
                starts.push((i, k));
                break;
            }
        }
    }
    starts
        .iter()
        .enumerate()
        .map(|(j, &(i, k))| {
            let end = starts.get(j + 1).map_or(text.len(), |s| s.0);
            (k, text[i + k.len() + 1..end].trim())
        })
        .collect()
}

fn split_exprs(v: &str) -> Vec<String> {
    v.split(';').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

const RECONSTRUCTED: &str = "reconstructed: f=";

fn parse_row(line: usize, text: &str, notes: Vec<String>) -> Result<TableRow, DatasetError> {
    let err = |msg: String| DatasetError::Line { line, msg };
    let mut q = None;
    let mut g = None;
    let mut n = None;
    let mut flags = Vec::new();
    let mut f_exprs = None;
    let mut eq = None;
    let mut range = None;
    for (k, v) in fields(text) {
        match k {
            "q" => q = Some(v.parse::<u32>().map_err(|e| err(format!("q: {e}")))?),
            "g" => {
                g = Some(if v == "?" { None } else { Some(v.parse::<u64>().map_err(|e| err(format!("g: {e}")))?) })
            }
            "N" => n = Some(v.parse::<u64>().map_err(|e| err(format!("N: {e}")))?),
            "flags" => {
                for s in v.split(',').filter(|s| !s.is_empty()) {
                    flags.push(s.parse::<RowFlag>().map_err(err)?);
                }
            }
            "f" => f_exprs = Some(split_exprs(v)),
            "eq" => eq = Some(v.to_string()),
            "range" => {
                let (a, b) = v.split_once('-').ok_or_else(|| err(format!("range {v:?} is not a-b")))?;
                let a = a.trim().parse::<u64>().map_err(|e| err(format!("range: {e}")))?;
                let b = b.trim().parse::<u64>().map_err(|e| err(format!("range: {e}")))?;
                range = Some((a, b));
            }
            _ => unreachable!(),
        }
    }
    let q = q.ok_or_else(|| err("missing q".into()))?;
    if !TABLE_ORDERS.contains(&q) {
        return Err(err(format!("q = {q} does not occur in the tables")));
    }
    let row = TableRow {
        line,
        q,
        expected_g: g.ok_or_else(|| err("missing g".into()))?,
        expected_n: n.ok_or_else(|| err("missing N".into()))?,
        f_exprs: f_exprs.unwrap_or_default(),
        printed_equation: eq.filter(|s| !s.is_empty()),
        nq_range: range,
        flags: if flags.is_empty() { vec![RowFlag::Clean] } else { flags },
        reconstructed_f: notes.iter().find_map(|n| n.strip_prefix(RECONSTRUCTED)).map(split_exprs),
        notes,
    };
    if row.is_clean() && (row.expected_g.is_none() || row.f_exprs.is_empty()) {
        return Err(err("a clean row needs g and at least one f".into()));
    }
    Ok(row)
}

pub fn parse_dataset(text: &str) -> Result<Vec<TableRow>, DatasetError> {
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            notes.clear();
        } else if let Some(c) = line.strip_prefix('#') {
            notes.push(c.trim().to_string());
        } else {
            rows.push(parse_row(i + 1, line, std::mem::take(&mut notes))?);
        }
    }
    Ok(rows)
}

pub fn load_dataset_file(path: &Path) -> Result<Vec<TableRow>, DatasetError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| DatasetError::Io { path: path.display().to_string(), source })?;
    parse_dataset(&text)
}

/// The dataset named by `MANYPOINTS_DATASET`, or the embedded one.
pub fn load_dataset() -> Result<Vec<TableRow>, DatasetError> {
    match std::env::var_os(DATASET_ENV) {
        Some(p) if !p.is_empty() => load_dataset_file(Path::new(&p)),
        _ => parse_dataset(EMBEDDED),
    }
}
