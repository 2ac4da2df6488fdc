//! Length-frequency tables: `length<TAB>count` per line, `#` comments.

use std::fmt::Write as _;
use std::io::Read;

use crate::estimation::LengthHistogram;

use super::CorpusError;

fn table_error(line: usize, message: impl Into<String>) -> CorpusError {
    CorpusError::Table {
        line,
        message: message.into(),
    }
}

/// Parses a histogram table. Blank lines and lines starting with `#` are
/// ignored; a trailing `\r` is tolerated.
pub fn parse_table(text: &str) -> Result<LengthHistogram, CorpusError> {
    let mut hist = LengthHistogram::new();
    let mut rows = 0usize;
    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [len, count] = fields[..] else {
            return Err(table_error(
                line_no,
                format!("expected 2 tab-separated fields, found {}", fields.len()),
            ));
        };
        let length: u32 = len
            .parse()
            .map_err(|_| table_error(line_no, format!("invalid length {len:?}")))?;
        if length == 0 {
            return Err(table_error(line_no, "length must be at least 1"));
        }
        let count: u64 = match count.parse::<i128>() {
            Ok(c) if c < 0 => return Err(table_error(line_no, format!("negative count {c}"))),
            Ok(c) => u64::try_from(c)
                .map_err(|_| table_error(line_no, format!("count {c} out of range")))?,
            Err(_) => return Err(table_error(line_no, format!("invalid count {count:?}"))),
        };
        if hist.contains(length) {
            return Err(table_error(line_no, format!("duplicate length {length}")));
        }
        hist.add(length, count)
            .map_err(|e| table_error(line_no, e.to_string()))?;
        rows += 1;
    }
    if rows == 0 {
        return Err(CorpusError::EmptyTable);
    }
    Ok(hist)
}

/// Reads and parses a table from any byte stream (UTF-8 required).
pub fn load_table<R: Read>(mut reader: R) -> Result<LengthHistogram, CorpusError> {
    let mut bytes = Vec::new();
    reader
        .read_to_end(&mut bytes)
        .map_err(|e| CorpusError::Io(e.to_string()))?;
    parse_table(super::decode_text(&bytes)?)
}

/// Canonical form: ascending length, one `length\tcount\n` line per entry.
pub fn write_table(hist: &LengthHistogram) -> String {
    let mut out = String::new();
    for (x, c) in hist.iter() {
        writeln!(out, "{x}\t{c}").unwrap();
    }
    out
}
