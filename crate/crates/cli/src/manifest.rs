//! Batch manifests: `label<TAB>language<TAB>genre<TAB>path` per row.

use std::path::{Path, PathBuf};

pub const MANIFEST_HEADER: &str = "label\tlanguage\tgenre\tpath";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestRow {
    pub line: usize,
    pub label: String,
    pub language: String,
    pub genre: String,
    pub path: PathBuf,
}

/// A row that could not be read; kept so the batch can report it in place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestRowError {
    pub line: usize,
    pub label: String,
    pub message: String,
}

pub type ManifestEntry = Result<ManifestRow, ManifestRowError>;

/// Parses a manifest. Relative paths are resolved against `base`. Blank
/// lines, `#` comments and the header row are skipped; malformed rows come
/// back as errors alongside the good ones, in file order.
pub fn parse_manifest(text: &str, base: &Path) -> Vec<ManifestEntry> {
    let mut out = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line = i + 1;
        let row = raw.strip_suffix('\r').unwrap_or(raw);
        if row.trim().is_empty() || row.starts_with('#') || row == MANIFEST_HEADER {
            continue;
        }
        let fields: Vec<&str> = row.split('\t').map(str::trim).collect();
        let entry = match fields[..] {
            [label, language, genre, path] if !label.is_empty() && !path.is_empty() => {
                let path = Path::new(path);
                Ok(ManifestRow {
                    line,
                    label: label.to_string(),
                    language: language.to_string(),
                    genre: genre.to_string(),
                    path: if path.is_absolute() {
                        path.to_path_buf()
                    } else {
                        base.join(path)
                    },
                })
            }
            _ => Err(ManifestRowError {
                line,
                label: fields.first().copied().unwrap_or("").to_string(),
                message: format!(
                    "expected 4 tab-separated fields (label, language, genre, path), found {}",
                    fields.len()
                ),
            }),
        };
        out.push(entry);
    }
    out
}
