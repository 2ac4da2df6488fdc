//! Language profiles for heuristic syllable counting.
//!
//! A profile lists the letters that form syllable nuclei, an ordered list of
//! adjustment rules, and per-word overrides. Profiles are TOML documents:
//!
//! ```toml
//! version = 1
//! name = "english"
//! vowels = "aeiouy"
//! joiners = "'-"          # kept inside words by the tokenizer (optional)
//!
//! [[rules]]
//! kind = "silent-suffix"  # final "e" adds no syllable
//! suffix = "e"
//!
//! [[rules]]
//! kind = "syllabic-suffix"
//! suffix = "le"
//! after_consonant = true  # "table" but not "whole"
//!
//! [[rules]]
//! kind = "hiatus"         # this vowel pair splits into two nuclei
//! sequence = "ia"
//!
//! [overrides]
//! the = 1
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CorpusError;

/// Only schema version understood by this build.
pub const PROFILE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Rule {
    /// Subtract one nucleus when the word ends in `suffix` and has more than one.
    SilentSuffix { suffix: String },
    /// Add one nucleus when the word ends in `suffix`.
    SyllabicSuffix {
        suffix: String,
        #[serde(default)]
        after_consonant: bool,
    },
    /// Add one nucleus for every occurrence of this vowel sequence.
    Hiatus { sequence: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFile {
    version: u32,
    name: String,
    vowels: String,
    #[serde(default = "default_joiners")]
    joiners: String,
    #[serde(default)]
    rules: Vec<Rule>,
    #[serde(default)]
    overrides: BTreeMap<String, u32>,
}

fn default_joiners() -> String {
    "'-".to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageProfile {
    name: String,
    vowels: BTreeSet<char>,
    joiners: BTreeSet<char>,
    rules: Vec<Rule>,
    overrides: BTreeMap<String, u32>,
}

const LATIN_VOWELS: &str = "aeiouyàáâãäåæèéêëìíîïòóôõöøùúûüýÿœ";

impl LanguageProfile {
    /// Vowel-cluster counting over Latin letters, no adjustments.
    pub fn generic() -> Self {
        Self::from_parts("generic", LATIN_VOWELS, "'-", Vec::new(), BTreeMap::new())
    }

    pub fn english() -> Self {
        let rules = vec![
            Rule::SilentSuffix { suffix: "e".into() },
            Rule::SyllabicSuffix {
                suffix: "le".into(),
                after_consonant: true,
            },
            Rule::Hiatus {
                sequence: "ia".into(),
            },
        ];
        let overrides = [("the", 1), ("are", 1), ("were", 1), ("one", 1), ("once", 1)]
            .into_iter()
            .map(|(w, n)| (w.to_string(), n))
            .collect();
        Self::from_parts("english", "aeiouy", "'-", rules, overrides)
    }

    /// Diphthongs (`ei`, `eu`, `au`, `äu`, `ie`) already form single clusters.
    pub fn german() -> Self {
        Self::from_parts("german", "aeiouyäöü", "'-", Vec::new(), BTreeMap::new())
    }

    /// Adjacent strong vowels and stressed weak vowels form a hiatus.
    pub fn spanish() -> Self {
        let rules = [
            "ea", "eo", "ae", "ao", "oa", "oe", "ee", "oo", "aa", "ía", "ío", "úa", "aí", "eí",
            "oí", "aú",
        ]
        .into_iter()
        .map(|s| Rule::Hiatus {
            sequence: s.to_string(),
        })
        .collect();
        Self::from_parts("spanish", "aeiouáéíóúü", "'-", rules, BTreeMap::new())
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "generic" => Some(Self::generic()),
            "english" => Some(Self::english()),
            "german" => Some(Self::german()),
            "spanish" => Some(Self::spanish()),
            _ => None,
        }
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["generic", "english", "german", "spanish"]
    }

    fn from_parts(
        name: &str,
        vowels: &str,
        joiners: &str,
        rules: Vec<Rule>,
        overrides: BTreeMap<String, u32>,
    ) -> Self {
        Self {
            name: name.to_string(),
            vowels: vowels.chars().flat_map(char::to_lowercase).collect(),
            joiners: joiners.chars().collect(),
            rules,
            overrides: overrides
                .into_iter()
                .map(|(w, n)| (w.to_lowercase(), n.max(1)))
                .collect(),
        }
    }

    /// Parses a TOML profile document.
    pub fn from_toml(text: &str) -> Result<Self, CorpusError> {
        let file: ProfileFile =
            toml::from_str(text).map_err(|e| CorpusError::Profile(e.message().to_string()))?;
        if file.version != PROFILE_VERSION {
            return Err(CorpusError::Profile(format!(
                "unsupported profile version {} (expected {PROFILE_VERSION})",
                file.version
            )));
        }
        if file.vowels.trim().is_empty() {
            return Err(CorpusError::Profile(
                "profile must list at least one vowel".into(),
            ));
        }
        if let Some((w, _)) = file.overrides.iter().find(|(_, &n)| n == 0) {
            return Err(CorpusError::Profile(format!(
                "override for {w:?} must be at least 1"
            )));
        }
        for rule in &file.rules {
            let text = match rule {
                Rule::SilentSuffix { suffix } | Rule::SyllabicSuffix { suffix, .. } => suffix,
                Rule::Hiatus { sequence } => sequence,
            };
            if text.is_empty() {
                return Err(CorpusError::Profile("rule text must not be empty".into()));
            }
        }
        Ok(Self::from_parts(
            &file.name,
            &file.vowels,
            &file.joiners,
            file.rules,
            file.overrides,
        ))
    }

    pub fn load(path: &Path) -> Result<Self, CorpusError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CorpusError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        let file = ProfileFile {
            version: PROFILE_VERSION,
            name: self.name.clone(),
            vowels: self.vowels.iter().collect(),
            joiners: self.joiners.iter().collect(),
            rules: self.rules.clone(),
            overrides: self.overrides.clone(),
        };
        toml::to_string(&file).expect("profile serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_vowel(&self, c: char) -> bool {
        self.vowels.contains(&c)
    }

    pub fn is_joiner(&self, c: char) -> bool {
        self.joiners.contains(&c)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn override_for(&self, word: &str) -> Option<u32> {
        self.overrides.get(word).copied()
    }

    /// Pins the syllable count of `word` (stored lowercased, minimum 1).
    pub fn set_override(&mut self, word: &str, syllables: u32) {
        self.overrides.insert(word.to_lowercase(), syllables.max(1));
    }
}

impl Default for LanguageProfile {
    fn default() -> Self {
        Self::generic()
    }
}
