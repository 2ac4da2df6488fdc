use crate::estimation::LengthHistogram;

use super::profile::{LanguageProfile, Rule};
use super::CorpusError;

/// Validates UTF-8, reporting the byte offset of the first bad sequence.
pub fn decode_text(bytes: &[u8]) -> Result<&str, CorpusError> {
    std::str::from_utf8(bytes).map_err(|e| CorpusError::Encoding {
        offset: e.valid_up_to(),
    })
}

/// Splits text into lowercase word tokens.
///
/// Letters form words; the profile's joiner characters (apostrophe and
/// hyphen by default) are kept only between letters; every other
/// character, digits included, separates words. A typographic apostrophe
/// is read as `'`.
pub fn tokenize(text: &str, profile: &LanguageProfile) -> Vec<String> {
    let mut words = Vec::new();
    let mut current = String::new();
    let flush = |current: &mut String, words: &mut Vec<String>| {
        let trimmed = current.trim_matches(|c| profile.is_joiner(c));
        if !trimmed.is_empty() {
            words.push(trimmed.to_string());
        }
        current.clear();
    };
    for c in text.chars() {
        let c = if c == '\u{2019}' { '\'' } else { c };
        if c.is_alphabetic() {
            current.extend(c.to_lowercase());
        } else if profile.is_joiner(c) && !current.is_empty() {
            current.push(c);
        } else {
            flush(&mut current, &mut words);
        }
    }
    flush(&mut current, &mut words);
    words
}

/// Heuristic syllable count: vowel clusters adjusted by the profile's rules,
/// unless the word has an override. Never less than one.
pub fn count_syllables(word: &str, profile: &LanguageProfile) -> u32 {
    let word = word.to_lowercase();
    if let Some(n) = profile.override_for(&word) {
        return n.max(1);
    }
    let chars: Vec<char> = word.chars().collect();
    let mut nuclei: i64 = 0;
    let mut in_cluster = false;
    for &c in &chars {
        let v = profile.is_vowel(c);
        if v && !in_cluster {
            nuclei += 1;
        }
        in_cluster = v;
    }
    for rule in profile.rules() {
        match rule {
            Rule::SilentSuffix { suffix } => {
                if nuclei > 1 && word.ends_with(suffix.as_str()) {
                    nuclei -= 1;
                }
            }
            Rule::SyllabicSuffix {
                suffix,
                after_consonant,
            } => {
                if let Some(stem) = word.strip_suffix(suffix.as_str()) {
                    let ok = !after_consonant
                        || stem
                            .chars()
                            .last()
                            .is_some_and(|c| c.is_alphabetic() && !profile.is_vowel(c));
                    if ok {
                        nuclei += 1;
                    }
                }
            }
            Rule::Hiatus { sequence } => {
                nuclei += word.matches(sequence.as_str()).count() as i64;
            }
        }
    }
    nuclei.clamp(1, i64::from(u32::MAX)) as u32
}

/// Histogram of syllable counts over word tokens.
pub fn build_histogram<S: AsRef<str>>(words: &[S], profile: &LanguageProfile) -> LengthHistogram {
    let mut h = LengthHistogram::new();
    for w in words {
        h.add(count_syllables(w.as_ref(), profile), 1)
            .expect("syllable counts are at least 1");
    }
    h
}
