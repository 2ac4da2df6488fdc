#![no_main]

use libfuzzer_sys::fuzz_target;
use wordlen::corpus::{build_histogram, count_syllables, decode_text, tokenize, LanguageProfile};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = decode_text(data) else { return };
    for name in LanguageProfile::builtin_names() {
        let profile = LanguageProfile::builtin(name).unwrap();
        let words = tokenize(text, &profile);
        for w in &words {
            assert!(!w.is_empty());
            assert!(count_syllables(w, &profile) >= 1);
        }
        assert_eq!(
            build_histogram(&words, &profile).total(),
            words.len() as u64
        );
    }
});
