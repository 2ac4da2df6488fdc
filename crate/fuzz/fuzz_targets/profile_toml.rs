#![no_main]

use libfuzzer_sys::fuzz_target;
use wordlen::corpus::{count_syllables, LanguageProfile};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(profile) = LanguageProfile::from_toml(text) {
        let again =
            LanguageProfile::from_toml(&profile.to_toml()).expect("serialized profile parses");
        assert_eq!(again, profile);
        for word in ["a", "queue", "strengths", "naïve"] {
            assert!(count_syllables(word, &profile) >= 1);
        }
    }
});
