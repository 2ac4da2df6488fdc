#![no_main]

use std::path::Path;

use libfuzzer_sys::fuzz_target;
use wordlen_cli::manifest::parse_manifest;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for entry in parse_manifest(text, Path::new("/base")) {
        let line = match entry {
            Ok(row) => row.line,
            Err(e) => e.line,
        };
        assert!(line >= 1);
    }
});
