#![no_main]

use libfuzzer_sys::fuzz_target;
use wordlen::corpus::{decode_text, parse_table, write_table};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = decode_text(data) else { return };
    if let Ok(hist) = parse_table(text) {
        let canonical = write_table(&hist);
        let again = parse_table(&canonical).expect("canonical table parses");
        assert_eq!(again, hist);
        assert_eq!(write_table(&again), canonical);
    }
});
