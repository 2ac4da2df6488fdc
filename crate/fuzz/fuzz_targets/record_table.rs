#![no_main]

use libfuzzer_sys::fuzz_target;
use wordlen::genre::{parse_records, write_records};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(records) = parse_records(text) {
        let written = write_records(&records);
        let again = parse_records(&written).expect("written records parse");
        assert_eq!(again.len(), records.len());
    }
});
