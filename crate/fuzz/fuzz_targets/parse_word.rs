#![no_main]

use std::collections::BTreeMap;

use libfuzzer_sys::fuzz_target;
use zariski::groups::{GroupElement, PrefixMap};
use zariski::words::{parse_terms, parse_word, print_terms};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(terms) = parse_terms(text) {
        // printing and reparsing is the identity on token lists
        let printed = print_terms(&terms);
        assert_eq!(parse_terms(&printed).unwrap(), terms);
    }
    let mut store: BTreeMap<String, GroupElement> = BTreeMap::new();
    store.insert("a".into(), PrefixMap::parse(2, &[("0", "1"), ("1", "0")]).unwrap().into());
    store.insert("b".into(), PrefixMap::parse(2, &[("0", "10"), ("10", "11"), ("11", "0")]).unwrap().into());
    if let Ok(w) = parse_word(text, &store) {
        let _ = w.normalize();
    }
});
