#![no_main]

use libfuzzer_sys::fuzz_target;
use zariski::groups::GroupElement;

fuzz_target!(|data: &[u8]| {
    let Ok(e) = serde_json::from_slice::<GroupElement>(data) else { return };
    let json = serde_json::to_string(&e).unwrap();
    assert_eq!(serde_json::from_str::<GroupElement>(&json).unwrap(), e);
    assert!(e.compose(&e.inverse()).unwrap().is_identity());
});
