#![no_main]

use libfuzzer_sys::fuzz_target;
use zariski::words::SystemSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(spec) = serde_json::from_slice::<SystemSpec>(data) else { return };
    let _ = spec.compile();
});
