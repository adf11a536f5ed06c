#![no_main]

use icfade::code::IndexCode;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(code) = IndexCode::from_toml_str(text) else {
        return;
    };
    let again = IndexCode::from_toml_str(&code.to_toml_string()).unwrap();
    assert_eq!(code.matrix_hash(), again.matrix_hash());
});
