#![no_main]

use icfade::channel::CodeSelector;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sel) = text.parse::<CodeSelector>() {
        assert_eq!(sel.to_string().parse::<CodeSelector>().unwrap(), sel);
    }
});
